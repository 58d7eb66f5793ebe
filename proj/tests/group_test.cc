// Copyright 2026 The Cyclic RFID Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cyclic_rfid/group.h"

#include <numeric>

#include "gtest/gtest.h"
#include "test_util.h"

namespace cyclic_rfid {
namespace {

using ::cyclic_rfid::testing::Group;

TEST(GroupTest, MakeGroupValidatesOrderAndWidth) {
  EXPECT_OK(MakeGroup(12, 8));
  EXPECT_OK(MakeGroup(256, 8));
  EXPECT_FALSE(MakeGroup(257, 8).ok());
  EXPECT_FALSE(MakeGroup(1, 8).ok());
  EXPECT_FALSE(MakeGroup(12, 0).ok());
  EXPECT_FALSE(MakeGroup(12, 65).ok());
  EXPECT_OK(MakeGroup(~uint64_t{0}, 64));
}

TEST(GroupTest, DivisorsMatchTrialDivision) {
  for (uint64_t n = 1; n <= 400; ++n) {
    std::vector<uint64_t> expected;
    for (uint64_t d = 1; d <= n; ++d) {
      if (n % d == 0) expected.push_back(d);
    }
    EXPECT_EQ(Divisors(n), expected) << n;
  }
}

TEST(GroupTest, SubgroupRequiresProperDivisor) {
  const GroupSpec g = Group(12, 8);
  EXPECT_FALSE(SubgroupForDivisor(g, 5, 1).ok());
  EXPECT_FALSE(SubgroupForDivisor(g, 0, 1).ok());
  EXPECT_FALSE(SubgroupForDivisor(g, 1, 1).ok());
  absl::StatusOr<SubgroupHandle> h = SubgroupForDivisor(g, 4, 2);
  ASSERT_OK(h);
  EXPECT_EQ(h->gen_exponent(), 3u);
  EXPECT_EQ(h->id(), 2);
}

TEST(GroupTest, ElementsAndInversesOfTheOrderThreeSubgroup) {
  const SubgroupHandle h = *SubgroupForDivisor(Group(12, 8), 3, 3);
  EXPECT_EQ(Element(h, 1)->exponent, 4u);
  EXPECT_EQ(Element(h, 2)->exponent, 8u);
  EXPECT_EQ(Inverse(h, 1)->exponent, 8u);
  EXPECT_EQ(Inverse(h, 2)->exponent, 4u);
  EXPECT_EQ(Element(h, 0).status().code(), absl::StatusCode::kOutOfRange);
  EXPECT_EQ(Element(h, 3).status().code(), absl::StatusCode::kOutOfRange);
  EXPECT_EQ(Encode(*Inverse(h, 1), h.group()), LWord(0x08, 8));
}

// Every element of H_k has order dividing k and cancels with its inverse.
TEST(GroupTest, SubgroupElementPropertiesForAllDivisors) {
  for (uint64_t n : {12u, 30u, 64u, 97u, 360u, 1024u}) {
    const GroupSpec g = Group(n, 32);
    for (uint64_t k : Divisors(n)) {
      if (k == 1) continue;
      const SubgroupHandle h = *SubgroupForDivisor(g, k, 1);
      std::vector<bool> seen(n, false);
      for (uint64_t i = 1; i < k; ++i) {
        const uint64_t e = Element(h, i)->exponent;
        const uint64_t inv = Inverse(h, i)->exponent;
        EXPECT_EQ((e + inv) % n, 0u);
        EXPECT_NE(e, 0u);
        EXPECT_EQ((e * k) % n, 0u) << "order of a^" << e << " divides " << k;
        EXPECT_FALSE(seen[e]) << "distinct elements";
        seen[e] = true;
      }
    }
  }
}

TEST(GroupTest, GeneratorsAreUnitsModN) {
  const GroupSpec g = Group(12, 8);
  std::vector<uint64_t> gens;
  for (uint64_t k = 1; k < 12; ++k) {
    if (IsGroupGenerator(g, k)) gens.push_back(k);
  }
  EXPECT_EQ(gens, (std::vector<uint64_t>{1, 5, 7, 11}));
}

}  // namespace
}  // namespace cyclic_rfid
