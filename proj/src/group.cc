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

#include <algorithm>
#include <numeric>

#include "absl/status/status.h"
#include "fmt/format.h"

namespace cyclic_rfid {

absl::StatusOr<GroupSpec> MakeGroup(uint64_t order, int word_bits) {
  if (word_bits < 1 || word_bits > LWord::kMaxBits) {
    return absl::InvalidArgumentError(
        fmt::format("word bits must be in [1, 64], got {}", word_bits));
  }
  if (order < 2) {
    return absl::InvalidArgumentError(
        fmt::format("group order must be at least 2, got {}", order));
  }
  // n <= 2^L, i.e. n - 1 fits in L bits.
  if (((order - 1) & ~LWord::Mask(word_bits)) != 0) {
    return absl::InvalidArgumentError(
        fmt::format("group order {} exceeds 2^{}; exponents would not encode",
                    order, word_bits));
  }
  return GroupSpec(order, word_bits);
}

absl::StatusOr<SubgroupHandle> SubgroupForDivisor(const GroupSpec& group,
                                                  uint64_t divisor, int id) {
  if (divisor == 0 || group.order() % divisor != 0) {
    return absl::InvalidArgumentError(fmt::format(
        "{} does not divide the group order {}", divisor, group.order()));
  }
  if (divisor == 1) {
    return absl::InvalidArgumentError(
        "the order-1 subgroup holds only the identity");
  }
  return SubgroupHandle(group, divisor, id);
}

namespace {

absl::Status CheckIndex(const SubgroupHandle& subgroup, uint64_t index) {
  if (index == 0 || index >= subgroup.divisor()) {
    return absl::OutOfRangeError(fmt::format("element index {} outside [1, {}]",
                                             index, subgroup.divisor() - 1));
  }
  return absl::OkStatus();
}

}  // namespace

absl::StatusOr<GroupElement> Element(const SubgroupHandle& subgroup,
                                     uint64_t index) {
  if (absl::Status s = CheckIndex(subgroup, index); !s.ok()) return s;
  // index * gen < divisor * (n / divisor) = n, so no overflow.
  return GroupElement{(index * subgroup.gen_exponent()) %
                      subgroup.group().order()};
}

absl::StatusOr<GroupElement> Inverse(const SubgroupHandle& subgroup,
                                     uint64_t index) {
  absl::StatusOr<GroupElement> e = Element(subgroup, index);
  if (!e.ok()) return e.status();
  const uint64_t n = subgroup.group().order();
  return GroupElement{(n - e->exponent) % n};
}

LWord Encode(GroupElement element, const GroupSpec& group) {
  return LWord(element.exponent, group.word_bits());
}

bool IsGroupGenerator(const GroupSpec& group, uint64_t k) {
  return std::gcd(k, group.order()) == 1;
}

std::vector<uint64_t> Divisors(uint64_t n) {
  std::vector<uint64_t> low, high;
  for (uint64_t d = 1; d <= n / d; ++d) {
    if (n % d != 0) continue;
    low.push_back(d);
    if (d != n / d) high.push_back(n / d);
  }
  low.insert(low.end(), high.rbegin(), high.rend());
  return low;
}

}  // namespace cyclic_rfid
