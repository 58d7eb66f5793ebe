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

#ifndef CYCLIC_RFID_TESTS_TEST_UTIL_H_
#define CYCLIC_RFID_TESTS_TEST_UTIL_H_

#include <cstdint>
#include <deque>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "cyclic_rfid/group.h"
#include "cyclic_rfid/prng.h"
#include "cyclic_rfid/registry.h"
#include "gtest/gtest.h"

// Arguments are evaluated twice; pass variables, not calls.
#define ASSERT_OK(x)                                    \
  ASSERT_TRUE(::cyclic_rfid::testing::StatusOf(x).ok()) \
      << ::cyclic_rfid::testing::StatusOf(x)
#define EXPECT_OK(x)                                    \
  EXPECT_TRUE(::cyclic_rfid::testing::StatusOf(x).ok()) \
      << ::cyclic_rfid::testing::StatusOf(x)

namespace cyclic_rfid::testing {

template <typename T>
const absl::Status& StatusOf(const absl::StatusOr<T>& s) {
  return s.status();
}
inline const absl::Status& StatusOf(const absl::Status& s) { return s; }

// Hands out a fixed sequence of nonces, then falls back to a seeded Prng.
class ScriptedNonces final : public NonceSource {
 public:
  explicit ScriptedNonces(std::vector<uint64_t> values, uint64_t seed = 7)
      : values_(values.begin(), values.end()), fallback_(seed) {}

  LWord NextNonce(int width) override {
    if (values_.empty()) return fallback_.Word(width);
    const uint64_t v = values_.front();
    values_.pop_front();
    return LWord(v, width);
  }

  size_t remaining() const { return values_.size(); }

 private:
  std::deque<uint64_t> values_;
  Prng fallback_;
};

inline GroupSpec Group(uint64_t n, int bits) { return *MakeGroup(n, bits); }

// n = 12, L = 8, divisors {6, 4, 3}: eight tags, index cap 3.
inline ProvisionedSystem MicroSystem(uint64_t seed = 1) {
  const std::vector<uint64_t> divisors = {6, 4, 3};
  return *Provision(Group(12, 8), divisors, seed);
}

// n = 1024, L = 32, divisors {32, 16, 8, 4}: forty tags, index cap 15.
inline ProvisionedSystem DeskSystem(uint64_t seed = 1) {
  const std::vector<uint64_t> divisors = {32, 16, 8, 4};
  return *Provision(Group(1024, 32), divisors, seed);
}

}  // namespace cyclic_rfid::testing

#endif  // CYCLIC_RFID_TESTS_TEST_UTIL_H_
