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

// Finite cyclic groups represented additively: the mother group <a> of order
// n is modelled as Z_n, and an element a^e is carried by its exponent e.
// For every divisor k of n there is exactly one subgroup of order k, which is
// generated by a^(n/k).

#ifndef CYCLIC_RFID_GROUP_H_
#define CYCLIC_RFID_GROUP_H_

#include <cstdint>
#include <vector>

#include "absl/status/statusor.h"
#include "cyclic_rfid/lword.h"

namespace cyclic_rfid {

inline constexpr int kDefaultWordBits = 32;

class GroupSpec {
 public:
  uint64_t order() const { return order_; }
  int word_bits() const { return word_bits_; }

  friend bool operator==(const GroupSpec&, const GroupSpec&) = default;

 private:
  friend absl::StatusOr<GroupSpec> MakeGroup(uint64_t, int);
  GroupSpec(uint64_t order, int word_bits)
      : order_(order), word_bits_(word_bits) {}

  uint64_t order_;
  int word_bits_;
};

// Exponent of the mother-group generator; always in [0, order).
struct GroupElement {
  uint64_t exponent = 0;

  friend bool operator==(const GroupElement&, const GroupElement&) = default;
};

// The unique subgroup of order `divisor` together with the label the system
// model assigns to it.
class SubgroupHandle {
 public:
  const GroupSpec& group() const { return group_; }
  uint64_t divisor() const { return divisor_; }
  uint64_t gen_exponent() const { return gen_exponent_; }
  int id() const { return id_; }

  friend bool operator==(const SubgroupHandle&,
                         const SubgroupHandle&) = default;

 private:
  friend absl::StatusOr<SubgroupHandle> SubgroupForDivisor(const GroupSpec&,
                                                           uint64_t, int);
  SubgroupHandle(GroupSpec group, uint64_t divisor, int id)
      : group_(group),
        divisor_(divisor),
        gen_exponent_(group.order() / divisor),
        id_(id) {}

  GroupSpec group_;
  uint64_t divisor_;
  uint64_t gen_exponent_;
  int id_;
};

// Rejects n < 2 and any n that does not fit in `word_bits` bits of exponent
// (n > 2^L). `word_bits` must lie in [1, 64].
absl::StatusOr<GroupSpec> MakeGroup(uint64_t order,
                                    int word_bits = kDefaultWordBits);

// Order-k subgroup <a^(n/k)>. Rejects k that does not divide n and k = 1.
absl::StatusOr<SubgroupHandle> SubgroupForDivisor(const GroupSpec& group,
                                                  uint64_t divisor, int id);

// a_j^i for 1 <= i < k; the identity (i = 0) is never handed out.
absl::StatusOr<GroupElement> Element(const SubgroupHandle& subgroup,
                                     uint64_t index);
absl::StatusOr<GroupElement> Inverse(const SubgroupHandle& subgroup,
                                     uint64_t index);

// Zero-extended exponent. Injective over [0, n).
LWord Encode(GroupElement element, const GroupSpec& group);

// a^k generates the whole group iff gcd(k, n) = 1. Requires 1 <= k < n.
bool IsGroupGenerator(const GroupSpec& group, uint64_t k);

// All divisors of n in increasing order, including 1 and n.
std::vector<uint64_t> Divisors(uint64_t n);

}  // namespace cyclic_rfid

#endif  // CYCLIC_RFID_GROUP_H_
