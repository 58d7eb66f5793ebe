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

// Anonymity-set privacy metrics over a partition of the N tags into blocks
// the adversary cannot tell apart internally.
//
//   privacy level     R = (1/N^2) * sum |P_i|^2                 in [1/N, 1]
//   information leak  I = sum (|P_i|/N) * log2(N/|P_i|)  bits   in [0, log2 N]
//
// With C compromised tags the cyclic-group scheme yields C singletons plus
// one block of N - C, because a compromised tag reveals nothing about which
// subgroup the others belong to. That gives the closed forms
//
//   R(C) = (C + (N-C)^2) / N^2
//   I(C) = (C/N) log2 N + ((N-C)/N) log2(N/(N-C))

#ifndef CYCLIC_RFID_PRIVACY_METRICS_H_
#define CYCLIC_RFID_PRIVACY_METRICS_H_

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "absl/status/statusor.h"

namespace cyclic_rfid {

class Partition {
 public:
  // Every block size must be positive.
  static absl::StatusOr<Partition> Create(std::vector<uint64_t> sizes);

  const std::vector<uint64_t>& sizes() const { return sizes_; }
  uint64_t total() const { return total_; }

  friend bool operator==(const Partition&, const Partition&) = default;

 private:
  explicit Partition(std::vector<uint64_t> sizes, uint64_t total)
      : sizes_(std::move(sizes)), total_(total) {}

  std::vector<uint64_t> sizes_;
  uint64_t total_;
};

// Rejects partitions whose sizes do not sum to N.
absl::StatusOr<double> PrivacyLevel(const Partition& partition, uint64_t n);
absl::StatusOr<double> InfoLeakage(const Partition& partition, uint64_t n);

// Requires C <= N.
absl::StatusOr<double> PrivacyLevelClosed(uint64_t n, uint64_t compromised);
// Requires C < N; at C = N use InfoLeakage on N singletons (log2 N).
absl::StatusOr<double> InfoLeakageClosed(uint64_t n, uint64_t compromised);

// C singletons plus one block of N - C (omitted when empty). Depends only on
// how many tags are compromised.
absl::StatusOr<Partition> PartitionProposed(
    uint64_t n, std::span<const uint64_t> compromised);

// Group-key comparison model. Tags are numbered 0..N-1 and assigned to the
// groups contiguously. Compromised tags become singletons, the rest of every
// touched group is one block, and all untouched groups merge into one block
// (a group key distinguishes only groups the adversary holds a key for).
// This approximates the group-based schemes used for comparison; it is not a
// reimplementation of them.
absl::StatusOr<Partition> PartitionGroupKeyBaseline(
    std::span<const uint64_t> group_sizes,
    std::span<const uint64_t> compromised);

}  // namespace cyclic_rfid

#endif  // CYCLIC_RFID_PRIVACY_METRICS_H_
