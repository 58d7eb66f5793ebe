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

#include "cyclic_rfid/privacy_metrics.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "absl/container/flat_hash_set.h"
#include "absl/status/status.h"
#include "fmt/format.h"

namespace cyclic_rfid {

absl::StatusOr<Partition> Partition::Create(std::vector<uint64_t> sizes) {
  uint64_t total = 0;
  for (uint64_t s : sizes) {
    if (s == 0) return absl::InvalidArgumentError("empty partition block");
    total += s;
  }
  return Partition(std::move(sizes), total);
}

namespace {

absl::Status CheckTotal(const Partition& p, uint64_t n) {
  if (n == 0 || p.total() != n) {
    return absl::InvalidArgumentError(
        fmt::format("partition covers {} tags, expected {}", p.total(), n));
  }
  return absl::OkStatus();
}

// (|P|/N) log2(N/|P|).
double BlockLeakage(uint64_t block, uint64_t n) {
  const double p = static_cast<double>(block) / static_cast<double>(n);
  return p * std::log2(static_cast<double>(n) / static_cast<double>(block));
}

}  // namespace

absl::StatusOr<double> PrivacyLevel(const Partition& partition, uint64_t n) {
  if (absl::Status s = CheckTotal(partition, n); !s.ok()) return s;
  long double sum = 0;
  for (uint64_t s : partition.sizes()) {
    sum += static_cast<long double>(s) * static_cast<long double>(s);
  }
  const long double nn = static_cast<long double>(n);
  return static_cast<double>(sum / (nn * nn));
}

absl::StatusOr<double> InfoLeakage(const Partition& partition, uint64_t n) {
  if (absl::Status s = CheckTotal(partition, n); !s.ok()) return s;
  double bits = 0;
  for (uint64_t s : partition.sizes()) bits += BlockLeakage(s, n);
  return bits;
}

absl::StatusOr<double> PrivacyLevelClosed(uint64_t n, uint64_t compromised) {
  if (n == 0 || compromised > n) {
    return absl::InvalidArgumentError(
        fmt::format("need 0 <= C <= N, got C={} N={}", compromised, n));
  }
  const long double nn = static_cast<long double>(n);
  const long double rest = static_cast<long double>(n - compromised);
  return static_cast<double>(
      (static_cast<long double>(compromised) + rest * rest) / (nn * nn));
}

absl::StatusOr<double> InfoLeakageClosed(uint64_t n, uint64_t compromised) {
  if (n == 0 || compromised >= n) {
    return absl::InvalidArgumentError(
        fmt::format("need 0 <= C < N, got C={} N={}", compromised, n));
  }
  const double nd = static_cast<double>(n);
  return static_cast<double>(compromised) / nd * std::log2(nd) +
         BlockLeakage(n - compromised, n);
}

absl::StatusOr<Partition> PartitionProposed(
    uint64_t n, std::span<const uint64_t> compromised) {
  if (compromised.size() > n) {
    return absl::InvalidArgumentError("more compromised tags than tags");
  }
  std::vector<uint64_t> sizes(compromised.size(), 1);
  if (compromised.size() < n) sizes.push_back(n - compromised.size());
  return Partition::Create(std::move(sizes));
}

absl::StatusOr<Partition> PartitionGroupKeyBaseline(
    std::span<const uint64_t> group_sizes,
    std::span<const uint64_t> compromised) {
  std::vector<uint64_t> starts;  // First tag number of each group.
  uint64_t n = 0;
  for (uint64_t g : group_sizes) {
    if (g == 0) return absl::InvalidArgumentError("empty group");
    starts.push_back(n);
    n += g;
  }
  std::vector<uint64_t> hits(group_sizes.size(), 0);
  absl::flat_hash_set<uint64_t> seen;
  for (uint64_t tag : compromised) {
    if (tag >= n) {
      return absl::InvalidArgumentError(
          fmt::format("tag {} outside the {}-tag system", tag, n));
    }
    if (!seen.insert(tag).second) {
      return absl::InvalidArgumentError(
          fmt::format("tag {} compromised twice", tag));
    }
    const size_t g = std::upper_bound(starts.begin(), starts.end(), tag) -
                     starts.begin() - 1;
    ++hits[g];
  }
  std::vector<uint64_t> sizes(compromised.size(), 1);
  uint64_t untouched = 0;
  for (size_t g = 0; g < group_sizes.size(); ++g) {
    if (hits[g] == 0) {
      untouched += group_sizes[g];
    } else if (group_sizes[g] > hits[g]) {
      sizes.push_back(group_sizes[g] - hits[g]);
    }
  }
  if (untouched > 0) sizes.push_back(untouched);
  return Partition::Create(std::move(sizes));
}

}  // namespace cyclic_rfid
