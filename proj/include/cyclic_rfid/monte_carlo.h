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

#ifndef CYCLIC_RFID_MONTE_CARLO_H_
#define CYCLIC_RFID_MONTE_CARLO_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/statusor.h"

namespace cyclic_rfid {

enum class PartitionModel { kProposed, kGroupKeyBaseline };

std::string_view PartitionModelName(PartitionModel model);

struct CurvePoint {
  uint64_t compromised = 0;
  double mean = 0;
  double variance = 0;  // Population variance over the runs.
};

struct PrivacyCurve {
  enum class Metric { kPrivacyLevel, kInfoLeakage };

  Metric metric = Metric::kPrivacyLevel;
  PartitionModel model = PartitionModel::kProposed;
  std::vector<CurvePoint> points;  // Strictly increasing C.
  int runs_averaged = 0;           // Per point; 0 when it varies.
};

struct CurvePair {
  PrivacyCurve privacy;
  PrivacyCurve leakage;
};

struct MonteCarloOptions {
  uint64_t num_tags = 1024;
  // Contiguous tag groups; must sum to num_tags. Only the baseline uses them.
  std::vector<uint64_t> group_sizes;
  // Strictly increasing, each <= num_tags.
  std::vector<uint64_t> compromised_counts;
  int runs = 100;
  uint64_t seed = 1;
  // Average over every C-subset instead of sampling; for small N only.
  bool exhaustive = false;
};

// `groups` equal blocks of num_tags / groups (the remainder spread over the
// first groups).
std::vector<uint64_t> EqualGroupSizes(uint64_t num_tags, uint64_t groups);

// {start, start + step, ...} up to and including `stop`.
std::vector<uint64_t> CompromisedRange(uint64_t start, uint64_t stop,
                                       uint64_t step);

// For every C, draws `runs` uniform C-subsets of the tags, partitions the
// system with `model` and averages both metrics. Run r of point C uses a seed
// derived from (seed, C, r) alone, so results do not depend on evaluation
// order.
absl::StatusOr<CurvePair> RunMonteCarlo(const MonteCarloOptions& options,
                                        PartitionModel model);

// Header `C,privacy_proposed,leakage_proposed[,privacy_baseline,
// leakage_baseline]`, one row per C, six decimals.
absl::StatusOr<std::string> FormatCurvesCsv(const CurvePair& proposed,
                                            const CurvePair* baseline);

}  // namespace cyclic_rfid

#endif  // CYCLIC_RFID_MONTE_CARLO_H_
