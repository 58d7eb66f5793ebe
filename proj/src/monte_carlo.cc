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

#include "cyclic_rfid/monte_carlo.h"

#include <numeric>

#include "absl/status/status.h"
#include "cyclic_rfid/privacy_metrics.h"
#include "cyclic_rfid/prng.h"
#include "fmt/format.h"

namespace cyclic_rfid {

std::string_view PartitionModelName(PartitionModel model) {
  return model == PartitionModel::kProposed ? "proposed" : "baseline";
}

std::vector<uint64_t> EqualGroupSizes(uint64_t num_tags, uint64_t groups) {
  if (groups == 0) return {};
  std::vector<uint64_t> sizes(groups, num_tags / groups);
  for (uint64_t g = 0; g < num_tags % groups; ++g) ++sizes[g];
  return sizes;
}

std::vector<uint64_t> CompromisedRange(uint64_t start, uint64_t stop,
                                       uint64_t step) {
  std::vector<uint64_t> out;
  if (step == 0) return out;
  for (uint64_t c = start; c <= stop; c += step) out.push_back(c);
  return out;
}

namespace {

// Welford accumulator.
struct Moments {
  uint64_t count = 0;
  double mean = 0;
  double m2 = 0;

  void Add(double x) {
    ++count;
    const double d = x - mean;
    mean += d / static_cast<double>(count);
    m2 += d * (x - mean);
  }
  double variance() const {
    return count == 0 ? 0 : m2 / static_cast<double>(count);
  }
};

absl::Status Validate(const MonteCarloOptions& o, PartitionModel model) {
  if (o.num_tags == 0) return absl::InvalidArgumentError("no tags");
  if (!o.exhaustive && o.runs < 1) {
    return absl::InvalidArgumentError("runs must be at least 1");
  }
  for (size_t k = 0; k < o.compromised_counts.size(); ++k) {
    if (o.compromised_counts[k] > o.num_tags) {
      return absl::InvalidArgumentError(fmt::format(
          "C={} exceeds N={}", o.compromised_counts[k], o.num_tags));
    }
    if (k > 0 && o.compromised_counts[k] <= o.compromised_counts[k - 1]) {
      return absl::InvalidArgumentError("C values must strictly increase");
    }
  }
  if (model == PartitionModel::kGroupKeyBaseline) {
    const uint64_t sum = std::accumulate(o.group_sizes.begin(),
                                         o.group_sizes.end(), uint64_t{0});
    if (sum != o.num_tags) {
      return absl::InvalidArgumentError(
          fmt::format("group sizes sum to {}, expected {}", sum, o.num_tags));
    }
  }
  return absl::OkStatus();
}

struct Evaluator {
  const MonteCarloOptions& o;
  PartitionModel model;
  Moments privacy, leakage;

  absl::Status Add(std::span<const uint64_t> compromised) {
    absl::StatusOr<Partition> p =
        model == PartitionModel::kProposed
            ? PartitionProposed(o.num_tags, compromised)
            : PartitionGroupKeyBaseline(o.group_sizes, compromised);
    if (!p.ok()) return p.status();
    absl::StatusOr<double> r = PrivacyLevel(*p, o.num_tags);
    absl::StatusOr<double> i = InfoLeakage(*p, o.num_tags);
    if (!r.ok()) return r.status();
    if (!i.ok()) return i.status();
    privacy.Add(*r);
    leakage.Add(*i);
    return absl::OkStatus();
  }
};

// Visits every C-combination of [0, n) in lexicographic order.
template <typename Fn>
absl::Status ForEachCombination(uint64_t n, uint64_t c, Fn fn) {
  std::vector<uint64_t> pick(c);
  std::iota(pick.begin(), pick.end(), uint64_t{0});
  while (true) {
    if (absl::Status s = fn(std::span<const uint64_t>(pick)); !s.ok()) {
      return s;
    }
    int64_t k = static_cast<int64_t>(c) - 1;
    while (k >= 0 && pick[k] == n - c + k) --k;
    if (k < 0) return absl::OkStatus();
    ++pick[k];
    for (uint64_t j = k + 1; j < c; ++j) pick[j] = pick[j - 1] + 1;
  }
}

}  // namespace

absl::StatusOr<CurvePair> RunMonteCarlo(const MonteCarloOptions& o,
                                        PartitionModel model) {
  if (absl::Status s = Validate(o, model); !s.ok()) return s;
  CurvePair out;
  out.privacy.metric = PrivacyCurve::Metric::kPrivacyLevel;
  out.leakage.metric = PrivacyCurve::Metric::kInfoLeakage;
  out.privacy.model = out.leakage.model = model;
  out.privacy.runs_averaged = out.leakage.runs_averaged =
      o.exhaustive ? 0 : o.runs;

  std::vector<uint64_t> tags(o.num_tags);
  for (uint64_t c : o.compromised_counts) {
    Evaluator eval{o, model, {}, {}};
    if (o.exhaustive) {
      absl::Status s = ForEachCombination(
          o.num_tags, c,
          [&](std::span<const uint64_t> pick) { return eval.Add(pick); });
      if (!s.ok()) return s;
    } else {
      for (int run = 0; run < o.runs; ++run) {
        Prng rng(MixSeed(MixSeed(o.seed, c), static_cast<uint64_t>(run)));
        std::iota(tags.begin(), tags.end(), uint64_t{0});
        // Partial Fisher-Yates: the first c slots are a uniform c-subset.
        for (uint64_t k = 0; k < c; ++k) {
          std::swap(tags[k], tags[k + rng.Below(o.num_tags - k)]);
        }
        absl::Status s = eval.Add(std::span<const uint64_t>(tags.data(), c));
        if (!s.ok()) return s;
      }
    }
    out.privacy.points.push_back(
        {c, eval.privacy.mean, eval.privacy.variance()});
    out.leakage.points.push_back(
        {c, eval.leakage.mean, eval.leakage.variance()});
  }
  return out;
}

absl::StatusOr<std::string> FormatCurvesCsv(const CurvePair& proposed,
                                            const CurvePair* baseline) {
  const size_t rows = proposed.privacy.points.size();
  if (proposed.leakage.points.size() != rows ||
      (baseline != nullptr && (baseline->privacy.points.size() != rows ||
                               baseline->leakage.points.size() != rows))) {
    return absl::InvalidArgumentError("curves have different lengths");
  }
  std::string out = "C,privacy_proposed,leakage_proposed";
  if (baseline != nullptr) out += ",privacy_baseline,leakage_baseline";
  out += "\n";
  for (size_t k = 0; k < rows; ++k) {
    const uint64_t c = proposed.privacy.points[k].compromised;
    fmt::format_to(std::back_inserter(out), "{},{:.6f},{:.6f}", c,
                   proposed.privacy.points[k].mean,
                   proposed.leakage.points[k].mean);
    if (baseline != nullptr) {
      if (baseline->privacy.points[k].compromised != c) {
        return absl::InvalidArgumentError("curves sample different C values");
      }
      fmt::format_to(std::back_inserter(out), ",{:.6f},{:.6f}",
                     baseline->privacy.points[k].mean,
                     baseline->leakage.points[k].mean);
    }
    out += "\n";
  }
  return out;
}

}  // namespace cyclic_rfid
