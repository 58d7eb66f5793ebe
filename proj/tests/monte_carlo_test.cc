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

#include <cmath>
#include <functional>

#include "cyclic_rfid/privacy_metrics.h"
#include "gtest/gtest.h"
#include "test_util.h"

namespace cyclic_rfid {
namespace {

double Choose(uint64_t n, uint64_t k) {
  double r = 1;
  for (uint64_t j = 1; j <= k; ++j) r = r * static_cast<double>(n - k + j) / j;
  return r;
}

struct Expectation {
  double privacy = 0;
  double leakage = 0;
};

// Baseline expectation by summing over hit counts per group with their
// multivariate hypergeometric weights.
Expectation BaselineOracle(const std::vector<uint64_t>& groups, uint64_t c) {
  uint64_t n = 0;
  for (uint64_t g : groups) n += g;
  Expectation e;
  std::vector<uint64_t> hits(groups.size());
  std::function<void(size_t, uint64_t)> walk = [&](size_t g, uint64_t left) {
    if (g == groups.size()) {
      if (left != 0) return;
      double weight = 1;
      std::vector<double> blocks(c, 1.0);
      double untouched = 0;
      for (size_t k = 0; k < groups.size(); ++k) {
        weight *= Choose(groups[k], hits[k]);
        if (hits[k] == 0) {
          untouched += groups[k];
        } else if (groups[k] > hits[k]) {
          blocks.push_back(groups[k] - hits[k]);
        }
      }
      if (untouched > 0) blocks.push_back(untouched);
      weight /= Choose(n, c);
      double r = 0, i = 0;
      for (double b : blocks) {
        r += b * b;
        i += b / n * std::log2(n / b);
      }
      e.privacy += weight * r / (static_cast<double>(n) * n);
      e.leakage += weight * i;
      return;
    }
    for (uint64_t h = 0; h <= std::min(left, groups[g]); ++h) {
      hits[g] = h;
      walk(g + 1, left - h);
    }
  };
  walk(0, c);
  return e;
}

TEST(HelpersTest, EqualGroupSizesAndRange) {
  EXPECT_EQ(EqualGroupSizes(10, 3), (std::vector<uint64_t>{4, 3, 3}));
  EXPECT_EQ(EqualGroupSizes(1024, 32), std::vector<uint64_t>(32, 32));
  EXPECT_TRUE(EqualGroupSizes(4, 0).empty());
  EXPECT_EQ(CompromisedRange(0, 600, 60).size(), 11u);
  EXPECT_EQ(CompromisedRange(0, 600, 60).back(), 600u);
  EXPECT_EQ(CompromisedRange(5, 9, 3), (std::vector<uint64_t>{5, 8}));
  EXPECT_TRUE(CompromisedRange(0, 10, 0).empty());
}

TEST(MonteCarloTest, ProposedCurveIsTheClosedFormWithZeroVariance) {
  MonteCarloOptions o;
  o.compromised_counts = CompromisedRange(0, 600, 60);
  absl::StatusOr<CurvePair> curves =
      RunMonteCarlo(o, PartitionModel::kProposed);
  ASSERT_OK(curves);
  ASSERT_EQ(curves->privacy.points.size(), 11u);
  EXPECT_EQ(curves->privacy.runs_averaged, 100);
  for (size_t k = 0; k < 11; ++k) {
    const CurvePoint& r = curves->privacy.points[k];
    const CurvePoint& i = curves->leakage.points[k];
    EXPECT_EQ(r.mean, *PrivacyLevelClosed(1024, r.compromised));
    EXPECT_EQ(r.variance, 0.0);
    EXPECT_EQ(i.variance, 0.0);
    if (i.compromised < 1024) {
      EXPECT_NEAR(i.mean, *InfoLeakageClosed(1024, i.compromised), 1e-12);
    }
  }
}

TEST(MonteCarloTest, SmallBaselineMatchesEnumeration) {
  MonteCarloOptions o;
  o.num_tags = 8;
  o.group_sizes = {4, 4};
  o.compromised_counts = {1};
  o.runs = 4000;
  absl::StatusOr<CurvePair> curves =
      RunMonteCarlo(o, PartitionModel::kGroupKeyBaseline);
  ASSERT_OK(curves);
  const CurvePoint& p = curves->privacy.points[0];
  EXPECT_DOUBLE_EQ(BaselineOracle(o.group_sizes, 1).privacy, 0.40625);
  // Every single-tag choice gives the same partition.
  EXPECT_NEAR(p.mean, 0.40625, 1e-12);
  EXPECT_NEAR(p.variance, 0.0, 1e-12);
}

TEST(MonteCarloTest, SampledBaselineIsWithinThreeSigma) {
  MonteCarloOptions o;
  o.num_tags = 12;
  o.group_sizes = {5, 4, 3};
  o.compromised_counts = {2, 5};
  o.runs = 5000;
  absl::StatusOr<CurvePair> curves =
      RunMonteCarlo(o, PartitionModel::kGroupKeyBaseline);
  ASSERT_OK(curves);
  for (const CurvePoint& p : curves->privacy.points) {
    const double sigma = std::sqrt(p.variance / o.runs);
    EXPECT_NEAR(p.mean, BaselineOracle(o.group_sizes, p.compromised).privacy,
                3 * sigma + 1e-12);
  }
}

TEST(MonteCarloTest, ExhaustiveAgreesWithOracleUpTo12Tags) {
  const std::vector<std::vector<uint64_t>> layouts = {
      {4, 4}, {3, 3, 3}, {5, 4, 3}, {2, 2, 2, 2, 2, 2}, {1, 11}, {12}};
  for (const std::vector<uint64_t>& groups : layouts) {
    MonteCarloOptions o;
    for (uint64_t g : groups) o.num_tags += g;
    o.num_tags -= 1024;
    o.group_sizes = groups;
    o.compromised_counts = CompromisedRange(0, o.num_tags, 1);
    o.exhaustive = true;
    absl::StatusOr<CurvePair> base =
        RunMonteCarlo(o, PartitionModel::kGroupKeyBaseline);
    absl::StatusOr<CurvePair> prop =
        RunMonteCarlo(o, PartitionModel::kProposed);
    ASSERT_OK(base);
    ASSERT_OK(prop);
    EXPECT_EQ(base->privacy.runs_averaged, 0);
    for (size_t k = 0; k < o.compromised_counts.size(); ++k) {
      const uint64_t c = o.compromised_counts[k];
      const Expectation e = BaselineOracle(groups, c);
      EXPECT_NEAR(base->privacy.points[k].mean, e.privacy, 1e-12);
      EXPECT_NEAR(base->leakage.points[k].mean, e.leakage, 1e-12);
      EXPECT_NEAR(prop->privacy.points[k].mean,
                  *PrivacyLevelClosed(o.num_tags, c), 1e-12);
    }
  }
}

TEST(MonteCarloTest, DeterministicPerSeed) {
  MonteCarloOptions o;
  o.group_sizes = EqualGroupSizes(1024, 32);
  o.compromised_counts = {10, 300};
  o.runs = 20;
  const CurvePair a = *RunMonteCarlo(o, PartitionModel::kGroupKeyBaseline);
  const CurvePair b = *RunMonteCarlo(o, PartitionModel::kGroupKeyBaseline);
  EXPECT_EQ(a.privacy.points[1].mean, b.privacy.points[1].mean);
  // Point C is independent of the other sampled C values.
  o.compromised_counts = {300};
  const CurvePair c = *RunMonteCarlo(o, PartitionModel::kGroupKeyBaseline);
  EXPECT_EQ(a.privacy.points[1].mean, c.privacy.points[0].mean);
  o.seed = 2;
  const CurvePair d = *RunMonteCarlo(o, PartitionModel::kGroupKeyBaseline);
  EXPECT_NE(c.privacy.points[0].mean, d.privacy.points[0].mean);
}

TEST(MonteCarloTest, ValidatesOptions) {
  MonteCarloOptions o;
  o.compromised_counts = {5, 5};
  EXPECT_FALSE(RunMonteCarlo(o, PartitionModel::kProposed).ok());
  o.compromised_counts = {2000};
  EXPECT_FALSE(RunMonteCarlo(o, PartitionModel::kProposed).ok());
  o.compromised_counts = {5};
  o.runs = 0;
  EXPECT_FALSE(RunMonteCarlo(o, PartitionModel::kProposed).ok());
  o.runs = 1;
  o.group_sizes = {1000};
  EXPECT_FALSE(RunMonteCarlo(o, PartitionModel::kGroupKeyBaseline).ok());
  o.num_tags = 0;
  EXPECT_FALSE(RunMonteCarlo(o, PartitionModel::kProposed).ok());
}

TEST(CsvTest, Format) {
  MonteCarloOptions o;
  o.group_sizes = EqualGroupSizes(1024, 32);
  o.compromised_counts = {0, 600};
  o.runs = 3;
  const CurvePair prop = *RunMonteCarlo(o, PartitionModel::kProposed);
  const CurvePair base = *RunMonteCarlo(o, PartitionModel::kGroupKeyBaseline);
  absl::StatusOr<std::string> with = FormatCurvesCsv(prop, &base);
  ASSERT_OK(with);
  EXPECT_TRUE(with->starts_with(
      "C,privacy_proposed,leakage_proposed,privacy_baseline,leakage_baseline\n"
      "0,1.000000,0.000000,1.000000,0.000000\n600,0.172020,6.386095,"));
  absl::StatusOr<std::string> alone = FormatCurvesCsv(prop, nullptr);
  ASSERT_OK(alone);
  EXPECT_EQ(*alone,
            "C,privacy_proposed,leakage_proposed\n0,1.000000,0.000000\n"
            "600,0.172020,6.386095\n");
  CurvePair short_base = base;
  short_base.privacy.points.pop_back();
  EXPECT_FALSE(FormatCurvesCsv(prop, &short_base).ok());
}

}  // namespace
}  // namespace cyclic_rfid
