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

#include "cyclic_rfid/strategies.h"

#include <cmath>

#include "gtest/gtest.h"
#include "test_util.h"

namespace cyclic_rfid {
namespace {

constexpr int64_t kTrials = 2000;

ExperimentResult RunStrategy(std::string_view name, PairPolicy policy,
                             UpdateMode mode = UpdateMode::kStrictRotation) {
  const StrategyInfo* info = FindStrategy(name);
  EXPECT_NE(info, nullptr) << name;
  ExperimentOptions o;
  o.trials = kTrials;
  o.seed = 5;
  o.policy = policy;
  o.mode = mode;
  absl::StatusOr<ExperimentResult> r = PrivacyExperiment(info->factory, o);
  EXPECT_TRUE(r.ok()) << r.status();
  return r.value_or(ExperimentResult{});
}

TEST(CatalogueTest, NamesAreUniqueAndFindable) {
  const std::vector<StrategyInfo>& all = ShippedStrategies();
  ASSERT_EQ(all.size(), 7u);
  for (const StrategyInfo& s : all) {
    EXPECT_EQ(FindStrategy(s.name), &s);
    EXPECT_FALSE(s.summary.empty());
  }
  for (std::string_view required : {"random-guesser", "alpha-replayer",
                                    "transcript-matcher", "index-correlator"}) {
    EXPECT_NE(FindStrategy(required), nullptr) << required;
  }
  EXPECT_EQ(FindStrategy("oracle"), nullptr);
}

class NoAdvantageTest : public ::testing::TestWithParam<std::string_view> {};

TEST_P(NoAdvantageTest, AdvantageInsideTheInterval) {
  const ExperimentResult r = RunStrategy(GetParam(), PairPolicy::kSameIndex);
  EXPECT_EQ(r.trials, kTrials);
  EXPECT_LT(std::abs(r.advantage()), AdvantageHalfWidth99(kTrials));
}

INSTANTIATE_TEST_SUITE_P(Strategies, NoAdvantageTest,
                         ::testing::Values("random-guesser", "constant-guesser",
                                           "alpha-replayer",
                                           "transcript-matcher",
                                           "index-correlator"));

// The cleartext index separates any two tags with different indices.
TEST(LinkabilityTest, IndexCorrelatorWinsWhenIndicesMayDiffer) {
  const ExperimentResult r = RunStrategy("index-correlator", PairPolicy::kAny);
  EXPECT_EQ(r.successes, kTrials);
}

// An interrupted session leaves R4 unchanged, so the next msg1 repeats alpha.
TEST(LinkabilityTest, StaleAlphaRepeatsAfterAnIncompleteSession) {
  for (UpdateMode mode :
       {UpdateMode::kStrictRotation, UpdateMode::kResilient}) {
    const ExperimentResult r =
        RunStrategy("stale-alpha-tracker", PairPolicy::kSameIndex, mode);
    EXPECT_EQ(r.successes, kTrials);
  }
}

// delta ^ beta reveals (ID ^ R1) mod (inv ^ R2) ^ R1 ^ K, whose most common
// value is tag specific.
TEST(LinkabilityTest, ResidueLinkerBeatsTheCoin) {
  const ExperimentResult r =
      RunStrategy("residue-linker", PairPolicy::kSameIndex);
  EXPECT_GT(r.advantage(), 0.15);
}

}  // namespace
}  // namespace cyclic_rfid
