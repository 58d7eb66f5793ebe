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

#include "cyclic_rfid/run_config.h"

#include <filesystem>
#include <fstream>

#include "gtest/gtest.h"
#include "test_util.h"

namespace cyclic_rfid {
namespace {

EnvLookup Env(std::optional<std::string> seed) {
  return [seed](std::string_view name) -> std::optional<std::string> {
    if (name == kSeedEnvVar) return seed;
    return std::nullopt;
  };
}

TEST(RunConfigTest, DefaultsAreValid) {
  EXPECT_OK(ValidateConfig(RunConfig{}));
}

TEST(RunConfigTest, EmptyDocumentKeepsDefaults) {
  absl::StatusOr<RunConfig> c = ParseConfig("");
  ASSERT_OK(c);
  EXPECT_EQ(*c, RunConfig{});
  c = ParseConfig("{}");
  ASSERT_OK(c);
  EXPECT_EQ(*c, RunConfig{});
}

TEST(RunConfigTest, ParsesEveryKey) {
  absl::StatusOr<RunConfig> c = ParseConfig(R"(
group_order: 12
word_bits: 8
divisors: [6, 4, 3]
mode: resilient
num_tags: 64
groups: 8
compromised: {start: 4, stop: 40, step: 4}
runs: 7
baseline: false
seed: 99
trials: 5
outputs: {dir: /tmp/x, table: t.txt, tags: g.txt, csv: c.csv}
)");
  ASSERT_OK(c);
  EXPECT_EQ(c->group_order, 12u);
  EXPECT_EQ(c->word_bits, 8);
  EXPECT_EQ(c->divisors, (std::vector<uint64_t>{6, 4, 3}));
  EXPECT_EQ(c->mode, UpdateMode::kResilient);
  EXPECT_EQ(c->num_tags, 64u);
  EXPECT_EQ(c->groups, 8u);
  EXPECT_EQ(c->c_start, 4u);
  EXPECT_EQ(c->c_stop, 40u);
  EXPECT_EQ(c->c_step, 4u);
  EXPECT_EQ(c->runs, 7);
  EXPECT_FALSE(c->baseline);
  EXPECT_EQ(c->seed, 99u);
  EXPECT_EQ(c->trials, 5);
  EXPECT_EQ(OutputPath(*c, c->csv_file), "/tmp/x/c.csv");
  EXPECT_EQ(c->table_file, "t.txt");
  EXPECT_EQ(c->tags_file, "g.txt");
}

TEST(RunConfigTest, RoundTrips) {
  RunConfig c;
  c.group_order = 12;
  c.word_bits = 8;
  c.divisors = {6, 3};
  c.mode = UpdateMode::kResilient;
  c.baseline = false;
  c.seed = 12345678901234ull;
  c.out_dir = "out dir";
  absl::StatusOr<RunConfig> back = ParseConfig(SerializeConfig(c));
  ASSERT_OK(back);
  EXPECT_EQ(*back, c);
  EXPECT_EQ(*ParseConfig(SerializeConfig(RunConfig{})), RunConfig{});
}

TEST(RunConfigTest, RejectsUnknownKeysAndBadValues) {
  for (std::string_view yaml : {
           "colour: blue",
           "compromised: {begin: 1}",
           "outputs: {file: x}",
           "group_order: -4",
           "group_order: twelve",
           "word_bits: 70",
           "divisors: 4",
           "divisors: [1024]",
           "divisors: [32, 5]",
           "mode: sloppy",
           "baseline: maybe",
           "runs: 0",
           "trials: 0",
           "groups: 0",
           "groups: 2000",
           "compromised: {start: 10, stop: 5}",
           "compromised: {stop: 2000}",
           "compromised: {step: 0}",
           "outputs: {csv: ''}",
           "group_order: 12\nword_bits: 2\ndivisors: [6, 4, 3]",
           "[1, 2]",
           "group_order: [",
       }) {
    EXPECT_FALSE(ParseConfig(yaml).ok()) << yaml;
  }
}

TEST(RunConfigTest, LoadsFiles) {
  const std::filesystem::path path =
      std::filesystem::path(::testing::TempDir()) / "run_config_test.yaml";
  std::ofstream(path) << "seed: 7\n";
  absl::StatusOr<RunConfig> c = LoadConfigFile(path.string());
  ASSERT_OK(c);
  EXPECT_EQ(c->seed, 7u);
  EXPECT_EQ(LoadConfigFile((path.string() + ".missing")).status().code(),
            absl::StatusCode::kNotFound);
}

TEST(OverridesTest, FlagsBeatEnvironmentBeatFile) {
  RunConfig file;
  file.seed = 3;
  EXPECT_EQ(ApplyOverrides(file, {}, Env(std::nullopt))->seed, 3u);
  EXPECT_EQ(ApplyOverrides(file, {}, nullptr)->seed, 3u);
  EXPECT_EQ(ApplyOverrides(file, {}, Env("11"))->seed, 11u);
  ConfigOverrides flags;
  flags.seed = 17;
  EXPECT_EQ(ApplyOverrides(file, flags, Env("11"))->seed, 17u);
  EXPECT_FALSE(ApplyOverrides(file, {}, Env("eleven")).ok());
  EXPECT_FALSE(ApplyOverrides(file, {}, Env("-1")).ok());
}

TEST(OverridesTest, OtherFlagsAndRevalidation) {
  ConfigOverrides flags;
  flags.mode = UpdateMode::kResilient;
  flags.out_dir = "/tmp/o";
  flags.trials = 9;
  absl::StatusOr<RunConfig> c = ApplyOverrides(RunConfig{}, flags, nullptr);
  ASSERT_OK(c);
  EXPECT_EQ(c->mode, UpdateMode::kResilient);
  EXPECT_EQ(c->out_dir, "/tmp/o");
  EXPECT_EQ(c->trials, 9);
  flags.trials = 0;
  EXPECT_FALSE(ApplyOverrides(RunConfig{}, flags, nullptr).ok());
}

TEST(OutputPathTest, AbsolutePathsWin) {
  RunConfig c;
  c.out_dir = "results";
  EXPECT_EQ(OutputPath(c, "table.txt"), "results/table.txt");
  EXPECT_EQ(OutputPath(c, "/abs/table.txt"), "/abs/table.txt");
}

}  // namespace
}  // namespace cyclic_rfid
