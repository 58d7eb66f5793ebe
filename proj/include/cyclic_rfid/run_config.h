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

// Run configuration for the command-line tool, stored as YAML.

#ifndef CYCLIC_RFID_RUN_CONFIG_H_
#define CYCLIC_RFID_RUN_CONFIG_H_

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "cyclic_rfid/protocol.h"

namespace cyclic_rfid {

inline constexpr std::string_view kSeedEnvVar = "CYCLIC_RFID_SEED";

struct RunConfig {
  // Protocol system.
  uint64_t group_order = 1024;
  int word_bits = 32;
  std::vector<uint64_t> divisors = {32, 16, 8, 4};
  UpdateMode mode = UpdateMode::kStrictRotation;

  // Privacy simulation.
  uint64_t num_tags = 1024;
  uint64_t groups = 32;
  uint64_t c_start = 0;
  uint64_t c_stop = 600;
  uint64_t c_step = 60;
  int runs = 100;
  bool baseline = true;

  uint64_t seed = 1;
  int64_t trials = 100;

  // Outputs, relative to out_dir unless absolute.
  std::string out_dir = ".";
  std::string table_file = "table.txt";
  std::string tags_file = "tags.txt";
  std::string csv_file = "curves.csv";

  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

// Checks every downstream precondition: the group and divisor list build a
// server table, N splits into the groups, and the C range fits in [0, N].
absl::Status ValidateConfig(const RunConfig& config);

// Parses YAML text. Unknown keys are rejected; missing keys keep defaults.
// The result is validated.
absl::StatusOr<RunConfig> ParseConfig(std::string_view yaml);
absl::StatusOr<RunConfig> LoadConfigFile(const std::string& path);

// Emits every field; ParseConfig(SerializeConfig(c)) == c.
std::string SerializeConfig(const RunConfig& config);

struct ConfigOverrides {
  std::optional<uint64_t> seed;
  std::optional<UpdateMode> mode;
  std::optional<std::string> out_dir;
  std::optional<int64_t> trials;
};

// Applies the seed from the environment, then the flags, and revalidates.
// `getenv` returns nullopt for unset variables.
using EnvLookup = std::function<std::optional<std::string>(std::string_view)>;
absl::StatusOr<RunConfig> ApplyOverrides(RunConfig config,
                                         const ConfigOverrides& flags,
                                         const EnvLookup& getenv);

std::string OutputPath(const RunConfig& config, const std::string& file);

}  // namespace cyclic_rfid

#endif  // CYCLIC_RFID_RUN_CONFIG_H_
