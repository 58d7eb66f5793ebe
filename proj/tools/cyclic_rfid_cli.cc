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

// Command-line entry point: provision | session | attack | simulate.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "cyclic_rfid/commands.h"
#include "cyclic_rfid/run_config.h"

namespace {

using ::cyclic_rfid::CommandOutput;
using ::cyclic_rfid::RunConfig;

std::optional<std::string> GetEnv(std::string_view name) {
  const char* v = std::getenv(std::string(name).c_str());
  if (v == nullptr) return std::nullopt;
  return std::string(v);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cyclic-group RFID authentication simulator"};
  app.require_subcommand(1);

  std::string config_path;
  std::optional<uint64_t> seed;
  std::string mode;
  std::string out_dir;
  app.add_option("--config", config_path, "YAML run configuration");
  app.add_option("--seed", seed, "RNG seed (overrides CYCLIC_RFID_SEED)");
  app.add_option("--mode", mode, "Update mode: paper | resilient");
  app.add_option("--out", out_dir, "Output directory");

  CLI::App* provision =
      app.add_subcommand("provision", "Write table and tags files");
  CLI::App* session =
      app.add_subcommand("session", "Run one session, print the transcript");
  std::string tag = "1:1";
  std::string fault = "none";
  session->add_option("--tag", tag, "Tag selector j:i")->capture_default_str();
  session->add_option("--fault", fault, "none | drop-msgN | flip:N:BIT")
      ->capture_default_str();

  CLI::App* attack = app.add_subcommand("attack", "Run an attack script");
  std::string attack_name;
  std::optional<int64_t> trials;
  attack
      ->add_option(
          "--attack", attack_name,
          "replay | desync:K | mitm[:MSG:BIT] | hygiene | privacy[:NAME]")
      ->required();
  attack->add_option("--trials", trials, "Trials (overrides the config)");

  CLI::App* simulate =
      app.add_subcommand("simulate", "Write privacy curves as CSV");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : cyclic_rfid::kExitConfigError;
  }

  RunConfig config;
  if (!config_path.empty()) {
    absl::StatusOr<RunConfig> loaded = cyclic_rfid::LoadConfigFile(config_path);
    if (!loaded.ok()) {
      std::cerr << loaded.status().message() << "\n";
      return cyclic_rfid::kExitConfigError;
    }
    config = *loaded;
  }
  cyclic_rfid::ConfigOverrides flags;
  flags.seed = seed;
  flags.trials = trials;
  if (!out_dir.empty()) flags.out_dir = out_dir;
  if (!mode.empty()) {
    absl::StatusOr<cyclic_rfid::UpdateMode> m =
        cyclic_rfid::ParseUpdateMode(mode);
    if (!m.ok()) {
      std::cerr << m.status().message() << "\n";
      return cyclic_rfid::kExitConfigError;
    }
    flags.mode = *m;
  }
  absl::StatusOr<RunConfig> effective =
      cyclic_rfid::ApplyOverrides(config, flags, GetEnv);
  if (!effective.ok()) {
    std::cerr << effective.status().message() << "\n";
    return cyclic_rfid::kExitConfigError;
  }

  CommandOutput result;
  if (*provision) {
    result = cyclic_rfid::CmdProvision(*effective);
  } else if (*session) {
    result = cyclic_rfid::CmdSession(*effective, tag, fault);
  } else if (*attack) {
    result = cyclic_rfid::CmdAttack(*effective, attack_name);
  } else if (*simulate) {
    result = cyclic_rfid::CmdSimulate(*effective);
  }
  std::cout << result.out;
  std::cerr << result.err;
  return result.exit_code;
}
