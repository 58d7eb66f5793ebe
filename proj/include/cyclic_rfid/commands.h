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

// The command layer behind the command-line tool. Each command returns its
// output and exit code instead of printing, so tests can drive it directly.

#ifndef CYCLIC_RFID_COMMANDS_H_
#define CYCLIC_RFID_COMMANDS_H_

#include <string>
#include <string_view>

#include "absl/status/statusor.h"
#include "cyclic_rfid/registry.h"
#include "cyclic_rfid/run_config.h"

namespace cyclic_rfid {

inline constexpr int kExitOk = 0;
inline constexpr int kExitProtocolFailure = 1;
inline constexpr int kExitConfigError = 2;

struct CommandOutput {
  int exit_code = kExitOk;
  std::string out;
  std::string err;
};

// "j:i" with decimal subgroup label and index.
absl::StatusOr<TagKey> ParseTagSelector(std::string_view text);

// Writes the table and tags exports under the output directory.
CommandOutput CmdProvision(const RunConfig& config);

// Provisions from the seed and runs one session with the selected tag under
// `fault`. Prints the transcript and an outcome line; exits 0 only on
// mutual_success.
CommandOutput CmdSession(const RunConfig& config, std::string_view tag,
                         std::string_view fault);

// replay | desync:K | mitm | mitm:MSG:BIT | hygiene | privacy | privacy:NAME.
// `config.trials` sets the trial count (sessions per flip for mitm, steps for
// hygiene). Prints report lines and exits 1 if any line's verdict is fail.
CommandOutput CmdAttack(const RunConfig& config, std::string_view attack);

// Writes the proposed-scheme curves (and the baseline when enabled) as CSV.
CommandOutput CmdSimulate(const RunConfig& config);

}  // namespace cyclic_rfid

#endif  // CYCLIC_RFID_COMMANDS_H_
