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

// Scripted attacks against the protocol engine and the randomized
// state-hygiene property run.

#ifndef CYCLIC_RFID_ATTACKS_H_
#define CYCLIC_RFID_ATTACKS_H_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "cyclic_rfid/protocol.h"
#include "cyclic_rfid/registry.h"

namespace cyclic_rfid {

struct AttackSetup {
  uint64_t group_order = 12;
  int word_bits = 8;
  std::vector<uint64_t> divisors = {6, 4, 3};
  uint64_t seed = 1;
  UpdateMode mode = UpdateMode::kStrictRotation;
};

// One report line: `attack target trials failures verdict`. `failures`
// counts trials that broke the attack's expectation.
struct AttackReport {
  std::string attack;
  std::string target;
  int64_t trials = 0;
  int64_t failures = 0;
  std::string verdict;
};

std::string FormatReport(std::span<const AttackReport> reports);

// Records honest sessions with a random tag, then replays:
//   replay-msg1-prev   last msg1, followed by last msg3, to the reader
//   replay-msg1-stale  msg1 from two sessions back to the reader
//   replay-msg3        last msg3 after a fresh msg1
//   replay-msg4        last msg4 into a fresh tag session
//   replay-msg2-msg4   last msg2 then last msg4 to the tag
// Each line fails on any trial where the forged side accepts, or where the
// reader does not answer/refuse msg1 as the update rule predicts.
absl::StatusOr<std::vector<AttackReport>> ReplayAttack(const AttackSetup& setup,
                                                       int64_t trials);

struct DesyncResult {
  int64_t trials = 0;
  int64_t recovered = 0;  // Honest follow-up session succeeded.
};

// Drops msg4 in `losses` consecutive sessions with one tag, then runs one
// honest session. Each trial uses a freshly provisioned system.
absl::StatusOr<DesyncResult> DesyncAttack(const AttackSetup& setup, int losses,
                                          int64_t trials);

// failures counts trials that did not recover; the verdict is recovered,
// desynchronized (none recovered) or partial.
AttackReport DesyncReport(const AttackSetup& setup, int losses,
                          const DesyncResult& result);

struct MitmResult {
  int64_t sessions = 0;
  int64_t mutual_success = 0;
  // Sessions after which the tag's nonce matched neither server slot.
  int64_t desynchronized = 0;
  // Sessions after which CheckPairing failed.
  int64_t pairing_broken = 0;
};

// Flips payload bit `bit` of message type `message_type` in `sessions`
// sessions, each with a random tag at a fresh point in its history.
absl::StatusOr<MitmResult> MitmAttack(const AttackSetup& setup,
                                      int message_type, int bit,
                                      int64_t sessions);

// Every tag, every message type and every payload bit, `sessions_per_flip`
// times each. Results are indexed by message type - 1.
absl::StatusOr<std::vector<MitmResult>> MitmSweep(const AttackSetup& setup,
                                                  int64_t sessions_per_flip);

// `trials` sessions with one uniformly random bit flipped in one uniformly
// random message.
absl::StatusOr<MitmResult> MitmRandom(const AttackSetup& setup, int64_t trials);

struct HygieneResult {
  int64_t steps = 0;
  int64_t pairing_violations = 0;
  // Steps whose failed paths changed a row or a tag nonce.
  int64_t purity_violations = 0;
  // Tags out of sync with their row when the run ends.
  int64_t desynchronized_tags = 0;
  int64_t reader_accepts = 0;
  int64_t tag_accepts = 0;
};

// Random interleaving of honest sessions, drops, flips, replays and forged
// messages across all tags of one system.
absl::StatusOr<HygieneResult> StateHygieneFuzz(const AttackSetup& setup,
                                               int64_t steps);

// True when the tag's nonce equals r_old or r_new of its row.
bool InSync(const ServerTable& table, const TagState& tag);

}  // namespace cyclic_rfid

#endif  // CYCLIC_RFID_ATTACKS_H_
