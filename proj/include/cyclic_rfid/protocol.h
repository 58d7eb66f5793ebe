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

// The four-message mutual authentication between a tag and the reader.
//
//   msg1  T -> R  {i, alpha}     alpha = inv ^ R4
//   msg2  R -> T  {beta, gamma}  beta = R1 ^ K, gamma = R2 ^ K
//   msg3  T -> R  {delta}        delta = (ID ^ R1) mod (inv ^ R2)
//   msg4  R -> T  {zeta, eta}    zeta = R3 ^ K, eta = (ID ^ R3) mod (inv ^ R1)
//
// The reader resolves msg1 by checking the row with index i in each subgroup
// against both stored nonces, so at most gamma rows are examined. After a
// valid msg3 it rotates the row nonces (r_old <- r_new, r_new <- R3); the
// tag adopts R3 as its next R4 only after verifying msg4.

#ifndef CYCLIC_RFID_PROTOCOL_H_
#define CYCLIC_RFID_PROTOCOL_H_

#include <cstdint>
#include <optional>
#include <string_view>
#include <variant>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "cyclic_rfid/lword.h"
#include "cyclic_rfid/prng.h"
#include "cyclic_rfid/registry.h"

namespace cyclic_rfid {

struct Msg1 {
  uint64_t index = 0;
  LWord alpha;
  friend bool operator==(const Msg1&, const Msg1&) = default;
};

struct Msg2 {
  LWord beta;
  LWord gamma;
  friend bool operator==(const Msg2&, const Msg2&) = default;
};

struct Msg3 {
  LWord delta;
  friend bool operator==(const Msg3&, const Msg3&) = default;
};

struct Msg4 {
  LWord zeta;
  LWord eta;
  friend bool operator==(const Msg4&, const Msg4&) = default;
};

using Message = std::variant<Msg1, Msg2, Msg3, Msg4>;

// Wire type code (1..4) of a message.
int MessageType(const Message& m);

enum class UpdateMode {
  // r_old <- r_new, r_new <- R3 after every accepted msg3.
  kStrictRotation,
  // As above, except that a session resolved through r_old keeps r_old and
  // only replaces r_new, so the tag's last confirmed nonce stays valid.
  kResilient,
};

std::string_view UpdateModeName(UpdateMode mode);
absl::StatusOr<UpdateMode> ParseUpdateMode(std::string_view name);

// --- Tag side -------------------------------------------------------------

// Step 1. Starts (or restarts) a session; non-volatile memory is untouched.
Msg1 TagBegin(TagState& tag);

// Step 3. Requires a preceding TagBegin. Returns kAborted when the modulus
// inv ^ R2 is zero, which an honest reader never produces.
absl::StatusOr<Msg3> TagOnMsg2(TagState& tag, const Msg2& msg);

// Step 5. Requires a preceding TagOnMsg2. On a valid eta the tag stores R3
// as its new R4; otherwise R4 is left unchanged and kUnauthenticated is
// returned. The session memory is cleared either way.
absl::Status TagOnMsg4(TagState& tag, const Msg4& msg);

// --- Reader side ----------------------------------------------------------

enum class NonceSlot { kOld, kNew };

struct Candidate {
  TagKey key;
  NonceSlot matched_on = NonceSlot::kNew;
  friend bool operator==(const Candidate&, const Candidate&) = default;
};

// Reader state for one session, from msg1 to msg4.
class ReaderSession {
 public:
  enum class Phase { kAwaitingMsg1, kAwaitingMsg3, kDone, kFailed };

  explicit ReaderSession(UpdateMode mode = UpdateMode::kStrictRotation)
      : mode_(mode) {}

  // Step 2. Every subgroup holding index i is checked once; all matching
  // rows become candidates in table order and the first is answered. The
  // table is only read. Rejects (kUnauthenticated) on an out-of-range index
  // or when no row matches.
  absl::StatusOr<Msg2> OnMsg1(const ServerTable& table, const Msg1& msg,
                              NonceSource& rng);

  // Step 4. Verifies delta against the candidates in order. On success the
  // matched row's nonces are rotated and msg4 is returned; on failure the
  // table is left untouched.
  absl::StatusOr<Msg4> OnMsg3(ServerTable& table, const Msg3& msg,
                              NonceSource& rng);

  Phase phase() const { return phase_; }
  UpdateMode mode() const { return mode_; }
  int checks_performed() const { return checks_performed_; }
  const std::vector<Candidate>& candidates() const { return candidates_; }
  size_t active_candidate() const { return active_; }

  // Row authenticated by a successful msg3, if any.
  std::optional<TagKey> authenticated() const { return authenticated_; }

  LWord r1() const { return r1_; }
  LWord r2() const { return r2_; }
  LWord r3() const { return r3_; }

 private:
  absl::Status Fail(absl::Status status);

  UpdateMode mode_;
  Phase phase_ = Phase::kAwaitingMsg1;
  std::vector<Candidate> candidates_;
  size_t active_ = 0;
  int checks_performed_ = 0;
  Msg2 sent_;
  LWord r1_, r2_, r3_;
  std::optional<TagKey> authenticated_;
};

// Draws a nonce R with (inv ^ R) outside {0, 1}, so the derived modulus is
// neither undefined nor trivial.
LWord DrawModulusSafeNonce(LWord inv_word, NonceSource& rng);

// (x ^ mask) mod (inv ^ pad); empty on a zero modulus.
std::optional<LWord> MaskedResidue(LWord x, LWord mask, LWord inv, LWord pad);

}  // namespace cyclic_rfid

#endif  // CYCLIC_RFID_PROTOCOL_H_
