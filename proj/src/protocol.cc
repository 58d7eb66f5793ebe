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

#include "cyclic_rfid/protocol.h"

#include "fmt/format.h"

namespace cyclic_rfid {

int MessageType(const Message& m) { return static_cast<int>(m.index()) + 1; }

std::string_view UpdateModeName(UpdateMode mode) {
  return mode == UpdateMode::kResilient ? "resilient" : "paper";
}

absl::StatusOr<UpdateMode> ParseUpdateMode(std::string_view name) {
  if (name == "paper") return UpdateMode::kStrictRotation;
  if (name == "resilient") return UpdateMode::kResilient;
  return absl::InvalidArgumentError(
      fmt::format("unknown update mode '{}' (paper|resilient)", name));
}

std::optional<LWord> MaskedResidue(LWord x, LWord mask, LWord inv, LWord pad) {
  return (x ^ mask).Mod(inv ^ pad);
}

LWord DrawModulusSafeNonce(LWord inv_word, NonceSource& rng) {
  LWord r;
  do {
    r = rng.NextNonce(inv_word.width());
  } while ((inv_word ^ r).value() <= 1);
  return r;
}

// ---------------------------------------------------------------------------
// Tag

Msg1 TagBegin(TagState& tag) {
  tag.session = TagSessionMemory{TagSessionMemory::Phase::kSentMsg1, {}};
  return Msg1{tag.index, tag.inv_word ^ tag.r4};
}

absl::StatusOr<Msg3> TagOnMsg2(TagState& tag, const Msg2& msg) {
  if (tag.session.phase != TagSessionMemory::Phase::kSentMsg1) {
    return absl::FailedPreconditionError("tag did not send msg1");
  }
  const int w = tag.key.width();
  if (msg.beta.width() != w || msg.gamma.width() != w) {
    tag.session = {};
    return absl::InvalidArgumentError("msg2 word width mismatch");
  }
  const LWord r1 = msg.beta ^ tag.key;
  const LWord r2 = msg.gamma ^ tag.key;
  std::optional<LWord> delta = MaskedResidue(tag.id, r1, tag.inv_word, r2);
  if (!delta) {
    tag.session = {};
    return absl::AbortedError("msg2 yields a zero modulus");
  }
  tag.session = TagSessionMemory{TagSessionMemory::Phase::kSentMsg3, r1};
  return Msg3{*delta};
}

absl::Status TagOnMsg4(TagState& tag, const Msg4& msg) {
  if (tag.session.phase != TagSessionMemory::Phase::kSentMsg3) {
    return absl::FailedPreconditionError("tag did not send msg3");
  }
  const LWord r1 = tag.session.r1;
  tag.session = {};
  const int w = tag.key.width();
  if (msg.zeta.width() != w || msg.eta.width() != w) {
    return absl::InvalidArgumentError("msg4 word width mismatch");
  }
  const LWord r3 = msg.zeta ^ tag.key;
  const LWord modulus = tag.inv_word ^ r1;
  if (modulus.value() == 0) {
    return absl::AbortedError("msg4 check has a zero modulus");
  }
  if (msg.eta >= modulus) {
    return absl::UnauthenticatedError("eta is not reduced");
  }
  if (*MaskedResidue(tag.id, r3, tag.inv_word, r1) != msg.eta) {
    return absl::UnauthenticatedError("eta mismatch; reader not authenticated");
  }
  tag.r4 = r3;
  return absl::OkStatus();
}

// ---------------------------------------------------------------------------
// Reader

namespace {

LWord InverseWord(const ServerTable& table, const SubgroupHandle& h,
                  uint64_t index) {
  // Callers only pass provisioned indices, for which Inverse cannot fail.
  return Encode(*Inverse(h, index), table.group());
}

}  // namespace

absl::Status ReaderSession::Fail(absl::Status status) {
  phase_ = Phase::kFailed;
  return status;
}

absl::StatusOr<Msg2> ReaderSession::OnMsg1(const ServerTable& table,
                                           const Msg1& msg, NonceSource& rng) {
  if (phase_ != Phase::kAwaitingMsg1) {
    return absl::FailedPreconditionError("reader session already started");
  }
  if (msg.alpha.width() != table.word_bits()) {
    return Fail(absl::UnauthenticatedError("msg1 word width mismatch"));
  }
  if (msg.index < 1 || msg.index > table.index_cap()) {
    return Fail(absl::UnauthenticatedError(
        fmt::format("index {} outside [1, {}]", msg.index, table.index_cap())));
  }
  for (const SubgroupHandle& h : table.groups()) {
    ++checks_performed_;
    const ServerRow* row = table.Lookup(h.id(), msg.index);
    if (row == nullptr) continue;
    const LWord inv = InverseWord(table, h, msg.index);
    const TagKey key{h.id(), msg.index};
    if ((inv ^ row->r_new) == msg.alpha) {
      candidates_.push_back({key, NonceSlot::kNew});
    } else if ((inv ^ row->r_old) == msg.alpha) {
      candidates_.push_back({key, NonceSlot::kOld});
    }
  }
  if (candidates_.empty()) {
    return Fail(absl::UnauthenticatedError("no row matches alpha"));
  }
  active_ = 0;
  const Candidate& c = candidates_[active_];
  const LWord inv =
      InverseWord(table, *table.FindSubgroup(c.key.subgroup_id), c.key.index);
  const LWord key = table.Lookup(c.key)->key;
  r1_ = DrawModulusSafeNonce(inv, rng);
  r2_ = DrawModulusSafeNonce(inv, rng);
  sent_ = Msg2{r1_ ^ key, r2_ ^ key};
  phase_ = Phase::kAwaitingMsg3;
  return sent_;
}

absl::StatusOr<Msg4> ReaderSession::OnMsg3(ServerTable& table, const Msg3& msg,
                                           NonceSource& rng) {
  if (phase_ != Phase::kAwaitingMsg3) {
    return absl::FailedPreconditionError("reader is not awaiting msg3");
  }
  if (msg.delta.width() != table.word_bits()) {
    return Fail(absl::UnauthenticatedError("msg3 word width mismatch"));
  }
  for (; active_ < candidates_.size(); ++active_) {
    const Candidate& c = candidates_[active_];
    const ServerRow row = *table.Lookup(c.key);
    const LWord inv =
        InverseWord(table, *table.FindSubgroup(c.key.subgroup_id), c.key.index);
    // What this candidate's tag would have recovered from msg2.
    const LWord r1 = sent_.beta ^ row.key;
    const LWord r2 = sent_.gamma ^ row.key;
    const LWord delta_modulus = inv ^ r2;
    const LWord eta_modulus = inv ^ r1;
    if (delta_modulus.value() == 0 || eta_modulus.value() == 0) continue;
    if (msg.delta >= delta_modulus) continue;
    if (*MaskedResidue(row.id, r1, inv, r2) != msg.delta) continue;

    r1_ = r1;
    r2_ = r2;
    r3_ = rng.NextNonce(table.word_bits());
    const bool keep_old =
        mode_ == UpdateMode::kResilient && c.matched_on == NonceSlot::kOld;
    const LWord new_old = keep_old ? row.r_old : row.r_new;
    if (absl::Status s = table.UpdateNonces(c.key, new_old, r3_); !s.ok()) {
      return Fail(s);
    }
    authenticated_ = c.key;
    phase_ = Phase::kDone;
    return Msg4{r3_ ^ row.key, *MaskedResidue(row.id, r3_, inv, r1)};
  }
  return Fail(absl::UnauthenticatedError("delta mismatch; session terminated"));
}

}  // namespace cyclic_rfid
