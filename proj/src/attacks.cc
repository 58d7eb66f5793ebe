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

#include "cyclic_rfid/attacks.h"

#include <optional>
#include <utility>

#include "absl/status/status.h"
#include "cyclic_rfid/group.h"
#include "cyclic_rfid/prng.h"
#include "cyclic_rfid/session.h"
#include "cyclic_rfid/wire.h"
#include "fmt/format.h"

namespace cyclic_rfid {

std::string FormatReport(std::span<const AttackReport> reports) {
  std::string out;
  for (const AttackReport& r : reports) {
    fmt::format_to(std::back_inserter(out), "{} {} {} {} {}\n", r.attack,
                   r.target, r.trials, r.failures, r.verdict);
  }
  return out;
}

bool InSync(const ServerTable& table, const TagState& tag) {
  const ServerRow* row = table.Lookup(tag.tag_key());
  return row != nullptr && (tag.r4 == row->r_old || tag.r4 == row->r_new);
}

namespace {

absl::StatusOr<ProvisionedSystem> Build(const AttackSetup& setup,
                                        uint64_t seed) {
  absl::StatusOr<GroupSpec> group =
      MakeGroup(setup.group_order, setup.word_bits);
  if (!group.ok()) return group.status();
  return Provision(*group, setup.divisors, seed);
}

std::string_view Verdict(int64_t failures) {
  return failures == 0 ? "pass" : "fail";
}

size_t PickTag(const ProvisionedSystem& system, Prng& rng) {
  return static_cast<size_t>(rng.Below(system.tags.size()));
}

SessionTranscript Honest(ProvisionedSystem& system, size_t tag, Prng& rng,
                         UpdateMode mode) {
  HonestChannel channel;
  return RunSession(system.tags[tag], system.table, channel, rng, mode);
}

struct Recorded {
  SessionTranscript prev;  // Two sessions back.
  SessionTranscript last;
};

bool Complete(const SessionTranscript& t) {
  return t.outcome == SessionOutcome::kMutualSuccess;
}

// True when the reader accepts `msg3` after opening a session with `msg1`.
bool ReaderAccepts(ServerTable& table, const Msg1& msg1, const Msg3& msg3,
                   Prng& rng, UpdateMode mode, bool* answered_msg1 = nullptr,
                   std::optional<NonceSlot>* slot = nullptr) {
  ReaderSession reader(mode);
  const bool answered = reader.OnMsg1(table, msg1, rng).ok();
  if (answered_msg1 != nullptr) *answered_msg1 = answered;
  if (!answered) return false;
  if (slot != nullptr) *slot = reader.candidates().front().matched_on;
  return reader.OnMsg3(table, msg3, rng).ok();
}

// Fresh tag session whose msg2 comes from the real reader; the reader never
// sees msg3. Returns whether the tag then accepts `msg4`.
bool TagAcceptsInFreshSession(ProvisionedSystem& s, size_t tag,
                              const Msg4& msg4, Prng& rng, UpdateMode mode) {
  TagState& t = s.tags[tag];
  ReaderSession reader(mode);
  absl::StatusOr<Msg2> m2 = reader.OnMsg1(s.table, TagBegin(t), rng);
  if (!m2.ok()) return false;
  if (!TagOnMsg2(t, *m2).ok()) return false;
  return TagOnMsg4(t, msg4).ok();
}

bool TagAcceptsPair(TagState& tag, const Msg2& msg2, const Msg4& msg4) {
  TagBegin(tag);
  if (!TagOnMsg2(tag, msg2).ok()) return false;
  return TagOnMsg4(tag, msg4).ok();
}

}  // namespace

absl::StatusOr<std::vector<AttackReport>> ReplayAttack(const AttackSetup& setup,
                                                       int64_t trials) {
  if (trials < 1) return absl::InvalidArgumentError("trials must be >= 1");
  Prng rng(MixSeed(setup.seed, 1));
  uint64_t epoch = 0;
  absl::StatusOr<ProvisionedSystem> system =
      Build(setup, MixSeed(setup.seed, epoch));
  if (!system.ok()) return system.status();

  std::vector<AttackReport> r = {
      {"replay-msg1-prev", "reader", 0, 0, ""},
      {"replay-msg1-stale", "reader", 0, 0, ""},
      {"replay-msg3", "reader", 0, 0, ""},
      {"replay-msg4", "tag", 0, 0, ""},
      {"replay-msg2-msg4", "tag", 0, 0, ""},
  };
  for (int64_t trial = 0; trial < trials;) {
    const size_t tag = PickTag(*system, rng);
    Recorded rec;
    rec.prev = Honest(*system, tag, rng, setup.mode);
    rec.last = Honest(*system, tag, rng, setup.mode);
    if (!Complete(rec.prev) || !Complete(rec.last)) {
      // Honest runs can fail on tiny words; start over on a new system.
      system = Build(setup, MixSeed(setup.seed, ++epoch));
      if (!system.ok()) return system.status();
      continue;
    }
    ++trial;
    for (AttackReport& line : r) ++line.trials;

    {
      ProvisionedSystem w = *system;
      bool answered = false;
      std::optional<NonceSlot> slot;
      const bool accepted =
          ReaderAccepts(w.table, *rec.last.msg1, *rec.last.msg3, rng,
                        setup.mode, &answered, &slot);
      if (accepted || !answered || slot != NonceSlot::kOld) ++r[0].failures;
    }
    {
      ProvisionedSystem w = *system;
      bool answered = false;
      const bool accepted = ReaderAccepts(
          w.table, *rec.prev.msg1, *rec.prev.msg3, rng, setup.mode, &answered);
      if (accepted || answered) ++r[1].failures;
    }
    {
      ProvisionedSystem w = *system;
      const Msg1 fresh = TagBegin(w.tags[tag]);
      if (ReaderAccepts(w.table, fresh, *rec.last.msg3, rng, setup.mode)) {
        ++r[2].failures;
      }
    }
    {
      ProvisionedSystem w = *system;
      if (TagAcceptsInFreshSession(w, tag, *rec.last.msg4, rng, setup.mode)) {
        ++r[3].failures;
      }
    }
    {
      ProvisionedSystem w = *system;
      if (TagAcceptsPair(w.tags[tag], *rec.last.msg2, *rec.last.msg4)) {
        ++r[4].failures;
      }
    }
  }
  for (AttackReport& line : r) line.verdict = Verdict(line.failures);
  return r;
}

absl::StatusOr<DesyncResult> DesyncAttack(const AttackSetup& setup, int losses,
                                          int64_t trials) {
  if (losses < 0) return absl::InvalidArgumentError("losses must be >= 0");
  if (trials < 1) return absl::InvalidArgumentError("trials must be >= 1");
  DesyncResult result;
  Prng rng(MixSeed(setup.seed, 2));
  FaultChannel drop(FaultSpec{FaultSpec::Kind::kDrop, 4, 0});
  for (int64_t trial = 0; trial < trials; ++trial) {
    absl::StatusOr<ProvisionedSystem> s =
        Build(setup, MixSeed(MixSeed(setup.seed, 3), trial));
    if (!s.ok()) return s.status();
    const size_t tag = PickTag(*s, rng);
    for (int k = 0; k < losses; ++k) {
      RunSession(s->tags[tag], s->table, drop, rng, setup.mode);
    }
    ++result.trials;
    if (Complete(Honest(*s, tag, rng, setup.mode))) ++result.recovered;
  }
  return result;
}

AttackReport DesyncReport(const AttackSetup& setup, int losses,
                          const DesyncResult& result) {
  AttackReport r;
  r.attack = fmt::format("desync:{}", losses);
  r.target = std::string(UpdateModeName(setup.mode));
  r.trials = result.trials;
  r.failures = result.trials - result.recovered;
  r.verdict = r.failures == 0         ? "recovered"
              : result.recovered == 0 ? "desynchronized"
                                      : "partial";
  return r;
}

namespace {

int PayloadBitsOf(int message_type, int word_bits) {
  const int wb = 8 * ((word_bits + 7) / 8);
  switch (message_type) {
    case 1:
      return 8 * kIndexBytes + wb;
    case 3:
      return wb;
    default:
      return 2 * wb;
  }
}

// Advances the tag with one honest session, then runs the flipped session on
// a copy so every flip starts from a synchronized state.
void RunFlipped(ProvisionedSystem& working, size_t tag, int message_type,
                int bit, Prng& rng, UpdateMode mode, MitmResult& out) {
  Honest(working, tag, rng, mode);
  ProvisionedSystem w = working;
  FaultChannel flip(FaultSpec{FaultSpec::Kind::kFlip, message_type, bit});
  const SessionTranscript t = RunSession(w.tags[tag], w.table, flip, rng, mode);
  ++out.sessions;
  if (Complete(t)) ++out.mutual_success;
  if (!InSync(w.table, w.tags[tag])) ++out.desynchronized;
  if (!CheckPairing(w.table, w.tags).ok()) ++out.pairing_broken;
}

}  // namespace

absl::StatusOr<MitmResult> MitmAttack(const AttackSetup& setup,
                                      int message_type, int bit,
                                      int64_t sessions) {
  if (message_type < 1 || message_type > 4) {
    return absl::InvalidArgumentError("message type must be 1..4");
  }
  if (bit < 0 || bit >= PayloadBitsOf(message_type, setup.word_bits)) {
    return absl::InvalidArgumentError(fmt::format(
        "bit {} outside the {}-bit payload of msg{}", bit,
        PayloadBitsOf(message_type, setup.word_bits), message_type));
  }
  absl::StatusOr<ProvisionedSystem> s = Build(setup, setup.seed);
  if (!s.ok()) return s.status();
  Prng rng(MixSeed(setup.seed, 4));
  MitmResult result;
  for (int64_t k = 0; k < sessions; ++k) {
    RunFlipped(*s, PickTag(*s, rng), message_type, bit, rng, setup.mode,
               result);
  }
  return result;
}

absl::StatusOr<std::vector<MitmResult>> MitmSweep(const AttackSetup& setup,
                                                  int64_t sessions_per_flip) {
  absl::StatusOr<ProvisionedSystem> s = Build(setup, setup.seed);
  if (!s.ok()) return s.status();
  Prng rng(MixSeed(setup.seed, 5));
  std::vector<MitmResult> results(4);
  for (size_t tag = 0; tag < s->tags.size(); ++tag) {
    for (int type = 1; type <= 4; ++type) {
      for (int bit = 0; bit < PayloadBitsOf(type, setup.word_bits); ++bit) {
        for (int64_t k = 0; k < sessions_per_flip; ++k) {
          RunFlipped(*s, tag, type, bit, rng, setup.mode, results[type - 1]);
        }
      }
    }
  }
  return results;
}

absl::StatusOr<MitmResult> MitmRandom(const AttackSetup& setup,
                                      int64_t trials) {
  absl::StatusOr<ProvisionedSystem> s = Build(setup, setup.seed);
  if (!s.ok()) return s.status();
  Prng rng(MixSeed(setup.seed, 6));
  MitmResult result;
  for (int64_t k = 0; k < trials; ++k) {
    const int type = 1 + static_cast<int>(rng.Below(4));
    const int bit =
        static_cast<int>(rng.Below(PayloadBitsOf(type, setup.word_bits)));
    RunFlipped(*s, PickTag(*s, rng), type, bit, rng, setup.mode, result);
  }
  return result;
}

namespace {

// What a fuzz step is allowed to have changed.
struct Effects {
  std::optional<TagKey> reader_rotated;
  std::optional<size_t> tag_accepted;
};

struct Snapshot {
  std::vector<std::pair<TagKey, ServerRow>> rows;
  std::vector<LWord> r4;

  explicit Snapshot(const ProvisionedSystem& s) {
    for (const TagKey& k : s.table.Keys())
      rows.emplace_back(k, *s.table.Lookup(k));
    for (const TagState& t : s.tags) r4.push_back(t.r4);
  }
};

bool Pure(const Snapshot& before, const ProvisionedSystem& after,
          const Effects& e) {
  for (const auto& [key, row] : before.rows) {
    const ServerRow* now = after.table.Lookup(key);
    if (now == nullptr) return false;
    if (*now != row && e.reader_rotated != key) return false;
  }
  for (size_t i = 0; i < before.r4.size(); ++i) {
    if (after.tags[i].r4 != before.r4[i] && e.tag_accepted != i) return false;
  }
  return true;
}

class Fuzzer {
 public:
  Fuzzer(ProvisionedSystem system, const AttackSetup& setup)
      : s_(std::move(system)),
        setup_(setup),
        rng_(MixSeed(setup.seed, 7)),
        history_(s_.tags.size()) {}

  ProvisionedSystem& system() { return s_; }

  Effects Step() {
    const size_t tag = PickTag(s_, rng_);
    Recorded& h = history_[tag];
    const bool have_last = h.last.msg4.has_value();
    const bool have_prev = h.prev.msg4.has_value();
    switch (rng_.Below(12)) {
      case 0:
      case 1:
      case 2: {
        HonestChannel c;
        return Session(tag, c);
      }
      case 3: {
        FaultChannel c(FaultSpec{FaultSpec::Kind::kDrop,
                                 1 + static_cast<int>(rng_.Below(4)), 0});
        return Session(tag, c);
      }
      case 4: {
        const int type = 1 + static_cast<int>(rng_.Below(4));
        const int bit =
            static_cast<int>(rng_.Below(PayloadBitsOf(type, setup_.word_bits)));
        FaultChannel c(FaultSpec{FaultSpec::Kind::kFlip, type, bit});
        return Session(tag, c);
      }
      case 5:
        if (!have_last) return {};
        return ReaderReplay(*h.last.msg1, *h.last.msg3);
      case 6:
        if (!have_prev) return {};
        return ReaderReplay(*h.prev.msg1, *h.prev.msg3);
      case 7: {
        if (!have_last) return {};
        Effects e;
        if (TagAcceptsInFreshSession(s_, tag, *h.last.msg4, rng_,
                                     setup_.mode)) {
          e.tag_accepted = tag;
        }
        return e;
      }
      case 8: {
        if (!have_last) return {};
        Effects e;
        if (TagAcceptsPair(s_.tags[tag], *h.last.msg2, *h.last.msg4)) {
          e.tag_accepted = tag;
        }
        return e;
      }
      case 9: {
        const int w = setup_.word_bits;
        const Msg1 forged{1 + rng_.Below(s_.table.index_cap() + 1),
                          rng_.Word(w)};
        return ReaderReplay(forged, Msg3{rng_.Word(w)});
      }
      case 10:
        TagBegin(s_.tags[tag]);
        return {};
      default: {
        const int w = setup_.word_bits;
        Effects e;
        TagBegin(s_.tags[tag]);
        if (TagOnMsg2(s_.tags[tag], Msg2{rng_.Word(w), rng_.Word(w)}).ok() &&
            TagOnMsg4(s_.tags[tag], Msg4{rng_.Word(w), rng_.Word(w)}).ok()) {
          e.tag_accepted = tag;
        }
        return e;
      }
    }
  }

 private:
  Effects Session(size_t tag, Channel& channel) {
    SessionTranscript t =
        RunSession(s_.tags[tag], s_.table, channel, rng_, setup_.mode);
    Effects e;
    e.reader_rotated = t.reader_authenticated;
    if (Complete(t)) {
      e.tag_accepted = tag;
      history_[tag].prev = std::move(history_[tag].last);
      history_[tag].last = std::move(t);
    }
    return e;
  }

  Effects ReaderReplay(const Msg1& msg1, const Msg3& msg3) {
    ReaderSession reader(setup_.mode);
    Effects e;
    if (reader.OnMsg1(s_.table, msg1, rng_).ok() &&
        reader.OnMsg3(s_.table, msg3, rng_).ok()) {
      e.reader_rotated = reader.authenticated();
    }
    return e;
  }

  ProvisionedSystem s_;
  AttackSetup setup_;
  Prng rng_;
  std::vector<Recorded> history_;
};

}  // namespace

absl::StatusOr<HygieneResult> StateHygieneFuzz(const AttackSetup& setup,
                                               int64_t steps) {
  absl::StatusOr<ProvisionedSystem> s = Build(setup, setup.seed);
  if (!s.ok()) return s.status();
  const std::vector<TagState> provisioned = s->tags;
  Fuzzer fuzzer(*std::move(s), setup);
  HygieneResult result;
  for (int64_t k = 0; k < steps; ++k) {
    const Snapshot before(fuzzer.system());
    const Effects e = fuzzer.Step();
    const ProvisionedSystem& now = fuzzer.system();
    ++result.steps;
    if (e.reader_rotated) ++result.reader_accepts;
    if (e.tag_accepted) ++result.tag_accepts;
    if (!Pure(before, now, e)) ++result.purity_violations;
    bool paired = CheckPairing(now.table, now.tags).ok();
    for (size_t i = 0; paired && i < now.tags.size(); ++i) {
      paired = now.tags[i].tag_key() == provisioned[i].tag_key() &&
               now.tags[i].inv_word == provisioned[i].inv_word;
    }
    if (!paired) ++result.pairing_violations;
  }
  for (const TagState& t : fuzzer.system().tags) {
    if (!InSync(fuzzer.system().table, t)) ++result.desynchronized_tags;
  }
  return result;
}

}  // namespace cyclic_rfid
