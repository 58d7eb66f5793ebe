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

#include "cyclic_rfid/adversary.h"

#include <algorithm>
#include <cmath>

#include "fmt/format.h"

namespace cyclic_rfid {

std::string_view VerdictName(Verdict v) {
  switch (v) {
    case Verdict::kAccept:
      return "accept";
    case Verdict::kReject:
      return "reject";
    case Verdict::kAbort:
      return "abort";
  }
  return "reject";
}

absl::StatusOr<OracleSystem> OracleSystem::Create(ProvisionedSystem system,
                                                  AdversaryBudget budget,
                                                  UpdateMode mode,
                                                  uint64_t seed) {
  const int64_t drawn = static_cast<int64_t>(system.tags.size());
  if (budget.send_tag < 0 || budget.send_reader < 0 || budget.steps < 0) {
    return absl::InvalidArgumentError("budget entries must be non-negative");
  }
  if (budget.corrupt_limit < 0)
    budget.corrupt_limit = std::max<int64_t>(0, drawn - 2);
  if (budget.corrupt_limit > std::max<int64_t>(0, drawn - 2)) {
    return absl::InvalidArgumentError(
        fmt::format("corrupt limit {} exceeds N - 2 for {} tags",
                    budget.corrupt_limit, drawn));
  }
  return OracleSystem(std::move(system), budget, mode, seed);
}

std::vector<DrawnTag> OracleSystem::DrawTags() const {
  std::vector<DrawnTag> out;
  out.reserve(system_.tags.size());
  for (size_t h = 0; h < system_.tags.size(); ++h) {
    out.push_back({static_cast<TagHandle>(h), system_.tags[h].index});
  }
  return out;
}

absl::Status OracleSystem::Spend(int64_t& used, int64_t limit,
                                 std::string_view what) {
  if (used >= limit) {
    return absl::ResourceExhaustedError(
        fmt::format("{} budget of {} exhausted", what, limit));
  }
  if (absl::Status s = Charge(1); !s.ok()) return s;
  ++used;
  return absl::OkStatus();
}

absl::Status OracleSystem::Charge(int64_t steps) {
  if (steps < 0 || usage_.steps + steps > budget_.steps) {
    return absl::ResourceExhaustedError(
        fmt::format("step budget of {} exhausted", budget_.steps));
  }
  usage_.steps += steps;
  return absl::OkStatus();
}

absl::StatusOr<TagState*> OracleSystem::Resolve(TagHandle tag) {
  if (tag == kChallengeHandle) {
    if (!challenge_) return absl::FailedPreconditionError("no challenge yet");
    tag = challenge_bit_ == 0 ? challenge_->first : challenge_->second;
  } else if (challenge_ &&
             (tag == challenge_->first || tag == challenge_->second)) {
    return absl::PermissionDeniedError(
        "challenge tags are reachable only through the challenge handle");
  }
  if (tag < 0 || static_cast<size_t>(tag) >= system_.tags.size()) {
    return absl::NotFoundError(fmt::format("no tag handle {}", tag));
  }
  return &system_.tags[tag];
}

absl::StatusOr<TagReply> OracleSystem::SendTag(TagHandle handle,
                                               const TagQuery& query) {
  absl::StatusOr<TagState*> tag = Resolve(handle);
  if (!tag.ok()) return tag.status();
  if (absl::Status s = Spend(usage_.send_tag, budget_.send_tag, "SendTag");
      !s.ok()) {
    return s;
  }
  if (std::holds_alternative<InitQuery>(query)) return TagBegin(**tag);
  if (const Msg2* m = std::get_if<Msg2>(&query)) {
    absl::StatusOr<Msg3> r = TagOnMsg2(**tag, *m);
    if (r.ok()) return *r;
    return absl::IsAborted(r.status()) ? Verdict::kAbort : Verdict::kReject;
  }
  absl::Status s = TagOnMsg4(**tag, std::get<Msg4>(query));
  if (s.ok()) return Verdict::kAccept;
  return absl::IsAborted(s) ? Verdict::kAbort : Verdict::kReject;
}

absl::StatusOr<ReaderReply> OracleSystem::SendReader(const ReaderQuery& query) {
  if (absl::Status s =
          Spend(usage_.send_reader, budget_.send_reader, "SendReader");
      !s.ok()) {
    return s;
  }
  if (const Msg1* m = std::get_if<Msg1>(&query)) {
    reader_.emplace(mode_);
    absl::StatusOr<Msg2> r = reader_->OnMsg1(system_.table, *m, rng_);
    if (r.ok()) return *r;
    return Verdict::kReject;
  }
  if (!reader_ || reader_->phase() != ReaderSession::Phase::kAwaitingMsg3) {
    return Verdict::kReject;
  }
  absl::StatusOr<Msg4> r =
      reader_->OnMsg3(system_.table, std::get<Msg3>(query), rng_);
  if (r.ok()) return *r;
  return Verdict::kReject;
}

absl::StatusOr<CorruptDump> OracleSystem::Corrupt(TagHandle handle) {
  if (handle == kChallengeHandle) {
    return absl::PermissionDeniedError("the challenge tag cannot be corrupted");
  }
  absl::StatusOr<TagState*> tag = Resolve(handle);
  if (!tag.ok()) return tag.status();
  if (!corrupted_[handle]) {
    if (usage_.corruptions >= budget_.corrupt_limit) {
      return absl::ResourceExhaustedError(
          fmt::format("corruption limit of {} reached", budget_.corrupt_limit));
    }
    if (absl::Status s = Charge(1); !s.ok()) return s;
    ++usage_.corruptions;
    corrupted_[handle] = true;
  }
  const TagState& t = **tag;
  return CorruptDump{t.index, t.inv_word, t.key, t.id, t.r4};
}

absl::Status OracleSystem::BeginChallenge(TagHandle t0, TagHandle t1, int b) {
  if (challenge_) return absl::FailedPreconditionError("challenge already set");
  const auto valid = [&](TagHandle h) {
    return h >= 0 && static_cast<size_t>(h) < system_.tags.size();
  };
  if (!valid(t0) || !valid(t1) || t0 == t1) {
    return absl::InvalidArgumentError("challenge needs two distinct tags");
  }
  if (corrupted_[t0] || corrupted_[t1]) {
    return absl::PermissionDeniedError("challenge tags must be uncorrupted");
  }
  if (b != 0 && b != 1) return absl::InvalidArgumentError("b must be 0 or 1");
  challenge_ = {t0, t1};
  challenge_bit_ = b;
  reader_.reset();
  return absl::OkStatus();
}

bool OracleSystem::IsCorrupted(TagHandle tag) const {
  return tag >= 0 && static_cast<size_t>(tag) < corrupted_.size() &&
         corrupted_[tag];
}

std::string_view PairPolicyName(PairPolicy policy) {
  return policy == PairPolicy::kSameIndex ? "same-index" : "any";
}

absl::StatusOr<PairPolicy> ParsePairPolicy(std::string_view name) {
  if (name == "same-index") return PairPolicy::kSameIndex;
  if (name == "any") return PairPolicy::kAny;
  return absl::InvalidArgumentError(
      fmt::format("unknown pair policy '{}' (same-index|any)", name));
}

namespace {

bool PolicyAllows(const OracleSystem& oracle, PairPolicy policy, TagHandle a,
                  TagHandle b) {
  if (a == b || oracle.IsCorrupted(a) || oracle.IsCorrupted(b)) return false;
  return policy == PairPolicy::kAny ||
         oracle.system().tags[a].index == oracle.system().tags[b].index;
}

}  // namespace

std::optional<std::pair<TagHandle, TagHandle>> FirstEligiblePair(
    const OracleSystem& oracle, PairPolicy policy) {
  const std::vector<DrawnTag> tags = oracle.DrawTags();
  for (size_t a = 0; a < tags.size(); ++a) {
    for (size_t b = a + 1; b < tags.size(); ++b) {
      if (PolicyAllows(oracle, policy, tags[a].handle, tags[b].handle)) {
        return std::pair{tags[a].handle, tags[b].handle};
      }
    }
  }
  return std::nullopt;
}

absl::StatusOr<RelayedSession> RelayHonestSession(OracleSystem& oracle,
                                                  TagHandle tag) {
  RelayedSession out;
  absl::StatusOr<TagReply> m1 = oracle.SendTag(tag, InitQuery{});
  if (!m1.ok()) return m1.status();
  out.msg1 = std::get<Msg1>(*m1);

  absl::StatusOr<ReaderReply> m2 = oracle.SendReader(out.msg1);
  if (!m2.ok()) return m2.status();
  if (!std::holds_alternative<Msg2>(*m2)) return out;
  out.msg2 = std::get<Msg2>(*m2);

  absl::StatusOr<TagReply> m3 = oracle.SendTag(tag, *out.msg2);
  if (!m3.ok()) return m3.status();
  if (!std::holds_alternative<Msg3>(*m3)) return out;
  out.msg3 = std::get<Msg3>(*m3);

  absl::StatusOr<ReaderReply> m4 = oracle.SendReader(*out.msg3);
  if (!m4.ok()) return m4.status();
  if (!std::holds_alternative<Msg4>(*m4)) return out;
  out.msg4 = std::get<Msg4>(*m4);

  absl::StatusOr<TagReply> v = oracle.SendTag(tag, *out.msg4);
  if (!v.ok()) return v.status();
  out.tag_accepted = std::get<Verdict>(*v) == Verdict::kAccept;
  return out;
}

absl::StatusOr<ExperimentResult> PrivacyExperiment(
    const StrategyFactory& factory, const ExperimentOptions& options) {
  if (options.trials < 1)
    return absl::InvalidArgumentError("trials must be >= 1");
  absl::StatusOr<GroupSpec> group =
      MakeGroup(options.group_order, options.word_bits);
  if (!group.ok()) return group.status();

  ExperimentResult result;
  for (int64_t trial = 0; trial < options.trials; ++trial) {
    const uint64_t trial_seed = MixSeed(options.seed, trial);
    absl::StatusOr<ProvisionedSystem> system =
        Provision(*group, options.divisors, MixSeed(trial_seed, 0));
    if (!system.ok()) return system.status();
    absl::StatusOr<OracleSystem> oracle =
        OracleSystem::Create(*std::move(system), options.budget, options.mode,
                             MixSeed(trial_seed, 1));
    if (!oracle.ok()) return oracle.status();
    std::unique_ptr<AdversaryStrategy> strategy =
        factory(MixSeed(trial_seed, 2));

    if (absl::Status s = strategy->Learn(*oracle); !s.ok()) return s;
    absl::StatusOr<std::pair<TagHandle, TagHandle>> pair =
        strategy->ChooseChallenge(*oracle, options.policy);
    if (!pair.ok()) return pair.status();
    if (!PolicyAllows(*oracle, options.policy, pair->first, pair->second)) {
      return absl::InvalidArgumentError(
          fmt::format("pair ({}, {}) violates the {} policy", pair->first,
                      pair->second, PairPolicyName(options.policy)));
    }
    Prng coin(MixSeed(trial_seed, 3));
    const int b = coin.Bit() ? 1 : 0;
    if (absl::Status s = oracle->BeginChallenge(pair->first, pair->second, b);
        !s.ok()) {
      return s;
    }
    absl::StatusOr<int> guess = strategy->Guess(*oracle);
    if (!guess.ok()) return guess.status();
    ++result.trials;
    if (*guess == b) ++result.successes;
  }
  return result;
}

double AdvantageHalfWidth99(int64_t trials) {
  constexpr double kZ99 = 2.5758293035489004;
  return kZ99 * std::sqrt(0.25 / static_cast<double>(trials));
}

}  // namespace cyclic_rfid
