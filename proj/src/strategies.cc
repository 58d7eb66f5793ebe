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

#include <map>
#include <memory>

#include "cyclic_rfid/prng.h"

namespace cyclic_rfid {
namespace {

// Shared pair selection and coin.
class StrategyBase : public AdversaryStrategy {
 public:
  explicit StrategyBase(uint64_t seed) : rng_(seed) {}

  absl::StatusOr<std::pair<TagHandle, TagHandle>> ChooseChallenge(
      OracleSystem&, PairPolicy) override {
    if (!pair_) return absl::FailedPreconditionError("no eligible pair");
    return *pair_;
  }

 protected:
  // Fixes the pair the challenge will use; called from Learn.
  absl::Status PickPair(const OracleSystem& oracle, PairPolicy policy) {
    pair_ = FirstEligiblePair(oracle, policy);
    if (!pair_) return absl::FailedPreconditionError("no eligible pair");
    return absl::OkStatus();
  }

  TagHandle t0() const { return pair_->first; }
  TagHandle t1() const { return pair_->second; }
  int Coin() { return rng_.Bit() ? 1 : 0; }

  Prng rng_;
  std::optional<std::pair<TagHandle, TagHandle>> pair_;
};

// The experiment's pair policy is not visible during Learn, so strategies
// that study T0 pick a same-index pair, which every policy accepts.
constexpr PairPolicy kLearnPolicy = PairPolicy::kSameIndex;

class RandomGuesser final : public StrategyBase {
 public:
  using StrategyBase::StrategyBase;
  absl::Status Learn(OracleSystem& oracle) override {
    return PickPair(oracle, kLearnPolicy);
  }
  absl::StatusOr<int> Guess(OracleSystem&) override { return Coin(); }
};

class ConstantGuesser final : public StrategyBase {
 public:
  using StrategyBase::StrategyBase;
  absl::Status Learn(OracleSystem& oracle) override {
    return PickPair(oracle, kLearnPolicy);
  }
  absl::StatusOr<int> Guess(OracleSystem&) override { return 0; }
};

class AlphaReplayer final : public StrategyBase {
 public:
  using StrategyBase::StrategyBase;
  absl::Status Learn(OracleSystem& oracle) override {
    if (absl::Status s = PickPair(oracle, kLearnPolicy); !s.ok()) return s;
    absl::StatusOr<RelayedSession> r = RelayHonestSession(oracle, t0());
    if (!r.ok()) return r.status();
    recorded_ = r->msg1;
    return absl::OkStatus();
  }
  absl::StatusOr<int> Guess(OracleSystem& oracle) override {
    absl::StatusOr<TagReply> m = oracle.SendTag(kChallengeHandle, InitQuery{});
    if (!m.ok()) return m.status();
    if (absl::Status s = oracle.Charge(1); !s.ok()) return s;
    return std::get<Msg1>(*m) == recorded_ ? 0 : 1;
  }

 private:
  Msg1 recorded_;
};

std::vector<LWord> Words(const RelayedSession& r) {
  std::vector<LWord> w = {r.msg1.alpha};
  if (r.msg2) w.insert(w.end(), {r.msg2->beta, r.msg2->gamma});
  if (r.msg3) w.push_back(r.msg3->delta);
  if (r.msg4) w.insert(w.end(), {r.msg4->zeta, r.msg4->eta});
  return w;
}

class TranscriptMatcher final : public StrategyBase {
 public:
  using StrategyBase::StrategyBase;
  absl::Status Learn(OracleSystem& oracle) override {
    if (absl::Status s = PickPair(oracle, kLearnPolicy); !s.ok()) return s;
    for (int k = 0; k < 2; ++k) {
      absl::StatusOr<RelayedSession> r =
          RelayHonestSession(oracle, k == 0 ? t0() : t1());
      if (!r.ok()) return r.status();
      learned_[k] = Words(*r);
    }
    return absl::OkStatus();
  }
  absl::StatusOr<int> Guess(OracleSystem& oracle) override {
    absl::StatusOr<RelayedSession> r =
        RelayHonestSession(oracle, kChallengeHandle);
    if (!r.ok()) return r.status();
    const std::vector<LWord> seen = Words(*r);
    int matches[2] = {0, 0};
    for (int k = 0; k < 2; ++k) {
      for (const LWord& a : seen) {
        for (const LWord& b : learned_[k]) matches[k] += a == b;
      }
      const int64_t cost =
          static_cast<int64_t>(seen.size() * learned_[k].size());
      if (absl::Status s = oracle.Charge(cost); !s.ok()) return s;
    }
    if (matches[0] == matches[1]) return Coin();
    return matches[0] > matches[1] ? 0 : 1;
  }

 private:
  std::vector<LWord> learned_[2];
};

class IndexCorrelator final : public StrategyBase {
 public:
  using StrategyBase::StrategyBase;
  absl::Status Learn(OracleSystem& oracle) override {
    // Prefer a pair the index separates; the policy may refuse it.
    const std::vector<DrawnTag> tags = oracle.DrawTags();
    for (size_t b = 1; b < tags.size() && !pair_; ++b) {
      if (tags[b].index != tags[0].index)
        pair_ = {tags[0].handle, tags[b].handle};
    }
    return absl::OkStatus();
  }
  absl::StatusOr<std::pair<TagHandle, TagHandle>> ChooseChallenge(
      OracleSystem& oracle, PairPolicy policy) override {
    if (policy == PairPolicy::kSameIndex || !pair_) {
      if (absl::Status s = PickPair(oracle, policy); !s.ok()) return s;
    }
    for (int k = 0; k < 2; ++k) {
      absl::StatusOr<TagReply> m =
          oracle.SendTag(k == 0 ? t0() : t1(), InitQuery{});
      if (!m.ok()) return m.status();
      index_[k] = std::get<Msg1>(*m).index;
    }
    return *pair_;
  }
  absl::StatusOr<int> Guess(OracleSystem& oracle) override {
    absl::StatusOr<TagReply> m = oracle.SendTag(kChallengeHandle, InitQuery{});
    if (!m.ok()) return m.status();
    const uint64_t i = std::get<Msg1>(*m).index;
    if (index_[0] == index_[1]) return Coin();
    return i == index_[0] ? 0 : 1;
  }

 private:
  uint64_t index_[2] = {0, 0};
};

class StaleAlphaTracker final : public StrategyBase {
 public:
  using StrategyBase::StrategyBase;
  absl::Status Learn(OracleSystem& oracle) override {
    if (absl::Status s = PickPair(oracle, kLearnPolicy); !s.ok()) return s;
    absl::StatusOr<TagReply> m = oracle.SendTag(t0(), InitQuery{});
    if (!m.ok()) return m.status();
    recorded_ = std::get<Msg1>(*m);
    return absl::OkStatus();
  }
  absl::StatusOr<int> Guess(OracleSystem& oracle) override {
    absl::StatusOr<TagReply> m = oracle.SendTag(kChallengeHandle, InitQuery{});
    if (!m.ok()) return m.status();
    if (absl::Status s = oracle.Charge(1); !s.ok()) return s;
    return std::get<Msg1>(*m) == recorded_ ? 0 : 1;
  }

 private:
  Msg1 recorded_;
};

class ResidueLinker final : public StrategyBase {
 public:
  static constexpr int kLearningSessions = 8;

  using StrategyBase::StrategyBase;
  absl::Status Learn(OracleSystem& oracle) override {
    if (absl::Status s = PickPair(oracle, kLearnPolicy); !s.ok()) return s;
    // Ordered map so ties resolve to the smallest value.
    std::map<LWord, int> counts;
    for (int k = 0; k < kLearningSessions; ++k) {
      absl::StatusOr<RelayedSession> r = RelayHonestSession(oracle, t0());
      if (!r.ok()) return r.status();
      if (!r->msg3) continue;
      if (absl::Status s = oracle.Charge(2); !s.ok()) return s;
      ++counts[r->msg3->delta ^ r->msg2->beta];
    }
    int best = 0;
    for (const auto& [value, n] : counts) {
      if (n > best) {
        best = n;
        mode_ = value;
      }
    }
    return absl::OkStatus();
  }
  absl::StatusOr<int> Guess(OracleSystem& oracle) override {
    absl::StatusOr<RelayedSession> r =
        RelayHonestSession(oracle, kChallengeHandle);
    if (!r.ok()) return r.status();
    if (!r->msg3 || !mode_) return Coin();
    if (absl::Status s = oracle.Charge(2); !s.ok()) return s;
    return (r->msg3->delta ^ r->msg2->beta) == *mode_ ? 0 : 1;
  }

 private:
  std::optional<LWord> mode_;
};

template <typename T>
StrategyFactory Factory() {
  return [](uint64_t seed) -> std::unique_ptr<AdversaryStrategy> {
    return std::make_unique<T>(seed);
  };
}

}  // namespace

const std::vector<StrategyInfo>& ShippedStrategies() {
  static const std::vector<StrategyInfo>* const kStrategies =
      new std::vector<StrategyInfo>{
          {"random-guesser", "fresh coin", Factory<RandomGuesser>()},
          {"constant-guesser", "always 0", Factory<ConstantGuesser>()},
          {"alpha-replayer", "msg1 of a completed session",
           Factory<AlphaReplayer>()},
          {"transcript-matcher", "shared words across sessions",
           Factory<TranscriptMatcher>()},
          {"index-correlator", "cleartext index", Factory<IndexCorrelator>()},
          {"stale-alpha-tracker", "msg1 of an unfinished session",
           Factory<StaleAlphaTracker>()},
          {"residue-linker", "delta ^ beta across sessions",
           Factory<ResidueLinker>()},
  };
  return *kStrategies;
}

const StrategyInfo* FindStrategy(std::string_view name) {
  for (const StrategyInfo& s : ShippedStrategies()) {
    if (s.name == name) return &s;
  }
  return nullptr;
}

}  // namespace cyclic_rfid
