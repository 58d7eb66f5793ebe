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

// Oracle interface and indistinguishability experiment. An adversary talks to
// tags and to the reader only through OracleSystem, which meters every call
// against an AdversaryBudget.

#ifndef CYCLIC_RFID_ADVERSARY_H_
#define CYCLIC_RFID_ADVERSARY_H_

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "cyclic_rfid/group.h"
#include "cyclic_rfid/prng.h"
#include "cyclic_rfid/protocol.h"
#include "cyclic_rfid/registry.h"

namespace cyclic_rfid {

struct AdversaryBudget {
  int64_t send_tag = 64;     // r
  int64_t send_reader = 64;  // t
  int64_t steps = 1 << 20;   // s
  // At most drawn - 2. Negative means "drawn - 2".
  int64_t corrupt_limit = -1;
};

struct BudgetUsage {
  int64_t send_tag = 0;
  int64_t send_reader = 0;
  int64_t steps = 0;
  int64_t corruptions = 0;
};

struct CorruptDump {
  uint64_t index = 0;
  LWord inv_word;
  LWord key;
  LWord id;
  LWord r4;
  friend bool operator==(const CorruptDump&, const CorruptDump&) = default;
};

// Opaque tag reference. Handles 0..N-1 are drawn tags in table order.
using TagHandle = int;
inline constexpr TagHandle kChallengeHandle = -1;

struct DrawnTag {
  TagHandle handle = 0;
  // The cleartext index every msg1 of this tag carries.
  uint64_t index = 0;
};

struct InitQuery {};
using TagQuery = std::variant<InitQuery, Msg2, Msg4>;

enum class Verdict { kAccept, kReject, kAbort };
std::string_view VerdictName(Verdict v);

// Msg1 for init, Msg3 or kAbort for msg2, kAccept or kReject for msg4. Any
// query out of phase is answered kReject.
using TagReply = std::variant<Msg1, Msg3, Verdict>;

using ReaderQuery = std::variant<Msg1, Msg3>;
// Msg2 for msg1, Msg4 for msg3, or kReject. A msg1 always opens a new reader
// session; a msg3 goes to the open one.
using ReaderReply = std::variant<Msg2, Msg4, Verdict>;

class OracleSystem {
 public:
  // Takes ownership of a provisioned system. Rejects a corrupt_limit above
  // N - 2.
  static absl::StatusOr<OracleSystem> Create(ProvisionedSystem system,
                                             AdversaryBudget budget,
                                             UpdateMode mode, uint64_t seed);

  std::vector<DrawnTag> DrawTags() const;

  absl::StatusOr<TagReply> SendTag(TagHandle tag, const TagQuery& query);
  absl::StatusOr<ReaderReply> SendReader(const ReaderQuery& query);
  absl::StatusOr<CorruptDump> Corrupt(TagHandle tag);

  // Meters `steps` primitive operations performed by the adversary.
  absl::Status Charge(int64_t steps);

  // Routes kChallengeHandle to `t0` or `t1` by `b` and hides both from
  // direct access. Both must be distinct and uncorrupted.
  absl::Status BeginChallenge(TagHandle t0, TagHandle t1, int b);

  bool IsCorrupted(TagHandle tag) const;
  const AdversaryBudget& budget() const { return budget_; }
  const BudgetUsage& usage() const { return usage_; }
  const ProvisionedSystem& system() const { return system_; }

 private:
  OracleSystem(ProvisionedSystem system, AdversaryBudget budget,
               UpdateMode mode, uint64_t seed)
      : system_(std::move(system)),
        budget_(budget),
        mode_(mode),
        rng_(seed),
        corrupted_(system_.tags.size(), false) {}

  absl::StatusOr<TagState*> Resolve(TagHandle tag);
  absl::Status Spend(int64_t& used, int64_t limit, std::string_view what);

  ProvisionedSystem system_;
  AdversaryBudget budget_;
  BudgetUsage usage_;
  UpdateMode mode_;
  Prng rng_;
  std::optional<ReaderSession> reader_;
  std::vector<bool> corrupted_;
  std::optional<std::pair<TagHandle, TagHandle>> challenge_;
  int challenge_bit_ = 0;
};

// Rule for which pairs the challenge phase accepts.
enum class PairPolicy {
  // Both tags carry the same cleartext index.
  kSameIndex,
  kAny,
};

std::string_view PairPolicyName(PairPolicy policy);
absl::StatusOr<PairPolicy> ParsePairPolicy(std::string_view name);

// First uncorrupted pair in handle order allowed by `policy`.
std::optional<std::pair<TagHandle, TagHandle>> FirstEligiblePair(
    const OracleSystem& oracle, PairPolicy policy);

// One honest run relayed by the adversary through the oracles.
struct RelayedSession {
  Msg1 msg1;
  std::optional<Msg2> msg2;
  std::optional<Msg3> msg3;
  std::optional<Msg4> msg4;
  bool tag_accepted = false;
};

absl::StatusOr<RelayedSession> RelayHonestSession(OracleSystem& oracle,
                                                  TagHandle tag);

class AdversaryStrategy {
 public:
  virtual ~AdversaryStrategy() = default;

  // Learning phase. Every oracle is available.
  virtual absl::Status Learn(OracleSystem& oracle) = 0;

  // Names the two challenge tags.
  virtual absl::StatusOr<std::pair<TagHandle, TagHandle>> ChooseChallenge(
      OracleSystem& oracle, PairPolicy policy) = 0;

  // Challenge phase, queried through kChallengeHandle. Returns b'.
  virtual absl::StatusOr<int> Guess(OracleSystem& oracle) = 0;
};

// Builds a fresh strategy for one trial from a per-trial seed.
using StrategyFactory =
    std::function<std::unique_ptr<AdversaryStrategy>(uint64_t seed)>;

struct ExperimentOptions {
  uint64_t group_order = 1024;
  int word_bits = 32;
  std::vector<uint64_t> divisors = {32, 16, 8, 4};
  AdversaryBudget budget;
  int64_t trials = 10000;
  uint64_t seed = 1;
  UpdateMode mode = UpdateMode::kStrictRotation;
  PairPolicy policy = PairPolicy::kSameIndex;
};

struct ExperimentResult {
  int64_t trials = 0;
  int64_t successes = 0;

  // successes / trials - 1/2.
  double advantage() const {
    return trials == 0
               ? 0.0
               : static_cast<double>(successes) / static_cast<double>(trials) -
                     0.5;
  }
};

// Runs `options.trials` independent trials, each on a freshly provisioned
// system with a fresh strategy and an unbiased secret bit.
absl::StatusOr<ExperimentResult> PrivacyExperiment(
    const StrategyFactory& factory, const ExperimentOptions& options);

// Half-width of the two-sided 99% normal-approximation interval for the
// advantage of a fair coin over `trials` trials.
double AdvantageHalfWidth99(int64_t trials);

}  // namespace cyclic_rfid

#endif  // CYCLIC_RFID_ADVERSARY_H_
