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

#include "cyclic_rfid/commands.h"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <vector>

#include "cyclic_rfid/adversary.h"
#include "cyclic_rfid/attacks.h"
#include "cyclic_rfid/group.h"
#include "cyclic_rfid/monte_carlo.h"
#include "cyclic_rfid/session.h"
#include "cyclic_rfid/strategies.h"
#include "cyclic_rfid/text.h"
#include "fmt/format.h"

namespace cyclic_rfid {
namespace {

CommandOutput Failure(int code, std::string message) {
  return {code, "", message + "\n"};
}

CommandOutput Failure(int code, const absl::Status& status) {
  return Failure(code, std::string(status.message()));
}

absl::StatusOr<ProvisionedSystem> ProvisionFrom(const RunConfig& c) {
  absl::StatusOr<GroupSpec> group = MakeGroup(c.group_order, c.word_bits);
  if (!group.ok()) return group.status();
  return Provision(*group, c.divisors, c.seed);
}

absl::Status WriteFile(const std::string& path, const std::string& text) {
  std::error_code ec;
  const std::filesystem::path parent =
      std::filesystem::path(path).parent_path();
  if (!parent.empty()) std::filesystem::create_directories(parent, ec);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out || !(out << text) || !out.flush()) {
    return absl::PermissionDeniedError(fmt::format("cannot write '{}'", path));
  }
  return absl::OkStatus();
}

AttackSetup SetupFrom(const RunConfig& c) {
  return {c.group_order, c.word_bits, c.divisors, c.seed, c.mode};
}

std::string_view Verdict(int64_t failures) {
  return failures == 0 ? "pass" : "fail";
}

}  // namespace

absl::StatusOr<TagKey> ParseTagSelector(std::string_view text) {
  const std::vector<std::string_view> parts = Split(text, ":");
  if (parts.size() == 2) {
    std::optional<int> j = ParseUnsigned<int>(parts[0]);
    std::optional<uint64_t> i = ParseUnsigned(parts[1]);
    if (j && i) return TagKey{*j, *i};
  }
  return absl::InvalidArgumentError(
      fmt::format("bad tag selector '{}' (expected j:i)", text));
}

CommandOutput CmdProvision(const RunConfig& config) {
  if (absl::Status s = ValidateConfig(config); !s.ok()) {
    return Failure(kExitConfigError, s);
  }
  absl::StatusOr<ProvisionedSystem> system = ProvisionFrom(config);
  if (!system.ok()) return Failure(kExitConfigError, system.status());
  const std::string table = OutputPath(config, config.table_file);
  const std::string tags = OutputPath(config, config.tags_file);
  if (absl::Status s = WriteFile(table, ExportTable(system->table)); !s.ok()) {
    return Failure(kExitConfigError, s);
  }
  if (absl::Status s = WriteFile(tags, ExportTags(system->tags)); !s.ok()) {
    return Failure(kExitConfigError, s);
  }
  CommandOutput out;
  out.out = fmt::format("wrote {} ({} rows)\nwrote {} ({} tags)\n", table,
                        system->table.size(), tags, system->tags.size());
  return out;
}

CommandOutput CmdSession(const RunConfig& config, std::string_view tag,
                         std::string_view fault) {
  if (absl::Status s = ValidateConfig(config); !s.ok()) {
    return Failure(kExitConfigError, s);
  }
  absl::StatusOr<TagKey> key = ParseTagSelector(tag);
  if (!key.ok()) return Failure(kExitConfigError, key.status());
  absl::StatusOr<FaultSpec> spec = ParseFaultSpec(fault);
  if (!spec.ok()) return Failure(kExitConfigError, spec.status());
  absl::StatusOr<ProvisionedSystem> system = ProvisionFrom(config);
  if (!system.ok()) return Failure(kExitConfigError, system.status());
  TagState* t = system->FindTag(*key);
  if (t == nullptr) {
    return Failure(kExitConfigError, fmt::format("no tag {}:{} in this system",
                                                 key->subgroup_id, key->index));
  }
  FaultChannel channel(*spec);
  Prng rng(MixSeed(config.seed, 0x5e55));
  const SessionTranscript transcript =
      RunSession(*t, system->table, channel, rng, config.mode);
  CommandOutput out;
  out.out = FormatTranscript(transcript);
  fmt::format_to(std::back_inserter(out.out), "outcome {} checks {}\n",
                 OutcomeName(transcript.outcome), transcript.checks_performed);
  if (transcript.outcome != SessionOutcome::kMutualSuccess) {
    out.exit_code = kExitProtocolFailure;
  }
  return out;
}

namespace {

absl::StatusOr<std::vector<AttackReport>> MitmLines(const AttackSetup& setup,
                                                    std::string_view rest,
                                                    int64_t trials) {
  std::vector<MitmResult> results;
  std::vector<int> types;
  if (rest.empty()) {
    absl::StatusOr<std::vector<MitmResult>> sweep = MitmSweep(setup, trials);
    if (!sweep.ok()) return sweep.status();
    results = *std::move(sweep);
    types = {1, 2, 3, 4};
  } else {
    const std::vector<std::string_view> parts = Split(rest, ":");
    std::optional<int> type, bit;
    if (parts.size() == 2) {
      type = ParseUnsigned<int>(parts[0]);
      bit = ParseUnsigned<int>(parts[1]);
    }
    if (!type || !bit) {
      return absl::InvalidArgumentError("mitm takes no argument or MSG:BIT");
    }
    absl::StatusOr<MitmResult> r = MitmAttack(setup, *type, *bit, trials);
    if (!r.ok()) return r.status();
    results.push_back(*r);
    types.push_back(*type);
  }
  std::vector<AttackReport> lines;
  MitmResult total;
  for (size_t k = 0; k < results.size(); ++k) {
    const MitmResult& r = results[k];
    lines.push_back({fmt::format("mitm-msg{}", types[k]),
                     types[k] % 2 == 1 ? "reader" : "tag", r.sessions,
                     r.mutual_success, std::string(Verdict(r.mutual_success))});
    total.sessions += r.sessions;
    total.desynchronized += r.desynchronized;
    total.pairing_broken += r.pairing_broken;
  }
  lines.push_back({"mitm-desync", "tag", total.sessions, total.desynchronized,
                   std::string(Verdict(total.desynchronized))});
  lines.push_back({"mitm-pairing", "system", total.sessions,
                   total.pairing_broken,
                   std::string(Verdict(total.pairing_broken))});
  return lines;
}

absl::StatusOr<std::vector<AttackReport>> PrivacyLines(const RunConfig& c,
                                                       std::string_view name) {
  std::vector<const StrategyInfo*> chosen;
  if (name.empty()) {
    for (const StrategyInfo& s : ShippedStrategies()) chosen.push_back(&s);
  } else if (const StrategyInfo* s = FindStrategy(name)) {
    chosen.push_back(s);
  } else {
    return absl::InvalidArgumentError(
        fmt::format("unknown strategy '{}'", name));
  }
  ExperimentOptions options;
  options.group_order = c.group_order;
  options.word_bits = c.word_bits;
  options.divisors = c.divisors;
  options.trials = c.trials;
  options.seed = c.seed;
  options.mode = c.mode;
  std::vector<AttackReport> lines;
  for (const StrategyInfo* s : chosen) {
    absl::StatusOr<ExperimentResult> r = PrivacyExperiment(s->factory, options);
    if (!r.ok()) return r.status();
    const bool inside =
        std::abs(r->advantage()) <= AdvantageHalfWidth99(r->trials);
    lines.push_back({"privacy", std::string(s->name), r->trials, r->successes,
                     inside ? "pass" : "fail"});
  }
  return lines;
}

absl::StatusOr<std::vector<AttackReport>> AttackLines(const RunConfig& c,
                                                      std::string_view attack) {
  const AttackSetup setup = SetupFrom(c);
  std::string_view rest = attack;
  if (rest == "replay") return ReplayAttack(setup, c.trials);
  if (ConsumePrefix(rest, "desync:")) {
    std::optional<int> losses = ParseUnsigned<int>(rest);
    if (!losses) return absl::InvalidArgumentError("desync takes :K");
    absl::StatusOr<DesyncResult> r = DesyncAttack(setup, *losses, c.trials);
    if (!r.ok()) return r.status();
    return std::vector<AttackReport>{DesyncReport(setup, *losses, *r)};
  }
  if (rest == "mitm") return MitmLines(setup, "", c.trials);
  if (ConsumePrefix(rest, "mitm:")) return MitmLines(setup, rest, c.trials);
  if (rest == "hygiene") {
    absl::StatusOr<HygieneResult> r = StateHygieneFuzz(setup, c.trials);
    if (!r.ok()) return r.status();
    return std::vector<AttackReport>{
        {"hygiene", "pairing", r->steps, r->pairing_violations,
         std::string(Verdict(r->pairing_violations))},
        {"hygiene", "purity", r->steps, r->purity_violations,
         std::string(Verdict(r->purity_violations))},
    };
  }
  if (rest == "privacy") return PrivacyLines(c, "");
  if (ConsumePrefix(rest, "privacy:")) return PrivacyLines(c, rest);
  return absl::InvalidArgumentError(fmt::format(
      "unknown attack '{}' (replay | desync:K | mitm[:MSG:BIT] | hygiene | "
      "privacy[:NAME])",
      attack));
}

}  // namespace

CommandOutput CmdAttack(const RunConfig& config, std::string_view attack) {
  if (absl::Status s = ValidateConfig(config); !s.ok()) {
    return Failure(kExitConfigError, s);
  }
  absl::StatusOr<std::vector<AttackReport>> lines = AttackLines(config, attack);
  if (!lines.ok()) return Failure(kExitConfigError, lines.status());
  CommandOutput out;
  out.out = FormatReport(*lines);
  for (const AttackReport& r : *lines) {
    if (r.verdict == "fail") out.exit_code = kExitProtocolFailure;
  }
  return out;
}

CommandOutput CmdSimulate(const RunConfig& config) {
  if (absl::Status s = ValidateConfig(config); !s.ok()) {
    return Failure(kExitConfigError, s);
  }
  MonteCarloOptions options;
  options.num_tags = config.num_tags;
  options.group_sizes = EqualGroupSizes(config.num_tags, config.groups);
  options.compromised_counts =
      CompromisedRange(config.c_start, config.c_stop, config.c_step);
  options.runs = config.runs;
  options.seed = config.seed;
  absl::StatusOr<CurvePair> proposed =
      RunMonteCarlo(options, PartitionModel::kProposed);
  if (!proposed.ok()) return Failure(kExitConfigError, proposed.status());
  std::optional<CurvePair> baseline;
  if (config.baseline) {
    absl::StatusOr<CurvePair> b =
        RunMonteCarlo(options, PartitionModel::kGroupKeyBaseline);
    if (!b.ok()) return Failure(kExitConfigError, b.status());
    baseline = *std::move(b);
  }
  absl::StatusOr<std::string> csv =
      FormatCurvesCsv(*proposed, baseline ? &*baseline : nullptr);
  if (!csv.ok()) return Failure(kExitConfigError, csv.status());
  const std::string path = OutputPath(config, config.csv_file);
  if (absl::Status s = WriteFile(path, *csv); !s.ok()) {
    return Failure(kExitConfigError, s);
  }
  CommandOutput out;
  out.out = fmt::format("wrote {} ({} rows)\n", path,
                        options.compromised_counts.size());
  return out;
}

}  // namespace cyclic_rfid
