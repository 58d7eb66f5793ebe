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

#include "cyclic_rfid/run_config.h"

#include <fstream>
#include <sstream>

#include "cyclic_rfid/group.h"
#include "cyclic_rfid/registry.h"
#include "cyclic_rfid/text.h"
#include "fmt/format.h"
#include "yaml-cpp/yaml.h"

namespace cyclic_rfid {

absl::Status ValidateConfig(const RunConfig& c) {
  absl::StatusOr<GroupSpec> group = MakeGroup(c.group_order, c.word_bits);
  if (!group.ok()) return group.status();
  absl::StatusOr<ServerTable> table = ServerTable::Create(*group, c.divisors);
  if (!table.ok()) return table.status();
  uint64_t tags = 0;
  for (const SubgroupHandle& h : table->groups()) tags += table->IndexLimit(h);
  if (tags > LWord::Mask(c.word_bits)) {
    return absl::InvalidArgumentError(
        fmt::format("{} tags do not fit in distinct {}-bit identifiers", tags,
                    c.word_bits));
  }
  if (c.num_tags == 0)
    return absl::InvalidArgumentError("num_tags must be >= 1");
  if (c.groups == 0 || c.groups > c.num_tags) {
    return absl::InvalidArgumentError(
        fmt::format("groups must be in [1, {}], got {}", c.num_tags, c.groups));
  }
  if (c.c_step == 0)
    return absl::InvalidArgumentError("compromised.step must be >= 1");
  if (c.c_start > c.c_stop || c.c_stop > c.num_tags) {
    return absl::InvalidArgumentError(fmt::format(
        "need 0 <= compromised.start <= compromised.stop <= {}", c.num_tags));
  }
  if (c.runs < 1) return absl::InvalidArgumentError("runs must be >= 1");
  if (c.trials < 1) return absl::InvalidArgumentError("trials must be >= 1");
  for (const std::string* f :
       {&c.out_dir, &c.table_file, &c.tags_file, &c.csv_file}) {
    if (f->empty())
      return absl::InvalidArgumentError("output paths must be non-empty");
  }
  return absl::OkStatus();
}

namespace {

absl::Status KeyError(std::string_view key, std::string_view what) {
  return absl::InvalidArgumentError(
      fmt::format("config key '{}': {}", key, what));
}

template <typename T>
absl::Status ReadUnsigned(const YAML::Node& node, std::string_view key,
                          T& out) {
  if (!node.IsScalar()) return KeyError(key, "expected an unsigned integer");
  std::optional<T> v = ParseUnsigned<T>(node.Scalar());
  if (!v)
    return KeyError(
        key, fmt::format("'{}' is not an unsigned integer", node.Scalar()));
  out = *v;
  return absl::OkStatus();
}

absl::Status ReadString(const YAML::Node& node, std::string_view key,
                        std::string& out) {
  if (!node.IsScalar()) return KeyError(key, "expected a string");
  out = node.Scalar();
  return absl::OkStatus();
}

absl::Status ReadBool(const YAML::Node& node, std::string_view key, bool& out) {
  if (!node.IsScalar()) return KeyError(key, "expected true or false");
  if (node.Scalar() == "true") {
    out = true;
  } else if (node.Scalar() == "false") {
    out = false;
  } else {
    return KeyError(key, "expected true or false");
  }
  return absl::OkStatus();
}

using Reader = std::function<absl::Status(const YAML::Node&)>;

// Reads every key of a mapping through `fields`; unknown keys are errors.
absl::Status ReadMap(
    const YAML::Node& node, std::string_view where,
    const std::vector<std::pair<std::string_view, Reader>>& fields) {
  if (!node.IsMap()) return KeyError(where, "expected a mapping");
  for (const auto& kv : node) {
    const std::string key = kv.first.as<std::string>();
    bool known = false;
    for (const auto& [name, read] : fields) {
      if (name != key) continue;
      known = true;
      if (absl::Status s = read(kv.second); !s.ok()) return s;
    }
    if (!known) return KeyError(key, fmt::format("unknown key in {}", where));
  }
  return absl::OkStatus();
}

}  // namespace

absl::StatusOr<RunConfig> ParseConfig(std::string_view yaml) {
  RunConfig c;
  YAML::Node root;
  try {
    root = YAML::Load(std::string(yaml));
  } catch (const YAML::Exception& e) {
    return absl::InvalidArgumentError(
        fmt::format("config is not YAML: {}", e.what()));
  }
  if (root.IsNull()) return c;

  const auto u = [](std::string_view key, auto& field) -> Reader {
    return [key, &field](const YAML::Node& n) {
      return ReadUnsigned(n, key, field);
    };
  };
  const auto str = [](std::string_view key, std::string& field) -> Reader {
    return [key, &field](const YAML::Node& n) {
      return ReadString(n, key, field);
    };
  };
  absl::Status s = ReadMap(
      root, "the top level",
      {
          {"group_order", u("group_order", c.group_order)},
          {"word_bits", u("word_bits", c.word_bits)},
          {"divisors",
           [&c](const YAML::Node& n) -> absl::Status {
             if (!n.IsSequence())
               return KeyError("divisors", "expected a list");
             c.divisors.clear();
             for (const YAML::Node& d : n) {
               uint64_t v = 0;
               if (absl::Status s = ReadUnsigned(d, "divisors", v); !s.ok())
                 return s;
               c.divisors.push_back(v);
             }
             return absl::OkStatus();
           }},
          {"mode",
           [&c](const YAML::Node& n) -> absl::Status {
             std::string name;
             if (absl::Status s = ReadString(n, "mode", name); !s.ok())
               return s;
             absl::StatusOr<UpdateMode> m = ParseUpdateMode(name);
             if (!m.ok()) return m.status();
             c.mode = *m;
             return absl::OkStatus();
           }},
          {"num_tags", u("num_tags", c.num_tags)},
          {"groups", u("groups", c.groups)},
          {"compromised",
           [&](const YAML::Node& n) {
             return ReadMap(n, "compromised",
                            {{"start", u("compromised.start", c.c_start)},
                             {"stop", u("compromised.stop", c.c_stop)},
                             {"step", u("compromised.step", c.c_step)}});
           }},
          {"runs", u("runs", c.runs)},
          {"baseline",
           [&c](const YAML::Node& n) {
             return ReadBool(n, "baseline", c.baseline);
           }},
          {"seed", u("seed", c.seed)},
          {"trials", u("trials", c.trials)},
          {"outputs",
           [&](const YAML::Node& n) {
             return ReadMap(n, "outputs",
                            {{"dir", str("outputs.dir", c.out_dir)},
                             {"table", str("outputs.table", c.table_file)},
                             {"tags", str("outputs.tags", c.tags_file)},
                             {"csv", str("outputs.csv", c.csv_file)}});
           }},
      });
  if (!s.ok()) return s;
  if (absl::Status v = ValidateConfig(c); !v.ok()) return v;
  return c;
}

absl::StatusOr<RunConfig> LoadConfigFile(const std::string& path) {
  std::ifstream in(path);
  if (!in)
    return absl::NotFoundError(fmt::format("cannot read config '{}'", path));
  std::stringstream text;
  text << in.rdbuf();
  return ParseConfig(text.str());
}

std::string SerializeConfig(const RunConfig& c) {
  YAML::Emitter out;
  out << YAML::BeginMap;
  out << YAML::Key << "group_order" << YAML::Value << c.group_order;
  out << YAML::Key << "word_bits" << YAML::Value << c.word_bits;
  out << YAML::Key << "divisors" << YAML::Value << YAML::Flow << c.divisors;
  out << YAML::Key << "mode" << YAML::Value
      << std::string(UpdateModeName(c.mode));
  out << YAML::Key << "num_tags" << YAML::Value << c.num_tags;
  out << YAML::Key << "groups" << YAML::Value << c.groups;
  out << YAML::Key << "compromised" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "start" << YAML::Value << c.c_start;
  out << YAML::Key << "stop" << YAML::Value << c.c_stop;
  out << YAML::Key << "step" << YAML::Value << c.c_step;
  out << YAML::EndMap;
  out << YAML::Key << "runs" << YAML::Value << c.runs;
  out << YAML::Key << "baseline" << YAML::Value << c.baseline;
  out << YAML::Key << "seed" << YAML::Value << c.seed;
  out << YAML::Key << "trials" << YAML::Value << c.trials;
  out << YAML::Key << "outputs" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "dir" << YAML::Value << YAML::DoubleQuoted << c.out_dir;
  out << YAML::Key << "table" << YAML::Value << YAML::DoubleQuoted
      << c.table_file;
  out << YAML::Key << "tags" << YAML::Value << YAML::DoubleQuoted
      << c.tags_file;
  out << YAML::Key << "csv" << YAML::Value << YAML::DoubleQuoted << c.csv_file;
  out << YAML::EndMap;
  out << YAML::EndMap;
  return std::string(out.c_str()) + "\n";
}

absl::StatusOr<RunConfig> ApplyOverrides(RunConfig config,
                                         const ConfigOverrides& flags,
                                         const EnvLookup& getenv) {
  if (getenv) {
    if (std::optional<std::string> env = getenv(kSeedEnvVar)) {
      std::optional<uint64_t> seed = ParseUnsigned(StripWhitespace(*env));
      if (!seed) {
        return absl::InvalidArgumentError(fmt::format(
            "{}='{}' is not an unsigned integer", kSeedEnvVar, *env));
      }
      config.seed = *seed;
    }
  }
  if (flags.seed) config.seed = *flags.seed;
  if (flags.mode) config.mode = *flags.mode;
  if (flags.out_dir) config.out_dir = *flags.out_dir;
  if (flags.trials) config.trials = *flags.trials;
  if (absl::Status s = ValidateConfig(config); !s.ok()) return s;
  return config;
}

std::string OutputPath(const RunConfig& config, const std::string& file) {
  if (!file.empty() && file.front() == '/') return file;
  return config.out_dir + "/" + file;
}

}  // namespace cyclic_rfid
