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

#include "cyclic_rfid/registry.h"

#include <algorithm>

#include "absl/container/flat_hash_set.h"
#include "cyclic_rfid/prng.h"
#include "cyclic_rfid/text.h"
#include "fmt/format.h"

namespace cyclic_rfid {

absl::StatusOr<ServerTable> ServerTable::Create(
    const GroupSpec& group, std::span<const uint64_t> divisors) {
  if (divisors.size() < 2) {
    return absl::InvalidArgumentError(
        "the system needs at least two subgroups");
  }
  std::vector<SubgroupHandle> groups;
  absl::flat_hash_set<uint64_t> seen;
  for (size_t j = 0; j < divisors.size(); ++j) {
    if (!seen.insert(divisors[j]).second) {
      return absl::InvalidArgumentError(
          fmt::format("duplicate subgroup order {}", divisors[j]));
    }
    absl::StatusOr<SubgroupHandle> h =
        SubgroupForDivisor(group, divisors[j], static_cast<int>(j + 1));
    if (!h.ok()) return h.status();
    groups.push_back(*h);
  }
  std::vector<uint64_t> orders(divisors.begin(), divisors.end());
  std::sort(orders.rbegin(), orders.rend());
  const uint64_t second_largest = orders[1];
  return ServerTable(group, std::move(groups), second_largest - 1);
}

const SubgroupHandle* ServerTable::FindSubgroup(int subgroup_id) const {
  if (subgroup_id < 1 || subgroup_id > gamma()) return nullptr;
  return &groups_[subgroup_id - 1];
}

uint64_t ServerTable::IndexLimit(const SubgroupHandle& subgroup) const {
  return std::min(subgroup.divisor() - 1, index_cap_);
}

const ServerRow* ServerTable::Lookup(int subgroup_id, uint64_t index) const {
  auto it = rows_.find(TagKey{subgroup_id, index});
  return it == rows_.end() ? nullptr : &it->second;
}

absl::Status ServerTable::UpdateNonces(const TagKey& key, LWord r_old,
                                       LWord r_new) {
  auto it = rows_.find(key);
  if (it == rows_.end()) {
    return absl::NotFoundError(
        fmt::format("no row for ({}, {})", key.subgroup_id, key.index));
  }
  it->second.r_old = r_old;
  it->second.r_new = r_new;
  return absl::OkStatus();
}

absl::Status ServerTable::Insert(const TagKey& key, const ServerRow& row) {
  const SubgroupHandle* h = FindSubgroup(key.subgroup_id);
  if (h == nullptr) {
    return absl::InvalidArgumentError(
        fmt::format("unknown subgroup label {}", key.subgroup_id));
  }
  if (key.index < 1 || key.index > IndexLimit(*h)) {
    return absl::OutOfRangeError(
        fmt::format("index {} outside [1, {}] for subgroup {}", key.index,
                    IndexLimit(*h), key.subgroup_id));
  }
  const int w = word_bits();
  if (row.id.width() != w || row.key.width() != w || row.r_old.width() != w ||
      row.r_new.width() != w) {
    return absl::InvalidArgumentError("row word width mismatch");
  }
  if (!rows_.emplace(key, row).second) {
    return absl::AlreadyExistsError(
        fmt::format("duplicate row ({}, {})", key.subgroup_id, key.index));
  }
  return absl::OkStatus();
}

std::vector<TagKey> ServerTable::Keys() const {
  std::vector<TagKey> keys;
  keys.reserve(rows_.size());
  for (const auto& [key, row] : rows_) keys.push_back(key);
  std::sort(keys.begin(), keys.end());
  return keys;
}

TagState* ProvisionedSystem::FindTag(const TagKey& key) {
  for (TagState& t : tags) {
    if (t.tag_key() == key) return &t;
  }
  return nullptr;
}

absl::StatusOr<ProvisionedSystem> Provision(const GroupSpec& group,
                                            std::span<const uint64_t> divisors,
                                            uint64_t seed) {
  absl::StatusOr<ServerTable> table = ServerTable::Create(group, divisors);
  if (!table.ok()) return table.status();

  const int w = group.word_bits();
  uint64_t total = 0;
  for (const SubgroupHandle& h : table->groups()) total += table->IndexLimit(h);
  // IDs and keys come from [1, 2^L) without repetition.
  if (w < 64 && total > LWord::Mask(w)) {
    return absl::ResourceExhaustedError(fmt::format(
        "{} tags do not fit in distinct {}-bit identifiers", total, w));
  }

  Prng rng(seed);
  absl::flat_hash_set<uint64_t> ids, keys;
  auto draw_unique = [&](absl::flat_hash_set<uint64_t>& used) {
    uint64_t v;
    do {
      v = rng.InRange(1, LWord::Mask(w));
    } while (!used.insert(v).second);
    return LWord(v, w);
  };

  std::vector<TagState> tags;
  tags.reserve(total);
  for (const SubgroupHandle& h : table->groups()) {
    for (uint64_t i = 1; i <= table->IndexLimit(h); ++i) {
      absl::StatusOr<GroupElement> inv = Inverse(h, i);
      if (!inv.ok()) return inv.status();
      TagState tag;
      tag.subgroup_id = h.id();
      tag.index = i;
      tag.inv_word = Encode(*inv, group);
      tag.id = draw_unique(ids);
      tag.key = draw_unique(keys);
      tag.r4 = rng.Word(w);
      ServerRow row{tag.id, tag.key, LWord(0, w), tag.r4};
      if (absl::Status s = table->Insert(tag.tag_key(), row); !s.ok()) {
        return s;
      }
      tags.push_back(tag);
    }
  }
  return ProvisionedSystem{*std::move(table), std::move(tags)};
}

namespace {

// Splits a non-comment line into exactly `n` hex fields.
absl::StatusOr<std::vector<uint64_t>> ParseHexFields(std::string_view line,
                                                     size_t n, int line_no) {
  std::vector<std::string_view> parts = SplitFields(line);
  if (parts.size() != n) {
    return absl::InvalidArgumentError(fmt::format(
        "line {}: expected {} fields, got {}", line_no, n, parts.size()));
  }
  std::vector<uint64_t> out;
  for (std::string_view p : parts) {
    std::optional<uint64_t> v;
    if (p.size() > 16 || !(v = ParseUnsigned(p, 16))) {
      return absl::InvalidArgumentError(
          fmt::format("line {}: malformed hex field '{}'", line_no, p));
    }
    out.push_back(*v);
  }
  return out;
}

template <typename Fn>
absl::Status ForEachDataLine(std::string_view text, Fn fn) {
  int line_no = 0;
  for (std::string_view line : Split(text, "\n")) {
    ++line_no;
    line = StripWhitespace(line);
    if (line.empty() || line.front() == '#') continue;
    if (absl::Status s = fn(line, line_no); !s.ok()) return s;
  }
  return absl::OkStatus();
}

absl::StatusOr<LWord> Word(uint64_t v, int width, int line_no) {
  absl::StatusOr<LWord> w = LWord::Make(v, width);
  if (!w.ok()) {
    return absl::InvalidArgumentError(
        fmt::format("line {}: {}", line_no, std::string(w.status().message())));
  }
  return w;
}

}  // namespace

std::string ExportTable(const ServerTable& table) {
  std::string out;
  for (const TagKey& key : table.Keys()) {
    const ServerRow& r = *table.Lookup(key);
    fmt::format_to(std::back_inserter(out), "{:x} {:x} {} {} {} {}\n",
                   key.subgroup_id, key.index, r.id.ToHex(), r.key.ToHex(),
                   r.r_old.ToHex(), r.r_new.ToHex());
  }
  return out;
}

absl::StatusOr<ServerTable> ImportTable(std::string_view text,
                                        const GroupSpec& group,
                                        std::span<const uint64_t> divisors) {
  absl::StatusOr<ServerTable> table = ServerTable::Create(group, divisors);
  if (!table.ok()) return table.status();
  const int w = group.word_bits();
  absl::Status s = ForEachDataLine(
      text, [&](std::string_view line, int line_no) -> absl::Status {
        absl::StatusOr<std::vector<uint64_t>> f =
            ParseHexFields(line, 6, line_no);
        if (!f.ok()) return f.status();
        ServerRow row;
        const std::pair<LWord*, uint64_t> slots[] = {{&row.id, (*f)[2]},
                                                     {&row.key, (*f)[3]},
                                                     {&row.r_old, (*f)[4]},
                                                     {&row.r_new, (*f)[5]}};
        for (auto [slot, v] : slots) {
          absl::StatusOr<LWord> word = Word(v, w, line_no);
          if (!word.ok()) return word.status();
          *slot = *word;
        }
        return table->Insert(TagKey{static_cast<int>((*f)[0]), (*f)[1]}, row);
      });
  if (!s.ok()) return s;
  return table;
}

std::string ExportTags(std::span<const TagState> tags) {
  std::string out;
  for (const TagState& t : tags) {
    fmt::format_to(std::back_inserter(out), "{:x} {:x} {} {} {} {}\n",
                   t.subgroup_id, t.index, t.inv_word.ToHex(), t.id.ToHex(),
                   t.key.ToHex(), t.r4.ToHex());
  }
  return out;
}

absl::StatusOr<std::vector<TagState>> ImportTags(std::string_view text,
                                                 const ServerTable& table) {
  std::vector<TagState> tags;
  const int w = table.word_bits();
  absl::flat_hash_set<TagKey> seen;
  absl::Status s = ForEachDataLine(
      text, [&](std::string_view line, int line_no) -> absl::Status {
        absl::StatusOr<std::vector<uint64_t>> f =
            ParseHexFields(line, 6, line_no);
        if (!f.ok()) return f.status();
        TagState t;
        t.subgroup_id = static_cast<int>((*f)[0]);
        t.index = (*f)[1];
        const std::pair<LWord*, uint64_t> slots[] = {{&t.inv_word, (*f)[2]},
                                                     {&t.id, (*f)[3]},
                                                     {&t.key, (*f)[4]},
                                                     {&t.r4, (*f)[5]}};
        for (auto [slot, v] : slots) {
          absl::StatusOr<LWord> word = Word(v, w, line_no);
          if (!word.ok()) return word.status();
          *slot = *word;
        }
        const SubgroupHandle* h = table.FindSubgroup(t.subgroup_id);
        if (h == nullptr) {
          return absl::InvalidArgumentError(fmt::format(
              "line {}: unknown subgroup {}", line_no, t.subgroup_id));
        }
        absl::StatusOr<GroupElement> inv = Inverse(*h, t.index);
        if (!inv.ok()) return inv.status();
        if (Encode(*inv, table.group()) != t.inv_word) {
          return absl::InvalidArgumentError(
              fmt::format("line {}: stored inverse does not match ({}, {})",
                          line_no, t.subgroup_id, t.index));
        }
        if (!seen.insert(t.tag_key()).second) {
          return absl::AlreadyExistsError(
              fmt::format("line {}: duplicate tag", line_no));
        }
        tags.push_back(t);
        return absl::OkStatus();
      });
  if (!s.ok()) return s;
  return tags;
}

absl::Status CheckPairing(const ServerTable& table,
                          std::span<const TagState> tags) {
  absl::flat_hash_set<TagKey> seen;
  for (const TagState& t : tags) {
    const ServerRow* row = table.Lookup(t.tag_key());
    if (row == nullptr) {
      return absl::NotFoundError(fmt::format("tag ({}, {}) has no server row",
                                             t.subgroup_id, t.index));
    }
    if (row->id != t.id || row->key != t.key) {
      return absl::DataLossError(fmt::format(
          "tag ({}, {}) disagrees with its row", t.subgroup_id, t.index));
    }
    if (!seen.insert(t.tag_key()).second) {
      return absl::AlreadyExistsError("two tags share one row");
    }
  }
  if (seen.size() != table.size()) {
    return absl::FailedPreconditionError("server rows without a tag");
  }
  return absl::OkStatus();
}

}  // namespace cyclic_rfid
