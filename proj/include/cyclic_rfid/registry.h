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

// System provisioning: the server look-up table and the tag memories.
//
// Each subgroup H_j of the mother group contributes one tag per non-identity
// element a_j^i. The element index i travels in clear in the first protocol
// message, so no index may be unique to one subgroup: indices are capped at
// Q - 1 where Q is the second-largest subgroup order, for every subgroup
// larger than Q.

#ifndef CYCLIC_RFID_REGISTRY_H_
#define CYCLIC_RFID_REGISTRY_H_

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "absl/container/flat_hash_map.h"
#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "cyclic_rfid/group.h"
#include "cyclic_rfid/lword.h"

namespace cyclic_rfid {

// (subgroup label j, element index i).
struct TagKey {
  int subgroup_id = 0;
  uint64_t index = 0;

  friend bool operator==(const TagKey&, const TagKey&) = default;
  friend auto operator<=>(const TagKey&, const TagKey&) = default;

  template <typename H>
  friend H AbslHashValue(H h, const TagKey& k) {
    return H::combine(std::move(h), k.subgroup_id, k.index);
  }
};

// Volatile memory a tag holds between messages of one session.
struct TagSessionMemory {
  enum class Phase { kIdle, kSentMsg1, kSentMsg3 };

  Phase phase = Phase::kIdle;
  LWord r1;  // Valid in kSentMsg3.

  friend bool operator==(const TagSessionMemory&,
                         const TagSessionMemory&) = default;
};

struct TagState {
  int subgroup_id = 0;
  uint64_t index = 0;
  LWord inv_word;  // Encoded (a_j^i)^-1; fixed at provisioning.
  LWord id;
  LWord key;
  LWord r4;  // The only non-volatile field that changes.
  TagSessionMemory session;

  TagKey tag_key() const { return {subgroup_id, index}; }

  friend bool operator==(const TagState&, const TagState&) = default;
};

struct ServerRow {
  LWord id;
  LWord key;
  LWord r_old;
  LWord r_new;

  friend bool operator==(const ServerRow&, const ServerRow&) = default;
};

class ServerTable {
 public:
  // An empty table over one subgroup per divisor, labelled 1..gamma in list
  // order. Needs at least two distinct divisors of n, each >= 2.
  static absl::StatusOr<ServerTable> Create(const GroupSpec& group,
                                            std::span<const uint64_t> divisors);

  const GroupSpec& group() const { return group_; }
  const std::vector<SubgroupHandle>& groups() const { return groups_; }
  int word_bits() const { return group_.word_bits(); }

  // Largest usable element index (Q - 1).
  uint64_t index_cap() const { return index_cap_; }

  // Number of subgroups (gamma).
  int gamma() const { return static_cast<int>(groups_.size()); }

  size_t size() const { return rows_.size(); }

  const SubgroupHandle* FindSubgroup(int subgroup_id) const;

  // Highest index provisioned in the subgroup: min(|H_j| - 1, index_cap).
  uint64_t IndexLimit(const SubgroupHandle& subgroup) const;

  // Absent (nullptr) when (j, i) was never provisioned.
  const ServerRow* Lookup(int subgroup_id, uint64_t index) const;
  const ServerRow* Lookup(const TagKey& key) const {
    return Lookup(key.subgroup_id, key.index);
  }

  // Rotates the stored nonces of an existing row. This is the only mutation
  // of a provisioned row; callers hold exclusive access to the row.
  absl::Status UpdateNonces(const TagKey& key, LWord r_old, LWord r_new);

  // Adds a row; rejects out-of-range keys, duplicates and width mismatches.
  absl::Status Insert(const TagKey& key, const ServerRow& row);

  // Keys in table order: subgroups in label order, indices ascending.
  std::vector<TagKey> Keys() const;

  friend bool operator==(const ServerTable& a, const ServerTable& b) {
    return a.group_ == b.group_ && a.groups_ == b.groups_ &&
           a.index_cap_ == b.index_cap_ && a.rows_ == b.rows_;
  }

 private:
  ServerTable(GroupSpec group, std::vector<SubgroupHandle> groups,
              uint64_t index_cap)
      : group_(group), groups_(std::move(groups)), index_cap_(index_cap) {}

  GroupSpec group_;
  std::vector<SubgroupHandle> groups_;
  uint64_t index_cap_;
  absl::flat_hash_map<TagKey, ServerRow> rows_;
};

struct ProvisionedSystem {
  ServerTable table;
  std::vector<TagState> tags;  // Table order.

  TagState* FindTag(const TagKey& key);
};

// Builds the look-up table and the paired tag memories. IDs and keys are
// drawn uniformly from [1, 2^L) without repetition across the system; every
// row starts with r_old = 0 and r_new equal to the tag's R_4.
absl::StatusOr<ProvisionedSystem> Provision(const GroupSpec& group,
                                            std::span<const uint64_t> divisors,
                                            uint64_t seed);

// One row per line, `j i id key r_old r_new`, all lowercase hex.
std::string ExportTable(const ServerTable& table);
absl::StatusOr<ServerTable> ImportTable(std::string_view text,
                                        const GroupSpec& group,
                                        std::span<const uint64_t> divisors);

// One tag per line, `j i inv id key r4`, all lowercase hex. Volatile session
// memory is not persisted.
std::string ExportTags(std::span<const TagState> tags);
absl::StatusOr<std::vector<TagState>> ImportTags(std::string_view text,
                                                 const ServerTable& table);

// Checks that every tag has exactly one row with matching (j, i), id and
// key, and that every row has a tag.
absl::Status CheckPairing(const ServerTable& table,
                          std::span<const TagState> tags);

}  // namespace cyclic_rfid

#endif  // CYCLIC_RFID_REGISTRY_H_
