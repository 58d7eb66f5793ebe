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

#ifndef CYCLIC_RFID_LWORD_H_
#define CYCLIC_RFID_LWORD_H_

#include <cassert>
#include <compare>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <utility>

#include "absl/status/statusor.h"

namespace cyclic_rfid {

// An unsigned word of a fixed bit width L (1..64). Every protocol quantity
// (identifiers, keys, nonces and the exchanged values) lives in this domain.
// Binary operations require both operands to share the same width.
class LWord {
 public:
  static constexpr int kMaxBits = 64;

  constexpr LWord() = default;

  // `value` must fit in `width` bits. Use Make() for untrusted input.
  constexpr LWord(uint64_t value, int width) : value_(value), width_(width) {
    assert(width >= 1 && width <= kMaxBits);
    assert((value & ~Mask(width)) == 0);
  }

  static absl::StatusOr<LWord> Make(uint64_t value, int width);

  // Parses a lowercase or uppercase hexadecimal string (no prefix).
  static absl::StatusOr<LWord> FromHex(std::string_view hex, int width);

  static constexpr uint64_t Mask(int width) {
    return width >= 64 ? ~uint64_t{0} : (uint64_t{1} << width) - 1;
  }

  constexpr uint64_t value() const { return value_; }
  constexpr int width() const { return width_; }

  // Number of bytes the word occupies on the wire.
  constexpr int byte_width() const { return (width_ + 7) / 8; }

  // Residue of this word modulo `modulus`; empty when the modulus is zero.
  constexpr std::optional<LWord> Mod(const LWord& modulus) const {
    assert(modulus.width_ == width_);
    if (modulus.value_ == 0) return std::nullopt;
    return LWord(value_ % modulus.value_, width_);
  }

  constexpr LWord FlipBit(int bit) const {
    assert(bit >= 0 && bit < width_);
    return LWord(value_ ^ (uint64_t{1} << bit), width_);
  }

  // Lowercase hex, zero padded to the word width.
  std::string ToHex() const;

  friend constexpr LWord operator^(const LWord& a, const LWord& b) {
    assert(a.width_ == b.width_);
    return LWord(a.value_ ^ b.value_, a.width_);
  }

  friend constexpr bool operator==(const LWord&, const LWord&) = default;
  friend constexpr auto operator<=>(const LWord&, const LWord&) = default;

  template <typename H>
  friend H AbslHashValue(H h, const LWord& w) {
    return H::combine(std::move(h), w.value_, w.width_);
  }

 private:
  uint64_t value_ = 0;
  int width_ = 32;
};

std::ostream& operator<<(std::ostream& os, const LWord& w);

}  // namespace cyclic_rfid

#endif  // CYCLIC_RFID_LWORD_H_
