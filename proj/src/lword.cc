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

#include "cyclic_rfid/lword.h"

#include <ostream>

#include "absl/status/status.h"
#include "cyclic_rfid/text.h"
#include "fmt/format.h"

namespace cyclic_rfid {

absl::StatusOr<LWord> LWord::Make(uint64_t value, int width) {
  if (width < 1 || width > kMaxBits) {
    return absl::InvalidArgumentError(
        fmt::format("word width must be in [1, 64], got {}", width));
  }
  if ((value & ~Mask(width)) != 0) {
    return absl::OutOfRangeError(
        fmt::format("value 0x{:x} does not fit in {} bits", value, width));
  }
  return LWord(value, width);
}

absl::StatusOr<LWord> LWord::FromHex(std::string_view hex, int width) {
  std::optional<uint64_t> value;
  if (hex.size() > 16 || !(value = ParseUnsigned(hex, 16))) {
    return absl::InvalidArgumentError(
        fmt::format("malformed hex word '{}'", hex));
  }
  return Make(*value, width);
}

std::string LWord::ToHex() const {
  return fmt::format("{:0{}x}", value_, (width_ + 3) / 4);
}

std::ostream& operator<<(std::ostream& os, const LWord& w) {
  return os << "0x" << w.ToHex();
}

}  // namespace cyclic_rfid
