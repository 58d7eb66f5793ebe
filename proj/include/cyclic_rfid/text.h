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

// Small string utilities shared by the parsers.

#ifndef CYCLIC_RFID_TEXT_H_
#define CYCLIC_RFID_TEXT_H_

#include <charconv>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

namespace cyclic_rfid {

// Removes leading and trailing ASCII whitespace.
inline std::string_view StripWhitespace(std::string_view s) {
  constexpr std::string_view kSpace = " \t\r\n\f\v";
  const size_t b = s.find_first_not_of(kSpace);
  if (b == std::string_view::npos) return {};
  const size_t e = s.find_last_not_of(kSpace);
  return s.substr(b, e - b + 1);
}

// Splits on any character in `delims`, keeping empty pieces.
inline std::vector<std::string_view> Split(std::string_view s,
                                           std::string_view delims) {
  std::vector<std::string_view> out;
  size_t start = 0;
  while (true) {
    const size_t p = s.find_first_of(delims, start);
    out.push_back(s.substr(start, p - start));
    if (p == std::string_view::npos) return out;
    start = p + 1;
  }
}

// Splits on runs of spaces and tabs, dropping empty pieces.
inline std::vector<std::string_view> SplitFields(std::string_view s) {
  std::vector<std::string_view> out;
  for (std::string_view p : Split(s, " \t")) {
    if (!p.empty()) out.push_back(p);
  }
  return out;
}

// Parses the whole of `s` as an unsigned integer in `base`. Signs, prefixes
// and trailing characters are rejected.
template <typename T = uint64_t>
std::optional<T> ParseUnsigned(std::string_view s, int base = 10) {
  T v{};
  if (s.empty() || s.front() == '-') return std::nullopt;
  const auto [ptr, ec] =
      std::from_chars(s.data(), s.data() + s.size(), v, base);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

inline bool ConsumePrefix(std::string_view& s, std::string_view prefix) {
  if (!s.starts_with(prefix)) return false;
  s.remove_prefix(prefix.size());
  return true;
}

}  // namespace cyclic_rfid

#endif  // CYCLIC_RFID_TEXT_H_
