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

#include <sstream>

#include "gtest/gtest.h"
#include "test_util.h"

namespace cyclic_rfid {
namespace {

TEST(LWordTest, MakeRejectsOverwideValues) {
  EXPECT_OK(LWord::Make(0xff, 8));
  EXPECT_EQ(LWord::Make(0x100, 8).status().code(),
            absl::StatusCode::kOutOfRange);
  EXPECT_EQ(LWord::Make(1, 0).status().code(),
            absl::StatusCode::kInvalidArgument);
  EXPECT_EQ(LWord::Make(1, 65).status().code(),
            absl::StatusCode::kInvalidArgument);
  EXPECT_OK(LWord::Make(~uint64_t{0}, 64));
}

TEST(LWordTest, MaskCoversWidth) {
  EXPECT_EQ(LWord::Mask(1), 1u);
  EXPECT_EQ(LWord::Mask(8), 0xffu);
  EXPECT_EQ(LWord::Mask(63), 0x7fffffffffffffffu);
  EXPECT_EQ(LWord::Mask(64), ~uint64_t{0});
}

TEST(LWordTest, HexRoundTrip) {
  const LWord w(0x2d, 8);
  EXPECT_EQ(w.ToHex(), "2d");
  EXPECT_EQ(LWord(0x1, 32).ToHex(), "00000001");
  EXPECT_EQ(LWord(0x5, 3).ToHex(), "5");
  EXPECT_EQ(*LWord::FromHex("2D", 8), w);
  EXPECT_EQ(*LWord::FromHex("002d", 8), w);
  for (std::string_view bad :
       {"", "-1", "+1", "0x2d", "2g", "12345678901234567"}) {
    EXPECT_FALSE(LWord::FromHex(bad, 64).ok()) << bad;
  }
  EXPECT_EQ(LWord::FromHex("100", 8).status().code(),
            absl::StatusCode::kOutOfRange);
}

TEST(LWordTest, XorModAndFlip) {
  const LWord a(0xc8, 8), b(0x64, 8);
  EXPECT_EQ((a ^ b).value(), 0xacu);
  EXPECT_EQ((a ^ b).Mod(LWord(45, 8))->value(), 172u % 45u);
  EXPECT_FALSE(a.Mod(LWord(0, 8)).has_value());
  EXPECT_EQ(a.FlipBit(0).value(), 0xc9u);
  EXPECT_EQ(a.FlipBit(7).value(), 0x48u);
  EXPECT_EQ(a.byte_width(), 1);
  EXPECT_EQ(LWord(0, 9).byte_width(), 2);
}

TEST(LWordTest, StreamsAsPrefixedHex) {
  std::ostringstream os;
  os << LWord(0x25, 8);
  EXPECT_EQ(os.str(), "0x25");
}

}  // namespace
}  // namespace cyclic_rfid
