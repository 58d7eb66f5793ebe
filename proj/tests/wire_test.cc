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

#include "cyclic_rfid/wire.h"

#include "gtest/gtest.h"
#include "test_util.h"

namespace cyclic_rfid {
namespace {

TEST(WireTest, RoundTripsEveryTypeAndWidth) {
  Prng rng(3);
  for (int width : {1, 7, 8, 9, 16, 32, 33, 64}) {
    for (int k = 0; k < 50; ++k) {
      const std::vector<Message> messages = {
          Msg1{rng.Below(1u << 31), rng.Word(width)},
          Msg2{rng.Word(width), rng.Word(width)},
          Msg3{rng.Word(width)},
          Msg4{rng.Word(width), rng.Word(width)},
      };
      for (const Message& m : messages) {
        const Frame frame = EncodeFrame(m);
        EXPECT_EQ(frame[0], MessageType(m));
        absl::StatusOr<Message> back = DecodeFrame(frame, width);
        ASSERT_OK(back);
        EXPECT_EQ(*back, m);
      }
    }
  }
}

TEST(WireTest, LayoutIsBigEndian) {
  const Frame frame = EncodeFrame(Msg1{0x01020304, LWord(0xabcd, 16)});
  EXPECT_EQ(frame, (Frame{1, 0x01, 0x02, 0x03, 0x04, 0xab, 0xcd}));
  EXPECT_EQ(PayloadHex(frame), "01020304abcd");
  EXPECT_EQ(PayloadBits(frame), 48);
  EXPECT_EQ(EncodeFrame(Msg2{LWord(0x3e, 8), LWord(0x7f, 8)}),
            (Frame{2, 0x3e, 0x7f}));
}

TEST(WireTest, FlipCountsFromTheLastByte) {
  const Frame frame = EncodeFrame(Msg2{LWord(0x00, 8), LWord(0x00, 8)});
  EXPECT_EQ(FlipPayloadBit(frame, 0), (Frame{2, 0x00, 0x01}));
  EXPECT_EQ(FlipPayloadBit(frame, 9), (Frame{2, 0x02, 0x00}));
  EXPECT_EQ(FlipPayloadBit(FlipPayloadBit(frame, 5), 5), frame);
}

TEST(WireTest, RejectsMalformedFrames) {
  EXPECT_FALSE(DecodeFrame(Frame{}, 8).ok());
  EXPECT_FALSE(DecodeFrame(Frame{5, 0}, 8).ok());
  EXPECT_FALSE(DecodeFrame(Frame{0, 0}, 8).ok());
  EXPECT_FALSE(DecodeFrame(Frame{3}, 8).ok());
  EXPECT_FALSE(DecodeFrame(Frame{3, 1, 2}, 8).ok());
  EXPECT_FALSE(DecodeFrame(Frame{2, 1}, 8).ok());
  EXPECT_FALSE(DecodeFrame(Frame{1, 0, 0, 0, 1}, 8).ok());
  EXPECT_FALSE(DecodeFrame(Frame{3, 1}, 0).ok());
  EXPECT_FALSE(DecodeFrame(Frame{3, 1}, 65).ok());
  // A value wider than the declared width does not decode.
  EXPECT_FALSE(DecodeFrame(Frame{3, 0x80}, 7).ok());
  EXPECT_OK(DecodeFrame(Frame{3, 0x7f}, 7));
}

}  // namespace
}  // namespace cyclic_rfid
