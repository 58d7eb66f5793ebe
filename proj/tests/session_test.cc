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

#include "cyclic_rfid/session.h"

#include "cyclic_rfid/text.h"
#include "fmt/format.h"
#include "gtest/gtest.h"
#include "test_util.h"

namespace cyclic_rfid {
namespace {

using ::cyclic_rfid::testing::MicroSystem;

std::vector<std::string> Verdicts(const SessionTranscript& t) {
  std::vector<std::string> out;
  for (const TranscriptEntry& e : t.entries) out.push_back(e.verdict);
  return out;
}

bool IsConsistent(const SessionTranscript& t) {
  const bool all_present = t.msg1 && t.msg2 && t.msg3 && t.msg4;
  const bool all_accepted =
      t.entries.size() == 4 &&
      Verdicts(t) == std::vector<std::string>(4, "accept");
  const bool success = t.outcome == SessionOutcome::kMutualSuccess;
  return success == (all_present && all_accepted);
}

TEST(FaultSpecTest, ParsesAndFormats) {
  for (std::string_view text : {"none", "drop-msg4", "drop-msg1", "flip:3:7"}) {
    absl::StatusOr<FaultSpec> spec = ParseFaultSpec(text);
    ASSERT_OK(spec);
    EXPECT_EQ(FormatFaultSpec(*spec), text);
  }
  for (std::string_view text :
       {"", "drop", "drop-msg5", "drop-msg0", "flip:3", "flip:5:1", "flip:a:1",
        "flip:3:-1", "flip:3:1:2"}) {
    EXPECT_FALSE(ParseFaultSpec(text).ok()) << text;
  }
}

TEST(SessionTest, HonestSessionsSucceedForEveryTag) {
  ProvisionedSystem s = MicroSystem(5);
  HonestChannel channel;
  Prng rng(9);
  for (TagState& tag : s.tags) {
    for (int k = 0; k < 200; ++k) {
      const SessionTranscript t = RunSession(tag, s.table, channel, rng);
      ASSERT_EQ(t.outcome, SessionOutcome::kMutualSuccess);
      EXPECT_TRUE(IsConsistent(t));
      EXPECT_LE(t.checks_performed, s.table.gamma());
      EXPECT_EQ(t.reader_authenticated, tag.tag_key());
      EXPECT_EQ(tag.r4, s.table.Lookup(tag.tag_key())->r_new);
    }
  }
  EXPECT_OK(CheckPairing(s.table, s.tags));
}

TEST(SessionTest, DropsEndTheSession) {
  const std::vector<std::pair<int, SessionOutcome>> cases = {
      {1, SessionOutcome::kAborted},
      {2, SessionOutcome::kAborted},
      {3, SessionOutcome::kAborted},
      {4, SessionOutcome::kAborted},
  };
  for (const auto& [type, outcome] : cases) {
    ProvisionedSystem s = MicroSystem(1);
    FaultChannel channel({FaultSpec::Kind::kDrop, type, 0});
    Prng rng(1);
    const SessionTranscript t = RunSession(s.tags[0], s.table, channel, rng);
    EXPECT_EQ(t.outcome, outcome) << type;
    EXPECT_EQ(t.entries.back().verdict, "dropped");
    EXPECT_EQ(t.entries.size(), static_cast<size_t>(type));
    EXPECT_TRUE(IsConsistent(t));
  }
}

TEST(SessionTest, LostMsg4LeavesTagOnOldSlot) {
  ProvisionedSystem s = MicroSystem(1);
  TagState& tag = s.tags[2];
  const LWord r4 = tag.r4;
  FaultChannel drop({FaultSpec::Kind::kDrop, 4, 0});
  Prng rng(2);
  RunSession(tag, s.table, drop, rng);
  EXPECT_EQ(tag.r4, r4);
  EXPECT_EQ(s.table.Lookup(tag.tag_key())->r_old, r4);
  HonestChannel honest;
  EXPECT_EQ(RunSession(tag, s.table, honest, rng).outcome,
            SessionOutcome::kMutualSuccess);
}

TEST(SessionTest, FlipsAreRecordedAsDelivered) {
  ProvisionedSystem s = MicroSystem(1);
  FaultChannel channel({FaultSpec::Kind::kFlip, 3, 0});
  Prng rng(1);
  const SessionTranscript t = RunSession(s.tags[0], s.table, channel, rng);
  EXPECT_EQ(t.outcome, SessionOutcome::kReaderRejectedMsg3);
  ASSERT_EQ(t.entries.size(), 3u);
  EXPECT_EQ(*t.entries[2].delivered, FlipPayloadBit(t.entries[2].sent, 0));
  EXPECT_TRUE(IsConsistent(t));
}

TEST(SessionTest, OutOfRangeFlipIsNoFault) {
  ProvisionedSystem s = MicroSystem(1);
  FaultChannel channel({FaultSpec::Kind::kFlip, 3, 8});
  Prng rng(1);
  EXPECT_EQ(RunSession(s.tags[0], s.table, channel, rng).outcome,
            SessionOutcome::kMutualSuccess);
}

TEST(SessionTest, MalformedFrameIsRejected) {
  ProvisionedSystem s = MicroSystem(1);
  CallbackChannel truncate([](int, Direction, Frame f) -> std::optional<Frame> {
    if (f[0] == 1) f.pop_back();
    return f;
  });
  Prng rng(1);
  const SessionTranscript t = RunSession(s.tags[0], s.table, truncate, rng);
  EXPECT_EQ(t.outcome, SessionOutcome::kReaderRejectedMsg1);
  EXPECT_EQ(t.entries[0].verdict, "malformed");
}

TEST(SessionTest, TranscriptFormat) {
  ProvisionedSystem s = MicroSystem(1);
  HonestChannel channel;
  testing::ScriptedNonces nonces({});
  const SessionTranscript t = RunSession(s.tags[0], s.table, channel, nonces);
  const std::string text = FormatTranscript(t);
  std::vector<std::string_view> lines = Split(text, "\n");
  ASSERT_EQ(lines.size(), 5u);
  EXPECT_TRUE(lines[4].empty());
  EXPECT_EQ(lines[0],
            fmt::format("1 t2r 1 {} accept", PayloadHex(EncodeFrame(*t.msg1))));
  EXPECT_TRUE(lines[1].starts_with("2 r2t 2 "));
  EXPECT_TRUE(lines[3].ends_with(" accept"));
}

TEST(SessionTest, OutcomeNames) {
  EXPECT_EQ(OutcomeName(SessionOutcome::kMutualSuccess), "mutual_success");
  EXPECT_EQ(OutcomeName(SessionOutcome::kReaderRejectedMsg1),
            "reader_rejected_msg1");
  EXPECT_EQ(OutcomeName(SessionOutcome::kReaderRejectedMsg3),
            "reader_rejected_msg3");
  EXPECT_EQ(OutcomeName(SessionOutcome::kTagRejectedMsg4), "tag_rejected_msg4");
  EXPECT_EQ(OutcomeName(SessionOutcome::kAborted), "aborted");
}

}  // namespace
}  // namespace cyclic_rfid
