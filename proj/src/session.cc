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

namespace cyclic_rfid {

absl::StatusOr<FaultSpec> ParseFaultSpec(std::string_view text) {
  if (text == "none") return FaultSpec{};
  std::string_view rest = text;
  if (ConsumePrefix(rest, "drop-msg")) {
    std::optional<int> type = ParseUnsigned<int>(rest);
    if (type && *type >= 1 && *type <= 4) {
      return FaultSpec{FaultSpec::Kind::kDrop, *type, 0};
    }
  } else if (ConsumePrefix(rest, "flip:")) {
    std::vector<std::string_view> parts = Split(rest, ":");
    if (parts.size() == 2) {
      std::optional<int> type = ParseUnsigned<int>(parts[0]);
      std::optional<int> bit = ParseUnsigned<int>(parts[1]);
      if (type && bit && *type >= 1 && *type <= 4) {
        return FaultSpec{FaultSpec::Kind::kFlip, *type, *bit};
      }
    }
  }
  return absl::InvalidArgumentError(
      fmt::format("bad fault '{}' (none | drop-msgN | flip:N:BIT)", text));
}

std::string FormatFaultSpec(const FaultSpec& spec) {
  switch (spec.kind) {
    case FaultSpec::Kind::kNone:
      return "none";
    case FaultSpec::Kind::kDrop:
      return fmt::format("drop-msg{}", spec.message_type);
    case FaultSpec::Kind::kFlip:
      return fmt::format("flip:{}:{}", spec.message_type, spec.bit);
  }
  return "none";
}

std::optional<Frame> FaultChannel::Deliver(int, Direction, Frame frame) {
  if (frame.empty() || frame[0] != spec_.message_type) return frame;
  switch (spec_.kind) {
    case FaultSpec::Kind::kNone:
      return frame;
    case FaultSpec::Kind::kDrop:
      return std::nullopt;
    case FaultSpec::Kind::kFlip:
      // Out-of-range bits leave the frame intact.
      if (spec_.bit >= PayloadBits(frame)) return frame;
      return FlipPayloadBit(std::move(frame), spec_.bit);
  }
  return frame;
}

std::string_view OutcomeName(SessionOutcome outcome) {
  switch (outcome) {
    case SessionOutcome::kMutualSuccess:
      return "mutual_success";
    case SessionOutcome::kReaderRejectedMsg1:
      return "reader_rejected_msg1";
    case SessionOutcome::kReaderRejectedMsg3:
      return "reader_rejected_msg3";
    case SessionOutcome::kTagRejectedMsg4:
      return "tag_rejected_msg4";
    case SessionOutcome::kAborted:
      return "aborted";
  }
  return "aborted";
}

namespace {

class Driver {
 public:
  Driver(Channel& channel, int word_bits, SessionTranscript& t)
      : channel_(channel), word_bits_(word_bits), t_(t) {}

  // Sends one message; returns the decoded message of the expected type as
  // received, or nothing (entry already carries the verdict).
  template <typename M>
  std::optional<M> Send(Direction dir, const M& m) {
    TranscriptEntry& e = t_.entries.emplace_back();
    e.seq = static_cast<int>(t_.entries.size());
    e.dir = dir;
    e.sent = EncodeFrame(m);
    e.type = e.sent[0];
    e.delivered = channel_.Deliver(e.seq, dir, e.sent);
    if (!e.delivered) {
      e.verdict = "dropped";
      return std::nullopt;
    }
    absl::StatusOr<Message> decoded = DecodeFrame(*e.delivered, word_bits_);
    if (!decoded.ok() || !std::holds_alternative<M>(*decoded)) {
      e.verdict = "malformed";
      return std::nullopt;
    }
    return std::get<M>(*decoded);
  }

  void Verdict(std::string_view v) { t_.entries.back().verdict = v; }

 private:
  Channel& channel_;
  int word_bits_;
  SessionTranscript& t_;
};

}  // namespace

SessionTranscript RunSession(TagState& tag, ServerTable& table,
                             Channel& channel, NonceSource& rng,
                             UpdateMode mode) {
  SessionTranscript t;
  Driver d(channel, table.word_bits(), t);
  ReaderSession reader(mode);
  auto finish = [&](SessionOutcome o) {
    t.outcome = o;
    t.checks_performed = reader.checks_performed();
    t.reader_authenticated = reader.authenticated();
    return t;
  };

  t.msg1 = TagBegin(tag);
  std::optional<Msg1> m1 = d.Send(Direction::kTagToReader, *t.msg1);
  if (!m1) {
    return finish(t.entries.back().verdict == "dropped"
                      ? SessionOutcome::kAborted
                      : SessionOutcome::kReaderRejectedMsg1);
  }
  absl::StatusOr<Msg2> msg2 = reader.OnMsg1(table, *m1, rng);
  if (!msg2.ok()) {
    d.Verdict("reject");
    return finish(SessionOutcome::kReaderRejectedMsg1);
  }
  d.Verdict("accept");

  t.msg2 = *msg2;
  std::optional<Msg2> m2 = d.Send(Direction::kReaderToTag, *t.msg2);
  if (!m2) return finish(SessionOutcome::kAborted);
  absl::StatusOr<Msg3> msg3 = TagOnMsg2(tag, *m2);
  if (!msg3.ok()) {
    d.Verdict("abort");
    return finish(SessionOutcome::kAborted);
  }
  d.Verdict("accept");

  t.msg3 = *msg3;
  std::optional<Msg3> m3 = d.Send(Direction::kTagToReader, *t.msg3);
  if (!m3) {
    return finish(t.entries.back().verdict == "dropped"
                      ? SessionOutcome::kAborted
                      : SessionOutcome::kReaderRejectedMsg3);
  }
  absl::StatusOr<Msg4> msg4 = reader.OnMsg3(table, *m3, rng);
  if (!msg4.ok()) {
    d.Verdict("reject");
    return finish(SessionOutcome::kReaderRejectedMsg3);
  }
  d.Verdict("accept");

  t.msg4 = *msg4;
  std::optional<Msg4> m4 = d.Send(Direction::kReaderToTag, *t.msg4);
  if (!m4) {
    if (t.entries.back().verdict == "dropped") {
      return finish(SessionOutcome::kAborted);
    }
    tag.session = {};
    return finish(SessionOutcome::kTagRejectedMsg4);
  }
  absl::Status s = TagOnMsg4(tag, *m4);
  if (!s.ok()) {
    d.Verdict(absl::IsAborted(s) ? "abort" : "reject");
    return finish(SessionOutcome::kTagRejectedMsg4);
  }
  d.Verdict("accept");
  return finish(SessionOutcome::kMutualSuccess);
}

std::string FormatTranscript(const SessionTranscript& transcript) {
  std::string out;
  for (const TranscriptEntry& e : transcript.entries) {
    fmt::format_to(std::back_inserter(out), "{} {} {} {} {}\n", e.seq,
                   e.dir == Direction::kTagToReader ? "t2r" : "r2t", e.type,
                   PayloadHex(e.delivered ? *e.delivered : e.sent), e.verdict);
  }
  return out;
}

}  // namespace cyclic_rfid
