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

// Drives one complete protocol run between a tag and the reader over a
// simulated channel that may drop or rewrite frames.

#ifndef CYCLIC_RFID_SESSION_H_
#define CYCLIC_RFID_SESSION_H_

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/statusor.h"
#include "cyclic_rfid/protocol.h"
#include "cyclic_rfid/registry.h"
#include "cyclic_rfid/wire.h"

namespace cyclic_rfid {

enum class Direction { kTagToReader, kReaderToTag };

class Channel {
 public:
  virtual ~Channel() = default;
  // Returns the frame as it reaches the other side, or nothing if dropped.
  virtual std::optional<Frame> Deliver(int seq, Direction dir, Frame frame) = 0;
};

class HonestChannel final : public Channel {
 public:
  std::optional<Frame> Deliver(int, Direction, Frame frame) override {
    return frame;
  }
};

// A single fault: drop one message type, or flip one payload bit of it.
struct FaultSpec {
  enum class Kind { kNone, kDrop, kFlip };
  Kind kind = Kind::kNone;
  int message_type = 0;
  int bit = 0;

  friend bool operator==(const FaultSpec&, const FaultSpec&) = default;
};

// Accepts "none", "drop-msgN" and "flip:N:BIT".
absl::StatusOr<FaultSpec> ParseFaultSpec(std::string_view text);
std::string FormatFaultSpec(const FaultSpec& spec);

class FaultChannel final : public Channel {
 public:
  explicit FaultChannel(FaultSpec spec) : spec_(spec) {}
  std::optional<Frame> Deliver(int seq, Direction dir, Frame frame) override;

 private:
  FaultSpec spec_;
};

class CallbackChannel final : public Channel {
 public:
  using Fn = std::function<std::optional<Frame>(int, Direction, Frame)>;
  explicit CallbackChannel(Fn fn) : fn_(std::move(fn)) {}
  std::optional<Frame> Deliver(int seq, Direction dir, Frame frame) override {
    return fn_(seq, dir, std::move(frame));
  }

 private:
  Fn fn_;
};

enum class SessionOutcome {
  kMutualSuccess,
  kReaderRejectedMsg1,
  kReaderRejectedMsg3,
  kTagRejectedMsg4,
  kAborted,
};

std::string_view OutcomeName(SessionOutcome outcome);

struct TranscriptEntry {
  int seq = 0;
  Direction dir = Direction::kTagToReader;
  int type = 0;
  Frame sent;
  std::optional<Frame> delivered;
  std::string verdict;  // accept | reject | abort | dropped | malformed
};

struct SessionTranscript {
  // Messages as emitted by their sender.
  std::optional<Msg1> msg1;
  std::optional<Msg2> msg2;
  std::optional<Msg3> msg3;
  std::optional<Msg4> msg4;
  std::vector<TranscriptEntry> entries;
  SessionOutcome outcome = SessionOutcome::kAborted;
  int checks_performed = 0;
  std::optional<TagKey> reader_authenticated;  // Row rotated by the reader.
};

// Runs msg1..msg4. Failures never surface as errors; they are recorded in the
// returned transcript.
SessionTranscript RunSession(TagState& tag, ServerTable& table,
                             Channel& channel, NonceSource& rng,
                             UpdateMode mode = UpdateMode::kStrictRotation);

// One line per frame: `seq dir type hexpayload verdict`, where dir is `t2r`
// or `r2t` and the payload is the frame as delivered (as sent when dropped).
std::string FormatTranscript(const SessionTranscript& transcript);

}  // namespace cyclic_rfid

#endif  // CYCLIC_RFID_SESSION_H_
