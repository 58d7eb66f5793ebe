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

#include <cassert>

#include "fmt/format.h"

namespace cyclic_rfid {
namespace {

void PutBigEndian(Frame& out, uint64_t v, int bytes) {
  for (int b = bytes - 1; b >= 0; --b) {
    out.push_back(static_cast<uint8_t>(v >> (8 * b)));
  }
}

uint64_t GetBigEndian(std::span<const uint8_t> in, int bytes) {
  uint64_t v = 0;
  for (int b = 0; b < bytes; ++b) v = (v << 8) | in[b];
  return v;
}

struct Reader {
  std::span<const uint8_t> in;
  int word_bits;
  size_t pos = 1;

  absl::StatusOr<LWord> Word() {
    const int bytes = (word_bits + 7) / 8;
    if (pos + bytes > in.size())
      return absl::InvalidArgumentError("short frame");
    const uint64_t v = GetBigEndian(in.subspan(pos), bytes);
    pos += bytes;
    return LWord::Make(v, word_bits);
  }
};

}  // namespace

Frame EncodeFrame(const Message& message) {
  Frame out;
  out.push_back(static_cast<uint8_t>(MessageType(message)));
  auto put = [&out](const LWord& w) {
    PutBigEndian(out, w.value(), w.byte_width());
  };
  std::visit(
      [&](const auto& m) {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, Msg1>) {
          assert(m.index <= 0xffffffffu);
          PutBigEndian(out, m.index, kIndexBytes);
          put(m.alpha);
        } else if constexpr (std::is_same_v<T, Msg2>) {
          put(m.beta);
          put(m.gamma);
        } else if constexpr (std::is_same_v<T, Msg3>) {
          put(m.delta);
        } else {
          put(m.zeta);
          put(m.eta);
        }
      },
      message);
  return out;
}

absl::StatusOr<Message> DecodeFrame(std::span<const uint8_t> frame,
                                    int word_bits) {
  if (frame.empty()) return absl::InvalidArgumentError("empty frame");
  if (word_bits < 1 || word_bits > LWord::kMaxBits) {
    return absl::InvalidArgumentError("bad word width");
  }
  const size_t wb = (word_bits + 7) / 8;
  const int type = frame[0];
  const size_t expected = 1 + (type == 1   ? kIndexBytes + wb
                               : type == 3 ? wb
                                           : 2 * wb);
  if (type < 1 || type > 4) {
    return absl::InvalidArgumentError(
        fmt::format("unknown frame type {}", type));
  }
  if (frame.size() != expected) {
    return absl::InvalidArgumentError(
        fmt::format("frame type {} has {} bytes, expected {}", type,
                    frame.size(), expected));
  }
  Reader r{frame, word_bits};
  switch (type) {
    case 1: {
      Msg1 m;
      m.index = GetBigEndian(frame.subspan(1), kIndexBytes);
      r.pos += kIndexBytes;
      absl::StatusOr<LWord> a = r.Word();
      if (!a.ok()) return a.status();
      m.alpha = *a;
      return m;
    }
    case 2: {
      absl::StatusOr<LWord> b = r.Word();
      if (!b.ok()) return b.status();
      absl::StatusOr<LWord> g = r.Word();
      if (!g.ok()) return g.status();
      return Msg2{*b, *g};
    }
    case 3: {
      absl::StatusOr<LWord> d = r.Word();
      if (!d.ok()) return d.status();
      return Msg3{*d};
    }
    default: {
      absl::StatusOr<LWord> z = r.Word();
      if (!z.ok()) return z.status();
      absl::StatusOr<LWord> e = r.Word();
      if (!e.ok()) return e.status();
      return Msg4{*z, *e};
    }
  }
}

int PayloadBits(const Frame& frame) {
  return frame.empty() ? 0 : static_cast<int>(8 * (frame.size() - 1));
}

Frame FlipPayloadBit(Frame frame, int bit) {
  assert(bit >= 0 && bit < PayloadBits(frame));
  frame[frame.size() - 1 - bit / 8] ^= static_cast<uint8_t>(1u << (bit % 8));
  return frame;
}

std::string PayloadHex(const Frame& frame) {
  std::string out;
  for (size_t i = 1; i < frame.size(); ++i) {
    fmt::format_to(std::back_inserter(out), "{:02x}", frame[i]);
  }
  return out;
}

}  // namespace cyclic_rfid
