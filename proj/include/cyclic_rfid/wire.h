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

// Frame layout: [type: 1 byte][payload]. Words are big-endian and occupy
// ceil(L/8) bytes; the msg1 index is a 4-byte big-endian integer.
//
//   type 1  i, alpha
//   type 2  beta, gamma
//   type 3  delta
//   type 4  zeta, eta

#ifndef CYCLIC_RFID_WIRE_H_
#define CYCLIC_RFID_WIRE_H_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "cyclic_rfid/protocol.h"

namespace cyclic_rfid {

using Frame = std::vector<uint8_t>;

inline constexpr int kIndexBytes = 4;

Frame EncodeFrame(const Message& message);

// Rejects unknown types, wrong lengths, indices wider than 32 bits and words
// with bits set above `word_bits`.
absl::StatusOr<Message> DecodeFrame(std::span<const uint8_t> frame,
                                    int word_bits);

// Number of payload bits (everything after the type byte).
int PayloadBits(const Frame& frame);

// Flips payload bit `bit`, counted from the least significant bit of the
// last byte.
Frame FlipPayloadBit(Frame frame, int bit);

// Lowercase hex of the payload.
std::string PayloadHex(const Frame& frame);

}  // namespace cyclic_rfid

#endif  // CYCLIC_RFID_WIRE_H_
