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

// The catalogue of concrete adversaries run by the privacy experiment. None
// of them corrupts a tag.

#ifndef CYCLIC_RFID_STRATEGIES_H_
#define CYCLIC_RFID_STRATEGIES_H_

#include <string_view>
#include <vector>

#include "cyclic_rfid/adversary.h"

namespace cyclic_rfid {

struct StrategyInfo {
  std::string_view name;
  std::string_view summary;
  StrategyFactory factory;
};

// random-guesser      b' is a fresh coin.
// constant-guesser    b' = 0.
// alpha-replayer      records T0's msg1, lets that session complete, and
//                     guesses 0 iff the challenge msg1 repeats it.
// transcript-matcher  relays one session with each tag and one with the
//                     challenge tag, and guesses the tag sharing more words.
// index-correlator    guesses from the cleartext index of the challenge msg1.
// stale-alpha-tracker records T0's msg1 without completing the session and
//                     guesses 0 iff the challenge msg1 repeats it.
// residue-linker      learns the most frequent delta ^ beta of T0 over relayed
//                     sessions and guesses 0 iff the challenge session shows
//                     the same value.
const std::vector<StrategyInfo>& ShippedStrategies();

const StrategyInfo* FindStrategy(std::string_view name);

}  // namespace cyclic_rfid

#endif  // CYCLIC_RFID_STRATEGIES_H_
