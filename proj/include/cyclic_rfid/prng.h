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

#ifndef CYCLIC_RFID_PRNG_H_
#define CYCLIC_RFID_PRNG_H_

#include <cassert>
#include <cstdint>
#include <random>

#include "cyclic_rfid/lword.h"

namespace cyclic_rfid {

// SplitMix64 finalizer; used to derive independent per-run seeds.
constexpr uint64_t MixSeed(uint64_t seed, uint64_t stream) {
  uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Where the reader's nonces come from.
class NonceSource {
 public:
  virtual ~NonceSource() = default;
  virtual LWord NextNonce(int width) = 0;
};

// Seeded generator with platform-independent bounded draws. The standard
// distributions are implementation-defined, so they are avoided wherever
// reproducibility across toolchains matters.
class Prng final : public NonceSource {
 public:
  explicit Prng(uint64_t seed) : engine_(seed) {}

  uint64_t Next() { return engine_(); }

  // Uniform in [0, bound). bound must be positive.
  uint64_t Below(uint64_t bound) {
    assert(bound > 0);
    // Rejection on the top partial bucket.
    const uint64_t limit = ~uint64_t{0} - (~uint64_t{0} % bound);
    uint64_t x;
    do {
      x = engine_();
    } while (x >= limit);
    return x % bound;
  }

  // Uniform in [lo, hi].
  uint64_t InRange(uint64_t lo, uint64_t hi) {
    assert(lo <= hi);
    if (lo == 0 && hi == ~uint64_t{0}) return engine_();
    return lo + Below(hi - lo + 1);
  }

  LWord Word(int width) { return LWord(engine_() & LWord::Mask(width), width); }
  LWord NextNonce(int width) override { return Word(width); }

  bool Bit() { return (engine_() >> 63) != 0; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace cyclic_rfid

#endif  // CYCLIC_RFID_PRNG_H_
