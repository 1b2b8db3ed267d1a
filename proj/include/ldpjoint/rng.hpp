// Copyright 2026 The ldpjoint Authors
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

#ifndef LDPJOINT_RNG_HPP_
#define LDPJOINT_RNG_HPP_

#include <cstdint>

namespace ldpjoint {

// SplitMix64 output function. Bit-stable across platforms, which keeps every
// seeded artifact in this project byte-reproducible.
inline std::uint64_t split_mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Counter-addressed draw: the value depends only on (seed, stream, index),
// never on how many draws happened before it. Randomizing record r, column c
// uses stream = r, index = c, so records may be processed in any order (or in
// parallel) and still produce identical output.
inline std::uint64_t keyed_value(std::uint64_t seed, std::uint64_t stream,
                                 std::uint64_t index) {
  return split_mix64(split_mix64(split_mix64(seed) ^ stream) ^ index);
}

// Uniform double in [0, 1) from the top 53 bits.
inline double to_unit_double(std::uint64_t bits) {
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

inline double keyed_uniform(std::uint64_t seed, std::uint64_t stream,
                            std::uint64_t index) {
  return to_unit_double(keyed_value(seed, stream, index));
}

// Small sequential generator for places where draw order is part of the
// contract anyway (subset sampling, synthetic matrices).
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    state_ += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  double uniform() { return to_unit_double(next()); }

  // Uniform integer in [0, n) by rejection, so the result is exactly uniform.
  std::uint64_t uniform_int(std::uint64_t n) {
    const std::uint64_t limit = n * ((~0ULL) / n);
    std::uint64_t v = next();
    while (v >= limit) v = next();
    return v % n;
  }

 private:
  std::uint64_t state_;
};

}  // namespace ldpjoint

#endif  // LDPJOINT_RNG_HPP_
