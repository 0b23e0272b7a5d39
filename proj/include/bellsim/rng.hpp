// Copyright 2026 The bellsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <random>
#include <string>

namespace bellsim {

/// splitmix64 finalizer. Used to derive well-mixed substream seeds from
/// (seed, stream, shot) so that shot k draws the same numbers no matter
/// which worker executes it or in what order.
inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline std::uint64_t derive_substream_seed(std::uint64_t seed, std::uint64_t stream,
                                           std::uint64_t shot) {
  return mix64(seed ^ mix64(stream ^ mix64(shot)));
}

/// Reproducible random source for one shot. Uniform doubles are built from
/// the top 53 bits of the engine output, so sequences are bit-identical
/// across platforms and standard library implementations.
class ShotRng {
 public:
  explicit ShotRng(std::uint64_t seed) : eng_(seed) {}

  static ShotRng substream(std::uint64_t seed, std::uint64_t stream, std::uint64_t shot) {
    return ShotRng(derive_substream_seed(seed, stream, shot));
  }

  static std::string generator_name() { return "mt19937_64+splitmix64"; }

  std::uint64_t next_u64() { return eng_(); }

  /// Uniform double in [0, 1).
  double uniform() {
    return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
  }

  /// Uniform pick from {0, 1, 2} (X, Y or Z error).
  int pauli_index() { return static_cast<int>(eng_() % 3); }

 private:
  std::mt19937_64 eng_;
};

}  // namespace bellsim
