// Copyright 2026 The psmet Authors
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

#ifndef PSMET_RNG_HPP_
#define PSMET_RNG_HPP_

#include <array>
#include <cstdint>

namespace psmet {

// Deterministic random number generator used for every seeded ensemble in the
// library: xoshiro256++ seeded through SplitMix64, with Box-Muller Gaussians.
// The generator is fixed (not an implementation detail) so that seeded trials
// reproduce bit-identically across platforms and standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) noexcept;

  // Next raw 64-bit word of the xoshiro256++ stream.
  std::uint64_t next_u64() noexcept;

  // Uniform double in [0, 1) with 53 random bits.
  double uniform() noexcept;

  // Standard normal deviate (Box-Muller; the second deviate of each pair is
  // cached, so draws come in a fixed order).
  double normal() noexcept;

 private:
  std::array<std::uint64_t, 4> state_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace psmet

#endif  // PSMET_RNG_HPP_
