// Copyright 2026 The Arena Authors
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

#ifndef ARENA_COMMON_SEED_H_
#define ARENA_COMMON_SEED_H_

#include <cstdint>
#include <random>
#include <string_view>

namespace arena {

// Fixed substream labels. Every random draw in the toolkit is keyed by one of
// these plus a counter, so a component drawing more samples never shifts the
// draws seen by another.
inline constexpr std::string_view kTransitionStream = "transition";
inline constexpr std::string_view kMapStream = "map";
inline constexpr std::string_view kPolicyStream = "policy";

struct Seed {
  std::uint64_t value = 0;

  friend bool operator==(const Seed&, const Seed&) = default;
};

std::uint64_t SplitMix64(std::uint64_t x);
std::uint64_t HashLabel(std::string_view label);

// Hash of (seed, label, counter). Identical inputs give identical outputs on
// every platform.
std::uint64_t DeriveSeed(Seed seed, std::string_view label,
                         std::uint64_t counter);

// A single uniform draw in [0, 1) from substream (label, counter).
double SubstreamUniform(Seed seed, std::string_view label,
                        std::uint64_t counter);

// Converts 64 random bits to a double in [0, 1) with 53 bits of precision.
inline double BitsToUnit(std::uint64_t bits) {
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

// Sequential generator for components that need many draws (map layout,
// verifier sampling, training). Uses mt19937_64, whose output sequence is
// fixed by the standard; the conversions to ranges are done here rather
// than through the implementation-defined std distributions.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  Rng(Seed seed, std::string_view label, std::uint64_t counter = 0)
      : engine_(DeriveSeed(seed, label, counter)) {}

  std::uint64_t NextU64() { return engine_(); }
  double Uniform() { return BitsToUnit(engine_()); }
  double Uniform(double lo, double hi) { return lo + (hi - lo) * Uniform(); }
  // Uniform integer in [0, n). n must be positive.
  int UniformInt(int n);
  bool Bernoulli(double p) { return Uniform() < p; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace arena

#endif  // ARENA_COMMON_SEED_H_
