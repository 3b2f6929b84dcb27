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

#include "arena/common/seed.h"

#include <stdexcept>

namespace arena {

std::uint64_t SplitMix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t HashLabel(std::string_view label) {
  // FNV-1a.
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : label) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::uint64_t DeriveSeed(Seed seed, std::string_view label,
                         std::uint64_t counter) {
  std::uint64_t h = SplitMix64(seed.value);
  h = SplitMix64(h ^ HashLabel(label));
  return SplitMix64(h ^ SplitMix64(counter));
}

double SubstreamUniform(Seed seed, std::string_view label,
                        std::uint64_t counter) {
  return BitsToUnit(DeriveSeed(seed, label, counter));
}

int Rng::UniformInt(int n) {
  if (n <= 0) throw std::invalid_argument("Rng::UniformInt: n must be > 0");
  const std::uint64_t range = static_cast<std::uint64_t>(n);
  // Rejection sampling removes modulo bias.
  const std::uint64_t limit = UINT64_MAX - (UINT64_MAX % range);
  std::uint64_t draw;
  do {
    draw = engine_();
  } while (draw >= limit);
  return static_cast<int>(draw % range);
}

}  // namespace arena
