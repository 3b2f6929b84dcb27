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
#ifndef ARENA_REWARD_BMARS_H_
#define ARENA_REWARD_BMARS_H_

#include <array>
#include <string>
#include <string_view>

namespace arena {

// The five basic multi-agent reward scheme classes. kCC is the complement
// of the other four; nothing is ever constructed as CC except by exclusion.
enum class BMaRSClass {
  kNL,  // non-learnable
  kIS,  // isolated
  kCP,  // competitive
  kCL,  // collaborative
  kCC,  // competitive/collaborative mixed
};

inline constexpr std::array<BMaRSClass, 5> kAllClasses = {
    BMaRSClass::kNL, BMaRSClass::kIS, BMaRSClass::kCP, BMaRSClass::kCL,
    BMaRSClass::kCC};

std::string ToString(BMaRSClass c);
// Accepts "NL", "IS", "CP", "CL", "CC". Throws ConfigError otherwise.
BMaRSClass ParseBMaRSClass(std::string_view text);

}  // namespace arena

#endif  // ARENA_REWARD_BMARS_H_
