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
#include "arena/reward/bmars.h"

#include "arena/common/errors.h"

namespace arena {

std::string ToString(BMaRSClass c) {
  switch (c) {
    case BMaRSClass::kNL: return "NL";
    case BMaRSClass::kIS: return "IS";
    case BMaRSClass::kCP: return "CP";
    case BMaRSClass::kCL: return "CL";
    case BMaRSClass::kCC: return "CC";
  }
  return "?";
}

BMaRSClass ParseBMaRSClass(std::string_view text) {
  for (BMaRSClass c : kAllClasses) {
    if (ToString(c) == text) return c;
  }
  throw ConfigError("unknown reward scheme class '" + std::string(text) + "'");
}

}  // namespace arena
