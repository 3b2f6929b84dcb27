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
#ifndef ARENA_COMMON_HASH_H_
#define ARENA_COMMON_HASH_H_

#include <cstdint>
#include <span>
#include <string>
#include <string_view>

namespace arena {

// Lowercase hex SHA-256 digest. Used for content-addressed ids and trace
// hashes.
std::string Sha256Hex(std::string_view data);

// FNV-1a over a sequence of integers; cheap bucketing hash.
std::uint64_t HashInts(std::span<const int> values);

}  // namespace arena

#endif  // ARENA_COMMON_HASH_H_
