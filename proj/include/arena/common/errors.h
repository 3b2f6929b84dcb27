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

#ifndef ARENA_COMMON_ERRORS_H_
#define ARENA_COMMON_ERRORS_H_

#include <stdexcept>
#include <string>

namespace arena {

// Root of every error thrown by the library. The concrete subclasses map to
// the failure categories callers care about (bad configuration, bad input at
// step time, lifecycle misuse, access control, numeric breakdown).
class ArenaError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ConfigError : public ArenaError {
 public:
  using ArenaError::ArenaError;
};

class ValidationError : public ArenaError {
 public:
  using ArenaError::ArenaError;
};

class InputError : public ArenaError {
 public:
  using ArenaError::ArenaError;
};

class LifecycleError : public ArenaError {
 public:
  using ArenaError::ArenaError;
};

class PermissionError : public ArenaError {
 public:
  using ArenaError::ArenaError;
};

class NumericError : public ArenaError {
 public:
  using ArenaError::ArenaError;
};

}  // namespace arena

#endif  // ARENA_COMMON_ERRORS_H_
