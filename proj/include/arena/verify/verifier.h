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


#ifndef ARENA_VERIFY_VERIFIER_H_
#define ARENA_VERIFY_VERIFIER_H_

#include <cstdint>
#include <string>
#include <vector>

#include "arena/core/environment.h"
#include "arena/reward/bmars.h"
#include "json.hpp"

namespace arena {

struct VerifierConfig {
  int n_samples = 64;
  double tolerance = 1e-9;
  // Policy family: softmax over buckets x actions, scores uniform in
  // [param_lo, param_hi].
  int buckets = 64;
  double param_lo = -1.0;
  double param_hi = 1.0;
  // Redraws allowed per sample when a perturbation reproduces the original
  // parameters.
  int retry_bound = 8;
  Seed seed;
  // Agent indices the judgment ranges over; empty means every agent. Used
  // to check one tree node's declaration on its own scope.
  std::vector<int> agents;

  // Throws ConfigError for n_samples < 1, negative or NaN tolerance,
  // buckets < 1, an empty parameter range or a negative retry bound.
  void Validate() const;
  nlohmann::ordered_json ToJson() const;
};

struct SampleJudgment {
  int sample_index = 0;
  std::uint64_t episode_seed = 0;
  int perturbed_agent = -1;
  // Agent whose return is judged (x) and, for CL, the witness x'.
  int target_agent = -1;
  int witness_agent = -1;
  // NL/IS: {dR_x}; CP: {dSum}; CL: {dR_x, dR_x'}.
  std::vector<double> deltas;
  bool pass = true;
  bool vacuous = false;
  int retries = 0;
};

struct VerificationReport {
  BMaRSClass class_tested = BMaRSClass::kNL;
  std::vector<SampleJudgment> judgments;  // sorted by sample_index
  bool holds = true;
  VerifierConfig config;

  nlohmann::ordered_json ToJson() const;
  std::string ToText() const;
};

VerificationReport VerifyNl(const Environment& env, const VerifierConfig& cfg);
VerificationReport VerifyIs(const Environment& env, const VerifierConfig& cfg);
VerificationReport VerifyCp(const Environment& env, const VerifierConfig& cfg);
VerificationReport VerifyCl(const Environment& env, const VerifierConfig& cfg);
// Condition check for one of NL, IS, CP, CL. Throws ConfigError for CC,
// which has no condition of its own.
VerificationReport VerifyCondition(BMaRSClass cls, const Environment& env,
                                   const VerifierConfig& cfg);

struct Classification {
  BMaRSClass result = BMaRSClass::kCC;
  // Reports of the conditions evaluated, in cascade order. The cascade
  // stops at the first condition that holds.
  std::vector<VerificationReport> reports;

  nlohmann::ordered_json ToJson() const;
  std::string ToText() const;
};

// NL, then IS, CP, CL; CC when none holds.
Classification Classify(const Environment& env, const VerifierConfig& cfg);

}  // namespace arena

#endif  // ARENA_VERIFY_VERIFIER_H_
