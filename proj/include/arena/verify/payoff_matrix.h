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


#ifndef ARENA_VERIFY_PAYOFF_MATRIX_H_
#define ARENA_VERIFY_PAYOFF_MATRIX_H_

#include <utility>
#include <vector>

#include "arena/reward/bmars.h"

namespace arena {

// Two-player normal form: cells[a][b] = (u1, u2) for row action a and
// column action b.
struct PayoffMatrix {
  std::vector<std::vector<std::pair<double, double>>> cells;

  int rows() const { return static_cast<int>(cells.size()); }
  int cols() const { return cells.empty() ? 0 : static_cast<int>(cells[0].size()); }
  // Throws ValidationError when empty or ragged.
  void Validate() const;
};

// Exhaustive cascade over cells and cell pairs. tolerance defaults to exact
// comparison.
BMaRSClass ClassifyPayoffMatrix(const PayoffMatrix& m, double tolerance = 0.0);

// Individual conditions, exposed for tests and reports.
bool MatrixIsNl(const PayoffMatrix& m, double tolerance = 0.0);
bool MatrixIsIs(const PayoffMatrix& m, double tolerance = 0.0);
bool MatrixIsCp(const PayoffMatrix& m, double tolerance = 0.0);
bool MatrixIsCl(const PayoffMatrix& m, double tolerance = 0.0);

}  // namespace arena

#endif  // ARENA_VERIFY_PAYOFF_MATRIX_H_
