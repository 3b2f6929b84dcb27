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


#include "arena/verify/payoff_matrix.h"

#include <cmath>

#include "arena/common/errors.h"

namespace arena {

void PayoffMatrix::Validate() const {
  if (cells.empty() || cells[0].empty()) {
    throw ValidationError("payoff matrix is empty");
  }
  for (const auto& row : cells) {
    if (row.size() != cells[0].size()) {
      throw ValidationError("payoff matrix is not rectangular");
    }
    for (const auto& [u1, u2] : row) {
      if (!std::isfinite(u1) || !std::isfinite(u2)) {
        throw ValidationError("payoff matrix entry is not finite");
      }
    }
  }
}

bool MatrixIsNl(const PayoffMatrix& m, double tol) {
  m.Validate();
  // u1 may not depend on the row, u2 may not depend on the column.
  for (int b = 0; b < m.cols(); ++b) {
    for (int a = 1; a < m.rows(); ++a) {
      if (std::abs(m.cells[a][b].first - m.cells[0][b].first) > tol) return false;
    }
  }
  for (int a = 0; a < m.rows(); ++a) {
    for (int b = 1; b < m.cols(); ++b) {
      if (std::abs(m.cells[a][b].second - m.cells[a][0].second) > tol) return false;
    }
  }
  return true;
}

bool MatrixIsIs(const PayoffMatrix& m, double tol) {
  m.Validate();
  for (int a = 0; a < m.rows(); ++a) {
    for (int b = 1; b < m.cols(); ++b) {
      if (std::abs(m.cells[a][b].first - m.cells[a][0].first) > tol) return false;
    }
  }
  for (int b = 0; b < m.cols(); ++b) {
    for (int a = 1; a < m.rows(); ++a) {
      if (std::abs(m.cells[a][b].second - m.cells[0][b].second) > tol) return false;
    }
  }
  return true;
}

bool MatrixIsCp(const PayoffMatrix& m, double tol) {
  m.Validate();
  const double sum = m.cells[0][0].first + m.cells[0][0].second;
  for (const auto& row : m.cells) {
    for (const auto& [u1, u2] : row) {
      if (std::abs(u1 + u2 - sum) > tol) return false;
    }
  }
  return true;
}

bool MatrixIsCl(const PayoffMatrix& m, double tol) {
  m.Validate();
  std::vector<std::pair<double, double>> flat;
  for (const auto& row : m.cells) flat.insert(flat.end(), row.begin(), row.end());
  for (size_t i = 0; i < flat.size(); ++i) {
    for (size_t j = i + 1; j < flat.size(); ++j) {
      double d1 = flat[j].first - flat[i].first;
      double d2 = flat[j].second - flat[i].second;
      if (d1 * d2 < -tol) return false;
    }
  }
  return true;
}

BMaRSClass ClassifyPayoffMatrix(const PayoffMatrix& m, double tol) {
  if (MatrixIsNl(m, tol)) return BMaRSClass::kNL;
  if (MatrixIsIs(m, tol)) return BMaRSClass::kIS;
  if (MatrixIsCp(m, tol)) return BMaRSClass::kCP;
  if (MatrixIsCl(m, tol)) return BMaRSClass::kCL;
  return BMaRSClass::kCC;
}

}  // namespace arena
