// Copyright 2026 The iRouting Authors
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

// Dense two-phase simplex for the small LPs that arise from matrix games.

#ifndef MDG_LP_HPP_
#define MDG_LP_HPP_

#include <cstddef>
#include <limits>
#include <vector>

#include "mdg/game_model.hpp"

namespace mdg {

enum class Sense { less_equal, equal, greater_equal };

// maximize objective . x
// subject to constraints.row(i) . x  (senses[i])  rhs[i]
//            lower[k] <= x[k] <= upper[k]
// Bounds default to x >= 0; use -infinity / +infinity for free directions.
struct LinearProgram {
  static constexpr double kInf = std::numeric_limits<double>::infinity();

  Vector objective;
  Matrix constraints;
  std::vector<Sense> senses;
  Vector rhs;
  std::vector<double> lower;
  std::vector<double> upper;

  explicit LinearProgram(std::size_t variables);

  std::size_t variable_count() const {
    return static_cast<std::size_t>(objective.size());
  }
  void add_constraint(const Vector& row, Sense sense, double bound);
};

enum class LpStatus { optimal, infeasible, unbounded };

struct LpSolution {
  LpStatus status = LpStatus::infeasible;
  Vector values;
  double objective = 0.0;
};

struct SimplexTolerances {
  double optimality = 1e-9;  // reduced-cost and phase-one feasibility
  double pivot = 1e-12;      // smallest admissible pivot element
};

// Reports infeasible/unbounded through the status field.
LpSolution solve_lp_status(const LinearProgram& lp,
                           const SimplexTolerances& tol = {});

// Throws StructuralError unless the LP has an optimum.
LpSolution solve_lp(const LinearProgram& lp, const SimplexTolerances& tol = {});

}  // namespace mdg

#endif  // MDG_LP_HPP_
