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

#include "mdg/lp.hpp"

#include <fmt/format.h>

#include <cmath>
#include <utility>

#include "mdg/error.hpp"

namespace mdg {

LinearProgram::LinearProgram(std::size_t variables)
    : objective(Vector::Zero(static_cast<Eigen::Index>(variables))),
      constraints(0, static_cast<Eigen::Index>(variables)),
      rhs(0),
      lower(variables, 0.0),
      upper(variables, kInf) {}

void LinearProgram::add_constraint(const Vector& row, Sense sense,
                                   double bound) {
  if (row.size() != objective.size()) {
    throw DimensionError("constraint width does not match variable count");
  }
  const Eigen::Index r = constraints.rows();
  constraints.conservativeResize(r + 1, Eigen::NoChange);
  constraints.row(r) = row.transpose();
  rhs.conservativeResize(r + 1);
  rhs(r) = bound;
  senses.push_back(sense);
}

namespace {

// Column mapping of one original variable onto non-negative standard
// variables: x = offset + sum coef * y[col].
struct VariableMap {
  double offset = 0.0;
  std::vector<std::pair<Eigen::Index, double>> terms;
};

// Simplex tableau with the objective kept as the last row. The last column
// holds the right-hand side; objective row entries are reduced costs
// (negative means improving for maximisation).
class Tableau {
 public:
  Tableau(Matrix table, std::vector<Eigen::Index> basis,
          const SimplexTolerances& tol)
      : t_(std::move(table)), basis_(std::move(basis)), tol_(tol) {}

  Eigen::Index rows() const { return t_.rows() - 1; }
  Eigen::Index cols() const { return t_.cols() - 1; }
  Matrix& table() { return t_; }
  std::vector<Eigen::Index>& basis() { return basis_; }
  double objective() const { return t_(rows(), cols()); }

  // Loads cost vector `c` (maximise) into the objective row, priced out
  // against the current basis.
  void set_objective(const Vector& c) {
    t_.row(rows()).setZero();
    t_.row(rows()).head(cols()) = -c.transpose();
    for (Eigen::Index r = 0; r < rows(); ++r) {
      const double cb = c(basis_[static_cast<std::size_t>(r)]);
      if (cb != 0.0) t_.row(rows()) += cb * t_.row(r);
    }
  }

  void pivot(Eigen::Index row, Eigen::Index col) {
    t_.row(row) /= t_(row, col);
    for (Eigen::Index r = 0; r <= rows(); ++r) {
      if (r == row) continue;
      const double f = t_(r, col);
      if (f != 0.0) t_.row(r) -= f * t_.row(row);
      t_(r, col) = 0.0;
    }
    t_(row, col) = 1.0;
    basis_[static_cast<std::size_t>(row)] = col;
  }

  // Bland's rule iterations over columns [0, allowed_cols).
  LpStatus run(Eigen::Index allowed_cols) {
    const long max_iterations = 200000;
    for (long it = 0; it < max_iterations; ++it) {
      Eigen::Index enter = -1;
      for (Eigen::Index j = 0; j < allowed_cols; ++j) {
        if (t_(rows(), j) < -tol_.optimality) {
          enter = j;
          break;
        }
      }
      if (enter < 0) return LpStatus::optimal;

      Eigen::Index leave = -1;
      double best_ratio = 0.0;
      for (Eigen::Index r = 0; r < rows(); ++r) {
        const double a = t_(r, enter);
        if (a <= tol_.pivot) continue;
        const double ratio = t_(r, cols()) / a;
        if (leave < 0 || ratio < best_ratio - tol_.pivot ||
            (std::abs(ratio - best_ratio) <= tol_.pivot &&
             basis_[static_cast<std::size_t>(r)] <
                 basis_[static_cast<std::size_t>(leave)])) {
          leave = r;
          best_ratio = ratio;
        }
      }
      if (leave < 0) return LpStatus::unbounded;
      pivot(leave, enter);
    }
    throw StructuralError("simplex iteration limit reached");
  }

  void remove_row(Eigen::Index row) {
    const Eigen::Index n = t_.rows();
    t_.block(row, 0, n - row - 1, t_.cols()) =
        t_.block(row + 1, 0, n - row - 1, t_.cols()).eval();
    t_.conservativeResize(n - 1, Eigen::NoChange);
    basis_.erase(basis_.begin() + row);
  }

 private:
  Matrix t_;
  std::vector<Eigen::Index> basis_;
  SimplexTolerances tol_;
};

}  // namespace

LpSolution solve_lp_status(const LinearProgram& lp,
                           const SimplexTolerances& tol) {
  const std::size_t n = lp.variable_count();
  const Eigen::Index m0 = lp.constraints.rows();
  if (lp.lower.size() != n || lp.upper.size() != n ||
      lp.constraints.cols() != static_cast<Eigen::Index>(n) ||
      lp.rhs.size() != m0 || lp.senses.size() != static_cast<std::size_t>(m0)) {
    throw DimensionError("linear program dimensions are inconsistent");
  }

  // Map bounded/free variables onto non-negative ones; finite upper bounds
  // on lower-bounded variables become extra rows.
  std::vector<VariableMap> maps(n);
  Eigen::Index std_vars = 0;
  std::vector<std::pair<Eigen::Index, double>> upper_rows;  // (col, bound)
  for (std::size_t k = 0; k < n; ++k) {
    const double lo = lp.lower[k];
    const double hi = lp.upper[k];
    if (lo > hi) {
      return {LpStatus::infeasible, Vector(), 0.0};
    }
    if (std::isfinite(lo)) {
      maps[k].offset = lo;
      maps[k].terms.push_back({std_vars, 1.0});
      if (std::isfinite(hi)) upper_rows.push_back({std_vars, hi - lo});
      ++std_vars;
    } else if (std::isfinite(hi)) {
      maps[k].offset = hi;
      maps[k].terms.push_back({std_vars++, -1.0});
    } else {
      maps[k].terms.push_back({std_vars++, 1.0});
      maps[k].terms.push_back({std_vars++, -1.0});
    }
  }

  const Eigen::Index m = m0 + static_cast<Eigen::Index>(upper_rows.size());
  Matrix a = Matrix::Zero(m, std_vars);
  Vector b(m);
  std::vector<Sense> senses(lp.senses);
  for (Eigen::Index i = 0; i < m0; ++i) {
    double shift = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      const double coef = lp.constraints(i, static_cast<Eigen::Index>(k));
      if (coef == 0.0) continue;
      shift += coef * maps[k].offset;
      for (auto [col, s] : maps[k].terms) a(i, col) += coef * s;
    }
    b(i) = lp.rhs(i) - shift;
  }
  for (std::size_t u = 0; u < upper_rows.size(); ++u) {
    const Eigen::Index i = m0 + static_cast<Eigen::Index>(u);
    a(i, upper_rows[u].first) = 1.0;
    b(i) = upper_rows[u].second;
    senses.push_back(Sense::less_equal);
  }
  Vector c = Vector::Zero(std_vars);
  for (std::size_t k = 0; k < n; ++k) {
    const double ck = lp.objective(static_cast<Eigen::Index>(k));
    for (auto [col, s] : maps[k].terms) c(col) += ck * s;
  }

  // Non-negative right-hand sides.
  for (Eigen::Index i = 0; i < m; ++i) {
    if (b(i) < 0.0) {
      a.row(i) *= -1.0;
      b(i) = -b(i);
      auto& s = senses[static_cast<std::size_t>(i)];
      if (s == Sense::less_equal) {
        s = Sense::greater_equal;
      } else if (s == Sense::greater_equal) {
        s = Sense::less_equal;
      }
    }
  }

  Eigen::Index slack_count = 0;
  Eigen::Index artificial_count = 0;
  for (Sense s : senses) {
    if (s != Sense::equal) ++slack_count;
    if (s != Sense::less_equal) ++artificial_count;
  }
  const Eigen::Index structural = std_vars + slack_count;
  const Eigen::Index total = structural + artificial_count;

  Matrix t = Matrix::Zero(m + 1, total + 1);
  std::vector<Eigen::Index> basis(static_cast<std::size_t>(m));
  Eigen::Index next_slack = std_vars;
  Eigen::Index next_art = structural;
  for (Eigen::Index i = 0; i < m; ++i) {
    t.row(i).head(std_vars) = a.row(i);
    t(i, total) = b(i);
    switch (senses[static_cast<std::size_t>(i)]) {
      case Sense::less_equal:
        t(i, next_slack) = 1.0;
        basis[static_cast<std::size_t>(i)] = next_slack++;
        break;
      case Sense::greater_equal:
        t(i, next_slack++) = -1.0;
        t(i, next_art) = 1.0;
        basis[static_cast<std::size_t>(i)] = next_art++;
        break;
      case Sense::equal:
        t(i, next_art) = 1.0;
        basis[static_cast<std::size_t>(i)] = next_art++;
        break;
    }
  }

  Tableau tab(std::move(t), std::move(basis), tol);

  if (artificial_count > 0) {
    Vector phase1 = Vector::Zero(total);
    phase1.tail(artificial_count).setConstant(-1.0);
    tab.set_objective(phase1);
    tab.run(total);
    if (tab.objective() < -tol.optimality) {
      return {LpStatus::infeasible, Vector(), 0.0};
    }
    // Drive zero-level artificials out of the basis; drop redundant rows.
    for (Eigen::Index r = tab.rows() - 1; r >= 0; --r) {
      if (tab.basis()[static_cast<std::size_t>(r)] < structural) continue;
      Eigen::Index col = -1;
      for (Eigen::Index j = 0; j < structural; ++j) {
        if (std::abs(tab.table()(r, j)) > tol.pivot) {
          col = j;
          break;
        }
      }
      if (col >= 0) {
        tab.pivot(r, col);
      } else {
        tab.remove_row(r);
      }
    }
  }

  Vector phase2 = Vector::Zero(total);
  phase2.head(std_vars) = c;
  tab.set_objective(phase2);
  if (tab.run(structural) == LpStatus::unbounded) {
    return {LpStatus::unbounded, Vector(), 0.0};
  }

  Vector y = Vector::Zero(total);
  for (Eigen::Index r = 0; r < tab.rows(); ++r) {
    y(tab.basis()[static_cast<std::size_t>(r)]) = tab.table()(r, tab.cols());
  }
  LpSolution sol;
  sol.status = LpStatus::optimal;
  sol.values = Vector(static_cast<Eigen::Index>(n));
  for (std::size_t k = 0; k < n; ++k) {
    double x = maps[k].offset;
    for (auto [col, s] : maps[k].terms) x += s * y(col);
    sol.values(static_cast<Eigen::Index>(k)) = x;
  }
  sol.objective = lp.objective.dot(sol.values);
  return sol;
}

LpSolution solve_lp(const LinearProgram& lp, const SimplexTolerances& tol) {
  LpSolution sol = solve_lp_status(lp, tol);
  switch (sol.status) {
    case LpStatus::optimal:
      return sol;
    case LpStatus::infeasible:
      throw StructuralError("linear program is infeasible");
    case LpStatus::unbounded:
      throw StructuralError("linear program is unbounded");
  }
  return sol;
}

}  // namespace mdg
