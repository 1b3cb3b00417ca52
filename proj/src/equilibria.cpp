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

#include "mdg/equilibria.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <utility>

#include "mdg/error.hpp"
#include "mdg/lp.hpp"

namespace mdg {

namespace {

constexpr double kZeroProbability = 1e-12;

// Clips LP round-off below zero and renormalises.
MixedStrategy clean_distribution(const Vector& x) {
  std::vector<double> p(static_cast<std::size_t>(x.size()));
  double sum = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double v = x(static_cast<Eigen::Index>(i));
    p[i] = v > kZeroProbability ? v : 0.0;
    sum += p[i];
  }
  if (!(sum > 0.0)) throw StructuralError("LP returned an empty distribution");
  for (double& v : p) v /= sum;
  return MixedStrategy(std::move(p));
}

// Redistributes mass evenly among exactly identical rows (or columns) of
// `payoff`.
MixedStrategy share_duplicates(const MixedStrategy& s, const Matrix& payoff,
                               bool by_rows) {
  const std::size_t n = s.size();
  auto same = [&](std::size_t a, std::size_t b) {
    const auto ia = static_cast<Eigen::Index>(a);
    const auto ib = static_cast<Eigen::Index>(b);
    return by_rows ? payoff.row(ia) == payoff.row(ib)
                   : payoff.col(ia) == payoff.col(ib);
  };
  std::vector<std::size_t> leader(n);
  for (std::size_t i = 0; i < n; ++i) {
    leader[i] = i;
    for (std::size_t j = 0; j < i; ++j) {
      if (leader[j] == j && same(i, j)) {
        leader[i] = j;
        break;
      }
    }
  }
  std::vector<double> mass(n, 0.0);
  std::vector<std::size_t> members(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    mass[leader[i]] += s[i];
    ++members[leader[i]];
  }
  std::vector<double> p(n);
  for (std::size_t i = 0; i < n; ++i) {
    p[i] = mass[leader[i]] / static_cast<double>(members[leader[i]]);
  }
  return MixedStrategy(std::move(p));
}

Vector ones(Eigen::Index n) { return Vector::Ones(n); }

double payoff_scale(const Matrix& m) {
  return std::max(1.0, m.cwiseAbs().maxCoeff());
}

}  // namespace

std::string_view to_string(SolutionMethod method) {
  switch (method) {
    case SolutionMethod::maximin_lp:
      return "maximin_lp";
    case SolutionMethod::support_enumeration:
      return "support_enumeration";
    case SolutionMethod::sse_multiple_lp:
      return "sse_multiple_lp";
    case SolutionMethod::pure_commitment:
      return "pure_commitment";
    case SolutionMethod::grid_oracle:
      return "grid_oracle";
  }
  return "?";
}

Vector payoffs_against(const GameInstance& game, const MixedStrategy& opponent,
                       Player who) {
  if (who == Player::defender) {
    if (opponent.size() != game.malware_count()) {
      throw DimensionError("attacker strategy does not match malware count");
    }
    return game.defender() * opponent.vector();
  }
  if (opponent.size() != game.route_count()) {
    throw DimensionError("defender strategy does not match route count");
  }
  return game.attacker().transpose() * opponent.vector();
}

double guaranteed_value(const GameInstance& game, const MixedStrategy& rho) {
  if (rho.size() != game.route_count()) {
    throw DimensionError("defender strategy does not match route count");
  }
  return (game.defender().transpose() * rho.vector()).minCoeff();
}

SolutionReport solve_maximin(const GameInstance& game) {
  const Matrix& d = game.defender();
  const Eigen::Index rows = d.rows();
  const Eigen::Index cols = d.cols();

  // Defender: max v s.t. v <= rho . D[:, l] for every l, rho on the simplex.
  LinearProgram primal(static_cast<std::size_t>(rows + 1));
  primal.objective(rows) = 1.0;
  primal.lower[static_cast<std::size_t>(rows)] = -LinearProgram::kInf;
  for (Eigen::Index l = 0; l < cols; ++l) {
    Vector row(rows + 1);
    row.head(rows) = -d.col(l);
    row(rows) = 1.0;
    primal.add_constraint(row, Sense::less_equal, 0.0);
  }
  Vector sum_row = Vector::Zero(rows + 1);
  sum_row.head(rows) = ones(rows);
  primal.add_constraint(sum_row, Sense::equal, 1.0);
  const LpSolution p = solve_lp(primal);

  // Attacker: min w s.t. D[j, :] . mu <= w for every j, mu on the simplex.
  LinearProgram dual(static_cast<std::size_t>(cols + 1));
  dual.objective(cols) = -1.0;
  dual.lower[static_cast<std::size_t>(cols)] = -LinearProgram::kInf;
  for (Eigen::Index j = 0; j < rows; ++j) {
    Vector row(cols + 1);
    row.head(cols) = d.row(j).transpose();
    row(cols) = -1.0;
    dual.add_constraint(row, Sense::less_equal, 0.0);
  }
  Vector mu_sum = Vector::Zero(cols + 1);
  mu_sum.head(cols) = ones(cols);
  dual.add_constraint(mu_sum, Sense::equal, 1.0);
  const LpSolution q = solve_lp(dual);

  MixedStrategy rho =
      share_duplicates(clean_distribution(p.values.head(rows)), d, true);
  MixedStrategy mu =
      share_duplicates(clean_distribution(q.values.head(cols)), d, false);

  SolutionReport report{rho, mu, guaranteed_value(game, rho), 0.0,
                        SolutionMethod::maximin_lp, q.values(cols)};
  report.attacker_value = expected_utility(game, rho, mu, Player::attacker);
  return report;
}

std::vector<std::size_t> best_response_set(const GameInstance& game,
                                           const MixedStrategy& opponent,
                                           Player who, double tolerance) {
  const Vector values = payoffs_against(game, opponent, who);
  const double best = values.maxCoeff();
  const double slack = tolerance * std::max(1.0, std::abs(best));
  std::vector<std::size_t> out;
  for (Eigen::Index i = 0; i < values.size(); ++i) {
    if (values(i) >= best - slack) out.push_back(static_cast<std::size_t>(i));
  }
  return out;
}

namespace {

std::vector<std::vector<Eigen::Index>> nonempty_subsets(Eigen::Index n) {
  std::vector<std::vector<Eigen::Index>> out;
  for (unsigned long mask = 1; mask < (1UL << n); ++mask) {
    std::vector<Eigen::Index> s;
    for (Eigen::Index i = 0; i < n; ++i) {
      if (mask & (1UL << i)) s.push_back(i);
    }
    out.push_back(std::move(s));
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const auto& a, const auto& b) {
                     return a.size() < b.size();
                   });
  return out;
}

struct Indifference {
  bool solved = false;
  bool continuum = false;
  Vector probs;  // over the mixing player's support
  double value = 0.0;
};

// Finds x on `mix` (indices of the mixing player's strategies) making every
// strategy in `respond` of the other player indifferent:
//   payoff[respond, mix] x = value * 1,  sum x = 1.
// `payoff` is oriented with the responding player's strategies as rows.
Indifference solve_indifference(const Matrix& payoff,
                                const std::vector<Eigen::Index>& respond,
                                const std::vector<Eigen::Index>& mix,
                                double scale) {
  const auto r = static_cast<Eigen::Index>(respond.size());
  const auto k = static_cast<Eigen::Index>(mix.size());
  Matrix system = Matrix::Zero(r + 1, k + 1);
  Vector rhs = Vector::Zero(r + 1);
  for (Eigen::Index i = 0; i < r; ++i) {
    for (Eigen::Index j = 0; j < k; ++j) {
      system(i, j) = payoff(respond[static_cast<std::size_t>(i)],
                            mix[static_cast<std::size_t>(j)]);
    }
    system(i, k) = -1.0;
  }
  system.row(r).head(k).setOnes();
  rhs(r) = 1.0;

  Eigen::CompleteOrthogonalDecomposition<Matrix> cod(system);
  cod.setThreshold(1e-12);
  const Vector x = cod.solve(rhs);
  Indifference out;
  if ((system * x - rhs).cwiseAbs().maxCoeff() > 1e-9 * scale) return out;
  out.solved = true;
  out.continuum = cod.rank() < k + 1;
  out.probs = x.head(k);
  out.value = x(k);
  return out;
}

double distance(const MixedStrategy& a, const MixedStrategy& b) {
  return (a.vector() - b.vector()).cwiseAbs().maxCoeff();
}

}  // namespace

EquilibriumSet support_enumeration_ne(const GameInstance& game,
                                      std::size_t max_size) {
  const std::size_t rows = game.route_count();
  const std::size_t cols = game.malware_count();
  if (rows > max_size || cols > max_size) {
    throw ParameterError(fmt::format(
        "support enumeration is limited to {}x{} games, got {}x{}", max_size,
        max_size, rows, cols));
  }
  const Matrix& d = game.defender();
  const Matrix at = game.attacker().transpose();  // attacker strategies as rows
  const double scale = std::max(payoff_scale(d), payoff_scale(at));
  const double tol = 1e-9 * scale;

  EquilibriumSet result;
  const auto row_sets = nonempty_subsets(static_cast<Eigen::Index>(rows));
  const auto col_sets = nonempty_subsets(static_cast<Eigen::Index>(cols));
  for (const auto& rs : row_sets) {
    for (const auto& cs : col_sets) {
      // Attacker mixes on cs so that defender rows in rs are indifferent,
      // and vice versa.
      const Indifference mu_part = solve_indifference(d, rs, cs, scale);
      if (!mu_part.solved) continue;
      const Indifference rho_part = solve_indifference(at, cs, rs, scale);
      if (!rho_part.solved) continue;
      if (mu_part.probs.minCoeff() <= kZeroProbability ||
          rho_part.probs.minCoeff() <= kZeroProbability) {
        continue;
      }
      // Renormalize away the solver's rounding; pure supports become 1.
      const double rho_sum = rho_part.probs.sum();
      const double mu_sum = mu_part.probs.sum();
      std::vector<double> rho(rows, 0.0);
      std::vector<double> mu(cols, 0.0);
      for (std::size_t i = 0; i < rs.size(); ++i) {
        rho[static_cast<std::size_t>(rs[i])] =
            rho_part.probs(static_cast<Eigen::Index>(i)) / rho_sum;
      }
      for (std::size_t i = 0; i < cs.size(); ++i) {
        mu[static_cast<std::size_t>(cs[i])] =
            mu_part.probs(static_cast<Eigen::Index>(i)) / mu_sum;
      }
      MixedStrategy rho_s(std::move(rho));
      MixedStrategy mu_s(std::move(mu));

      const Vector row_values = d * mu_s.vector();
      const Vector col_values = at * rho_s.vector();
      if (row_values.maxCoeff() > mu_part.value + tol) continue;
      if (col_values.maxCoeff() > rho_part.value + tol) continue;

      bool duplicate = false;
      for (const auto& e : result.equilibria) {
        if (distance(e.defender_strategy, rho_s) < 1e-9 &&
            distance(e.attacker_strategy, mu_s) < 1e-9) {
          duplicate = true;
          break;
        }
      }
      if (mu_part.continuum || rho_part.continuum) result.degenerate = true;
      const auto row_br = (row_values.array() >= mu_part.value - tol).count();
      const auto col_br = (col_values.array() >= rho_part.value - tol).count();
      if (row_br > static_cast<Eigen::Index>(rs.size()) ||
          col_br > static_cast<Eigen::Index>(cs.size())) {
        result.degenerate = true;
      }
      if (duplicate) continue;
      const double dv = expected_utility(game, rho_s, mu_s, Player::defender);
      const double av = expected_utility(game, rho_s, mu_s, Player::attacker);
      result.equilibria.push_back(SolutionReport{
          rho_s, mu_s, dv, av,
          SolutionMethod::support_enumeration,
          std::numeric_limits<double>::quiet_NaN()});
    }
  }
  return result;
}

SolutionReport solve_sse(const GameInstance& game) {
  const Matrix& d = game.defender();
  const Matrix& a = game.attacker();
  const Eigen::Index rows = d.rows();
  const Eigen::Index cols = d.cols();

  bool found = false;
  SolutionReport best{MixedStrategy::uniform(static_cast<std::size_t>(rows)),
                      MixedStrategy::uniform(static_cast<std::size_t>(cols)),
                      0.0,
                      0.0,
                      SolutionMethod::sse_multiple_lp,
                      std::numeric_limits<double>::quiet_NaN()};
  for (Eigen::Index l = 0; l < cols; ++l) {
    LinearProgram lp(static_cast<std::size_t>(rows));
    lp.objective = d.col(l);
    for (Eigen::Index other = 0; other < cols; ++other) {
      if (other == l) continue;
      lp.add_constraint(a.col(other) - a.col(l), Sense::less_equal, 0.0);
    }
    lp.add_constraint(ones(rows), Sense::equal, 1.0);
    const LpSolution sol = solve_lp_status(lp);
    if (sol.status != LpStatus::optimal) continue;
    MixedStrategy rho = clean_distribution(sol.values);
    const double value = d.col(l).dot(rho.vector());
    if (!found || value > best.game_value + 1e-12) {
      found = true;
      best.defender_strategy = std::move(rho);
      best.attacker_strategy =
          MixedStrategy::pure(static_cast<std::size_t>(cols),
                              static_cast<std::size_t>(l));
      best.game_value = value;
      best.attacker_value = a.col(l).dot(best.defender_strategy.vector());
    }
  }
  if (!found) {
    throw StructuralError("no attacker strategy can be induced as a best response");
  }
  return best;
}

SolutionReport solve_pure_commitment(const GameInstance& game) {
  const std::size_t rows = game.route_count();
  const std::size_t cols = game.malware_count();
  std::size_t best_row = 0;
  std::size_t best_col = 0;
  double best_value = -std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < rows; ++j) {
    const auto rho = MixedStrategy::pure(rows, j);
    std::size_t col = 0;
    double value = -std::numeric_limits<double>::infinity();
    for (std::size_t l : best_response_set(game, rho, Player::attacker)) {
      const double v = game.defender()(static_cast<Eigen::Index>(j),
                                       static_cast<Eigen::Index>(l));
      if (v > value) {
        value = v;
        col = l;
      }
    }
    if (value > best_value) {
      best_value = value;
      best_row = j;
      best_col = col;
    }
  }
  return SolutionReport{
      MixedStrategy::pure(rows, best_row),
      MixedStrategy::pure(cols, best_col),
      best_value,
      game.attacker()(static_cast<Eigen::Index>(best_row),
                      static_cast<Eigen::Index>(best_col)),
      SolutionMethod::pure_commitment,
      std::numeric_limits<double>::quiet_NaN()};
}

SolutionReport grid_oracle_maximin(const GameInstance& game, double step) {
  const std::size_t rows = game.route_count();
  if (rows > 3) {
    throw ParameterError(fmt::format(
        "grid oracle supports at most 3 routes, got {}", rows));
  }
  if (!(step > 0.0 && step <= 0.1)) {
    throw ParameterError(
        fmt::format("grid step must lie in (0, 0.1], got {}", step));
  }
  const auto n = static_cast<long>(std::llround(1.0 / step));
  const Matrix dt = game.defender().transpose();

  Vector rho = Vector::Zero(static_cast<Eigen::Index>(rows));
  Vector best_rho = rho;
  double best_value = -std::numeric_limits<double>::infinity();
  auto consider = [&](const Vector& candidate) {
    const double v = (dt * candidate).minCoeff();
    if (v > best_value) {
      best_value = v;
      best_rho = candidate;
    }
  };
  const double inv = 1.0 / static_cast<double>(n);
  if (rows == 1) {
    rho(0) = 1.0;
    consider(rho);
  } else {
    for (long i = 0; i <= n; ++i) {
      if (rows == 2) {
        rho(0) = static_cast<double>(i) * inv;
        rho(1) = static_cast<double>(n - i) * inv;
        consider(rho);
        continue;
      }
      for (long k = 0; k <= n - i; ++k) {
        rho(0) = static_cast<double>(i) * inv;
        rho(1) = static_cast<double>(k) * inv;
        rho(2) = static_cast<double>(n - i - k) * inv;
        consider(rho);
      }
    }
  }
  MixedStrategy defender = clean_distribution(best_rho);
  Eigen::Index worst = 0;
  (dt * defender.vector()).minCoeff(&worst);
  MixedStrategy attacker = MixedStrategy::pure(game.malware_count(),
                                               static_cast<std::size_t>(worst));
  const double attacker_value =
      expected_utility(game, defender, attacker, Player::attacker);
  return SolutionReport{std::move(defender),
                        std::move(attacker),
                        best_value,
                        attacker_value,
                        SolutionMethod::grid_oracle,
                        std::numeric_limits<double>::quiet_NaN()};
}

}  // namespace mdg
