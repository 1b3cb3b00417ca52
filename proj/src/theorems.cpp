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

#include "mdg/theorems.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <limits>

#include "mdg/equilibria.hpp"
#include "mdg/error.hpp"
#include "mdg/rng.hpp"

namespace mdg {

void CheckStats::record(double deviation, double tolerance) {
  if (std::isnan(deviation)) deviation = std::numeric_limits<double>::infinity();
  worst_deviation = std::max(worst_deviation, deviation);
  if (deviation <= tolerance) {
    ++passed;
  } else {
    ++failed;
  }
}

bool TheoremReport::all_passed() const {
  return maximin_equal.failed == 0 && sse_maximin.failed == 0 &&
         best_response.failed == 0 && ne_sets.failed == 0;
}

bool OracleReport::all_passed() const {
  return grid.failed == 0 && enumeration.failed == 0 && minimax.failed == 0;
}

std::string format_matrix(const Matrix& m) {
  std::string out = "[";
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    if (i > 0) out += "; ";
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j > 0) out += ", ";
      out += fmt::format("{:.17g}", m(i, j));
    }
  }
  return out + "]";
}

GamePair random_game_pair(std::uint64_t seed, std::size_t index,
                          const TheoremOptions& options) {
  if (options.scalings.empty()) {
    throw ParameterError("at least one scaling factor is required");
  }
  Rng rng = Rng::derive(seed, {0x7468656f72656dULL, index});
  const auto rows = static_cast<Eigen::Index>(1 + rng.index(options.max_routes));
  const auto cols =
      static_cast<Eigen::Index>(1 + rng.index(options.max_malware));
  Matrix loss(rows, cols);
  for (Eigen::Index j = 0; j < rows; ++j) {
    for (Eigen::Index l = 0; l < cols; ++l) {
      loss(j, l) = rng.uniform(0.0, options.max_security_loss);
    }
  }
  Vector costs(rows);
  for (Eigen::Index j = 0; j < rows; ++j) {
    costs(j) = rng.uniform(0.0, options.max_route_cost);
  }
  const double xi = options.scalings[rng.index(options.scalings.size())];
  return {GameInstance::from_components(loss, costs, GameMode::scaled, xi),
          GameInstance::from_components(loss, costs, GameMode::zero_sum)};
}

namespace {

double strategy_distance(const MixedStrategy& a, const MixedStrategy& b) {
  return (a.vector() - b.vector()).cwiseAbs().maxCoeff();
}

// Hausdorff distance between two sets of defender strategies.
double set_distance(const std::vector<SolutionReport>& a,
                    const std::vector<SolutionReport>& b) {
  if (a.empty() || b.empty()) {
    return a.empty() && b.empty() ? 0.0
                                  : std::numeric_limits<double>::infinity();
  }
  auto directed = [](const auto& from, const auto& to) {
    double worst = 0.0;
    for (const auto& x : from) {
      double nearest = std::numeric_limits<double>::infinity();
      for (const auto& y : to) {
        nearest = std::min(nearest, strategy_distance(x.defender_strategy,
                                                      y.defender_strategy));
      }
      worst = std::max(worst, nearest);
    }
    return worst;
  };
  return std::max(directed(a, b), directed(b, a));
}

// Deviation from the best-response characterisation of a saddle point:
// support rows attain the value against mu, no row exceeds it, and every
// attacker support column is a best response to rho in `attacker_game`.
double best_response_deviation(const GameInstance& zero_sum,
                               const GameInstance& attacker_game,
                               const SolutionReport& s,
                               double tolerance) {
  double dev = 0.0;
  const Vector rows = payoffs_against(zero_sum, s.attacker_strategy,
                                      Player::defender);
  const auto row_br =
      best_response_set(zero_sum, s.attacker_strategy, Player::defender,
                        tolerance);
  for (std::size_t j : s.defender_strategy.support()) {
    dev = std::max(dev, std::abs(rows(static_cast<Eigen::Index>(j)) -
                                 s.game_value));
    if (std::find(row_br.begin(), row_br.end(), j) == row_br.end()) {
      dev = std::max(dev, rows.maxCoeff() - rows(static_cast<Eigen::Index>(j)));
    }
  }
  dev = std::max(dev, rows.maxCoeff() - s.game_value);

  const Vector cols = payoffs_against(attacker_game, s.defender_strategy,
                                      Player::attacker);
  for (std::size_t l : s.attacker_strategy.support()) {
    dev = std::max(dev, cols.maxCoeff() - cols(static_cast<Eigen::Index>(l)));
  }
  return dev;
}

}  // namespace

void check_game_pair(const GamePair& pair, const TheoremOptions& options,
                     TheoremReport& report) {
  const std::size_t id = report.instances++;
  const double tol = options.tolerance;
  auto dump = [&](std::string_view check, double deviation) {
    report.counterexamples.push_back(fmt::format(
        "instance {} failed {}: deviation {:.3e}; S={}; C={}; Xi={}", id,
        check, deviation, format_matrix(pair.scaled.security_loss()),
        format_matrix(pair.scaled.route_costs().transpose()),
        pair.scaled.scaling()));
  };

  const SolutionReport scaled = solve_maximin(pair.scaled);
  const SolutionReport zero = solve_maximin(pair.zero_sum);

  const double d_max = std::abs(scaled.game_value - zero.game_value);
  report.maximin_equal.record(d_max, 0.0);
  if (d_max > 0.0) dump("maximin equality", d_max);

  const double d_sse = sse_maximin_gap(pair.scaled);
  report.sse_maximin.record(d_sse, tol);
  if (!(d_sse <= tol)) dump("SSE/maximin equality", d_sse);

  const double d_br =
      best_response_deviation(pair.zero_sum, pair.scaled, zero, 1e-9);
  report.best_response.record(d_br, tol);
  if (!(d_br <= tol)) dump("best-response support", d_br);

  if (pair.scaled.route_count() <= options.enumeration_limit &&
      pair.scaled.malware_count() <= options.enumeration_limit) {
    const auto ne_scaled =
        support_enumeration_ne(pair.scaled, options.enumeration_limit);
    const auto ne_zero =
        support_enumeration_ne(pair.zero_sum, options.enumeration_limit);
    const double d_ne = set_distance(ne_scaled.equilibria, ne_zero.equilibria);
    report.ne_sets.record(d_ne, tol);
    if (!(d_ne <= tol)) dump("NE set equality", d_ne);
  }
}

TheoremReport verify_theorems(std::uint64_t seed, std::size_t count,
                              const TheoremOptions& options) {
  if (count == 0) throw ParameterError("verification count must be >= 1");
  TheoremReport report;
  for (std::size_t k = 0; k < count; ++k) {
    check_game_pair(random_game_pair(seed, k, options), options, report);
  }
  return report;
}

double sse_maximin_gap(const GameInstance& game) {
  return std::abs(solve_sse(game).game_value - solve_maximin(game).game_value);
}

OracleReport run_oracle_checks(std::uint64_t seed,
                               const OracleOptions& options) {
  OracleReport report;
  auto minimax = [&](const SolutionReport& s, std::string_view where) {
    const double d = std::abs(s.game_value - s.upper_value);
    report.minimax.record(d, options.minimax_tolerance);
    if (!(d <= options.minimax_tolerance)) {
      report.counterexamples.push_back(
          fmt::format("{}: primal {} vs dual {}", where, s.game_value,
                      s.upper_value));
    }
  };

  TheoremOptions grid_games;
  grid_games.max_routes = 3;
  grid_games.max_malware = options.grid_max_malware;
  for (std::size_t k = 0; k < options.grid_games; ++k) {
    const GamePair pair = random_game_pair(seed ^ 0x67726964ULL, k, grid_games);
    const GameInstance& g = pair.zero_sum;
    const SolutionReport lp = solve_maximin(g);
    const SolutionReport grid = grid_oracle_maximin(g, options.grid_step);
    double range = g.defender().maxCoeff() - g.defender().minCoeff();
    if (range <= 0.0) range = 1.0;
    const double d = std::abs(lp.game_value - grid.game_value) / range;
    report.grid.record(d, options.grid_tolerance);
    if (!(d <= options.grid_tolerance)) {
      report.counterexamples.push_back(fmt::format(
          "grid game {}: LP {} vs grid {}; U_d={}", k, lp.game_value,
          grid.game_value, format_matrix(g.defender())));
    }
    minimax(lp, fmt::format("grid game {}", k));
  }

  TheoremOptions small_games;
  small_games.max_routes = 4;
  small_games.max_malware = 4;
  for (std::size_t k = 0; k < options.enumeration_games; ++k) {
    const GamePair pair =
        random_game_pair(seed ^ 0x656e756dULL, k, small_games);
    const GameInstance& g = pair.scaled;
    const SolutionReport lp = solve_maximin(g);
    const auto ne = support_enumeration_ne(g, 4);
    double d = std::numeric_limits<double>::infinity();
    for (const auto& e : ne.equilibria) {
      d = std::min(d, std::abs(guaranteed_value(g, e.defender_strategy) -
                               lp.game_value));
    }
    report.enumeration.record(d, options.enumeration_tolerance);
    if (!(d <= options.enumeration_tolerance)) {
      report.counterexamples.push_back(fmt::format(
          "enumeration game {}: maximin {} not matched; U_d={}; U_a={}", k,
          lp.game_value, format_matrix(g.defender()),
          format_matrix(g.attacker())));
    }
    minimax(lp, fmt::format("enumeration game {}", k));
  }
  return report;
}

}  // namespace mdg
