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

// Executable checks of the defender-side equivalences between the zero-sum
// game and its scaled non-zero-sum counterpart, plus oracle cross-checks of
// the LP solvers.

#ifndef MDG_THEOREMS_HPP_
#define MDG_THEOREMS_HPP_

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "mdg/game_model.hpp"

namespace mdg {

struct CheckStats {
  std::size_t passed = 0;
  std::size_t failed = 0;
  double worst_deviation = 0.0;

  void record(double deviation, double tolerance);
};

struct TheoremOptions {
  std::size_t max_routes = 8;
  std::size_t max_malware = 8;
  // Support enumeration runs only when both dimensions are at most this.
  std::size_t enumeration_limit = 5;
  std::vector<double> scalings{0.5, 1.0, 2.0, 5.0};
  double tolerance = 1e-6;
  double max_security_loss = 10.0;
  double max_route_cost = 5.0;
};

struct TheoremReport {
  std::size_t instances = 0;
  CheckStats maximin_equal;   // maximin value of scaled == zero-sum, exactly
  CheckStats sse_maximin;     // SSE value == maximin value in the scaled game
  CheckStats best_response;   // supports are best responses at the value
  CheckStats ne_sets;         // equal defender NE sets (small instances)
  std::vector<std::string> counterexamples;

  bool all_passed() const;
};

// Random scaled/zero-sum pair sharing the same S matrix and route costs.
struct GamePair {
  GameInstance scaled;
  GameInstance zero_sum;
};

GamePair random_game_pair(std::uint64_t seed, std::size_t index,
                          const TheoremOptions& options = {});

// Runs every check on one pair and folds the outcome into `report`.
void check_game_pair(const GamePair& pair, const TheoremOptions& options,
                     TheoremReport& report);

TheoremReport verify_theorems(std::uint64_t seed, std::size_t count,
                              const TheoremOptions& options = {});

// |SSE value - maximin value|. Zero (to solver precision) for model-built
// games; positive for games where commitment helps the leader.
double sse_maximin_gap(const GameInstance& game);

struct OracleOptions {
  std::size_t grid_games = 50;     // R <= 3
  std::size_t grid_max_malware = 6;
  double grid_step = 1e-3;
  double grid_tolerance = 5e-3;    // times the payoff range
  std::size_t enumeration_games = 50;  // R, M <= 4
  double enumeration_tolerance = 1e-6;
  double minimax_tolerance = 1e-9;
};

struct OracleReport {
  CheckStats grid;          // deviation / payoff range
  CheckStats enumeration;   // |best NE guaranteed value - maximin value|
  CheckStats minimax;       // |primal value - dual value|
  std::vector<std::string> counterexamples;

  bool all_passed() const;
};

OracleReport run_oracle_checks(std::uint64_t seed,
                               const OracleOptions& options = {});

std::string format_matrix(const Matrix& m);

}  // namespace mdg

#endif  // MDG_THEOREMS_HPP_
