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

// Defender solution concepts for the Malware Detection Game: maximin by
// linear programming, strong Stackelberg commitment by multiple LPs, and
// two brute-force oracles (support enumeration and a simplex grid scan).

#ifndef MDG_EQUILIBRIA_HPP_
#define MDG_EQUILIBRIA_HPP_

#include <cstddef>
#include <limits>
#include <string_view>
#include <vector>

#include "mdg/game_model.hpp"

namespace mdg {

enum class SolutionMethod {
  maximin_lp,
  support_enumeration,
  sse_multiple_lp,
  pure_commitment,
  grid_oracle,
};

std::string_view to_string(SolutionMethod method);

struct SolutionReport {
  MixedStrategy defender_strategy;
  MixedStrategy attacker_strategy;
  // Maximin and grid oracle: the defender's guaranteed payoff. Equilibria
  // and commitments: the defender's payoff at the reported profile.
  double game_value = 0.0;
  double attacker_value = 0.0;
  SolutionMethod method = SolutionMethod::maximin_lp;
  // Maximin only: min over mu of max over rho, from the attacker's LP.
  double upper_value = std::numeric_limits<double>::quiet_NaN();
};

// Expected payoff of every pure strategy of `who` against the opponent's
// mixed strategy (rows for the defender, columns for the attacker).
Vector payoffs_against(const GameInstance& game, const MixedStrategy& opponent,
                       Player who);

// min over attacker pure strategies of U_d(rho, m).
double guaranteed_value(const GameInstance& game, const MixedStrategy& rho);

// Security strategy of the defender. The attacker strategy is the solution
// of the attacker's (dual) LP, so in zero-sum games the pair is a saddle
// point. Identical rows (columns) share their mass equally, which makes an
// all-equal game return uniform strategies.
SolutionReport solve_maximin(const GameInstance& game);

// Every pure strategy of `who` whose payoff against `opponent` is within
// `tolerance` (relative to max(1, |best|)) of the best.
std::vector<std::size_t> best_response_set(const GameInstance& game,
                                           const MixedStrategy& opponent,
                                           Player who,
                                           double tolerance = 1e-9);

struct EquilibriumSet {
  std::vector<SolutionReport> equilibria;
  // Set when an indifference system had a continuum of solutions or an
  // equilibrium has more best responses than support actions. Only
  // representative points are listed in that case.
  bool degenerate = false;
};

// All Nash equilibria of a small bimatrix game by enumerating support pairs.
// Throws ParameterError when either dimension exceeds `max_size`.
EquilibriumSet support_enumeration_ne(const GameInstance& game,
                                      std::size_t max_size = 4);

// Strong Stackelberg equilibrium with the defender as leader: one LP per
// attacker pure strategy, restricted to commitments that make it a best
// response; infeasible candidates are skipped.
SolutionReport solve_sse(const GameInstance& game);

// Best pure commitment of the defender, with the attacker best responding
// and breaking ties in the defender's favour.
SolutionReport solve_pure_commitment(const GameInstance& game);

// Exhaustive scan of the defender simplex at resolution `step`. Refuses
// games with more than three routes.
SolutionReport grid_oracle_maximin(const GameInstance& game, double step);

}  // namespace mdg

#endif  // MDG_EQUILIBRIA_HPP_
