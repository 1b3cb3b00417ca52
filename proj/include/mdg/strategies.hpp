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

// Attacker profiles and defender route-selection policies.

#ifndef MDG_STRATEGIES_HPP_
#define MDG_STRATEGIES_HPP_

#include <cstddef>
#include <limits>
#include <span>
#include <string_view>

#include "mdg/game_model.hpp"

namespace mdg {

enum class AttackerKind { uniform, weighted, nash };
enum class DefenderKind { irouting, proportional, fewest_hops, cached_shortest };

std::string_view to_string(AttackerKind kind);
std::string_view to_string(DefenderKind kind);
AttackerKind attacker_kind_from_string(std::string_view name);
DefenderKind defender_kind_from_string(std::string_view name);

struct AttackerProfile {
  AttackerKind kind = AttackerKind::uniform;
  MixedStrategy plan;
  bool fallback = false;  // weighted profile degenerated to uniform
};

// Number of sessions a delivery plan stays valid.
inline constexpr std::size_t kUnlimitedLifetime =
    std::numeric_limits<std::size_t>::max();

struct DefenderPolicy {
  DefenderKind kind = DefenderKind::irouting;
  MixedStrategy plan;
  std::size_t lifetime = kUnlimitedLifetime;
  bool fallback = false;  // proportional plan degenerated to uniform
};

MixedStrategy uniform_attacker(std::size_t malware_count);

// Column averages of the attacker matrix, normalised. An all-zero matrix
// yields the uniform plan with `fallback` set.
AttackerProfile weighted_attacker(const Matrix& attacker_matrix);

// Attacker side of the zero-sum saddle point; the defender matrix is the
// same in the zero-sum and scaled games, so this holds for both.
MixedStrategy nash_attacker(const GameInstance& game);

AttackerProfile make_attacker(AttackerKind kind, const GameInstance& game);

// Nash delivery plan: the defender's maximin strategy.
DefenderPolicy irouting_defender(const GameInstance& game);

// Route weight 1 - avg_j / sum of averages, divided by (R - 1) so the plan
// sums to one. Falls back to uniform when the averages sum to zero.
DefenderPolicy proportional_defender(const Matrix& defender_matrix);

// Pure plan on the route with the fewest hops, lowest index on ties.
DefenderPolicy fewest_hops_defender(std::span<const Route> routes);

// Pure plan on the fewest-hop route, ties broken by lower inspection cost
// then lower index. Cached for the whole experiment.
DefenderPolicy cached_shortest_defender(std::span<const Route> routes);

DefenderPolicy make_defender(DefenderKind kind, const GameInstance& game,
                             std::span<const Route> routes,
                             std::size_t lifetime = kUnlimitedLifetime);

}  // namespace mdg

#endif  // MDG_STRATEGIES_HPP_
