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

#include "mdg/strategies.hpp"

#include <fmt/format.h>

#include <cmath>
#include <utility>
#include <vector>

#include "mdg/equilibria.hpp"
#include "mdg/error.hpp"

namespace mdg {

std::string_view to_string(AttackerKind kind) {
  switch (kind) {
    case AttackerKind::uniform:
      return "uniform";
    case AttackerKind::weighted:
      return "weighted";
    case AttackerKind::nash:
      return "nash";
  }
  return "?";
}

std::string_view to_string(DefenderKind kind) {
  switch (kind) {
    case DefenderKind::irouting:
      return "irouting";
    case DefenderKind::proportional:
      return "proportional";
    case DefenderKind::fewest_hops:
      return "fewest_hops";
    case DefenderKind::cached_shortest:
      return "cached_shortest";
  }
  return "?";
}

AttackerKind attacker_kind_from_string(std::string_view name) {
  for (auto k : {AttackerKind::uniform, AttackerKind::weighted,
                 AttackerKind::nash}) {
    if (to_string(k) == name) return k;
  }
  throw ConfigError(fmt::format(
      "unknown attacker '{}' (expected uniform, weighted or nash)", name));
}

DefenderKind defender_kind_from_string(std::string_view name) {
  for (auto k : {DefenderKind::irouting, DefenderKind::proportional,
                 DefenderKind::fewest_hops, DefenderKind::cached_shortest}) {
    if (to_string(k) == name) return k;
  }
  throw ConfigError(fmt::format(
      "unknown policy '{}' (expected irouting, proportional, fewest_hops or "
      "cached_shortest)",
      name));
}

MixedStrategy uniform_attacker(std::size_t malware_count) {
  if (malware_count == 0) throw ParameterError("attacker has no malware");
  return MixedStrategy::uniform(malware_count);
}

AttackerProfile weighted_attacker(const Matrix& attacker_matrix) {
  if (attacker_matrix.size() == 0) {
    throw DimensionError("attacker matrix is empty");
  }
  if (attacker_matrix.minCoeff() < 0.0) {
    throw ParameterError("weighted attacker needs non-negative payoffs");
  }
  const Vector averages = attacker_matrix.colwise().mean().transpose();
  const double total = averages.sum();
  const auto cols = static_cast<std::size_t>(attacker_matrix.cols());
  if (!(total > 0.0)) {
    return {AttackerKind::weighted, MixedStrategy::uniform(cols), true};
  }
  std::vector<double> p(cols);
  for (std::size_t l = 0; l < cols; ++l) {
    p[l] = averages(static_cast<Eigen::Index>(l)) / total;
  }
  return {AttackerKind::weighted, MixedStrategy(std::move(p)), false};
}

MixedStrategy nash_attacker(const GameInstance& game) {
  return solve_maximin(game).attacker_strategy;
}

AttackerProfile make_attacker(AttackerKind kind, const GameInstance& game) {
  switch (kind) {
    case AttackerKind::uniform:
      return {kind, uniform_attacker(game.malware_count()), false};
    case AttackerKind::weighted:
      return weighted_attacker(game.attacker());
    case AttackerKind::nash:
      return {kind, nash_attacker(game), false};
  }
  throw ParameterError("unknown attacker kind");
}

DefenderPolicy irouting_defender(const GameInstance& game) {
  return {DefenderKind::irouting, solve_maximin(game).defender_strategy,
          kUnlimitedLifetime, false};
}

DefenderPolicy proportional_defender(const Matrix& defender_matrix) {
  const auto rows = static_cast<std::size_t>(defender_matrix.rows());
  if (rows == 0 || defender_matrix.cols() == 0) {
    throw DimensionError("defender matrix is empty");
  }
  if (rows == 1) {
    return {DefenderKind::proportional, MixedStrategy::pure(1, 0),
            kUnlimitedLifetime, false};
  }
  const Vector averages = defender_matrix.rowwise().mean();
  const double total = averages.sum();
  if (total == 0.0) {
    return {DefenderKind::proportional, MixedStrategy::uniform(rows),
            kUnlimitedLifetime, true};
  }
  std::vector<double> p(rows);
  for (std::size_t j = 0; j < rows; ++j) {
    const double raw = 1.0 - averages(static_cast<Eigen::Index>(j)) / total;
    if (raw < 0.0) {
      throw ParameterError(
          "proportional routing needs row averages of a single sign");
    }
    p[j] = raw / static_cast<double>(rows - 1);
  }
  return {DefenderKind::proportional, MixedStrategy(std::move(p)),
          kUnlimitedLifetime, false};
}

namespace {

std::size_t fewest_hops_index(std::span<const Route> routes,
                              bool break_by_cost) {
  if (routes.empty()) throw NoRouteError("no routes to choose from");
  std::size_t best = 0;
  for (std::size_t j = 1; j < routes.size(); ++j) {
    const auto& r = routes[j];
    const auto& b = routes[best];
    if (r.hop_count() < b.hop_count() ||
        (break_by_cost && r.hop_count() == b.hop_count() &&
         r.total_cost() < b.total_cost())) {
      best = j;
    }
  }
  return best;
}

}  // namespace

DefenderPolicy fewest_hops_defender(std::span<const Route> routes) {
  return {DefenderKind::fewest_hops,
          MixedStrategy::pure(routes.size(), fewest_hops_index(routes, false)),
          kUnlimitedLifetime, false};
}

DefenderPolicy cached_shortest_defender(std::span<const Route> routes) {
  return {DefenderKind::cached_shortest,
          MixedStrategy::pure(routes.size(), fewest_hops_index(routes, true)),
          kUnlimitedLifetime, false};
}

DefenderPolicy make_defender(DefenderKind kind, const GameInstance& game,
                             std::span<const Route> routes,
                             std::size_t lifetime) {
  if (lifetime == 0) throw ParameterError("plan lifetime must be >= 1");
  if (routes.size() != game.route_count()) {
    throw DimensionError("route catalog does not match the game");
  }
  if (kind == DefenderKind::cached_shortest) {
    // Cached for the whole experiment regardless of `lifetime`.
    return cached_shortest_defender(routes);
  }
  DefenderPolicy policy = kind == DefenderKind::irouting
                              ? irouting_defender(game)
                          : kind == DefenderKind::proportional
                              ? proportional_defender(game.defender())
                              : fewest_hops_defender(routes);
  policy.lifetime = lifetime;
  return policy;
}

}  // namespace mdg
