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

#include "mdg/game_model.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <utility>

#include "mdg/error.hpp"

namespace mdg {

SecurityProfile::SecurityProfile(std::vector<std::string> os_list,
                                 std::vector<MalwareSpec> malware,
                                 std::vector<ControlSpec> controls,
                                 Matrix efficacy)
    : os_list_(std::move(os_list)),
      malware_(std::move(malware)),
      controls_(std::move(controls)),
      efficacy_(std::move(efficacy)) {
  if (malware_.empty()) throw ConfigError("malware list must not be empty");
  if (os_list_.empty()) throw ConfigError("OS list must not be empty");

  std::set<std::string> seen;
  for (const auto& os : os_list_) {
    if (!seen.insert(os).second) {
      throw ConfigError(fmt::format("duplicate OS '{}'", os));
    }
  }
  seen.clear();
  for (const auto& m : malware_) {
    if (!seen.insert(m.id).second) {
      throw ConfigError(fmt::format("duplicate malware id '{}'", m.id));
    }
    if (!has_os(m.target_os)) {
      throw ConfigError(fmt::format("malware '{}' targets unknown OS '{}'",
                                    m.id, m.target_os));
    }
    if (!(m.damage >= 0.0) || !std::isfinite(m.damage)) {
      throw ConfigError(
          fmt::format("malware '{}' damage must be >= 0, got {}", m.id,
                      m.damage));
    }
    if (m.target_os != malware_.front().target_os) {
      throw ConfigError(fmt::format(
          "malware '{}' targets OS '{}' but '{}' targets '{}'; all malware of "
          "a game must target the requestor's OS",
          m.id, m.target_os, malware_.front().id,
          malware_.front().target_os));
    }
  }
  seen.clear();
  for (const auto& c : controls_) {
    if (!seen.insert(c.id).second) {
      throw ConfigError(fmt::format("duplicate control id '{}'", c.id));
    }
    if (!has_os(c.os)) {
      throw ConfigError(
          fmt::format("control '{}' references unknown OS '{}'", c.id, c.os));
    }
  }
  if (static_cast<std::size_t>(efficacy_.rows()) != malware_.size() ||
      static_cast<std::size_t>(efficacy_.cols()) != controls_.size()) {
    throw ConfigError(fmt::format(
        "efficacy table is {}x{}, expected {}x{} (malware x controls)",
        efficacy_.rows(), efficacy_.cols(), malware_.size(),
        controls_.size()));
  }
  for (Eigen::Index m = 0; m < efficacy_.rows(); ++m) {
    for (Eigen::Index a = 0; a < efficacy_.cols(); ++a) {
      const double d = efficacy_(m, a);
      if (!(d >= 0.0 && d < 1.0)) {
        throw ConfigError(fmt::format(
            "efficacy of control '{}' against malware '{}' must lie in [0, 1), "
            "got {}",
            controls_[a].id, malware_[m].id, d));
      }
    }
  }
}

double SecurityProfile::efficacy(std::size_t malware,
                                 std::size_t control) const {
  if (malware >= malware_.size() || control >= controls_.size()) {
    throw ConfigError(fmt::format(
        "no efficacy entry for (malware {}, control {})", malware, control));
  }
  return efficacy_(static_cast<Eigen::Index>(malware),
                   static_cast<Eigen::Index>(control));
}

std::optional<std::size_t> SecurityProfile::find_control(
    std::string_view id) const {
  for (std::size_t i = 0; i < controls_.size(); ++i) {
    if (controls_[i].id == id) return i;
  }
  return std::nullopt;
}

std::vector<std::size_t> SecurityProfile::controls_for_os(
    std::string_view os) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < controls_.size(); ++i) {
    if (controls_[i].os == os) out.push_back(i);
  }
  return out;
}

bool SecurityProfile::has_os(std::string_view os) const {
  return std::find(os_list_.begin(), os_list_.end(), os) != os_list_.end();
}

bool SecurityProfile::operator==(const SecurityProfile& other) const {
  return os_list_ == other.os_list_ && malware_ == other.malware_ &&
         controls_ == other.controls_ && efficacy_ == other.efficacy_;
}

void validate_device(const Device& device, const SecurityProfile& profile) {
  if (!profile.has_os(device.os)) {
    throw ConfigError(fmt::format("device '{}' runs unknown OS '{}'",
                                  device.id, device.os));
  }
  if (!(device.inspection_cost >= 0.0) ||
      !std::isfinite(device.inspection_cost)) {
    throw ConfigError(fmt::format("device '{}' inspection cost must be >= 0",
                                  device.id));
  }
  std::set<std::size_t> seen;
  for (std::size_t c : device.installed_controls) {
    if (c >= profile.control_count()) {
      throw ConfigError(
          fmt::format("device '{}' has unknown control #{}", device.id, c));
    }
    if (profile.controls()[c].os != device.os) {
      throw ConfigError(fmt::format(
          "device '{}' runs '{}' but has control '{}' for '{}'", device.id,
          device.os, profile.controls()[c].id, profile.controls()[c].os));
    }
    if (!seen.insert(c).second) {
      throw ConfigError(fmt::format("device '{}' lists control '{}' twice",
                                    device.id, profile.controls()[c].id));
    }
  }
}

double device_failure_probability(const Device& device, std::size_t malware,
                                  const SecurityProfile& profile) {
  double p = 1.0;
  for (std::size_t c : device.installed_controls) {
    p *= 1.0 - profile.efficacy(malware, c);
  }
  return p;
}

std::vector<double> device_failure_vector(const Device& device,
                                          const SecurityProfile& profile) {
  std::vector<double> out(profile.malware_count());
  for (std::size_t m = 0; m < out.size(); ++m) {
    out[m] = device_failure_probability(device, m, profile);
  }
  return out;
}

double Route::total_cost() const {
  return std::accumulate(relay_costs.begin(), relay_costs.end(), 0.0);
}

Route make_route(std::size_t index, std::vector<std::string> relay_ids,
                 std::vector<double> relay_costs,
                 std::vector<std::vector<double>> relay_failures,
                 std::size_t malware_count) {
  if (relay_costs.size() != relay_ids.size() ||
      relay_failures.size() != relay_ids.size()) {
    throw DimensionError("route relay ids, costs and failures differ in size");
  }
  std::set<std::string> distinct(relay_ids.begin(), relay_ids.end());
  if (distinct.size() != relay_ids.size()) {
    throw ParameterError("route relays must be distinct");
  }
  Route route;
  route.index = index;
  route.failure_vector.assign(malware_count, 1.0);
  for (std::size_t i = 0; i < relay_failures.size(); ++i) {
    const auto& row = relay_failures[i];
    if (row.size() != malware_count) {
      throw DimensionError(fmt::format(
          "relay '{}' has {} failure entries, expected {}", relay_ids[i],
          row.size(), malware_count));
    }
    for (std::size_t m = 0; m < malware_count; ++m) {
      if (!(row[m] >= 0.0 && row[m] <= 1.0)) {
        throw ParameterError(fmt::format(
            "relay '{}' failure probability {} outside [0, 1]", relay_ids[i],
            row[m]));
      }
      route.failure_vector[m] *= row[m];
    }
    if (!(relay_costs[i] >= 0.0)) {
      throw ParameterError(
          fmt::format("relay '{}' has negative cost", relay_ids[i]));
    }
  }
  route.relay_ids = std::move(relay_ids);
  route.relay_costs = std::move(relay_costs);
  route.relay_failures = std::move(relay_failures);
  return route;
}

Route make_route(std::size_t index, std::span<const Device> relays,
                 const SecurityProfile& profile) {
  std::vector<std::string> ids;
  std::vector<double> costs;
  std::vector<std::vector<double>> failures;
  for (const Device& d : relays) {
    ids.push_back(d.id);
    costs.push_back(d.inspection_cost);
    failures.push_back(device_failure_vector(d, profile));
  }
  return make_route(index, std::move(ids), std::move(costs),
                    std::move(failures), profile.malware_count());
}

double route_failure_probability(const Route& route, std::size_t malware) {
  double p = 1.0;
  for (const auto& relay : route.relay_failures) p *= relay.at(malware);
  return p;
}

void validate_weights(const Weights& weights) {
  auto in_unit = [](double w) { return w >= 0.0 && w <= 1.0; };
  if (!in_unit(weights.security) || !in_unit(weights.cost)) {
    throw ParameterError(fmt::format("weights must lie in [0, 1], got ({}, {})",
                                     weights.security, weights.cost));
  }
}

double defender_payoff(const Route& route, std::size_t malware,
                       const SecurityProfile& profile,
                       const Weights& weights) {
  const double loss = weights.security *
                      route_failure_probability(route, malware) *
                      profile.malware().at(malware).damage;
  return -loss - weights.cost * route.total_cost();
}

std::string_view to_string(GameMode mode) {
  switch (mode) {
    case GameMode::zero_sum:
      return "zero_sum";
    case GameMode::scaled:
      return "scaled";
    case GameMode::arbitrary:
      return "arbitrary";
  }
  return "?";
}

GameMode game_mode_from_string(std::string_view name) {
  if (name == "zero_sum") return GameMode::zero_sum;
  if (name == "scaled") return GameMode::scaled;
  if (name == "arbitrary") return GameMode::arbitrary;
  throw ConfigError(fmt::format(
      "unknown game mode '{}' (expected zero_sum, scaled or arbitrary)", name));
}

GameInstance GameInstance::from_components(Matrix security_loss,
                                           Vector route_costs, GameMode mode,
                                           double scaling, Weights weights) {
  if (mode == GameMode::arbitrary) {
    throw ParameterError("arbitrary games are built from explicit matrices");
  }
  if (security_loss.rows() == 0) throw NoRouteError("game has no routes");
  if (security_loss.cols() == 0) throw ParameterError("game has no malware");
  if (route_costs.size() != security_loss.rows()) {
    throw DimensionError("route cost vector does not match route count");
  }
  if (mode == GameMode::scaled && !(scaling > 0.0)) {
    throw ParameterError(
        fmt::format("scaling must be > 0 for the scaled game, got {}", scaling));
  }
  GameInstance g;
  g.defender_ = -security_loss;
  g.defender_.colwise() -= route_costs;
  g.attacker_ = mode == GameMode::zero_sum ? Matrix(-g.defender_)
                                           : Matrix(scaling * security_loss);
  g.security_loss_ = std::move(security_loss);
  g.route_costs_ = std::move(route_costs);
  g.weights_ = weights;
  g.scaling_ = mode == GameMode::scaled ? scaling : 1.0;
  g.mode_ = mode;
  return g;
}

GameInstance GameInstance::from_matrices(Matrix defender, Matrix attacker) {
  if (defender.rows() == 0 || defender.cols() == 0) {
    throw DimensionError("payoff matrices must be non-empty");
  }
  if (defender.rows() != attacker.rows() ||
      defender.cols() != attacker.cols()) {
    throw DimensionError(
        fmt::format("defender matrix is {}x{} but attacker matrix is {}x{}",
                    defender.rows(), defender.cols(), attacker.rows(),
                    attacker.cols()));
  }
  GameInstance g;
  g.security_loss_ = -defender;
  g.route_costs_ = Vector::Zero(defender.rows());
  g.defender_ = std::move(defender);
  g.attacker_ = std::move(attacker);
  g.mode_ = GameMode::arbitrary;
  return g;
}

GameInstance GameInstance::with_mode(GameMode mode, double scaling) const {
  if (mode_ == GameMode::arbitrary) {
    throw ParameterError("arbitrary games have no S/C decomposition");
  }
  return from_components(security_loss_, route_costs_, mode, scaling,
                         weights_);
}

GameInstance build_game(std::span<const Route> routes,
                        const SecurityProfile& profile, const Weights& weights,
                        double scaling, GameMode mode) {
  if (routes.empty()) throw NoRouteError("cannot build a game without routes");
  validate_weights(weights);
  const auto rows = static_cast<Eigen::Index>(routes.size());
  const auto cols = static_cast<Eigen::Index>(profile.malware_count());
  Matrix loss(rows, cols);
  Vector costs(rows);
  for (Eigen::Index j = 0; j < rows; ++j) {
    const Route& r = routes[static_cast<std::size_t>(j)];
    costs(j) = weights.cost * r.total_cost();
    for (Eigen::Index l = 0; l < cols; ++l) {
      loss(j, l) = weights.security *
                   route_failure_probability(r, static_cast<std::size_t>(l)) *
                   profile.malware()[static_cast<std::size_t>(l)].damage;
    }
  }
  return GameInstance::from_components(std::move(loss), std::move(costs), mode,
                                       scaling, weights);
}

MixedStrategy::MixedStrategy(std::vector<double> probs)
    : probs_(std::move(probs)) {
  if (probs_.empty()) throw DimensionError("mixed strategy must be non-empty");
  double sum = 0.0;
  for (double p : probs_) {
    if (!(p >= 0.0) || !std::isfinite(p)) {
      throw DimensionError(
          fmt::format("mixed strategy has invalid entry {}", p));
    }
    sum += p;
  }
  if (std::abs(sum - 1.0) > kSumTolerance) {
    throw DimensionError(
        fmt::format("mixed strategy sums to {}, expected 1", sum));
  }
}

MixedStrategy MixedStrategy::pure(std::size_t size, std::size_t index) {
  if (index >= size) throw DimensionError("pure strategy index out of range");
  std::vector<double> p(size, 0.0);
  p[index] = 1.0;
  return MixedStrategy(std::move(p));
}

MixedStrategy MixedStrategy::uniform(std::size_t size) {
  if (size == 0) throw DimensionError("uniform strategy over an empty set");
  return MixedStrategy(
      std::vector<double>(size, 1.0 / static_cast<double>(size)));
}

std::vector<std::size_t> MixedStrategy::support() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < probs_.size(); ++i) {
    if (probs_[i] > 0.0) out.push_back(i);
  }
  return out;
}

namespace {

void check_dimensions(const GameInstance& game, const MixedStrategy& rho,
                      const MixedStrategy& mu) {
  if (rho.size() != game.route_count() || mu.size() != game.malware_count()) {
    throw DimensionError(fmt::format(
        "strategy sizes ({}, {}) do not match a {}x{} game", rho.size(),
        mu.size(), game.route_count(), game.malware_count()));
  }
}

}  // namespace

double expected_utility(const GameInstance& game, const MixedStrategy& rho,
                        const MixedStrategy& mu, Player who) {
  check_dimensions(game, rho, mu);
  return rho.vector().dot(game.payoff(who) * mu.vector());
}

DefenderBreakdown defender_breakdown(const GameInstance& game,
                                     const MixedStrategy& rho,
                                     const MixedStrategy& mu) {
  check_dimensions(game, rho, mu);
  DefenderBreakdown out;
  out.security_loss = rho.vector().dot(game.security_loss() * mu.vector());
  out.inspection_cost = rho.vector().dot(game.route_costs());
  out.total = -(out.security_loss + out.inspection_cost);
  return out;
}

}  // namespace mdg
