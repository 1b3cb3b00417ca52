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

// Malware Detection Game model: security profiles, devices, routes and the
// payoff matrices built from them.

#ifndef MDG_GAME_MODEL_HPP_
#define MDG_GAME_MODEL_HPP_

#include <Eigen/Dense>

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace mdg {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

struct MalwareSpec {
  std::string id;
  std::string target_os;
  double damage = 0.0;  // H(m), security loss on infection.

  bool operator==(const MalwareSpec&) const = default;
};

struct ControlSpec {
  std::string id;
  std::string os;

  bool operator==(const ControlSpec&) const = default;
};

// Malware catalogue, anti-malware controls and the detection efficacy of
// every control against every malware. Validated on construction:
//  - efficacy(m, a) lies in [0, 1);
//  - every malware and control names an OS from os_list;
//  - at least one malware, and all malware target the same OS.
class SecurityProfile {
 public:
  SecurityProfile(std::vector<std::string> os_list,
                  std::vector<MalwareSpec> malware,
                  std::vector<ControlSpec> controls, Matrix efficacy);

  const std::vector<std::string>& os_list() const { return os_list_; }
  const std::vector<MalwareSpec>& malware() const { return malware_; }
  const std::vector<ControlSpec>& controls() const { return controls_; }
  // Rows are malware, columns are controls.
  const Matrix& efficacy_matrix() const { return efficacy_; }

  std::size_t malware_count() const { return malware_.size(); }
  std::size_t control_count() const { return controls_.size(); }

  // Throws ConfigError for an index outside the efficacy table.
  double efficacy(std::size_t malware, std::size_t control) const;

  // OS targeted by every malware in the profile.
  const std::string& target_os() const { return malware_.front().target_os; }

  std::optional<std::size_t> find_control(std::string_view id) const;
  std::vector<std::size_t> controls_for_os(std::string_view os) const;
  bool has_os(std::string_view os) const;

  bool operator==(const SecurityProfile&) const;

 private:
  std::vector<std::string> os_list_;
  std::vector<MalwareSpec> malware_;
  std::vector<ControlSpec> controls_;
  Matrix efficacy_;
};

struct Device {
  std::string id;
  std::string os;
  std::vector<std::size_t> installed_controls;  // indices into controls()
  double inspection_cost = 0.0;                 // c(s)
  double x = 0.0;
  double y = 0.0;

  bool operator==(const Device&) const = default;
};

// Throws ConfigError if the device runs an unknown OS, carries a control
// for another OS, or has a negative inspection cost.
void validate_device(const Device& device, const SecurityProfile& profile);

// Probability that `device` fails to detect `malware`: the product of
// (1 - efficacy) over its installed controls, 1 with no controls.
double device_failure_probability(const Device& device, std::size_t malware,
                                  const SecurityProfile& profile);

// Failure probabilities of `device` against every malware of the profile.
std::vector<double> device_failure_vector(const Device& device,
                                          const SecurityProfile& profile);

// A relay path from the cluster-head to the requestor. Only intermediate
// devices inspect traffic, so a direct link has no relays and fails to
// detect anything.
struct Route {
  std::size_t index = 0;
  std::vector<std::string> relay_ids;                 // ordered, distinct
  std::vector<double> relay_costs;                    // c(s) per relay
  std::vector<std::vector<double>> relay_failures;    // p(s, .) per relay
  std::vector<double> failure_vector;                 // p(r, .) per malware

  std::size_t hop_count() const { return relay_ids.size() + 1; }
  double total_cost() const;
};

// Builds a route and its cached failure vector. `malware_count` fixes the
// vector length for relay-less routes.
Route make_route(std::size_t index, std::vector<std::string> relay_ids,
                 std::vector<double> relay_costs,
                 std::vector<std::vector<double>> relay_failures,
                 std::size_t malware_count);

Route make_route(std::size_t index, std::span<const Device> relays,
                 const SecurityProfile& profile);

// Product of the relay failure probabilities for one malware.
double route_failure_probability(const Route& route, std::size_t malware);

struct Weights {
  double security = 1.0;  // w_H
  double cost = 1.0;      // w_C

  bool operator==(const Weights&) const = default;
};

void validate_weights(const Weights& weights);

// -w_H p(r, m) H(m) - w_C sum of relay costs.
double defender_payoff(const Route& route, std::size_t malware,
                       const SecurityProfile& profile, const Weights& weights);

enum class GameMode { zero_sum, scaled, arbitrary };

std::string_view to_string(GameMode mode);
GameMode game_mode_from_string(std::string_view name);

enum class Player { defender, attacker };

// Bimatrix game over routes (rows) and malware (columns).
//
// For model-built games the defender matrix is -S - C, where S holds the
// weighted expected security loss and C the weighted per-route inspection
// cost. The zero-sum variant pays the attacker -U_d; the scaled variant
// pays Xi * S. Arbitrary games carry explicit matrices and treat -U_d as
// the security loss with zero cost.
class GameInstance {
 public:
  static GameInstance from_components(Matrix security_loss, Vector route_costs,
                                      GameMode mode, double scaling = 1.0,
                                      Weights weights = {});
  static GameInstance from_matrices(Matrix defender, Matrix attacker);

  // Same S and C under another mode.
  GameInstance with_mode(GameMode mode, double scaling = 1.0) const;

  const Matrix& defender() const { return defender_; }
  const Matrix& attacker() const { return attacker_; }
  const Matrix& payoff(Player who) const {
    return who == Player::defender ? defender_ : attacker_;
  }
  const Matrix& security_loss() const { return security_loss_; }
  const Vector& route_costs() const { return route_costs_; }
  const Weights& weights() const { return weights_; }
  double scaling() const { return scaling_; }
  GameMode mode() const { return mode_; }

  std::size_t route_count() const {
    return static_cast<std::size_t>(defender_.rows());
  }
  std::size_t malware_count() const {
    return static_cast<std::size_t>(defender_.cols());
  }

 private:
  GameInstance() = default;

  Matrix defender_;
  Matrix attacker_;
  Matrix security_loss_;
  Vector route_costs_;
  Weights weights_;
  double scaling_ = 1.0;
  GameMode mode_ = GameMode::arbitrary;
};

GameInstance build_game(std::span<const Route> routes,
                        const SecurityProfile& profile, const Weights& weights,
                        double scaling, GameMode mode);

// Probability distribution over a finite set of pure strategies.
class MixedStrategy {
 public:
  static constexpr double kSumTolerance = 1e-9;

  explicit MixedStrategy(std::vector<double> probs);

  static MixedStrategy pure(std::size_t size, std::size_t index);
  static MixedStrategy uniform(std::size_t size);

  std::size_t size() const { return probs_.size(); }
  double operator[](std::size_t i) const { return probs_[i]; }
  const std::vector<double>& probs() const { return probs_; }
  Eigen::Map<const Vector> vector() const {
    return {probs_.data(), static_cast<Eigen::Index>(probs_.size())};
  }

  // Indices carrying positive probability.
  std::vector<std::size_t> support() const;

  bool operator==(const MixedStrategy&) const = default;

 private:
  std::vector<double> probs_;
};

double expected_utility(const GameInstance& game, const MixedStrategy& rho,
                        const MixedStrategy& mu, Player who);

// Defender expected utility split into expected security loss and the
// inspection cost k(rho), which does not depend on the attacker.
struct DefenderBreakdown {
  double security_loss = 0.0;
  double inspection_cost = 0.0;
  double total = 0.0;  // -(security_loss + inspection_cost)
};

DefenderBreakdown defender_breakdown(const GameInstance& game,
                                     const MixedStrategy& rho,
                                     const MixedStrategy& mu);

}  // namespace mdg

#endif  // MDG_GAME_MODEL_HPP_
