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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "fixtures.hpp"
#include "mdg/error.hpp"
#include "mdg/game_model.hpp"

using namespace mdg;
using mdg::testing::make_profile;
using mdg::testing::mat;

namespace {

Device device(std::string id, std::vector<std::size_t> controls,
              double cost = 0.0) {
  return Device{std::move(id), "ios", std::move(controls), cost, 0.0, 0.0};
}

// Test-side bilinear form, written out as explicit sums.
double bilinear(const Matrix& m, const std::vector<double>& rho,
                const std::vector<double>& mu) {
  double total = 0.0;
  for (std::size_t j = 0; j < rho.size(); ++j) {
    for (std::size_t l = 0; l < mu.size(); ++l) {
      total += rho[j] * mu[l] *
               m(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(l));
    }
  }
  return total;
}

std::vector<double> random_simplex(std::mt19937_64& gen, std::size_t n) {
  std::exponential_distribution<double> e(1.0);
  std::vector<double> v(n);
  double s = 0.0;
  for (auto& x : v) s += (x = e(gen));
  for (auto& x : v) x /= s;
  return v;
}

}  // namespace

TEST_CASE("device failure probability") {
  const auto profile = make_profile({10.0}, {{0.9, 0.8, 0.0}});
  CHECK(device_failure_probability(device("s", {0, 1}), 0, profile) ==
        doctest::Approx(0.02).epsilon(1e-12));
  CHECK(device_failure_probability(device("s", {}), 0, profile) == 1.0);
  CHECK(device_failure_probability(device("s", {2}), 0, profile) == 1.0);
}

TEST_CASE("adding controls never raises the failure probability") {
  const auto profile = make_profile({1.0}, {{0.3, 0.0, 0.7}});
  const double base = device_failure_probability(device("s", {0}), 0, profile);
  CHECK(device_failure_probability(device("s", {0, 2}), 0, profile) < base);
  CHECK(device_failure_probability(device("s", {0, 1}), 0, profile) == base);
}

TEST_CASE("route failure probability") {
  const auto profile = make_profile({10.0}, {{0.5, 0.6}});
  const Device a = device("a", {0}), b = device("b", {1});
  std::vector<Device> one{a}, two{a, b};
  CHECK(route_failure_probability(make_route(0, one, profile), 0) ==
        device_failure_probability(a, 0, profile));
  CHECK(route_failure_probability(make_route(0, two, profile), 0) ==
        doctest::Approx(0.2).epsilon(1e-12));
  std::vector<Device> none;
  const Route direct = make_route(0, none, profile);
  CHECK(route_failure_probability(direct, 0) == 1.0);
  CHECK(direct.hop_count() == 1);
}

TEST_CASE("defender payoff") {
  const auto profile = make_profile({10.0}, {{0.5}});
  std::vector<Device> relay{device("a", {0}, 2.0)};
  const Route r = make_route(0, relay, profile);
  CHECK(defender_payoff(r, 0, profile, {}) == doctest::Approx(-7.0));
  CHECK(defender_payoff(r, 0, profile, {0.0, 0.0}) == 0.0);

  const Route sure = make_route(0, {"a", "b"}, {1.0, 1.0}, {{0.0}, {0.4}}, 1);
  CHECK(defender_payoff(sure, 0, profile, {}) == doctest::Approx(-2.0));
}

TEST_CASE("game modes on a one-route game") {
  const auto profile = make_profile({10.0}, {{0.5}});
  std::vector<Device> relay{device("a", {0}, 2.0)};
  std::vector<Route> routes{make_route(0, relay, profile)};

  const auto g0 = build_game(routes, profile, {}, 1.0, GameMode::zero_sum);
  CHECK(g0.defender()(0, 0) == doctest::Approx(-7.0));
  CHECK(g0.attacker()(0, 0) == doctest::Approx(7.0));

  const auto g = build_game(routes, profile, {}, 2.0, GameMode::scaled);
  CHECK(g.defender()(0, 0) == doctest::Approx(-7.0));
  CHECK(g.attacker()(0, 0) == doctest::Approx(10.0));

  CHECK_THROWS_AS(build_game(std::vector<Route>{}, profile, {}, 1.0,
                             GameMode::scaled),
                  NoRouteError);
}

TEST_CASE("toy game in arbitrary mode") {
  const auto g = mdg::testing::toy_game();
  CHECK(g.mode() == GameMode::arbitrary);
  const auto r = MixedStrategy::pure(2, 0), m = MixedStrategy::pure(2, 0);
  CHECK(expected_utility(g, r, m, Player::defender) == -3.0);
  CHECK(expected_utility(g, r, m, Player::attacker) == 1.0);
  const auto u = MixedStrategy::uniform(2);
  CHECK(expected_utility(g, u, u, Player::defender) == doctest::Approx(-2.5));
}

TEST_CASE("sign structure and exact zero-sum negation") {
  std::mt19937_64 gen(7);
  std::uniform_real_distribution<double> unit(0.0, 0.95);
  const auto profile = make_profile(
      {3.0, 8.0, 5.0}, {{0.1, 0.6}, {0.4, 0.2}, {0.7, 0.05}});
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<Route> routes;
    for (std::size_t r = 0; r < 4; ++r) {
      std::vector<std::string> ids;
      std::vector<double> costs;
      std::vector<std::vector<double>> fails;
      for (std::size_t k = 0; k < r; ++k) {
        ids.push_back("s" + std::to_string(k));
        costs.push_back(unit(gen));
        fails.push_back({unit(gen), unit(gen), unit(gen)});
      }
      routes.push_back(make_route(r, ids, costs, fails, 3));
    }
    const auto g0 = build_game(routes, profile, {}, 1.0, GameMode::zero_sum);
    const auto g = build_game(routes, profile, {}, 3.0, GameMode::scaled);
    CHECK((g0.defender() + g0.attacker()).cwiseAbs().maxCoeff() == 0.0);
    CHECK(g.defender().maxCoeff() <= 0.0);
    CHECK(g.attacker().minCoeff() >= 0.0);
  }
}

TEST_CASE("expected utility is bilinear") {
  std::mt19937_64 gen(11);
  std::uniform_real_distribution<double> u(-10.0, 0.0);
  for (int trial = 0; trial < 50; ++trial) {
    Matrix d(4, 3);
    for (Eigen::Index i = 0; i < d.size(); ++i) d.data()[i] = u(gen);
    const auto g = mdg::testing::zero_sum(d);
    const auto r1 = random_simplex(gen, 4), r2 = random_simplex(gen, 4);
    const auto mu = random_simplex(gen, 3);
    const double lambda = std::uniform_real_distribution<double>(0, 1)(gen);
    std::vector<double> mix(4);
    for (std::size_t i = 0; i < 4; ++i) {
      mix[i] = lambda * r1[i] + (1 - lambda) * r2[i];
    }
    const double lhs = expected_utility(g, MixedStrategy(mix), MixedStrategy(mu),
                                        Player::defender);
    const double rhs =
        lambda * expected_utility(g, MixedStrategy(r1), MixedStrategy(mu),
                                  Player::defender) +
        (1 - lambda) * expected_utility(g, MixedStrategy(r2),
                                        MixedStrategy(mu), Player::defender);
    CHECK(std::abs(lhs - rhs) <= 1e-12);
    CHECK(std::abs(lhs - bilinear(d, mix, mu)) <= 1e-12);
  }
}

TEST_CASE("breakdown splits security loss and inspection cost") {
  const auto g = GameInstance::from_components(mat({{4, 2}, {1, 6}}),
                                               Vector::Constant(2, 0.5),
                                               GameMode::scaled, 1.0);
  const auto b = defender_breakdown(g, MixedStrategy({0.25, 0.75}),
                                    MixedStrategy({0.5, 0.5}));
  CHECK(b.security_loss == doctest::Approx(0.25 * 3 + 0.75 * 3.5));
  CHECK(b.inspection_cost == doctest::Approx(0.5));
  CHECK(b.total == doctest::Approx(-(b.security_loss + b.inspection_cost)));
}

TEST_CASE("validation") {
  CHECK_THROWS_AS(make_profile({1.0}, {{1.0}}), ConfigError);
  CHECK_THROWS_AS(make_profile({-1.0}, {{0.5}}), ConfigError);
  CHECK_THROWS_AS(validate_weights({-1.0, 1.0}), ParameterError);
  CHECK_THROWS(MixedStrategy({0.5, 0.6}));
  CHECK_THROWS(MixedStrategy({1.5, -0.5}));
  CHECK_THROWS_AS(GameInstance::from_matrices(mat({{1, 2}}), mat({{1}})),
                  DimensionError);
  const auto profile = make_profile({1.0}, {{0.5}});
  Device foreign{"x", "android", {}, 0.0, 0.0, 0.0};
  CHECK_THROWS_AS(validate_device(foreign, profile), ConfigError);
}
