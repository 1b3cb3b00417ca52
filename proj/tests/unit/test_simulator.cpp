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

#include "fixtures.hpp"
#include "mdg/config_io.hpp"
#include "mdg/error.hpp"
#include "mdg/simulator.hpp"

using namespace mdg;

namespace {

// Head, relays r1..rk in a line, requestor; every relay runs control a1.
ClusterTopology chain(std::size_t relays, double cost = 0.5) {
  ClusterTopology t;
  const std::size_t n = relays + 2;
  t.devices.push_back(Device{"head", "ios", {}, 0.0, 0, 0});
  for (std::size_t i = 1; i <= relays; ++i) {
    t.devices.push_back(
        Device{"r" + std::to_string(i), "ios", {0}, cost, double(i), 0});
  }
  t.devices.push_back(Device{"rqs", "ios", {}, 0.0, double(n - 1), 0});
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (std::size_t i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
  t.neighbors = neighbors_from_edges(n, edges);
  t.cluster_head = 0;
  t.requestor = n - 1;
  t.width = t.height = 100;
  t.range = 1.5;
  return t;
}

// Diamond with a direct link: several routes of different quality.
ClusterTopology diamond() {
  ClusterTopology t;
  t.devices = {Device{"c", "ios", {}, 0.0, 0, 0},
               Device{"u", "ios", {0}, 0.4, 1, 1},
               Device{"v", "ios", {1}, 0.3, 1, -1},
               Device{"w", "ios", {0, 1}, 0.6, 2, 0},
               Device{"q", "ios", {}, 0.0, 3, 0}};
  t.neighbors =
      neighbors_from_edges(5, {{0, 1}, {0, 2}, {1, 3}, {2, 3}, {3, 4},
                               {1, 4}, {2, 4}, {1, 2}});
  t.cluster_head = 0;
  t.requestor = 4;
  t.width = t.height = 10;
  t.range = 2;
  return t;
}

CampaignConfig small_config() {
  CampaignConfig cfg;
  cfg.profile = mdg::testing::make_profile({8.0, 3.0},
                                           {{0.5, 0.2}, {0.1, 0.6}});
  cfg.cases = {"a"};
  cfg.topology_count = 1;
  return cfg;
}

}  // namespace

TEST_CASE("pinned two-relay route detects three replies in four") {
  CampaignConfig cfg;
  cfg.profile = mdg::testing::make_profile({10.0}, {{0.5}});
  cfg.replies = 100000;
  const Scenario sc = build_scenario(cfg, chain(2), cfg.seed);
  REQUIRE(sc.catalog.routes.size() == 1);
  CHECK(sc.catalog.routes[0].failure_vector[0] == doctest::Approx(0.25));
  const auto rep = run_experiment(cfg, sc, DefenderKind::irouting,
                                  AttackerKind::uniform);
  REQUIRE(rep.detection_rate);
  CHECK(std::abs(*rep.detection_rate - 0.75) <= 0.01);
  CHECK(rep.blacklist_count == rep.detections);
  CHECK(rep.mean_defender_utility == doctest::Approx(-(0.25 * 10 + 1.0)));
}

TEST_CASE("certain detection and direct links") {
  CampaignConfig cfg = small_config();
  cfg.replies = 500;
  const auto profile = cfg.profile;
  std::vector<Route> routes{
      make_route(0, {}, {}, {}, 2),
      make_route(1, {"x", "y"}, {1.0, 1.0}, {{0.3, 0.4}, {0.0, 0.0}}, 2)};
  RouteCatalog catalog{routes, {6, 10}};
  const auto game = build_game(routes, profile, {}, 1.0, GameMode::scaled);
  const AttackerProfile attacker{AttackerKind::uniform,
                                 MixedStrategy::uniform(2), false};
  Rng rng(5);
  for (int s = 0; s < 200; ++s) {
    const auto direct = run_session(
        {DefenderKind::irouting, MixedStrategy::pure(2, 0), kUnlimitedLifetime,
         false},
        attacker, catalog, game, rng);
    CHECK_FALSE(direct.detected);
    CHECK_FALSE(direct.detector.has_value());
    CHECK(direct.inspected_count == 0);
    const auto sure = run_session(
        {DefenderKind::irouting, MixedStrategy::pure(2, 1), kUnlimitedLifetime,
         false},
        attacker, catalog, game, rng);
    CHECK(sure.detected);
    CHECK(sure.blacklist_event);
    REQUIRE(sure.detector.has_value());
    CHECK((*sure.detector == "x" || *sure.detector == "y"));
    CHECK(sure.inspected_count <= 2);
    CHECK(sure.realized_defender_payoff ==
          game.defender()(1, static_cast<Eigen::Index>(sure.malware_index)));
  }
  CHECK_THROWS_AS(
      run_session({DefenderKind::irouting, MixedStrategy::uniform(3),
                   kUnlimitedLifetime, false},
                  attacker, catalog, game, rng),
      DimensionError);
}

TEST_CASE("mixed plans converge to their expectations") {
  CampaignConfig cfg = small_config();
  cfg.replies = 100000;
  const Scenario sc = build_scenario(cfg, diamond(), 17);
  REQUIRE(sc.catalog.routes.size() >= 4);
  const double range =
      sc.game.defender().maxCoeff() - sc.game.defender().minCoeff();
  for (auto policy : {DefenderKind::irouting, DefenderKind::proportional}) {
    for (auto attacker : {AttackerKind::uniform, AttackerKind::weighted,
                          AttackerKind::nash}) {
      const auto rep = run_experiment(cfg, sc, policy, attacker);
      CHECK(std::abs(rep.mean_defender_utility -
                     rep.expected_defender_utility) <= 0.02 * range);
      double tv = 0.0, total = 0.0;
      for (std::size_t j = 0; j < rep.route_frequencies.size(); ++j) {
        tv += std::abs(rep.route_frequencies[j] - rep.delivery_plan[j]);
        total += rep.route_frequencies[j];
      }
      CHECK(tv / 2 <= 0.02);
      CHECK(total == doctest::Approx(1.0));
      // Detection rate against the same plans, from the route failure table.
      double expected_detection = 0.0;
      for (std::size_t j = 0; j < rep.delivery_plan.size(); ++j) {
        for (std::size_t l = 0; l < rep.attack_plan.size(); ++l) {
          expected_detection += rep.delivery_plan[j] * rep.attack_plan[l] *
                                (1.0 - sc.catalog.routes[j].failure_vector[l]);
        }
      }
      CHECK(std::abs(*rep.detection_rate - expected_detection) <= 0.01);
      CHECK(rep.blacklist_count == rep.detections);
    }
  }
}

TEST_CASE("vacuous run") {
  CampaignConfig cfg = small_config();
  cfg.replies = 0;
  const Scenario sc = build_scenario(cfg, diamond(), 1);
  const auto rep = run_experiment(cfg, sc, DefenderKind::irouting,
                                  AttackerKind::nash);
  CHECK_FALSE(rep.detection_rate.has_value());
  CHECK(rep.detections == 0);
  CHECK(std::isnan(rep.mean_defender_utility));
  const auto csv = campaign_csv({summarize(rep)});
  CHECK(csv.find(",0,,,,,0\n") != std::string::npos);
}

TEST_CASE("plans are recomputed after their lifetime") {
  CampaignConfig cfg = small_config();
  cfg.replies = 10;
  cfg.plan_lifetime = 3;
  const Scenario sc = build_scenario(cfg, diamond(), 1);
  CHECK(run_experiment(cfg, sc, DefenderKind::irouting, AttackerKind::nash)
            .plan_computations == 4);
  CHECK(run_experiment(cfg, sc, DefenderKind::cached_shortest,
                       AttackerKind::nash)
            .plan_computations == 1);
}

TEST_CASE("experiments and campaigns are deterministic") {
  CampaignConfig cfg;
  cfg.replies = 200;
  cfg.topology_count = 3;
  cfg.cases = {"x", "y"};
  const auto a = run_experiment(cfg, 1, 2, DefenderKind::irouting,
                                AttackerKind::weighted, true);
  const auto b = run_experiment(cfg, 1, 2, DefenderKind::irouting,
                                AttackerKind::weighted, true);
  CHECK(session_trace_jsonl({a}) == session_trace_jsonl({b}));
  CHECK(a.mean_defender_utility == b.mean_defender_utility);

  cfg.threads = 1;
  const auto serial = campaign_csv(aggregate_campaign(cfg).rows);
  cfg.threads = 4;
  const auto parallel = campaign_csv(aggregate_campaign(cfg).rows);
  CHECK(serial == parallel);
}

TEST_CASE("campaign grid") {
  SUBCASE("one cell equals the experiment summary") {
    CampaignConfig cfg;
    cfg.replies = 300;
    cfg.cases = {"only"};
    cfg.topology_count = 1;
    cfg.policies = {DefenderKind::proportional};
    cfg.attackers = {AttackerKind::uniform};
    const auto table = aggregate_campaign(cfg);
    REQUIRE(table.rows.size() == 1);
    const auto rep = run_experiment(cfg, 0, 0, DefenderKind::proportional,
                                    AttackerKind::uniform);
    CHECK(campaign_csv(table.rows) == campaign_csv({summarize(rep)}));
  }
  SUBCASE("default grid has 600 rows and 50000 replies per pair") {
    CampaignConfig cfg;
    const auto table = aggregate_campaign(cfg);
    CHECK(table.failures.empty());
    CHECK(table.rows.size() == 600);
    std::map<std::pair<DefenderKind, AttackerKind>, std::size_t> replies;
    for (const auto& r : table.rows) replies[{r.policy, r.attacker}] += r.replies;
    CHECK(replies.size() == 12);
    for (const auto& [key, n] : replies) CHECK(n == 50000);
  }
  SUBCASE("changing the seed changes only seeds and stochastic outputs") {
    CampaignConfig cfg;
    cfg.replies = 50;
    cfg.topology_count = 2;
    cfg.cases = {"p", "q"};
    const auto t1 = aggregate_campaign(cfg);
    cfg.seed = 2;
    const auto t2 = aggregate_campaign(cfg);
    REQUIRE(t1.rows.size() == t2.rows.size());
    for (std::size_t i = 0; i < t1.rows.size(); ++i) {
      CHECK(t1.rows[i].case_label == t2.rows[i].case_label);
      CHECK(t1.rows[i].policy == t2.rows[i].policy);
      CHECK(t1.rows[i].attacker == t2.rows[i].attacker);
      CHECK(t1.rows[i].replies == t2.rows[i].replies);
      CHECK(t1.rows[i].seed != t2.rows[i].seed);
    }
  }
  SUBCASE("failed cells are recorded and the campaign continues") {
    CampaignConfig cfg;
    cfg.replies = 10;
    cfg.cases = {"c"};
    cfg.topology_count = 2;
    cfg.discovery.max_hops = 1;
    cfg.relax_hop_bound = false;
    const auto table = aggregate_campaign(cfg);
    CHECK(table.failures.size() + table.rows.size() / 12 == 2);
    for (const auto& f : table.failures) CHECK_FALSE(f.error.empty());
  }
}
