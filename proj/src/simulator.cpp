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

#include "mdg/simulator.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <thread>
#include <utility>

#include "mdg/error.hpp"

namespace mdg {

namespace {

constexpr std::uint64_t kTopologyStream = 0x746f706fULL;
constexpr std::uint64_t kSessionStream = 0x73657373ULL;

// Running mean and variance (Welford).
struct Moments {
  std::size_t n = 0;
  double mean = 0.0;
  double m2 = 0.0;

  void add(double x) {
    ++n;
    const double delta = x - mean;
    mean += delta / static_cast<double>(n);
    m2 += delta * (x - mean);
  }
  double sample_sd() const {
    return n > 1 ? std::sqrt(m2 / static_cast<double>(n - 1)) : 0.0;
  }
};

}  // namespace

SessionOutcome run_session(const DefenderPolicy& policy,
                           const AttackerProfile& attacker,
                           const RouteCatalog& catalog,
                           const GameInstance& game, Rng& rng) {
  if (policy.plan.size() != catalog.routes.size() ||
      policy.plan.size() != game.route_count() ||
      attacker.plan.size() != game.malware_count()) {
    throw DimensionError("plans do not match the route catalog and game");
  }
  SessionOutcome out;
  out.malware_index = rng.sample(attacker.plan.probs());
  out.route_index = rng.sample(policy.plan.probs());
  const Route& route = catalog.routes[out.route_index];
  for (std::size_t i = 0; i < route.relay_ids.size(); ++i) {
    ++out.inspected_count;
    const double miss = route.relay_failures[i].at(out.malware_index);
    if (rng.uniform() < 1.0 - miss) {
      out.detected = true;
      out.detector = route.relay_ids[i];
      out.blacklist_event = true;
      break;
    }
  }
  const auto j = static_cast<Eigen::Index>(out.route_index);
  const auto l = static_cast<Eigen::Index>(out.malware_index);
  out.realized_defender_payoff = game.defender()(j, l);
  out.security_loss = game.security_loss()(j, l);
  out.inspection_cost = game.route_costs()(j);
  return out;
}

std::uint64_t topology_seed(std::uint64_t seed, std::size_t case_index,
                            std::size_t topology_index) {
  return Rng::derive_seed(seed, {kTopologyStream, case_index, topology_index});
}

Scenario build_scenario(const CampaignConfig& config, ClusterTopology topology,
                        std::uint64_t seed) {
  validate_topology(topology, config.profile);
  DiscoveryParams discovery = config.discovery;
  if (config.relax_hop_bound) {
    discovery.max_hops = std::max(discovery.max_hops, *shortest_hops(topology));
  }
  RouteCatalog catalog = enumerate_routes(topology, config.profile, discovery);
  GameInstance game = build_game(catalog.routes, config.profile,
                                 config.weights, config.scaling, config.mode);
  return Scenario{0, 0, seed, std::move(topology), std::move(catalog),
                  std::move(game)};
}

Scenario build_scenario(const CampaignConfig& config, std::size_t case_index,
                        std::size_t topology_index) {
  const std::uint64_t seed =
      topology_seed(config.seed, case_index, topology_index);
  Scenario s = build_scenario(
      config, generate_cluster(seed, config.cluster, config.profile), seed);
  s.case_index = case_index;
  s.topology_index = topology_index;
  return s;
}

ExperimentReport run_experiment(const CampaignConfig& config,
                                const Scenario& scenario, DefenderKind policy,
                                AttackerKind attacker, bool keep_sessions) {
  const GameInstance& game = scenario.game;
  const auto& routes = scenario.catalog.routes;
  const AttackerProfile attack = make_attacker(attacker, game);
  DefenderPolicy plan =
      make_defender(policy, game, routes, config.plan_lifetime);

  ExperimentReport report;
  report.case_index = scenario.case_index;
  report.case_label = scenario.case_index < config.cases.size()
                          ? config.cases[scenario.case_index]
                          : std::to_string(scenario.case_index);
  report.topology_index = scenario.topology_index;
  report.topology_seed = scenario.topology_seed;
  report.policy = policy;
  report.attacker = attacker;
  report.replies = config.replies;
  report.route_count = routes.size();
  report.max_hops = scenario.catalog.params.max_hops;
  report.delivery_plan = plan.plan.probs();
  report.attack_plan = attack.plan.probs();
  report.expected_defender_utility =
      expected_utility(game, plan.plan, attack.plan, Player::defender);
  report.plan_computations = 1;
  report.route_frequencies.assign(routes.size(), 0.0);
  report.malware_frequencies.assign(game.malware_count(), 0.0);

  Moments utility;
  double loss_sum = 0.0;
  double cost_sum = 0.0;
  for (std::size_t s = 0; s < config.replies; ++s) {
    if (s > 0 && s % plan.lifetime == 0) {
      plan = make_defender(policy, game, routes, config.plan_lifetime);
      ++report.plan_computations;
    }
    Rng rng = Rng::derive(
        config.seed, {kSessionStream, scenario.case_index,
                      scenario.topology_index,
                      static_cast<std::uint64_t>(attacker), s});
    SessionOutcome o = run_session(plan, attack, scenario.catalog, game, rng);
    utility.add(o.realized_defender_payoff);
    loss_sum += o.security_loss;
    cost_sum += o.inspection_cost;
    report.route_frequencies[o.route_index] += 1.0;
    report.malware_frequencies[o.malware_index] += 1.0;
    if (o.detected) ++report.detections;
    if (o.blacklist_event) ++report.blacklist_count;
    if (keep_sessions) report.sessions.push_back(std::move(o));
  }

  if (config.replies == 0) {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    report.mean_defender_utility = nan;
    report.mean_security_loss = nan;
    report.mean_inspection_cost = nan;
    report.sd_defender_utility = nan;
    return report;
  }
  const auto n = static_cast<double>(config.replies);
  report.detection_rate = static_cast<double>(report.detections) / n;
  report.mean_defender_utility = utility.mean;
  report.sd_defender_utility = utility.sample_sd();
  report.mean_security_loss = loss_sum / n;
  report.mean_inspection_cost = cost_sum / n;
  for (double& f : report.route_frequencies) f /= n;
  for (double& f : report.malware_frequencies) f /= n;
  return report;
}

ExperimentReport run_experiment(const CampaignConfig& config,
                                std::size_t case_index,
                                std::size_t topology_index,
                                DefenderKind policy, AttackerKind attacker,
                                bool keep_sessions) {
  validate_config(config);
  const Scenario scenario = build_scenario(config, case_index, topology_index);
  return run_experiment(config, scenario, policy, attacker, keep_sessions);
}

CampaignRow summarize(const ExperimentReport& report) {
  CampaignRow row;
  row.case_label = report.case_label;
  row.case_index = report.case_index;
  row.topology_index = report.topology_index;
  row.seed = report.topology_seed;
  row.policy = report.policy;
  row.attacker = report.attacker;
  row.replies = report.replies;
  row.detection_rate = report.detection_rate;
  row.mean_defender_utility = report.mean_defender_utility;
  row.mean_security_loss = report.mean_security_loss;
  row.mean_inspection_cost = report.mean_inspection_cost;
  row.blacklist_count = report.blacklist_count;
  row.sd_defender_utility = report.sd_defender_utility;
  if (report.replies > 1 && report.detection_rate) {
    const double p = *report.detection_rate;
    const auto n = static_cast<double>(report.replies);
    row.sd_detection = std::sqrt(p * (1.0 - p) * n / (n - 1.0));
  }
  row.expected_defender_utility = report.expected_defender_utility;
  row.route_count = report.route_count;
  return row;
}

CampaignTable aggregate_campaign(const CampaignConfig& config) {
  validate_config(config);
  const std::size_t cells = config.cases.size() * config.topology_count;

  struct CellResult {
    std::vector<ExperimentReport> reports;
    std::optional<std::string> error;
  };
  std::vector<CellResult> results(cells);

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t cell = next++; cell < cells; cell = next++) {
      const std::size_t c = cell / config.topology_count;
      const std::size_t t = cell % config.topology_count;
      CellResult& out = results[cell];
      try {
        const Scenario scenario = build_scenario(config, c, t);
        for (DefenderKind p : config.policies) {
          for (AttackerKind a : config.attackers) {
            out.reports.push_back(
                run_experiment(config, scenario, p, a, config.trace));
          }
        }
      } catch (const std::exception& e) {
        out.reports.clear();
        out.error = e.what();
      }
    }
  };

  std::size_t threads = config.threads;
  if (threads == 0) threads = std::max(1U, std::thread::hardware_concurrency());
  threads = std::min(threads, std::max<std::size_t>(cells, 1));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t i = 0; i < threads; ++i) pool.emplace_back(worker);
  }

  CampaignTable table;
  for (std::size_t cell = 0; cell < cells; ++cell) {
    const std::size_t c = cell / config.topology_count;
    const std::size_t t = cell % config.topology_count;
    CellResult& r = results[cell];
    if (r.error) {
      table.failures.push_back({config.cases[c], t, *r.error});
      continue;
    }
    for (auto& report : r.reports) {
      table.rows.push_back(summarize(report));
      if (config.trace) table.traces.push_back(std::move(report));
    }
  }
  return table;
}

}  // namespace mdg
