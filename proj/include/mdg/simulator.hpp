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

// Reply-delivery sessions, single experiments and full campaigns.

#ifndef MDG_SIMULATOR_HPP_
#define MDG_SIMULATOR_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mdg/campaign_config.hpp"
#include "mdg/game_model.hpp"
#include "mdg/rng.hpp"
#include "mdg/strategies.hpp"
#include "mdg/topology.hpp"

namespace mdg {

struct SessionOutcome {
  std::size_t route_index = 0;
  std::size_t malware_index = 0;
  bool detected = false;
  std::optional<std::string> detector;  // relay that dropped the reply
  std::size_t inspected_count = 0;
  double realized_defender_payoff = 0.0;  // U_d(r*, m)
  double security_loss = 0.0;             // S(r*, m)
  double inspection_cost = 0.0;           // C(r*)
  bool blacklist_event = false;
};

// One reply: draws the malware from the attacker plan and the route from
// the delivery plan, then lets each relay inspect in order. The first relay
// to detect drops the reply and the sender is blacklisted.
SessionOutcome run_session(const DefenderPolicy& policy,
                           const AttackerProfile& attacker,
                           const RouteCatalog& catalog,
                           const GameInstance& game, Rng& rng);

// Topology, discovered routes and game for one (case, topology) cell.
struct Scenario {
  std::size_t case_index = 0;
  std::size_t topology_index = 0;
  std::uint64_t topology_seed = 0;
  ClusterTopology topology;
  RouteCatalog catalog;
  GameInstance game;
};

std::uint64_t topology_seed(std::uint64_t seed, std::size_t case_index,
                            std::size_t topology_index);

Scenario build_scenario(const CampaignConfig& config, std::size_t case_index,
                        std::size_t topology_index);

// Scenario on a caller-provided topology (e.g. one loaded from JSON).
Scenario build_scenario(const CampaignConfig& config, ClusterTopology topology,
                        std::uint64_t topology_seed);

struct ExperimentReport {
  std::string case_label;
  std::size_t case_index = 0;
  std::size_t topology_index = 0;
  std::uint64_t topology_seed = 0;
  DefenderKind policy = DefenderKind::irouting;
  AttackerKind attacker = AttackerKind::uniform;
  std::size_t replies = 0;
  std::size_t route_count = 0;
  std::size_t max_hops = 0;  // effective bound after relaxation

  std::vector<double> delivery_plan;
  std::vector<double> attack_plan;
  double expected_defender_utility = 0.0;  // U_d(plan, attack plan)

  std::size_t detections = 0;
  std::size_t blacklist_count = 0;
  std::optional<double> detection_rate;  // empty when replies == 0
  double mean_defender_utility = 0.0;
  double mean_security_loss = 0.0;
  double mean_inspection_cost = 0.0;
  double sd_defender_utility = 0.0;  // sample standard deviation
  std::vector<double> route_frequencies;
  std::vector<double> malware_frequencies;
  std::size_t plan_computations = 0;

  std::vector<SessionOutcome> sessions;  // only when requested
};

// Runs `config.replies` sessions of one policy against one attacker on a
// scenario. Sessions use independent sub-streams keyed by (seed, case,
// topology, attacker, session), shared across policies.
ExperimentReport run_experiment(const CampaignConfig& config,
                                const Scenario& scenario, DefenderKind policy,
                                AttackerKind attacker,
                                bool keep_sessions = false);

// Builds the scenario for (case_index, topology_index) and runs it.
ExperimentReport run_experiment(const CampaignConfig& config,
                                std::size_t case_index,
                                std::size_t topology_index,
                                DefenderKind policy, AttackerKind attacker,
                                bool keep_sessions = false);

struct CampaignRow {
  std::string case_label;
  std::size_t case_index = 0;
  std::size_t topology_index = 0;
  std::uint64_t seed = 0;  // topology seed of the cell
  DefenderKind policy = DefenderKind::irouting;
  AttackerKind attacker = AttackerKind::uniform;
  std::size_t replies = 0;
  std::optional<double> detection_rate;
  double mean_defender_utility = 0.0;
  double mean_security_loss = 0.0;
  double mean_inspection_cost = 0.0;
  std::size_t blacklist_count = 0;
  double sd_defender_utility = 0.0;
  double sd_detection = 0.0;
  double expected_defender_utility = 0.0;
  std::size_t route_count = 0;
};

CampaignRow summarize(const ExperimentReport& report);

struct CellFailure {
  std::string case_label;
  std::size_t topology_index = 0;
  std::string error;
};

struct CampaignTable {
  std::vector<CampaignRow> rows;  // case, topology, policy, attacker order
  std::vector<CellFailure> failures;
  std::vector<ExperimentReport> traces;  // only when config.trace is set
};

// Full cross product of cases x topologies x policies x attackers. Cells
// run on `config.threads` workers; results do not depend on the schedule.
// A failing cell is recorded and skipped.
CampaignTable aggregate_campaign(const CampaignConfig& config);

}  // namespace mdg

#endif  // MDG_SIMULATOR_HPP_
