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

// Experiment knobs shared by the simulator and the configuration layer.

#ifndef MDG_CAMPAIGN_CONFIG_HPP_
#define MDG_CAMPAIGN_CONFIG_HPP_

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "mdg/game_model.hpp"
#include "mdg/strategies.hpp"
#include "mdg/topology.hpp"

namespace mdg {

// Six malware against four controls on a single OS. The damages,
// efficacies and costs are illustrative placeholders, not measured data.
SecurityProfile illustrative_profile();

struct CampaignConfig {
  std::uint64_t seed = 1;
  ClusterParams cluster;
  DiscoveryParams discovery;
  // Extend max_hops to the shortest path when it exceeds the bound.
  bool relax_hop_bound = true;
  std::size_t replies = 1000;
  std::vector<std::string> cases{"10", "20", "40", "60", "120"};
  std::size_t topology_count = 10;
  SecurityProfile profile = illustrative_profile();
  Weights weights;
  double scaling = 1.0;
  GameMode mode = GameMode::scaled;
  std::vector<DefenderKind> policies{
      DefenderKind::irouting, DefenderKind::proportional,
      DefenderKind::fewest_hops, DefenderKind::cached_shortest};
  std::vector<AttackerKind> attackers{AttackerKind::nash, AttackerKind::uniform,
                                      AttackerKind::weighted};
  std::size_t plan_lifetime = kUnlimitedLifetime;
  std::size_t threads = 0;  // 0: hardware concurrency
  std::string out_dir = "results";
  bool trace = false;

  bool operator==(const CampaignConfig&) const = default;
};

// Throws ConfigError describing the first violated constraint.
void validate_config(const CampaignConfig& config);

}  // namespace mdg

#endif  // MDG_CAMPAIGN_CONFIG_HPP_
