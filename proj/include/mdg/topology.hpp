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

// Random device-to-device clusters and bounded route discovery between the
// cluster-head and the requestor.

#ifndef MDG_TOPOLOGY_HPP_
#define MDG_TOPOLOGY_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "mdg/game_model.hpp"

namespace mdg {

struct ClusterParams {
  std::size_t device_count = 20;
  double width = 1000.0;   // metres
  double height = 1000.0;  // metres
  double range = 200.0;    // metres
  double cost_min = 0.1;
  double cost_max = 1.0;
  std::size_t min_controls = 1;
  std::size_t max_controls = 3;
  std::optional<std::size_t> cluster_head;  // pinned device index
  std::size_t max_attempts = 1000;

  bool operator==(const ClusterParams&) const = default;
};

void validate_cluster_params(const ClusterParams& params);

struct ClusterTopology {
  std::vector<Device> devices;
  // Sorted neighbour lists; symmetric and irreflexive.
  std::vector<std::vector<std::size_t>> neighbors;
  std::size_t cluster_head = 0;
  std::size_t requestor = 1;
  double width = 0.0;
  double height = 0.0;
  double range = 0.0;

  bool adjacent(std::size_t a, std::size_t b) const;
  std::size_t edge_count() const;

  bool operator==(const ClusterTopology&) const = default;
};

// Neighbour lists of devices within `range` of each other.
std::vector<std::vector<std::size_t>> neighbors_within_range(
    const std::vector<Device>& devices, double range);

// Neighbour lists from an explicit undirected edge list.
std::vector<std::vector<std::size_t>> neighbors_from_edges(
    std::size_t device_count,
    const std::vector<std::pair<std::size_t, std::size_t>>& edges);

// Hop count of the shortest cluster-head to requestor path, if any.
std::optional<std::size_t> shortest_hops(const ClusterTopology& topology);

// Throws ConfigError on malformed adjacency, identical endpoints, invalid
// devices or a requestor not running the malware's target OS, and
// NoRouteError when the endpoints are disconnected.
void validate_topology(const ClusterTopology& topology,
                       const SecurityProfile& profile);

// Uniform random deployment. Every device gets between min_controls and
// max_controls distinct controls for its OS and an inspection cost drawn
// from [cost_min, cost_max]. The requestor is a random device running the
// malware's target OS; the whole topology is resampled until it is
// connected to the cluster-head.
ClusterTopology generate_cluster(std::uint64_t seed,
                                 const ClusterParams& params,
                                 const SecurityProfile& profile);

struct DiscoveryParams {
  std::size_t max_hops = 6;
  std::size_t max_routes = 10;

  bool operator==(const DiscoveryParams&) const = default;
};

struct RouteCatalog {
  std::vector<Route> routes;
  DiscoveryParams params;
};

// Simple cluster-head to requestor paths with at most max_hops hops, ordered
// by hop count and then by relay id sequence, truncated to max_routes.
// Throws NoRouteError when nothing fits the bounds.
RouteCatalog enumerate_routes(const ClusterTopology& topology,
                              const SecurityProfile& profile,
                              const DiscoveryParams& params);

}  // namespace mdg

#endif  // MDG_TOPOLOGY_HPP_
