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

#include "mdg/topology.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>

#include "mdg/error.hpp"
#include "mdg/rng.hpp"

namespace mdg {

void validate_cluster_params(const ClusterParams& params) {
  if (params.device_count < 2) {
    throw ConfigError("a cluster needs at least 2 devices");
  }
  if (!(params.width > 0.0) || !(params.height > 0.0)) {
    throw ConfigError("deployment area must have positive width and height");
  }
  if (!(params.range > 0.0)) {
    throw ConfigError("transmission range must be positive");
  }
  if (!(params.cost_min >= 0.0) || !(params.cost_max >= params.cost_min)) {
    throw ConfigError("inspection cost range must satisfy 0 <= min <= max");
  }
  if (params.min_controls > params.max_controls) {
    throw ConfigError("min_controls exceeds max_controls");
  }
  if (params.cluster_head && *params.cluster_head >= params.device_count) {
    throw ConfigError("pinned cluster-head index is out of range");
  }
  if (params.max_attempts == 0) {
    throw ConfigError("max_attempts must be >= 1");
  }
}

bool ClusterTopology::adjacent(std::size_t a, std::size_t b) const {
  const auto& n = neighbors.at(a);
  return std::binary_search(n.begin(), n.end(), b);
}

std::size_t ClusterTopology::edge_count() const {
  std::size_t degree_sum = 0;
  for (const auto& n : neighbors) degree_sum += n.size();
  return degree_sum / 2;
}

std::vector<std::vector<std::size_t>> neighbors_within_range(
    const std::vector<Device>& devices, double range) {
  std::vector<std::vector<std::size_t>> out(devices.size());
  for (std::size_t i = 0; i < devices.size(); ++i) {
    for (std::size_t j = i + 1; j < devices.size(); ++j) {
      const double dx = devices[i].x - devices[j].x;
      const double dy = devices[i].y - devices[j].y;
      if (std::hypot(dx, dy) <= range) {
        out[i].push_back(j);
        out[j].push_back(i);
      }
    }
  }
  for (auto& n : out) std::sort(n.begin(), n.end());
  return out;
}

std::vector<std::vector<std::size_t>> neighbors_from_edges(
    std::size_t device_count,
    const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
  std::vector<std::vector<std::size_t>> out(device_count);
  for (auto [a, b] : edges) {
    if (a >= device_count || b >= device_count) {
      throw ConfigError(fmt::format("edge ({}, {}) references a missing device",
                                    a, b));
    }
    if (a == b) throw ConfigError("self-loops are not allowed");
    out[a].push_back(b);
    out[b].push_back(a);
  }
  for (auto& n : out) {
    std::sort(n.begin(), n.end());
    n.erase(std::unique(n.begin(), n.end()), n.end());
  }
  return out;
}

std::optional<std::size_t> shortest_hops(const ClusterTopology& topology) {
  const std::size_t n = topology.devices.size();
  std::vector<std::size_t> dist(n, n + 1);
  std::deque<std::size_t> queue{topology.cluster_head};
  dist[topology.cluster_head] = 0;
  while (!queue.empty()) {
    const std::size_t u = queue.front();
    queue.pop_front();
    if (u == topology.requestor) return dist[u];
    for (std::size_t v : topology.neighbors[u]) {
      if (dist[v] > n) {
        dist[v] = dist[u] + 1;
        queue.push_back(v);
      }
    }
  }
  return std::nullopt;
}

void validate_topology(const ClusterTopology& topology,
                       const SecurityProfile& profile) {
  const std::size_t n = topology.devices.size();
  if (n < 2) throw ConfigError("topology needs at least 2 devices");
  if (topology.neighbors.size() != n) {
    throw ConfigError("adjacency does not cover every device");
  }
  if (topology.cluster_head >= n || topology.requestor >= n) {
    throw ConfigError("cluster-head or requestor index out of range");
  }
  if (topology.cluster_head == topology.requestor) {
    throw ConfigError("cluster-head and requestor must differ");
  }
  std::vector<std::string> ids;
  for (const auto& d : topology.devices) {
    validate_device(d, profile);
    ids.push_back(d.id);
  }
  std::sort(ids.begin(), ids.end());
  if (std::adjacent_find(ids.begin(), ids.end()) != ids.end()) {
    throw ConfigError("device ids must be unique");
  }
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b : topology.neighbors[a]) {
      if (b >= n || b == a || !topology.adjacent(b, a)) {
        throw ConfigError(fmt::format(
            "adjacency must be symmetric and irreflexive (edge {}-{})", a, b));
      }
    }
  }
  if (topology.devices[topology.requestor].os != profile.target_os()) {
    throw ConfigError(fmt::format(
        "requestor '{}' runs '{}' but the malware targets '{}'",
        topology.devices[topology.requestor].id,
        topology.devices[topology.requestor].os, profile.target_os()));
  }
  if (!shortest_hops(topology)) {
    throw NoRouteError("cluster-head and requestor are not connected");
  }
}

ClusterTopology generate_cluster(std::uint64_t seed,
                                 const ClusterParams& params,
                                 const SecurityProfile& profile) {
  validate_cluster_params(params);
  Rng rng(seed);
  const std::size_t n = params.device_count;
  std::size_t no_target_os = 0;
  for (std::size_t attempt = 0; attempt < params.max_attempts; ++attempt) {
    ClusterTopology t;
    t.width = params.width;
    t.height = params.height;
    t.range = params.range;
    t.devices.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      Device& d = t.devices[i];
      d.id = fmt::format("s{}", i);
      d.x = rng.uniform(0.0, params.width);
      d.y = rng.uniform(0.0, params.height);
      d.os = profile.os_list()[rng.index(profile.os_list().size())];
      std::vector<std::size_t> pool = profile.controls_for_os(d.os);
      const std::size_t hi = std::min(params.max_controls, pool.size());
      const std::size_t lo = std::min(params.min_controls, hi);
      const std::size_t k = lo + rng.index(hi - lo + 1);
      for (std::size_t c = 0; c < k; ++c) {
        std::swap(pool[c], pool[c + rng.index(pool.size() - c)]);
      }
      d.installed_controls.assign(pool.begin(), pool.begin() + k);
      std::sort(d.installed_controls.begin(), d.installed_controls.end());
      d.inspection_cost = rng.uniform(params.cost_min, params.cost_max);
    }
    t.neighbors = neighbors_within_range(t.devices, params.range);
    t.cluster_head = params.cluster_head ? *params.cluster_head : rng.index(n);

    std::vector<std::size_t> candidates;
    for (std::size_t i = 0; i < n; ++i) {
      if (i != t.cluster_head && t.devices[i].os == profile.target_os()) {
        candidates.push_back(i);
      }
    }
    if (candidates.empty()) {
      ++no_target_os;
      continue;
    }
    t.requestor = candidates[rng.index(candidates.size())];
    if (shortest_hops(t)) return t;
  }
  throw GenerationError(fmt::format(
      "no connected cluster after {} attempts (N={}, area {}x{} m, range {} "
      "m, {} attempts without a '{}' requestor)",
      params.max_attempts, n, params.width, params.height, params.range,
      no_target_os, profile.target_os()));
}

RouteCatalog enumerate_routes(const ClusterTopology& topology,
                              const SecurityProfile& profile,
                              const DiscoveryParams& params) {
  if (params.max_hops == 0 || params.max_routes == 0) {
    throw ParameterError("discovery bounds must be >= 1");
  }
  const std::size_t n = topology.devices.size();
  if (topology.neighbors.size() != n || topology.cluster_head >= n ||
      topology.requestor >= n || topology.cluster_head == topology.requestor) {
    throw ConfigError("invalid topology");
  }

  auto less = [&](const std::vector<std::size_t>& a,
                  const std::vector<std::size_t>& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return std::lexicographical_compare(
        a.begin(), a.end(), b.begin(), b.end(),
        [&](std::size_t x, std::size_t y) {
          return topology.devices[x].id < topology.devices[y].id;
        });
  };

  // Keep the buffer bounded: the max_routes smallest paths in canonical
  // order survive any intermediate truncation.
  std::vector<std::vector<std::size_t>> found;
  const std::size_t flush_at = std::max<std::size_t>(4 * params.max_routes,
                                                     4096);
  auto flush = [&] {
    std::sort(found.begin(), found.end(), less);
    if (found.size() > params.max_routes) found.resize(params.max_routes);
  };

  std::vector<std::size_t> path{topology.cluster_head};
  std::vector<bool> on_path(n, false);
  on_path[topology.cluster_head] = true;
  // Iterative DFS: stack of next-neighbour cursors.
  std::vector<std::size_t> cursor{0};
  while (!cursor.empty()) {
    const std::size_t u = path.back();
    std::size_t& next = cursor.back();
    const auto& adj = topology.neighbors[u];
    if (next >= adj.size() || path.size() - 1 >= params.max_hops) {
      on_path[u] = false;
      path.pop_back();
      cursor.pop_back();
      continue;
    }
    const std::size_t v = adj[next++];
    if (on_path[v]) continue;
    if (v == topology.requestor) {
      found.push_back(path);
      found.back().push_back(v);
      if (found.size() >= flush_at) flush();
      continue;
    }
    path.push_back(v);
    on_path[v] = true;
    cursor.push_back(0);
  }
  flush();
  if (found.empty()) {
    throw NoRouteError(fmt::format(
        "no route from '{}' to '{}' within {} hops",
        topology.devices[topology.cluster_head].id,
        topology.devices[topology.requestor].id, params.max_hops));
  }

  RouteCatalog catalog;
  catalog.params = params;
  for (std::size_t j = 0; j < found.size(); ++j) {
    std::vector<Device> relays;
    for (std::size_t k = 1; k + 1 < found[j].size(); ++k) {
      relays.push_back(topology.devices[found[j][k]]);
    }
    catalog.routes.push_back(make_route(j, relays, profile));
  }
  return catalog;
}

}  // namespace mdg
