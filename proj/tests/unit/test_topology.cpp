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

#include <algorithm>
#include <random>
#include <set>

#include "fixtures.hpp"
#include "mdg/error.hpp"
#include "mdg/topology.hpp"

using namespace mdg;

namespace {

const SecurityProfile& profile() {
  static const SecurityProfile p =
      mdg::testing::make_profile({5.0, 2.0}, {{0.5, 0.2}, {0.1, 0.7}});
  return p;
}

// Devices "v0".."v{n-1}" with one control each; head 0, requestor n-1.
ClusterTopology graph(std::size_t n,
                      const std::vector<std::pair<std::size_t, std::size_t>>& edges,
                      std::vector<std::string> ids = {}) {
  ClusterTopology t;
  for (std::size_t i = 0; i < n; ++i) {
    t.devices.push_back(Device{ids.empty() ? "v" + std::to_string(i) : ids[i],
                               "ios", {i % 2}, 0.1 * double(i + 1), 0, 0});
  }
  t.neighbors = neighbors_from_edges(n, edges);
  t.cluster_head = 0;
  t.requestor = n - 1;
  t.width = t.height = 100;
  t.range = 10;
  return t;
}

// Independent oracle: recursive DFS over an adjacency matrix counting
// simple paths from `at` to `target` with at most `hops_left` edges.
std::size_t count_paths(const std::vector<std::vector<bool>>& adj,
                        std::size_t at, std::size_t target,
                        std::size_t hops_left, std::vector<bool>& seen) {
  if (at == target) return 1;
  if (hops_left == 0) return 0;
  std::size_t total = 0;
  seen[at] = true;
  for (std::size_t next = 0; next < adj.size(); ++next) {
    if (adj[at][next] && !seen[next]) {
      total += count_paths(adj, next, target, hops_left - 1, seen);
    }
  }
  seen[at] = false;
  return total;
}

}  // namespace

TEST_CASE("triangle with a direct link") {
  const auto t = graph(3, {{0, 1}, {1, 2}, {0, 2}});
  const auto cat = enumerate_routes(t, profile(), {6, 10});
  REQUIRE(cat.routes.size() == 2);
  CHECK(cat.routes[0].relay_ids.empty());
  CHECK(cat.routes[1].relay_ids == std::vector<std::string>{"v1"});
  CHECK(cat.routes[1].relay_costs == std::vector<double>{0.2});

  const auto one_hop = enumerate_routes(t, profile(), {1, 10});
  REQUIRE(one_hop.routes.size() == 1);
  CHECK(one_hop.routes[0].relay_ids.empty());
}

TEST_CASE("line graph has one route through every relay") {
  const auto t = graph(4, {{0, 1}, {1, 2}, {2, 3}});
  const auto cat = enumerate_routes(t, profile(), {6, 10});
  REQUIRE(cat.routes.size() == 1);
  CHECK(cat.routes[0].relay_ids == std::vector<std::string>{"v1", "v2"});
  CHECK(cat.routes[0].failure_vector[0] == doctest::Approx(0.5 * 0.8));
  CHECK_THROWS_AS(enumerate_routes(t, profile(), {2, 10}), NoRouteError);
}

TEST_CASE("route counts match brute force on small graphs") {
  std::mt19937_64 gen(53);
  for (int trial = 0; trial < 150; ++trial) {
    const std::size_t n = 3 + trial % 6;
    std::bernoulli_distribution coin(0.5);
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    std::vector<std::vector<bool>> adj(n, std::vector<bool>(n, false));
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = a + 1; b < n; ++b) {
        if (coin(gen)) {
          edges.emplace_back(a, b);
          adj[a][b] = adj[b][a] = true;
        }
      }
    }
    const auto t = graph(n, edges);
    const std::size_t hops = 1 + trial % 7;
    std::vector<bool> seen(n, false);
    const std::size_t expected = count_paths(adj, 0, n - 1, hops, seen);
    if (expected == 0) {
      CHECK_THROWS_AS(enumerate_routes(t, profile(), {hops, 1000}),
                      NoRouteError);
      continue;
    }
    const auto cat = enumerate_routes(t, profile(), {hops, 1000});
    CHECK(cat.routes.size() == expected);
    for (std::size_t i = 0; i < cat.routes.size(); ++i) {
      const auto& r = cat.routes[i];
      CHECK(r.index == i);
      CHECK(r.hop_count() <= hops);
      std::set<std::string> distinct(r.relay_ids.begin(), r.relay_ids.end());
      CHECK(distinct.size() == r.relay_ids.size());
      CHECK(distinct.count("v0") == 0);
      CHECK(distinct.count("v" + std::to_string(n - 1)) == 0);
      if (i > 0) {
        const auto& prev = cat.routes[i - 1].relay_ids;
        CHECK((prev.size() < r.relay_ids.size() ||
               (prev.size() == r.relay_ids.size() && prev < r.relay_ids)));
      }
    }
    const auto capped = enumerate_routes(t, profile(), {hops, 3});
    CHECK(capped.routes.size() == std::min<std::size_t>(3, expected));
    for (std::size_t i = 0; i < capped.routes.size(); ++i) {
      CHECK(capped.routes[i].relay_ids == cat.routes[i].relay_ids);
    }
  }
}

TEST_CASE("catalog does not depend on device order") {
  // Same labelled graph, devices stored in a different order.
  const std::vector<std::pair<std::size_t, std::size_t>> edges{
      {0, 1}, {0, 2}, {1, 3}, {2, 3}, {1, 2}, {3, 4}, {2, 4}};
  const auto a = graph(5, edges);
  // Permutation: position k holds original device perm[k].
  const std::vector<std::size_t> perm{4, 2, 0, 3, 1};
  std::vector<std::size_t> where(5);
  for (std::size_t k = 0; k < 5; ++k) where[perm[k]] = k;
  ClusterTopology b;
  for (std::size_t k = 0; k < 5; ++k) b.devices.push_back(a.devices[perm[k]]);
  std::vector<std::pair<std::size_t, std::size_t>> moved;
  for (auto [u, v] : edges) moved.emplace_back(where[u], where[v]);
  b.neighbors = neighbors_from_edges(5, moved);
  b.cluster_head = where[0];
  b.requestor = where[4];
  b.width = b.height = 100;
  b.range = 10;
  const auto ca = enumerate_routes(a, profile(), {6, 10});
  const auto cb = enumerate_routes(b, profile(), {6, 10});
  REQUIRE(ca.routes.size() == cb.routes.size());
  for (std::size_t i = 0; i < ca.routes.size(); ++i) {
    CHECK(ca.routes[i].relay_ids == cb.routes[i].relay_ids);
    CHECK(ca.routes[i].failure_vector == cb.routes[i].failure_vector);
  }
}

TEST_CASE("generated clusters") {
  ClusterParams p;
  const auto t1 = generate_cluster(99, p, profile());
  const auto t2 = generate_cluster(99, p, profile());
  CHECK(t1 == t2);
  CHECK(t1.devices.size() == 20);
  CHECK(t1.cluster_head != t1.requestor);
  CHECK(shortest_hops(t1).has_value());
  validate_topology(t1, profile());
  for (const auto& d : t1.devices) {
    CHECK(d.installed_controls.size() >= 1);
    CHECK(d.installed_controls.size() <= 2);
    CHECK(d.inspection_cost >= p.cost_min);
    CHECK(d.inspection_cost <= p.cost_max);
    CHECK(d.x >= 0.0);
    CHECK(d.x <= p.width);
  }
  for (std::size_t a = 0; a < t1.devices.size(); ++a) {
    for (std::size_t b = 0; b < t1.devices.size(); ++b) {
      const double dist = std::hypot(t1.devices[a].x - t1.devices[b].x,
                                     t1.devices[a].y - t1.devices[b].y);
      CHECK(t1.adjacent(a, b) == (a != b && dist <= p.range));
    }
  }
  CHECK_FALSE(generate_cluster(100, p, profile()) == t1);

  ClusterParams pair;
  pair.device_count = 2;
  pair.width = pair.height = 50;
  const auto t = generate_cluster(1, pair, profile());
  CHECK(t.edge_count() == 1);
  CHECK(t.adjacent(0, 1));

  ClusterParams far = p;
  far.range = 1.0;
  far.max_attempts = 3;
  CHECK_THROWS_AS(generate_cluster(1, far, profile()), GenerationError);

  ClusterParams pinned = p;
  pinned.cluster_head = 7;
  CHECK(generate_cluster(5, pinned, profile()).cluster_head == 7);
}

TEST_CASE("topology validation") {
  auto t = graph(3, {{0, 1}, {1, 2}});
  validate_topology(t, profile());
  t.requestor = 0;
  CHECK_THROWS_AS(validate_topology(t, profile()), ConfigError);
  auto cut = graph(4, {{0, 1}, {2, 3}});
  CHECK_THROWS_AS(validate_topology(cut, profile()), NoRouteError);
  CHECK_THROWS(neighbors_from_edges(3, {{1, 1}}));
}
