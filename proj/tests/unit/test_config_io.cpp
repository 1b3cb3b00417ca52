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

#include <filesystem>
#include <fstream>
#include <sstream>

#include "mdg/config_io.hpp"
#include "mdg/error.hpp"

using namespace mdg;
namespace fs = std::filesystem;

namespace {

std::string error_of(const Json& doc) {
  try {
    parse_config(doc);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return {};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch(const char* name) {
  auto dir = fs::temp_directory_path() / fs::path("mdg_test_" + std::string(name));
  fs::remove_all(dir);
  return dir;
}

}  // namespace

TEST_CASE("shipped default configuration is accepted") {
  const auto cfg = load_config(fs::path(MDG_SOURCE_DIR) / "configs/default.json");
  CHECK(cfg == CampaignConfig{});
  CHECK(cfg.cluster.device_count == 20);
  CHECK(cfg.cluster.range == 200.0);
  CHECK(cfg.replies == 1000);
  CHECK(cfg.profile.malware_count() == 6);
  CHECK(cfg.profile.control_count() == 4);
}

TEST_CASE("missing keys take defaults") {
  const auto cfg = parse_config(Json::object());
  CHECK(cfg == CampaignConfig{});
  CHECK(cfg.weights == Weights{1.0, 1.0});
  CHECK(config_to_json(cfg)["weights"] == Json{{"cost", 1.0}, {"security", 1.0}});
}

TEST_CASE("round trip through JSON") {
  CampaignConfig cfg;
  cfg.seed = 1234567890123ULL;
  cfg.cluster.cluster_head = 3;
  cfg.cluster.cost_min = 0.25;
  cfg.discovery.max_routes = 7;
  cfg.relax_hop_bound = false;
  cfg.replies = 77;
  cfg.cases = {"alpha", "beta"};
  cfg.weights = {0.7, 0.2};
  cfg.scaling = 2.5;
  cfg.mode = GameMode::zero_sum;
  cfg.policies = {DefenderKind::cached_shortest};
  cfg.attackers = {AttackerKind::weighted, AttackerKind::nash};
  cfg.plan_lifetime = 40;
  cfg.threads = 2;
  cfg.out_dir = "elsewhere";
  cfg.trace = true;
  const auto back = parse_config(Json::parse(config_to_json(cfg).dump()));
  CHECK(back == cfg);
  CHECK(parse_config(config_to_json(CampaignConfig{})) == CampaignConfig{});
}

TEST_CASE("config hash ignores key order") {
  const Json a = Json::parse(R"({"seed": 5, "replies": 10, "scaling": 2})");
  const Json b = Json::parse(R"({"scaling": 2, "replies": 10, "seed": 5})");
  CHECK(config_hash(parse_config(a)) == config_hash(parse_config(b)));
  CHECK(config_hash(parse_config(a)) !=
        config_hash(parse_config(Json::parse(R"({"seed": 6})"))));
}

TEST_CASE("errors name the offending key") {
  CHECK(error_of(Json::parse(R"({"replys": 3})")).find("replys") !=
        std::string::npos);
  CHECK(error_of(Json::parse(R"({"cluster": {"range": -1}})"))
            .find("cluster.range") != std::string::npos);
  CHECK(error_of(Json::parse(R"({"weights": {"security": 2}})"))
            .find("weights") != std::string::npos);
  CHECK(error_of(Json::parse(R"({"mode": "arbitrary"})")).find("mode") !=
        std::string::npos);
  CHECK(error_of(Json::parse(R"({"policies": ["aodv"]})")).find("policies") !=
        std::string::npos);
  CHECK(error_of(Json::parse(R"({"replies": -4})")).find("replies") !=
        std::string::npos);

  Json bad = config_to_json(CampaignConfig{});
  bad["profile"]["efficacy"]["spyware"]["idma"] = 1.0;
  CHECK(error_of(bad).find("profile.efficacy.spyware.idma") != std::string::npos);
  Json missing = config_to_json(CampaignConfig{});
  missing["profile"]["efficacy"]["spyware"].erase("idma");
  CHECK(error_of(missing).find("missing") != std::string::npos);
  Json cross = config_to_json(CampaignConfig{});
  cross["profile"]["os"] = {"ios", "android"};
  cross["profile"]["malware"][0]["target_os"] = "android";
  CHECK_FALSE(error_of(cross).empty());
}

TEST_CASE("profiles and topologies round-trip") {
  const auto profile = illustrative_profile();
  CHECK(parse_profile(profile_to_json(profile)) == profile);

  const auto t = generate_cluster(8, ClusterParams{}, profile);
  const Json doc = topology_to_json(t, profile);
  const auto back = parse_topology(Json::parse(doc.dump()), profile);
  CHECK(back == t);

  Json no_edges = doc;
  no_edges.erase("edges");
  CHECK(parse_topology(no_edges, profile).neighbors == t.neighbors);

  Json wrong = doc;
  wrong["requestor"] = "nobody";
  CHECK_THROWS_AS(parse_topology(wrong, profile), ConfigError);
}

TEST_CASE("matrix documents") {
  const auto doc = parse_matrix_document(
      read_json_file(fs::path(MDG_SOURCE_DIR) / "configs/table2.json"));
  CHECK(doc.defender(0, 0) == -3.0);
  CHECK(doc.defender(1, 1) == -2.0);
  CHECK(doc.attacker(0, 0) == 1.0);
  CHECK(doc.route_labels == std::vector<std::string>{"r", "r'"});
  const auto unlabeled = parse_matrix_document(
      Json::parse(R"({"defender": [[1, 2, 3]], "attacker": [[0, 0, 0]]})"));
  CHECK(unlabeled.malware_labels == std::vector<std::string>{"m1", "m2", "m3"});
  CHECK_THROWS_AS(parse_matrix_document(Json::parse(
                      R"({"defender": [[1, 2]], "attacker": [[0]]})")),
                  ConfigError);
  CHECK_THROWS_AS(parse_matrix_document(Json::parse(
                      R"({"defender": [[1, 2], [3]], "attacker": [[0, 0], [0]]})")),
                  ConfigError);
}

TEST_CASE("CSV contract") {
  CHECK(campaign_csv({}) ==
        "case,seed,policy,attacker,replies,detection_rate,mean_Ud,"
        "mean_security_loss,mean_inspection_cost,blacklist_count\n");
  CampaignRow row;
  row.case_label = "20";
  row.seed = 42;
  row.policy = DefenderKind::fewest_hops;
  row.attacker = AttackerKind::weighted;
  row.replies = 1000;
  row.detection_rate = 0.6123456789;
  row.mean_defender_utility = -4.123456789;
  row.mean_security_loss = 3.5;
  row.mean_inspection_cost = 1e-7;
  row.blacklist_count = 612;
  const auto csv = campaign_csv({row});
  CHECK(csv.substr(csv.find('\n') + 1) ==
        "20,42,fewest_hops,weighted,1000,0.612346,-4.12346,3.5,1e-07,612\n");
}

TEST_CASE("results and manifest") {
  const auto dir = scratch("emit");
  RunManifest m;
  m.config_hash = "abc";
  m.command = "mdg campaign";
  m.config = config_to_json(CampaignConfig{});
  const auto path = emit_results(dir, {{"campaign.csv", "x,y\n1,2\n"}}, m);
  CHECK(slurp(dir / "campaign.csv") == "x,y\n1,2\n");
  const Json man = Json::parse(slurp(path));
  CHECK(man["checksums"]["campaign.csv"] == sha256_hex("x,y\n1,2\n"));
  CHECK(man["config_hash"] == "abc");
  CHECK(man["tool_version"] == std::string(tool_version()));
  CHECK(man["timestamp"].get<std::string>().size() == 20);
  CHECK(parse_config(man["config"]) == CampaignConfig{});
  std::size_t files = 0;
  for ([[maybe_unused]] const auto& e : fs::directory_iterator(dir)) ++files;
  CHECK(files == 2);
  fs::remove_all(dir);
}

TEST_CASE("sha256 test vectors") {
  CHECK(sha256_hex("") ==
        "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  CHECK(sha256_hex("abc") ==
        "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}
