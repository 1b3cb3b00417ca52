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

#include "mdg/config_io.hpp"

#include <fmt/format.h>
#include <openssl/evp.h>

#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <system_error>
#include <unistd.h>

#include "mdg/error.hpp"

#ifndef MDG_VERSION
#define MDG_VERSION "0.0.0"
#endif

namespace mdg {

std::string_view tool_version() { return MDG_VERSION; }

SecurityProfile illustrative_profile() {
  std::vector<MalwareSpec> malware{
      {"keylogger", "ios", 8.0},     {"sms_spam", "ios", 3.0},
      {"rootkit_isam", "ios", 10.0}, {"spyware", "ios", 6.0},
      {"ikee_b", "ios", 7.0},        {"premium_rate_calls", "ios", 5.0},
  };
  std::vector<ControlSpec> controls{
      {"sms_profiler", "ios"},
      {"idma", "ios"},
      {"itl", "ios"},
      {"touchstroke", "ios"},
  };
  Matrix efficacy(6, 4);
  // clang-format off
  efficacy << 0.10, 0.30, 0.20, 0.60,
              0.70, 0.20, 0.10, 0.05,
              0.05, 0.50, 0.30, 0.10,
              0.20, 0.40, 0.50, 0.20,
              0.05, 0.60, 0.40, 0.05,
              0.60, 0.30, 0.10, 0.05;
  // clang-format on
  return SecurityProfile({"ios"}, std::move(malware), std::move(controls),
                         std::move(efficacy));
}

void validate_config(const CampaignConfig& config) {
  validate_cluster_params(config.cluster);
  validate_weights(config.weights);
  if (config.discovery.max_hops == 0 || config.discovery.max_routes == 0) {
    throw ConfigError("discovery.max_hops and discovery.max_routes must be >= 1");
  }
  if (config.cases.empty()) throw ConfigError("cases must not be empty");
  if (config.topology_count == 0) {
    throw ConfigError("topology_count must be >= 1");
  }
  if (config.mode == GameMode::arbitrary) {
    throw ConfigError("mode must be zero_sum or scaled for simulations");
  }
  if (!(config.scaling > 0.0) || !std::isfinite(config.scaling)) {
    throw ConfigError("scaling must be > 0");
  }
  if (config.policies.empty()) throw ConfigError("policies must not be empty");
  if (config.attackers.empty()) {
    throw ConfigError("attackers must not be empty");
  }
  if (config.plan_lifetime == 0) {
    throw ConfigError("plan_lifetime must be >= 1 or null");
  }
}

namespace {

[[noreturn]] void fail(std::string_view key, std::string_view what) {
  throw ConfigError(fmt::format("{}: {}", key, what));
}

void check_object(const Json& v, std::string_view key,
                  std::initializer_list<std::string_view> allowed) {
  if (!v.is_object()) fail(key, "expected an object");
  for (const auto& item : v.items()) {
    bool known = false;
    for (auto a : allowed) known = known || item.key() == a;
    if (!known) {
      fail(key.empty() ? item.key() : fmt::format("{}.{}", key, item.key()),
           "unknown key");
    }
  }
}

std::string join(std::string_view parent, std::string_view key) {
  return parent.empty() ? std::string(key) : fmt::format("{}.{}", parent, key);
}

double number(const Json& v, std::string_view key) {
  if (!v.is_number()) fail(key, "expected a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) fail(key, "expected a finite number");
  return x;
}

std::uint64_t unsigned_integer(const Json& v, std::string_view key) {
  if (v.is_number_unsigned()) return v.get<std::uint64_t>();
  if (v.is_number_integer() && v.get<std::int64_t>() >= 0) {
    return static_cast<std::uint64_t>(v.get<std::int64_t>());
  }
  fail(key, "expected a non-negative integer");
}

std::size_t count(const Json& v, std::string_view key, std::size_t min) {
  const auto n = static_cast<std::size_t>(unsigned_integer(v, key));
  if (n < min) fail(key, fmt::format("must be >= {}", min));
  return n;
}

bool boolean(const Json& v, std::string_view key) {
  if (!v.is_boolean()) fail(key, "expected true or false");
  return v.get<bool>();
}

std::string string(const Json& v, std::string_view key) {
  if (!v.is_string()) fail(key, "expected a string");
  return v.get<std::string>();
}

const Json* find(const Json& obj, std::string_view key) {
  auto it = obj.find(std::string(key));
  return it == obj.end() ? nullptr : &*it;
}

template <class F>
auto rethrow_as(std::string_view key, F&& f) {
  try {
    return f();
  } catch (const Error& e) {
    fail(key, e.what());
  }
}

}  // namespace

SecurityProfile parse_profile(const Json& doc) {
  check_object(doc, "profile", {"os", "malware", "controls", "efficacy"});
  std::vector<std::string> os_list;
  const Json* os = find(doc, "os");
  if (!os || !os->is_array()) fail("profile.os", "expected an array");
  for (const auto& o : *os) os_list.push_back(string(o, "profile.os"));

  std::vector<MalwareSpec> malware;
  const Json* ms = find(doc, "malware");
  if (!ms || !ms->is_array()) fail("profile.malware", "expected an array");
  for (std::size_t i = 0; i < ms->size(); ++i) {
    const std::string key = fmt::format("profile.malware[{}]", i);
    const Json& m = (*ms)[i];
    check_object(m, key, {"id", "target_os", "damage"});
    if (!find(m, "id") || !find(m, "target_os") || !find(m, "damage")) {
      fail(key, "requires id, target_os and damage");
    }
    const double damage = number(m["damage"], join(key, "damage"));
    if (damage < 0.0) fail(join(key, "damage"), "must be >= 0");
    malware.push_back({string(m["id"], join(key, "id")),
                       string(m["target_os"], join(key, "target_os")),
                       damage});
  }

  std::vector<ControlSpec> controls;
  const Json* cs = find(doc, "controls");
  if (!cs || !cs->is_array()) fail("profile.controls", "expected an array");
  for (std::size_t i = 0; i < cs->size(); ++i) {
    const std::string key = fmt::format("profile.controls[{}]", i);
    const Json& c = (*cs)[i];
    check_object(c, key, {"id", "os"});
    if (!find(c, "id") || !find(c, "os")) fail(key, "requires id and os");
    controls.push_back(
        {string(c["id"], join(key, "id")), string(c["os"], join(key, "os"))});
  }

  const Json* eff = find(doc, "efficacy");
  if (!eff || !eff->is_object()) fail("profile.efficacy", "expected an object");
  Matrix efficacy(static_cast<Eigen::Index>(malware.size()),
                  static_cast<Eigen::Index>(controls.size()));
  for (const auto& item : eff->items()) {
    bool known = false;
    for (const auto& m : malware) known = known || m.id == item.key();
    if (!known) fail(join("profile.efficacy", item.key()), "unknown malware");
    for (const auto& inner : item.value().items()) {
      bool known_c = false;
      for (const auto& c : controls) known_c = known_c || c.id == inner.key();
      if (!known_c) {
        fail(fmt::format("profile.efficacy.{}.{}", item.key(), inner.key()),
             "unknown control");
      }
    }
  }
  for (std::size_t m = 0; m < malware.size(); ++m) {
    for (std::size_t c = 0; c < controls.size(); ++c) {
      const std::string key = fmt::format("profile.efficacy.{}.{}",
                                          malware[m].id, controls[c].id);
      const Json* row = find(*eff, malware[m].id);
      const Json* cell = row && row->is_object() ? find(*row, controls[c].id)
                                                 : nullptr;
      if (!cell) fail(key, "missing efficacy entry");
      const double d = number(*cell, key);
      if (!(d >= 0.0 && d < 1.0)) {
        fail(key, fmt::format("efficacy must lie in [0, 1), got {}", d));
      }
      efficacy(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(c)) = d;
    }
  }
  return rethrow_as("profile", [&] {
    return SecurityProfile(std::move(os_list), std::move(malware),
                           std::move(controls), std::move(efficacy));
  });
}

Json profile_to_json(const SecurityProfile& profile) {
  Json doc;
  doc["os"] = profile.os_list();
  doc["malware"] = Json::array();
  for (const auto& m : profile.malware()) {
    doc["malware"].push_back(
        {{"id", m.id}, {"target_os", m.target_os}, {"damage", m.damage}});
  }
  doc["controls"] = Json::array();
  for (const auto& c : profile.controls()) {
    doc["controls"].push_back({{"id", c.id}, {"os", c.os}});
  }
  Json eff = Json::object();
  for (std::size_t m = 0; m < profile.malware_count(); ++m) {
    for (std::size_t c = 0; c < profile.control_count(); ++c) {
      eff[profile.malware()[m].id][profile.controls()[c].id] =
          profile.efficacy(m, c);
    }
  }
  doc["efficacy"] = eff;
  return doc;
}

CampaignConfig parse_config(const Json& doc) {
  check_object(doc, "",
               {"seed", "cluster", "discovery", "replies", "cases",
                "topology_count", "profile", "weights", "scaling", "mode",
                "policies", "attackers", "plan_lifetime", "threads",
                "output"});
  CampaignConfig cfg;
  if (const Json* v = find(doc, "seed")) cfg.seed = unsigned_integer(*v, "seed");

  if (const Json* c = find(doc, "cluster")) {
    check_object(*c, "cluster",
                 {"devices", "width", "height", "range", "cost_min",
                  "cost_max", "min_controls", "max_controls", "cluster_head",
                  "max_attempts"});
    auto& p = cfg.cluster;
    if (const Json* v = find(*c, "devices")) {
      p.device_count = count(*v, "cluster.devices", 2);
    }
    if (const Json* v = find(*c, "width")) p.width = number(*v, "cluster.width");
    if (const Json* v = find(*c, "height")) {
      p.height = number(*v, "cluster.height");
    }
    if (const Json* v = find(*c, "range")) p.range = number(*v, "cluster.range");
    if (const Json* v = find(*c, "cost_min")) {
      p.cost_min = number(*v, "cluster.cost_min");
    }
    if (const Json* v = find(*c, "cost_max")) {
      p.cost_max = number(*v, "cluster.cost_max");
    }
    if (const Json* v = find(*c, "min_controls")) {
      p.min_controls = count(*v, "cluster.min_controls", 0);
    }
    if (const Json* v = find(*c, "max_controls")) {
      p.max_controls = count(*v, "cluster.max_controls", 0);
    }
    if (const Json* v = find(*c, "cluster_head"); v && !v->is_null()) {
      p.cluster_head = count(*v, "cluster.cluster_head", 0);
    }
    if (const Json* v = find(*c, "max_attempts")) {
      p.max_attempts = count(*v, "cluster.max_attempts", 1);
    }
    if (!(p.width > 0.0)) fail("cluster.width", "must be > 0");
    if (!(p.height > 0.0)) fail("cluster.height", "must be > 0");
    if (!(p.range > 0.0)) fail("cluster.range", "must be > 0");
    if (p.cost_min < 0.0) fail("cluster.cost_min", "must be >= 0");
    if (p.cost_max < p.cost_min) fail("cluster.cost_max", "must be >= cost_min");
    if (p.min_controls > p.max_controls) {
      fail("cluster.min_controls", "must be <= max_controls");
    }
    if (p.cluster_head && *p.cluster_head >= p.device_count) {
      fail("cluster.cluster_head", "must be a device index < devices");
    }
  }

  if (const Json* d = find(doc, "discovery")) {
    check_object(*d, "discovery", {"max_hops", "max_routes", "relax_hop_bound"});
    if (const Json* v = find(*d, "max_hops")) {
      cfg.discovery.max_hops = count(*v, "discovery.max_hops", 1);
    }
    if (const Json* v = find(*d, "max_routes")) {
      cfg.discovery.max_routes = count(*v, "discovery.max_routes", 1);
    }
    if (const Json* v = find(*d, "relax_hop_bound")) {
      cfg.relax_hop_bound = boolean(*v, "discovery.relax_hop_bound");
    }
  }

  if (const Json* v = find(doc, "replies")) cfg.replies = count(*v, "replies", 0);
  if (const Json* v = find(doc, "cases")) {
    if (!v->is_array() || v->empty()) fail("cases", "expected a non-empty array");
    cfg.cases.clear();
    for (const auto& c : *v) {
      cfg.cases.push_back(c.is_number() ? c.dump() : string(c, "cases"));
    }
  }
  if (const Json* v = find(doc, "topology_count")) {
    cfg.topology_count = count(*v, "topology_count", 1);
  }
  if (const Json* v = find(doc, "profile")) cfg.profile = parse_profile(*v);

  if (const Json* w = find(doc, "weights")) {
    check_object(*w, "weights", {"security", "cost"});
    if (const Json* v = find(*w, "security")) {
      cfg.weights.security = number(*v, "weights.security");
    }
    if (const Json* v = find(*w, "cost")) {
      cfg.weights.cost = number(*v, "weights.cost");
    }
    rethrow_as("weights", [&] {
      validate_weights(cfg.weights);
      return 0;
    });
  }
  if (const Json* v = find(doc, "scaling")) {
    cfg.scaling = number(*v, "scaling");
    if (!(cfg.scaling > 0.0)) fail("scaling", "must be > 0");
  }
  if (const Json* v = find(doc, "mode")) {
    cfg.mode = rethrow_as("mode", [&] {
      return game_mode_from_string(string(*v, "mode"));
    });
    if (cfg.mode == GameMode::arbitrary) {
      fail("mode", "must be zero_sum or scaled");
    }
  }
  if (const Json* v = find(doc, "policies")) {
    if (!v->is_array() || v->empty()) {
      fail("policies", "expected a non-empty array");
    }
    cfg.policies.clear();
    for (const auto& p : *v) {
      cfg.policies.push_back(rethrow_as("policies", [&] {
        return defender_kind_from_string(string(p, "policies"));
      }));
    }
  }
  if (const Json* v = find(doc, "attackers")) {
    if (!v->is_array() || v->empty()) {
      fail("attackers", "expected a non-empty array");
    }
    cfg.attackers.clear();
    for (const auto& a : *v) {
      cfg.attackers.push_back(rethrow_as("attackers", [&] {
        return attacker_kind_from_string(string(a, "attackers"));
      }));
    }
  }
  if (const Json* v = find(doc, "plan_lifetime"); v && !v->is_null()) {
    cfg.plan_lifetime = count(*v, "plan_lifetime", 1);
  }
  if (const Json* v = find(doc, "threads")) cfg.threads = count(*v, "threads", 0);
  if (const Json* o = find(doc, "output")) {
    check_object(*o, "output", {"dir", "trace"});
    if (const Json* v = find(*o, "dir")) cfg.out_dir = string(*v, "output.dir");
    if (const Json* v = find(*o, "trace")) cfg.trace = boolean(*v, "output.trace");
  }
  validate_config(cfg);
  return cfg;
}

CampaignConfig load_config(const std::filesystem::path& path) {
  return parse_config(read_json_file(path));
}

Json config_to_json(const CampaignConfig& cfg) {
  Json doc;
  doc["seed"] = cfg.seed;
  doc["cluster"] = {
      {"devices", cfg.cluster.device_count},
      {"width", cfg.cluster.width},
      {"height", cfg.cluster.height},
      {"range", cfg.cluster.range},
      {"cost_min", cfg.cluster.cost_min},
      {"cost_max", cfg.cluster.cost_max},
      {"min_controls", cfg.cluster.min_controls},
      {"max_controls", cfg.cluster.max_controls},
      {"cluster_head", cfg.cluster.cluster_head
                           ? Json(*cfg.cluster.cluster_head)
                           : Json(nullptr)},
      {"max_attempts", cfg.cluster.max_attempts},
  };
  doc["discovery"] = {{"max_hops", cfg.discovery.max_hops},
                      {"max_routes", cfg.discovery.max_routes},
                      {"relax_hop_bound", cfg.relax_hop_bound}};
  doc["replies"] = cfg.replies;
  doc["cases"] = cfg.cases;
  doc["topology_count"] = cfg.topology_count;
  doc["profile"] = profile_to_json(cfg.profile);
  doc["weights"] = {{"security", cfg.weights.security},
                    {"cost", cfg.weights.cost}};
  doc["scaling"] = cfg.scaling;
  doc["mode"] = std::string(to_string(cfg.mode));
  doc["policies"] = Json::array();
  for (auto p : cfg.policies) doc["policies"].push_back(std::string(to_string(p)));
  doc["attackers"] = Json::array();
  for (auto a : cfg.attackers) {
    doc["attackers"].push_back(std::string(to_string(a)));
  }
  doc["plan_lifetime"] = cfg.plan_lifetime == kUnlimitedLifetime
                             ? Json(nullptr)
                             : Json(cfg.plan_lifetime);
  doc["threads"] = cfg.threads;
  doc["output"] = {{"dir", cfg.out_dir}, {"trace", cfg.trace}};
  return doc;
}

ClusterTopology parse_topology(const Json& doc,
                               const SecurityProfile& profile) {
  check_object(doc, "topology",
               {"width", "height", "range", "cluster_head", "requestor",
                "devices", "edges"});
  ClusterTopology t;
  for (auto [key, field] : {std::pair{"width", &t.width},
                            std::pair{"height", &t.height},
                            std::pair{"range", &t.range}}) {
    const Json* v = find(doc, key);
    if (!v) fail(join("topology", key), "missing");
    *field = number(*v, join("topology", key));
  }
  const Json* devices = find(doc, "devices");
  if (!devices || !devices->is_array()) {
    fail("topology.devices", "expected an array");
  }
  for (std::size_t i = 0; i < devices->size(); ++i) {
    const std::string key = fmt::format("topology.devices[{}]", i);
    const Json& d = (*devices)[i];
    check_object(d, key, {"id", "os", "controls", "cost", "x", "y"});
    for (auto k : {"id", "os", "controls", "cost", "x", "y"}) {
      if (!find(d, k)) fail(join(key, k), "missing");
    }
    Device dev;
    dev.id = string(d["id"], join(key, "id"));
    dev.os = string(d["os"], join(key, "os"));
    dev.inspection_cost = number(d["cost"], join(key, "cost"));
    dev.x = number(d["x"], join(key, "x"));
    dev.y = number(d["y"], join(key, "y"));
    if (!d["controls"].is_array()) fail(join(key, "controls"), "expected an array");
    for (const auto& c : d["controls"]) {
      const std::string id = string(c, join(key, "controls"));
      const auto idx = profile.find_control(id);
      if (!idx) fail(join(key, "controls"), fmt::format("unknown control '{}'", id));
      dev.installed_controls.push_back(*idx);
    }
    t.devices.push_back(std::move(dev));
  }
  auto index_of = [&](const Json& v, std::string_view key) {
    const std::string id = string(v, key);
    for (std::size_t i = 0; i < t.devices.size(); ++i) {
      if (t.devices[i].id == id) return i;
    }
    fail(key, fmt::format("unknown device '{}'", id));
  };
  for (auto k : {"cluster_head", "requestor"}) {
    if (!find(doc, k)) fail(join("topology", k), "missing");
  }
  t.cluster_head = index_of(doc["cluster_head"], "topology.cluster_head");
  t.requestor = index_of(doc["requestor"], "topology.requestor");
  if (const Json* edges = find(doc, "edges")) {
    if (!edges->is_array()) fail("topology.edges", "expected an array");
    std::vector<std::pair<std::size_t, std::size_t>> list;
    for (const auto& e : *edges) {
      if (!e.is_array() || e.size() != 2) {
        fail("topology.edges", "each edge is a pair of device ids");
      }
      list.emplace_back(index_of(e[0], "topology.edges"),
                        index_of(e[1], "topology.edges"));
    }
    t.neighbors = rethrow_as("topology.edges", [&] {
      return neighbors_from_edges(t.devices.size(), list);
    });
  } else {
    t.neighbors = neighbors_within_range(t.devices, t.range);
  }
  validate_topology(t, profile);
  return t;
}

Json topology_to_json(const ClusterTopology& t,
                      const SecurityProfile& profile) {
  Json doc;
  doc["width"] = t.width;
  doc["height"] = t.height;
  doc["range"] = t.range;
  doc["cluster_head"] = t.devices.at(t.cluster_head).id;
  doc["requestor"] = t.devices.at(t.requestor).id;
  doc["devices"] = Json::array();
  for (const auto& d : t.devices) {
    Json controls = Json::array();
    for (std::size_t c : d.installed_controls) {
      controls.push_back(profile.controls().at(c).id);
    }
    doc["devices"].push_back({{"id", d.id},
                              {"os", d.os},
                              {"controls", controls},
                              {"cost", d.inspection_cost},
                              {"x", d.x},
                              {"y", d.y}});
  }
  doc["edges"] = Json::array();
  for (std::size_t a = 0; a < t.neighbors.size(); ++a) {
    for (std::size_t b : t.neighbors[a]) {
      if (a < b) doc["edges"].push_back({t.devices[a].id, t.devices[b].id});
    }
  }
  return doc;
}

namespace {

Matrix parse_rows(const Json& v, std::string_view key) {
  if (!v.is_array() || v.empty()) fail(key, "expected a non-empty array of rows");
  const std::size_t cols = v[0].is_array() ? v[0].size() : 0;
  if (cols == 0) fail(key, "rows must be non-empty arrays");
  Matrix m(static_cast<Eigen::Index>(v.size()), static_cast<Eigen::Index>(cols));
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_array() || v[i].size() != cols) {
      fail(key, "rows must all have the same length");
    }
    for (std::size_t j = 0; j < cols; ++j) {
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          number(v[i][j], key);
    }
  }
  return m;
}

std::vector<std::string> labels(const Json& doc, const char* key,
                                std::size_t n, const char* prefix) {
  std::vector<std::string> out;
  if (const Json* v = find(doc, key)) {
    if (!v->is_array() || v->size() != n) {
      fail(key, fmt::format("expected {} labels", n));
    }
    for (const auto& s : *v) out.push_back(string(s, key));
  } else {
    for (std::size_t i = 0; i < n; ++i) {
      out.push_back(fmt::format("{}{}", prefix, i + 1));
    }
  }
  return out;
}

}  // namespace

MatrixDocument parse_matrix_document(const Json& doc) {
  check_object(doc, "", {"defender", "attacker", "routes", "malware"});
  if (!find(doc, "defender")) fail("defender", "missing");
  if (!find(doc, "attacker")) fail("attacker", "missing");
  MatrixDocument out;
  out.defender = parse_rows(doc["defender"], "defender");
  out.attacker = parse_rows(doc["attacker"], "attacker");
  if (out.defender.rows() != out.attacker.rows() ||
      out.defender.cols() != out.attacker.cols()) {
    fail("attacker", "must have the same shape as defender");
  }
  out.route_labels = labels(doc, "routes",
                            static_cast<std::size_t>(out.defender.rows()), "r");
  out.malware_labels = labels(
      doc, "malware", static_cast<std::size_t>(out.defender.cols()), "m");
  return out;
}

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(fmt::format("cannot open '{}'", path.string()));
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw ConfigError(
        fmt::format("'{}' is not valid JSON: {}", path.string(), e.what()));
  }
}

namespace {

std::string real(double x) {
  if (!std::isfinite(x)) return "";
  return fmt::format("{:.6g}", x);
}

}  // namespace

std::string campaign_csv(const std::vector<CampaignRow>& rows) {
  std::string out =
      "case,seed,policy,attacker,replies,detection_rate,mean_Ud,"
      "mean_security_loss,mean_inspection_cost,blacklist_count\n";
  for (const auto& r : rows) {
    out += fmt::format("{},{},{},{},{},{},{},{},{},{}\n", r.case_label, r.seed,
                       to_string(r.policy), to_string(r.attacker), r.replies,
                       r.detection_rate ? real(*r.detection_rate) : "",
                       real(r.mean_defender_utility),
                       real(r.mean_security_loss),
                       real(r.mean_inspection_cost), r.blacklist_count);
  }
  return out;
}

std::string session_trace_jsonl(const std::vector<ExperimentReport>& reports) {
  std::string out;
  for (const auto& rep : reports) {
    for (std::size_t s = 0; s < rep.sessions.size(); ++s) {
      const SessionOutcome& o = rep.sessions[s];
      Json line = {{"case", rep.case_label},
                   {"seed", rep.topology_seed},
                   {"policy", std::string(to_string(rep.policy))},
                   {"attacker", std::string(to_string(rep.attacker))},
                   {"session", s},
                   {"route", o.route_index},
                   {"malware", o.malware_index},
                   {"detected", o.detected},
                   {"detector", o.detector ? Json(*o.detector) : Json(nullptr)},
                   {"inspected", o.inspected_count},
                   {"U_d", o.realized_defender_payoff}};
      out += line.dump();
      out += '\n';
    }
  }
  return out;
}

std::string sha256_hex(std::string_view data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(),
                 nullptr) != 1) {
    throw Error("SHA-256 digest failed");
  }
  std::string hex;
  for (unsigned int i = 0; i < len; ++i) hex += fmt::format("{:02x}", digest[i]);
  return hex;
}

std::string config_hash(const CampaignConfig& config) {
  return sha256_hex(config_to_json(config).dump());
}

Json manifest_to_json(const RunManifest& m) {
  return {{"config_hash", m.config_hash},
          {"tool_version", m.tool_version},
          {"timestamp", m.timestamp},
          {"command", m.command},
          {"checksums", m.checksums},
          {"config", m.config}};
}

void write_file_atomic(const std::filesystem::path& path,
                       std::string_view contents) {
  auto tmp = path;
  tmp += fmt::format(".tmp.{}", ::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) {
      throw Error(fmt::format("cannot write '{}'", tmp.string()));
    }
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    out.flush();
    if (!out) throw Error(fmt::format("write to '{}' failed", tmp.string()));
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw Error(fmt::format("cannot move '{}' into place: {}", path.string(),
                            ec.message()));
  }
}

std::filesystem::path emit_results(
    const std::filesystem::path& dir,
    const std::map<std::string, std::string>& outputs, RunManifest manifest) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) {
    throw Error(fmt::format("cannot create '{}': {}", dir.string(),
                            ec.message()));
  }
  for (const auto& [name, contents] : outputs) {
    write_file_atomic(dir / name, contents);
    manifest.checksums[name] = sha256_hex(contents);
  }
  if (manifest.timestamp.empty()) {
    const auto now = std::chrono::system_clock::to_time_t(
        std::chrono::system_clock::now());
    std::tm utc{};
    gmtime_r(&now, &utc);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &utc);
    manifest.timestamp = buf;
  }
  if (manifest.tool_version.empty()) manifest.tool_version = tool_version();
  const auto path = dir / "manifest.json";
  write_file_atomic(path, manifest_to_json(manifest).dump(2) + "\n");
  return path;
}

}  // namespace mdg
