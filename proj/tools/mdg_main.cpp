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

// mdg: command-line front end for the malware detection game.
//
//   mdg solve    --matrix table2.json | --config cfg.json [--case I --topology J]
//   mdg simulate --config cfg.json --policy irouting --attacker nash
//   mdg campaign --config cfg.json --out results
//   mdg verify   [--count 200]
//   mdg topo     --config cfg.json [--input topo.json]
//
// Exit codes: 0 ok, 2 config error, 3 no route / generation failure,
// 4 verification failure.

#include <fmt/format.h>

#include <chrono>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "mdg/config_io.hpp"
#include "mdg/equilibria.hpp"
#include "mdg/error.hpp"
#include "mdg/simulator.hpp"
#include "mdg/theorems.hpp"

namespace {

using namespace mdg;

constexpr int kOk = 0;
constexpr int kConfigError = 2;
constexpr int kNoRoute = 3;
constexpr int kVerifyFailed = 4;

struct Common {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::string out;
  std::string command;
};

CampaignConfig load(const Common& c) {
  CampaignConfig cfg = c.config.empty() ? CampaignConfig{} : load_config(c.config);
  if (c.seed) cfg.seed = *c.seed;
  return cfg;
}

std::string strategy_text(const MixedStrategy& s) {
  std::string out = "(";
  for (std::size_t i = 0; i < s.size(); ++i) {
    out += fmt::format("{}{:.6g}", i ? ", " : "", s[i]);
  }
  return out + ")";
}

// Label of a pure strategy, or empty for a mixed one.
std::string pure_label(const MixedStrategy& s,
                       const std::vector<std::string>& labels) {
  auto support = s.support();
  if (support.size() != 1) return {};
  return labels.at(support.front());
}

Json report_json(const SolutionReport& r,
                 const std::vector<std::string>& routes,
                 const std::vector<std::string>& malware) {
  Json j = {{"method", std::string(to_string(r.method))},
            {"defender_strategy", r.defender_strategy.probs()},
            {"attacker_strategy", r.attacker_strategy.probs()},
            {"defender_value", r.game_value},
            {"attacker_value", r.attacker_value}};
  if (!std::isnan(r.upper_value)) j["upper_value"] = r.upper_value;
  const auto rl = pure_label(r.defender_strategy, routes);
  const auto ml = pure_label(r.attacker_strategy, malware);
  if (!rl.empty()) j["defender_pure"] = rl;
  if (!ml.empty()) j["attacker_pure"] = ml;
  return j;
}

void print_matrix(const char* title, const Matrix& m,
                  const std::vector<std::string>& rows,
                  const std::vector<std::string>& cols) {
  fmt::print("{}\n{:>14}", title, "");
  for (const auto& c : cols) fmt::print("{:>12}", c.substr(0, 11));
  fmt::print("\n");
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    fmt::print("{:>14}", rows[static_cast<std::size_t>(i)].substr(0, 13));
    for (Eigen::Index j = 0; j < m.cols(); ++j) fmt::print("{:>12.6g}", m(i, j));
    fmt::print("\n");
  }
}

void print_report(const char* title, const SolutionReport& r,
                  const std::vector<std::string>& routes,
                  const std::vector<std::string>& malware) {
  fmt::print("{}\n  defender {}", title, strategy_text(r.defender_strategy));
  if (auto l = pure_label(r.defender_strategy, routes); !l.empty()) {
    fmt::print(" = {}", l);
  }
  fmt::print("\n  attacker {}", strategy_text(r.attacker_strategy));
  if (auto l = pure_label(r.attacker_strategy, malware); !l.empty()) {
    fmt::print(" = {}", l);
  }
  fmt::print("\n  payoffs (defender {:.6g}, attacker {:.6g})\n", r.game_value,
             r.attacker_value);
}

void finish(const Common& c, const std::map<std::string, std::string>& outputs,
            const std::string& hash, Json config) {
  if (c.out.empty()) return;
  RunManifest m;
  m.config_hash = hash;
  m.command = c.command;
  m.config = std::move(config);
  const auto path = emit_results(c.out, outputs, m);
  fmt::print(stderr, "wrote {}\n", path.string());
}

int run_solve(const Common& c, const std::string& matrix_path,
              std::size_t case_index, std::size_t topology_index, bool json) {
  std::optional<GameInstance> game;
  std::vector<std::string> routes, malware;
  Json source;
  if (!matrix_path.empty()) {
    source = read_json_file(matrix_path);
    auto doc = parse_matrix_document(source);
    game = GameInstance::from_matrices(doc.defender, doc.attacker);
    routes = doc.route_labels;
    malware = doc.malware_labels;
  } else {
    const CampaignConfig cfg = load(c);
    if (case_index >= cfg.cases.size() ||
        topology_index >= cfg.topology_count) {
      throw ConfigError("--case/--topology outside the configured grid");
    }
    Scenario sc = build_scenario(cfg, case_index, topology_index);
    game = sc.game;
    for (const auto& r : sc.catalog.routes) {
      std::string label = "C";
      for (const auto& id : r.relay_ids) label += ">" + id;
      routes.push_back(label + ">Rqs");
    }
    for (const auto& m : cfg.profile.malware()) malware.push_back(m.id);
    source = config_to_json(cfg);
  }

  const SolutionReport maximin = solve_maximin(*game);
  const EquilibriumSet ne = support_enumeration_ne(
      *game, std::max(game->route_count(), game->malware_count()));
  const SolutionReport sse = solve_sse(*game);
  const SolutionReport pure = solve_pure_commitment(*game);

  Json result = {{"mode", std::string(to_string(game->mode()))},
                 {"routes", routes},
                 {"malware", malware},
                 {"maximin", report_json(maximin, routes, malware)},
                 {"nash", Json::array()},
                 {"nash_degenerate", ne.degenerate},
                 {"sse", report_json(sse, routes, malware)},
                 {"pure_commitment", report_json(pure, routes, malware)}};
  Json dmat = Json::array(), amat = Json::array();
  for (Eigen::Index i = 0; i < game->defender().rows(); ++i) {
    std::vector<double> d, a;
    for (Eigen::Index j = 0; j < game->defender().cols(); ++j) {
      d.push_back(game->defender()(i, j));
      a.push_back(game->attacker()(i, j));
    }
    dmat.push_back(d);
    amat.push_back(a);
  }
  result["defender"] = dmat;
  result["attacker"] = amat;
  for (const auto& e : ne.equilibria) {
    result["nash"].push_back(report_json(e, routes, malware));
  }

  if (json) {
    fmt::print("{}\n", result.dump(2));
  } else {
    fmt::print("game: {} routes x {} malware, mode {}\n", game->route_count(),
               game->malware_count(), to_string(game->mode()));
    print_matrix("defender payoff", game->defender(), routes, malware);
    print_matrix("attacker payoff", game->attacker(), routes, malware);
    fmt::print("\n");
    print_report("maximin (iRouting plan)", maximin, routes, malware);
    fmt::print("  guaranteed value {:.6g}, attacker LP value {:.6g}\n",
               maximin.game_value, maximin.upper_value);
    fmt::print("Nash equilibria: {}{}\n", ne.equilibria.size(),
               ne.degenerate ? " (degenerate game, representatives only)" : "");
    for (std::size_t i = 0; i < ne.equilibria.size(); ++i) {
      print_report(fmt::format("  NE {}", i + 1).c_str(), ne.equilibria[i],
                   routes, malware);
    }
    print_report("strong Stackelberg (mixed commitment)", sse, routes, malware);
    print_report("strong Stackelberg (pure commitment)", pure, routes, malware);
  }
  finish(c, {{"solution.json", result.dump(2) + "\n"}},
         sha256_hex(source.dump()), source);
  return kOk;
}

int run_simulate(const Common& c, const std::string& policy,
                 const std::string& attacker, std::size_t case_index,
                 std::size_t topology_index, bool trace) {
  CampaignConfig cfg = load(c);
  if (trace) cfg.trace = true;
  if (case_index >= cfg.cases.size() || topology_index >= cfg.topology_count) {
    throw ConfigError("--case/--topology outside the configured grid");
  }
  const auto pk = defender_kind_from_string(policy);
  const auto ak = attacker_kind_from_string(attacker);
  const auto rep =
      run_experiment(cfg, case_index, topology_index, pk, ak, cfg.trace);
  const CampaignRow row = summarize(rep);
  const std::string csv = campaign_csv({row});
  fmt::print("case {} topology {} seed {}: {} routes, max hops {}\n",
             rep.case_label, topology_index, rep.topology_seed,
             rep.route_count, rep.max_hops);
  fmt::print("policy {} vs attacker {}\n", to_string(pk), to_string(ak));
  fmt::print("  delivery plan {}\n",
             strategy_text(MixedStrategy(rep.delivery_plan)));
  fmt::print("  attack plan   {}\n",
             strategy_text(MixedStrategy(rep.attack_plan)));
  fmt::print("  expected U_d  {:.6g}\n", rep.expected_defender_utility);
  fmt::print("{}", csv);
  std::map<std::string, std::string> outputs{{"experiment.csv", csv}};
  if (cfg.trace) outputs["sessions.jsonl"] = session_trace_jsonl({rep});
  finish(c, outputs, config_hash(cfg), config_to_json(cfg));
  return kOk;
}

int run_campaign(const Common& c, std::optional<std::size_t> threads) {
  CampaignConfig cfg = load(c);
  if (threads) cfg.threads = *threads;
  const auto start = std::chrono::steady_clock::now();
  const CampaignTable table = aggregate_campaign(cfg);
  const double secs = std::chrono::duration<double>(
                          std::chrono::steady_clock::now() - start)
                          .count();
  for (const auto& f : table.failures) {
    fmt::print(stderr, "cell case {} topology {} failed: {}\n", f.case_label,
               f.topology_index, f.error);
  }
  const std::string csv = campaign_csv(table.rows);
  std::map<std::string, std::string> outputs{{"campaign.csv", csv}};
  if (cfg.trace) outputs["sessions.jsonl"] = session_trace_jsonl(table.traces);
  Common out = c;
  if (out.out.empty()) out.out = cfg.out_dir;
  finish(out, outputs, config_hash(cfg), config_to_json(cfg));
  fmt::print("{} rows, {} failed cells, {:.1f} s\n", table.rows.size(),
             table.failures.size(), secs);
  if (table.rows.empty() && !table.failures.empty()) return kNoRoute;
  return kOk;
}

Json stats_json(const CheckStats& s) {
  return {{"passed", s.passed},
          {"failed", s.failed},
          {"worst_deviation", s.worst_deviation}};
}

void print_stats(std::string_view name, const CheckStats& s) {
  fmt::print("  {:<28} {:>5} passed {:>3} failed  worst {:.3g}\n", name,
             s.passed, s.failed, s.worst_deviation);
}

int run_verify(const Common& c, std::size_t count) {
  const std::uint64_t seed = c.seed.value_or(1);
  const TheoremReport th = verify_theorems(seed, count);
  const OracleReport orc = run_oracle_checks(seed);
  fmt::print("equivalence checks on {} random instances\n", th.instances);
  print_stats("maximin scaled == zero-sum", th.maximin_equal);
  print_stats("SSE == maximin", th.sse_maximin);
  print_stats("best responses", th.best_response);
  print_stats("NE sets", th.ne_sets);
  fmt::print("oracle cross-checks\n");
  print_stats("grid oracle", orc.grid);
  print_stats("support enumeration", orc.enumeration);
  print_stats("primal == dual", orc.minimax);
  for (const auto& s : th.counterexamples) fmt::print("{}\n", s);
  for (const auto& s : orc.counterexamples) fmt::print("{}\n", s);
  const bool ok = th.all_passed() && orc.all_passed();
  fmt::print("{}\n", ok ? "all checks passed" : "VERIFICATION FAILED");
  Json doc = {{"seed", seed},
              {"count", count},
              {"maximin_equal", stats_json(th.maximin_equal)},
              {"sse_maximin", stats_json(th.sse_maximin)},
              {"best_response", stats_json(th.best_response)},
              {"ne_sets", stats_json(th.ne_sets)},
              {"grid", stats_json(orc.grid)},
              {"enumeration", stats_json(orc.enumeration)},
              {"minimax", stats_json(orc.minimax)},
              {"passed", ok}};
  const Json cfg = {{"seed", seed}, {"count", count}};
  finish(c, {{"verify.json", doc.dump(2) + "\n"}}, sha256_hex(cfg.dump()), cfg);
  return ok ? kOk : kVerifyFailed;
}

int run_topo(const Common& c, const std::string& input, std::size_t case_index,
             std::size_t topology_index) {
  const CampaignConfig cfg = load(c);
  Scenario sc = [&] {
    if (!input.empty()) {
      auto t = parse_topology(read_json_file(input), cfg.profile);
      return build_scenario(cfg, std::move(t), cfg.seed);
    }
    if (case_index >= cfg.cases.size() ||
        topology_index >= cfg.topology_count) {
      throw ConfigError("--case/--topology outside the configured grid");
    }
    return build_scenario(cfg, case_index, topology_index);
  }();
  const auto& t = sc.topology;
  fmt::print("{} devices, {} links, head {}, requestor {}, seed {}\n",
             t.devices.size(), t.edge_count(), t.devices[t.cluster_head].id,
             t.devices[t.requestor].id, sc.topology_seed);
  for (const auto& r : sc.catalog.routes) {
    std::string path = t.devices[t.cluster_head].id;
    for (const auto& id : r.relay_ids) path += " > " + id;
    path += " > " + t.devices[t.requestor].id;
    fmt::print("  route {:>2}: {} (cost {:.4g})\n", r.index + 1, path,
               r.total_cost());
  }
  Json doc = topology_to_json(t, cfg.profile);
  finish(c, {{"topology.json", doc.dump(2) + "\n"}}, config_hash(cfg),
         config_to_json(cfg));
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Malware detection game: solve, simulate and verify"};
  app.require_subcommand(1);
  Common common;
  for (int i = 0; i < argc; ++i) {
    common.command += (i ? " " : "") + std::string(argv[i]);
  }

  auto add_common = [&](CLI::App* sub, bool config = true) {
    if (config) {
      sub->add_option("--config", common.config, "JSON configuration")
          ->check(CLI::ExistingFile);
    }
    sub->add_option("--seed", common.seed, "master seed");
    sub->add_option("--out", common.out, "output directory");
  };

  std::string matrix, policy = "irouting", attacker = "nash", input;
  std::size_t case_index = 0, topology_index = 0, count = 200;
  std::optional<std::size_t> threads;
  bool json = false, trace = false;

  auto* solve = app.add_subcommand("solve", "solve one game");
  add_common(solve);
  solve->add_option("--matrix", matrix, "explicit bimatrix JSON")
      ->check(CLI::ExistingFile);
  solve->add_option("--case", case_index, "case index");
  solve->add_option("--topology", topology_index, "topology index");
  solve->add_flag("--json", json, "print the result as JSON");

  auto* simulate = app.add_subcommand("simulate", "run one experiment");
  add_common(simulate);
  simulate->add_option("--policy", policy,
                       "irouting|proportional|fewest_hops|cached_shortest");
  simulate->add_option("--attacker", attacker, "nash|uniform|weighted");
  simulate->add_option("--case", case_index, "case index");
  simulate->add_option("--topology", topology_index, "topology index");
  simulate->add_flag("--trace", trace, "dump sessions as JSON lines");

  auto* campaign = app.add_subcommand("campaign", "run the full grid");
  add_common(campaign);
  campaign->add_option("--threads", threads, "worker threads, 0 for all");

  auto* verify = app.add_subcommand("verify", "equivalence and oracle checks");
  add_common(verify, false);
  verify->add_option("--count", count, "random instances");

  auto* topo = app.add_subcommand("topo", "generate or import a topology");
  add_common(topo);
  topo->add_option("--input", input, "topology JSON to import")
      ->check(CLI::ExistingFile);
  topo->add_option("--case", case_index, "case index");
  topo->add_option("--topology", topology_index, "topology index");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kConfigError;
  }

  try {
    if (*solve) {
      return run_solve(common, matrix, case_index, topology_index, json);
    }
    if (*simulate) {
      return run_simulate(common, policy, attacker, case_index, topology_index,
                          trace);
    }
    if (*campaign) return run_campaign(common, threads);
    if (*verify) return run_verify(common, count);
    return run_topo(common, input, case_index, topology_index);
  } catch (const NoRouteError& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return kNoRoute;
  } catch (const GenerationError& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return kNoRoute;
  } catch (const VerificationError& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return kVerifyFailed;
  } catch (const ConfigError& e) {
    fmt::print(stderr, "config error: {}\n", e.what());
    return kConfigError;
  } catch (const ParameterError& e) {
    fmt::print(stderr, "config error: {}\n", e.what());
    return kConfigError;
  } catch (const DimensionError& e) {
    fmt::print(stderr, "config error: {}\n", e.what());
    return kConfigError;
  } catch (const std::exception& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return 1;
  }
}
