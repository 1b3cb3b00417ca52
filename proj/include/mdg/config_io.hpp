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

// JSON configuration, topology and matrix documents; CSV, JSON-lines and
// manifest output.

#ifndef MDG_CONFIG_IO_HPP_
#define MDG_CONFIG_IO_HPP_

#include <nlohmann/json.hpp>

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "mdg/campaign_config.hpp"
#include "mdg/game_model.hpp"
#include "mdg/simulator.hpp"
#include "mdg/topology.hpp"

namespace mdg {

using Json = nlohmann::json;

std::string_view tool_version();

// Missing keys take the defaults of CampaignConfig; unknown keys and
// out-of-range values raise ConfigError naming the offending key.
CampaignConfig parse_config(const Json& document);
CampaignConfig load_config(const std::filesystem::path& path);
Json config_to_json(const CampaignConfig& config);

SecurityProfile parse_profile(const Json& document);
Json profile_to_json(const SecurityProfile& profile);

ClusterTopology parse_topology(const Json& document,
                               const SecurityProfile& profile);
Json topology_to_json(const ClusterTopology& topology,
                      const SecurityProfile& profile);

// {"defender": [[...]], "attacker": [[...]], "routes": [...], "malware": [...]}
// with optional labels.
struct MatrixDocument {
  Matrix defender;
  Matrix attacker;
  std::vector<std::string> route_labels;
  std::vector<std::string> malware_labels;
};

MatrixDocument parse_matrix_document(const Json& document);
Json read_json_file(const std::filesystem::path& path);

// Fixed column order:
// case,seed,policy,attacker,replies,detection_rate,mean_Ud,
// mean_security_loss,mean_inspection_cost,blacklist_count
// Reals use 6 significant digits; undefined values are left empty.
std::string campaign_csv(const std::vector<CampaignRow>& rows);

// One JSON object per session.
std::string session_trace_jsonl(const std::vector<ExperimentReport>& reports);

std::string sha256_hex(std::string_view data);

// Hash of the canonical (key-sorted) JSON form of the configuration.
std::string config_hash(const CampaignConfig& config);

struct RunManifest {
  std::string config_hash;
  std::string tool_version;
  std::string timestamp;  // UTC, ISO 8601
  std::string command;
  std::map<std::string, std::string> checksums;  // file name -> sha256
  Json config;
};

Json manifest_to_json(const RunManifest& manifest);

// Writes to a temporary sibling and renames into place.
void write_file_atomic(const std::filesystem::path& path,
                       std::string_view contents);

// Writes every named output plus manifest.json into `dir`; fills the
// manifest checksums. Returns the manifest path.
std::filesystem::path emit_results(
    const std::filesystem::path& dir,
    const std::map<std::string, std::string>& outputs, RunManifest manifest);

}  // namespace mdg

#endif  // MDG_CONFIG_IO_HPP_
