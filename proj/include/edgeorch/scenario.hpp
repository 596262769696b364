/*
 * Copyright 2026 The edgeorch Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "edgeorch/catalog.hpp"
#include "edgeorch/kernel.hpp"
#include "edgeorch/scheduler.hpp"
#include "edgeorch/topology.hpp"

namespace edgeorch {

inline constexpr int kScenarioSchemaVersion = 1;

struct ScriptEntry {
  SimTime time = 0;
  EventKind kind = EventKind::Custom;
  EventPayload payload;
};

/// Declarative description of one run: infrastructure, catalog, the
/// scripted storyboard and the orchestrator knobs.
struct Scenario {
  int schema_version = kScenarioSchemaVersion;
  std::string name;
  std::uint64_t seed = 0;
  SimTime duration_ms = 0;
  SimTime scheduler_tick_ms = 1000;
  SimTime flow_tick_ms = 100;
  SimTime metrics_window_ms = 1000;
  double buffer_mb = 10.0;
  Thresholds thresholds;

  std::vector<Node> nodes;
  std::vector<Link> links;
  std::vector<AppSpec> apps;
  std::vector<DeviceProfile> devices;
  std::vector<FirmwareEntry> firmware;
  std::vector<ScriptEntry> script;
};

/// Parse and fully validate. ParseError for malformed input,
/// UnknownReference for dangling ids, InvariantViolation otherwise.
Scenario parse_scenario(std::string_view json_text);
Scenario load_scenario(const std::filesystem::path& path);

/// Validation on an in-memory scenario, same error classes as parsing.
void validate(const Scenario& scenario);

/// Build the live topology / catalog a scenario describes.
Topology build_topology(const Scenario& scenario);
Catalog build_catalog(const Scenario& scenario);

}  // namespace edgeorch
