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

#include <map>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "edgeorch/catalog.hpp"
#include "edgeorch/discovery.hpp"
#include "edgeorch/instance.hpp"
#include "edgeorch/topology.hpp"

namespace edgeorch {

class Migrator;
struct MigrationRecord;

/// Hysteresis pair for the offload loop: an edge above `high` sheds Data-Apps
/// until it is at or below `low`.
struct Thresholds {
  double high = 0.8;
  double low = 0.6;

  /// Throws InvalidThresholds unless 0 < low < high <= 1.
  void validate() const;
  bool operator==(const Thresholds&) const = default;
};

struct PlacementRequest {
  AppId app;
  NodeId source;
  std::int64_t replicas = 1;
};

struct Offload {
  InstanceId instance;
  NodeId from;
  NodeId target;
  bool operator==(const Offload&) const = default;
};

struct Defer {
  /// Empty when the node has nothing movable left at all.
  InstanceId instance;
  NodeId node;
  std::string reason;
  bool operator==(const Defer&) const = default;
};

using Action = std::variant<Offload, Defer>;

inline constexpr const char* kNoFeasibleTarget = "NoFeasibleTarget";
inline constexpr const char* kNoMovableInstance = "NoMovableInstance";

/// Candidate filter shared by placement and offload target selection.
struct HostQuery {
  const AppSpec* app = nullptr;
  NodeId source;
  std::int64_t replicas = 1;
  std::set<NodeId> exclude;
  /// When set, EdgeModule targets must stay at or below this utilization
  /// after taking the load. Used for offloads so a target never becomes the
  /// next overloaded node.
  std::optional<double> edge_headroom;
};

/// Minimum latency from the source, then most free bottleneck capacity, then
/// smallest node id. Evaluated against `snapshot`, not the live topology.
std::optional<NodeId> choose_host(const Topology& snapshot, const HostQuery& query);

/// Central orchestrator: owns every application instance, places and scales
/// them, and decides threshold-driven offloads.
class Scheduler {
 public:
  Scheduler(Topology& topology, const Catalog& catalog, Thresholds thresholds = {});

  const AppInstance& place(const PlacementRequest& req);
  const AppInstance& install_iot_app(const InstallRequest& request);
  void scale(const InstanceId& id, std::int64_t new_replicas);

  /// Pure decision step; the live topology is not modified.
  std::vector<Action> check_thresholds(SimTime now) const;
  /// Throws StaleAction when an Offload no longer holds against the live
  /// topology. Returns the started migration for an Offload.
  std::optional<MigrationRecord> apply_action(const Action& action, Migrator& migrator,
                                              SimTime now);

  const Thresholds& thresholds() const noexcept { return thresholds_; }
  const Catalog& catalog() const noexcept { return catalog_; }
  const std::map<InstanceId, AppInstance>& instances() const noexcept { return instances_; }
  const AppInstance& instance(const InstanceId& id) const;
  AppInstance& mutable_instance(const InstanceId& id);
  ResourceVector reservation(const AppInstance& inst) const;

  /// IoT-App instance bound to `device`, if any.
  const AppInstance* bound_instance(const DeviceId& device) const;
  /// First non-stopped Data-App instance fed by `source`.
  const AppInstance* serving_instance(const NodeId& source) const;
  /// First instance of `app` (optionally restricted to a source), by id.
  const AppInstance* find_instance(const AppId& app, const std::optional<NodeId>& source) const;

  /// Stop an instance and hand its reservation back.
  void stop(const InstanceId& id);

 private:
  InstanceId next_id(const AppId& app);
  bool offload_still_valid(const Offload& o) const;

  Topology& topology_;
  const Catalog& catalog_;
  Thresholds thresholds_;
  std::map<InstanceId, AppInstance> instances_;
  std::map<AppId, int> counters_;
};

}  // namespace edgeorch
