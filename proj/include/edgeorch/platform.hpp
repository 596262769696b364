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
#include <string>
#include <vector>

#include "edgeorch/catalog.hpp"
#include "edgeorch/dataflow.hpp"
#include "edgeorch/discovery.hpp"
#include "edgeorch/kernel.hpp"
#include "edgeorch/migration.hpp"
#include "edgeorch/report.hpp"
#include "edgeorch/scenario.hpp"
#include "edgeorch/scheduler.hpp"
#include "edgeorch/topology.hpp"

namespace edgeorch {

/// One simulated deployment: every module wired to a single kernel and
/// driven by a scenario's script.
///
/// While a cloud partition is active (or every cloud node is down) the
/// central controller is unreachable. Decisions that need it (installs,
/// roams, deploys, scaling and scheduler ticks) are queued and replayed, in
/// order, once it comes back; gateways and edge modules keep running.
class Platform {
 public:
  explicit Platform(Scenario scenario, std::optional<std::uint64_t> seed = std::nullopt);

  Platform(const Platform&) = delete;
  Platform& operator=(const Platform&) = delete;

  /// Run to the scenario's duration (or `until`, whichever is earlier).
  const Trace& run(std::optional<SimTime> until = std::nullopt);

  /// Schedule an extra fault on top of the scripted ones.
  void inject_fault(const Fault& fault);

  const Scenario& scenario() const noexcept { return scenario_; }
  const Kernel& kernel() const noexcept { return kernel_; }
  const Trace& trace() const noexcept { return kernel_.trace(); }
  const Topology& topology() const noexcept { return topology_; }
  const Catalog& catalog() const noexcept { return catalog_; }
  const Discovery& discovery() const noexcept { return discovery_; }
  const Scheduler& scheduler() const noexcept { return scheduler_; }
  const Migrator& migrator() const noexcept { return migrator_; }
  const Dataflow& dataflow() const noexcept { return dataflow_; }
  bool controller_available() const { return !faults_.controller_unavailable(); }

 private:
  struct DeferredInstall {
    InstallRequest request;
  };
  using DeferredCommand = std::variant<DeferredInstall, DeployPayload, ScalePayload>;

  void setup();
  void handle(const Event& e);

  void on_attach(const AttachPayload& p);
  void on_detach(const DetachPayload& p);
  void on_roam(const RoamPayload& p);
  void on_deploy(const DeployPayload& p);
  void on_scale(const ScalePayload& p);
  void on_user_status(const UserStatusPayload& p);
  void on_tick();
  void on_fault_start(const Fault& f);
  void on_fault_end(const Fault& f);
  void on_migration_complete(const InstanceId& id);

  void handle_install(const InstallRequest& req);
  void start_roam(const DeviceId& device, const NodeId& to_gateway);
  void run_tick(std::optional<SimTime> replay_of);
  void replay_deferred();
  void run_command(const DeferredCommand& cmd);

  void advance_flows(SimTime now);
  void refresh_routes();
  FlowRoute route_for(const Flow& f) const;
  void emit_alloc_changes();
  void emit_status(const AppInstance& inst);
  void emit_warning(const std::string& subject, const std::string& reason, const std::string& detail);
  void emit_migration_started(const MigrationRecord& rec, const std::string& reason);

  Scenario scenario_;
  SimTime end_ms_ = 0;
  Kernel kernel_;
  Topology topology_;
  Catalog catalog_;
  Discovery discovery_;
  Scheduler scheduler_;
  Migrator migrator_;
  Dataflow dataflow_;
  FaultInjector faults_;

  bool started_ = false;
  SimTime last_flow_time_ = 0;
  std::map<NodeId, ResourceVector> last_alloc_;
  std::map<InstanceId, std::string> migration_reason_;
  std::vector<DeferredCommand> deferred_commands_;
  std::vector<SimTime> deferred_ticks_;
};

struct RunOptions {
  std::optional<std::uint64_t> seed;
  std::optional<SimTime> until;
};

struct RunResult {
  Trace trace;
  Report report;
};

RunResult run_scenario(const Scenario& scenario, const RunOptions& options = {});

}  // namespace edgeorch
