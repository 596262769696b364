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
#include <span>
#include <vector>

#include "edgeorch/instance.hpp"
#include "edgeorch/scheduler.hpp"
#include "edgeorch/topology.hpp"

namespace edgeorch {

struct MigrationRecord {
  InstanceId instance;
  NodeId from;
  NodeId to;
  SimTime started_at = 0;
  SimTime completed_at = 0;
  double bytes_moved_mb = 0.0;
  SimTime downtime_ms = 0;
  std::uint64_t state_version = 0;

  bool operator==(const MigrationRecord&) const = default;
};

/// Stop-and-copy cost of moving `size_mb` along `path`:
/// size * 8 / (slowest link in Mbps) seconds plus the summed link latencies,
/// in milliseconds. Throws LinkDown if any link is down.
double transfer_duration(double size_mb, std::span<const Link> path);

/// Transfer time rounded up to the simulation clock resolution.
SimTime to_sim_duration(double duration_ms) noexcept;

/// Stop-and-copy mover for both Data-App offloads and IoT-App roaming.
///
/// A migration is two calls: migrate() snapshots the state, reserves on the
/// target and marks the instance Migrating; complete() releases the source
/// and resumes the instance on the target. In between, the reservation
/// exists on both nodes, never on neither.
class Migrator {
 public:
  Migrator(Topology& topology, Scheduler& scheduler) : topology_(topology), scheduler_(scheduler) {}

  /// Transfer time between two nodes over the current minimum-latency path.
  double transfer_duration(double size_mb, const NodeId& from, const NodeId& to) const;

  /// Returns the planned record; completed_at is when complete() is due.
  /// Migrating to the current host is a zero-downtime no-op record.
  MigrationRecord migrate(const InstanceId& id, const NodeId& target, SimTime now);
  MigrationRecord complete(const InstanceId& id, SimTime now);

  /// Move the IoT-App bound to `device` onto `to_gateway`. On a full target
  /// the instance is stopped in place and TargetGatewayFull is thrown.
  MigrationRecord roam(const DeviceId& device, const NodeId& to_gateway, SimTime now);

  bool in_flight(const InstanceId& id) const noexcept { return in_flight_.count(id) != 0; }
  const std::vector<MigrationRecord>& completed() const noexcept { return completed_; }
  /// Snapshot taken at migrate() time for an in-flight instance.
  const StateBlob& snapshot(const InstanceId& id) const;

 private:
  struct InFlight {
    MigrationRecord record;
    StateBlob snapshot;
    bool source_reserved = true;
  };

  MigrationRecord start(AppInstance& inst, const NodeId& target, SimTime now, bool allow_stopped);

  Topology& topology_;
  Scheduler& scheduler_;
  std::map<InstanceId, InFlight> in_flight_;
  std::vector<MigrationRecord> completed_;
};

}  // namespace edgeorch
