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

#include "edgeorch/migration.hpp"

#include <algorithm>
#include <cmath>

#include "edgeorch/error.hpp"

namespace edgeorch {

double transfer_duration(double size_mb, std::span<const Link> path) {
  if (path.empty()) fail(ErrorCode::Unreachable, "empty transfer path");
  if (!(size_mb >= 0.0)) fail(ErrorCode::InvalidArgument, "negative size");
  double min_bw = path.front().bandwidth_mbps;
  double latency = 0.0;
  for (const Link& l : path) {
    if (!l.up) fail(ErrorCode::LinkDown, l.id);
    min_bw = std::min(min_bw, l.bandwidth_mbps);
    latency += l.latency_ms;
  }
  return size_mb * 8.0 / min_bw * 1000.0 + latency;
}

SimTime to_sim_duration(double duration_ms) noexcept {
  // Absorb representation noise such as 8002.0000000001 before rounding up.
  return static_cast<SimTime>(std::ceil(duration_ms - 1e-9));
}

double Migrator::transfer_duration(double size_mb, const NodeId& from, const NodeId& to) const {
  auto ids = topology_.shortest_path(from, to);
  if (!ids) fail(ErrorCode::Unreachable, from + " -> " + to);
  if (ids->empty()) return 0.0;
  std::vector<Link> links;
  links.reserve(ids->size());
  for (const auto& id : *ids) links.push_back(topology_.link(id));
  return edgeorch::transfer_duration(size_mb, links);
}

const StateBlob& Migrator::snapshot(const InstanceId& id) const {
  auto it = in_flight_.find(id);
  if (it == in_flight_.end()) fail(ErrorCode::UnknownInstance, id + " is not migrating");
  return it->second.snapshot;
}

MigrationRecord Migrator::start(AppInstance& inst, const NodeId& target, SimTime now,
                                bool allow_stopped) {
  const bool stopped = inst.status == InstanceStatus::Stopped;
  if (inst.status != InstanceStatus::Running && !(allow_stopped && stopped)) {
    fail(ErrorCode::InstanceNotRunning, inst.id);
  }
  if (inst.host == target) {
    return MigrationRecord{inst.id, target, target, now, now, 0.0, 0, inst.state.version};
  }

  const AppSpec& spec = scheduler_.catalog().app(inst.app);
  const ResourceVector res = scheduler_.reservation(inst);
  if (!topology_.has_node(target)) fail(ErrorCode::TargetInfeasible, target + " does not exist");
  const Node& tnode = topology_.node(target);
  if (!tnode.up) fail(ErrorCode::TargetInfeasible, target + " is down");
  if (!spec.allowed_tiers.count(tnode.tier)) fail(ErrorCode::TargetInfeasible, target + ": tier");
  if (!topology_.can_reserve(target, res)) fail(ErrorCode::TargetInfeasible, target + ": capacity");
  if (spec.latency_requirement_ms) {
    auto lat = topology_.try_path_latency(inst.source, target);
    if (!lat || *lat > *spec.latency_requirement_ms) {
      fail(ErrorCode::TargetInfeasible, target + ": latency requirement");
    }
  }
  auto path = topology_.shortest_path(inst.host, target);
  if (!path) fail(ErrorCode::TargetInfeasible, inst.host + " -> " + target + " unreachable");

  const double duration = transfer_duration(inst.state.size_mb, inst.host, target);
  const SimTime downtime = to_sim_duration(duration);

  topology_.reserve(target, res);
  InFlight f;
  f.snapshot = inst.state;
  f.source_reserved = !stopped;
  f.record = MigrationRecord{inst.id, inst.host, target, now, now + downtime,
                             inst.state.size_mb, downtime, inst.state.version};
  inst.status = InstanceStatus::Migrating;
  inst.migration_target = target;
  MigrationRecord planned = f.record;
  in_flight_.emplace(inst.id, std::move(f));
  return planned;
}

MigrationRecord Migrator::migrate(const InstanceId& id, const NodeId& target, SimTime now) {
  return start(scheduler_.mutable_instance(id), target, now, /*allow_stopped=*/false);
}

MigrationRecord Migrator::complete(const InstanceId& id, SimTime now) {
  auto it = in_flight_.find(id);
  if (it == in_flight_.end()) fail(ErrorCode::UnknownInstance, id + " is not migrating");
  InFlight f = std::move(it->second);
  in_flight_.erase(it);

  AppInstance& inst = scheduler_.mutable_instance(id);
  if (f.source_reserved) topology_.release(f.record.from, scheduler_.reservation(inst));
  inst.host = f.record.to;
  if (scheduler_.catalog().app(inst.app).kind == AppKind::IoTApp) inst.source = f.record.to;
  inst.state = f.snapshot;
  inst.status = InstanceStatus::Running;
  inst.migration_target.reset();

  f.record.completed_at = now;
  completed_.push_back(f.record);
  return f.record;
}

MigrationRecord Migrator::roam(const DeviceId& device, const NodeId& to_gateway, SimTime now) {
  const AppInstance* bound = scheduler_.bound_instance(device);
  if (!bound) fail(ErrorCode::NoBoundApp, device);
  AppInstance& inst = scheduler_.mutable_instance(bound->id);
  if (topology_.node(to_gateway).tier != Tier::Gateway) fail(ErrorCode::NotAGateway, to_gateway);
  if (inst.host == to_gateway) {
    return MigrationRecord{inst.id, to_gateway, to_gateway, now, now, 0.0, 0, inst.state.version};
  }
  if (inst.status == InstanceStatus::Migrating) fail(ErrorCode::InstanceNotRunning, inst.id);

  const ResourceVector res = scheduler_.reservation(inst);
  const Node& gw = topology_.node(to_gateway);
  if (!gw.up || !topology_.can_reserve(to_gateway, res)) {
    scheduler_.stop(inst.id);
    fail(ErrorCode::TargetGatewayFull, to_gateway + " cannot host " + inst.id);
  }
  return start(inst, to_gateway, now, /*allow_stopped=*/true);
}

}  // namespace edgeorch
