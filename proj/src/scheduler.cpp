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

#include "edgeorch/scheduler.hpp"

#include <algorithm>
#include <tuple>

#include "edgeorch/error.hpp"
#include "edgeorch/migration.hpp"

namespace edgeorch {

std::string_view to_string(InstanceStatus s) noexcept {
  switch (s) {
    case InstanceStatus::Pending: return "pending";
    case InstanceStatus::Running: return "running";
    case InstanceStatus::Migrating: return "migrating";
    case InstanceStatus::Stopped: return "stopped";
  }
  return "unknown";
}

void Thresholds::validate() const {
  if (!(low > 0.0 && low < high && high <= 1.0)) {
    fail(ErrorCode::InvalidThresholds,
         "need 0 < low < high <= 1, got low=" + std::to_string(low) + " high=" + std::to_string(high));
  }
}

std::optional<NodeId> choose_host(const Topology& snapshot, const HostQuery& q) {
  const AppSpec& app = *q.app;
  const ResourceVector need = app.demand * q.replicas;
  if (!snapshot.has_node(q.source)) return std::nullopt;

  std::optional<std::tuple<double, double, NodeId>> best;
  for (const auto& [id, node] : snapshot.nodes()) {
    if (!node.up || q.exclude.count(id) || !app.allowed_tiers.count(node.tier)) continue;
    if (!(node.alloc + need).fits_within(node.capacity)) continue;
    if (q.edge_headroom && node.tier == Tier::EdgeModule &&
        bottleneck_fraction(node.alloc + need, node.capacity) > *q.edge_headroom) {
      continue;
    }
    auto lat = snapshot.try_path_latency(q.source, id);
    if (!lat) continue;
    if (app.latency_requirement_ms && *lat > *app.latency_requirement_ms) continue;
    // Negated free fraction so that a plain lexicographic min picks the most
    // free node on a latency tie.
    double neg_free = -(1.0 - bottleneck_fraction(node.alloc, node.capacity));
    std::tuple<double, double, NodeId> key{*lat, neg_free, id};
    if (!best || key < *best) best = key;
  }
  if (!best) return std::nullopt;
  return std::get<2>(*best);
}

Scheduler::Scheduler(Topology& topology, const Catalog& catalog, Thresholds thresholds)
    : topology_(topology), catalog_(catalog), thresholds_(thresholds) {
  thresholds_.validate();
}

InstanceId Scheduler::next_id(const AppId& app) {
  return app + "#" + std::to_string(++counters_[app]);
}

ResourceVector Scheduler::reservation(const AppInstance& inst) const {
  return catalog_.app(inst.app).demand * inst.replicas;
}

const AppInstance& Scheduler::instance(const InstanceId& id) const {
  auto it = instances_.find(id);
  if (it == instances_.end()) fail(ErrorCode::UnknownInstance, id);
  return it->second;
}

AppInstance& Scheduler::mutable_instance(const InstanceId& id) {
  auto it = instances_.find(id);
  if (it == instances_.end()) fail(ErrorCode::UnknownInstance, id);
  return it->second;
}

const AppInstance& Scheduler::place(const PlacementRequest& req) {
  const AppSpec& app = catalog_.app(req.app);
  if (req.replicas < 1) fail(ErrorCode::InvalidReplicas, req.app);
  if (!topology_.has_node(req.source)) fail(ErrorCode::UnknownNode, req.source);

  auto host = choose_host(topology_, HostQuery{&app, req.source, req.replicas, {}, std::nullopt});
  if (!host) fail(ErrorCode::Unschedulable, req.app + " from " + req.source);

  AppInstance inst;
  inst.id = next_id(app.id);
  inst.app = app.id;
  inst.host = *host;
  inst.source = req.source;
  inst.replicas = req.replicas;
  inst.state.size_mb = app.state_size_mb;
  topology_.reserve(*host, app.demand * req.replicas);
  inst.status = InstanceStatus::Running;
  auto [it, _] = instances_.emplace(inst.id, std::move(inst));
  return it->second;
}

const AppInstance& Scheduler::install_iot_app(const InstallRequest& request) {
  const AppSpec& app = catalog_.app(request.app);
  if (app.kind != AppKind::IoTApp) fail(ErrorCode::TierViolation, request.app + " is not an IoT-App");
  const Node& gw = topology_.node(request.gateway);
  if (gw.tier != Tier::Gateway) fail(ErrorCode::NotAGateway, request.gateway);

  if (const AppInstance* existing = bound_instance(request.device)) {
    if (existing->host != request.gateway) {
      fail(ErrorCode::AlreadyAttachedElsewhere,
           existing->id + " runs on " + existing->host + "; roam it instead");
    }
    if (existing->status != InstanceStatus::Stopped) return *existing;
    // Restart a stopped instance in place; its state never left this gateway.
    if (!topology_.can_reserve(request.gateway, app.demand)) {
      fail(ErrorCode::GatewayFull, request.gateway);
    }
    AppInstance& inst = mutable_instance(existing->id);
    topology_.reserve(request.gateway, app.demand);
    inst.status = InstanceStatus::Running;
    return inst;
  }

  if (!gw.up || !topology_.can_reserve(request.gateway, app.demand)) {
    fail(ErrorCode::GatewayFull, request.gateway + " cannot host " + app.id);
  }
  AppInstance inst;
  inst.id = next_id(app.id);
  inst.app = app.id;
  inst.host = request.gateway;
  inst.source = request.gateway;
  inst.replicas = 1;
  inst.bound_device = request.device;
  inst.state.size_mb = app.state_size_mb;
  topology_.reserve(request.gateway, app.demand);
  inst.status = InstanceStatus::Running;
  auto [it, _] = instances_.emplace(inst.id, std::move(inst));
  return it->second;
}

void Scheduler::scale(const InstanceId& id, std::int64_t new_replicas) {
  AppInstance& inst = mutable_instance(id);
  if (new_replicas < 1) fail(ErrorCode::InvalidReplicas, id);
  if (inst.status != InstanceStatus::Running) fail(ErrorCode::InstanceNotRunning, id);
  if (new_replicas == inst.replicas) return;
  const ResourceVector per = catalog_.app(inst.app).demand;
  if (new_replicas > inst.replicas) {
    topology_.reserve(inst.host, per * (new_replicas - inst.replicas));
  } else {
    topology_.release(inst.host, per * (inst.replicas - new_replicas));
  }
  inst.replicas = new_replicas;
}

void Scheduler::stop(const InstanceId& id) {
  AppInstance& inst = mutable_instance(id);
  if (inst.status == InstanceStatus::Running) topology_.release(inst.host, reservation(inst));
  inst.status = InstanceStatus::Stopped;
}

const AppInstance* Scheduler::bound_instance(const DeviceId& device) const {
  for (const auto& [id, inst] : instances_) {
    if (inst.bound_device == device) return &inst;
  }
  return nullptr;
}

const AppInstance* Scheduler::serving_instance(const NodeId& source) const {
  for (const auto& [id, inst] : instances_) {
    if (inst.source != source || inst.status == InstanceStatus::Stopped) continue;
    if (catalog_.app(inst.app).kind == AppKind::DataApp) return &inst;
  }
  return nullptr;
}

const AppInstance* Scheduler::find_instance(const AppId& app,
                                            const std::optional<NodeId>& source) const {
  for (const auto& [id, inst] : instances_) {
    if (inst.app != app || inst.status == InstanceStatus::Stopped) continue;
    if (source && inst.source != *source) continue;
    return &inst;
  }
  return nullptr;
}

std::vector<Action> Scheduler::check_thresholds(SimTime /*now*/) const {
  // Plan against a snapshot in which every in-flight migration has already
  // released its source, so one overload is never answered twice.
  Topology snapshot = topology_;
  for (const auto& [id, inst] : instances_) {
    if (inst.status == InstanceStatus::Migrating && inst.migration_target) {
      snapshot.release(inst.host, reservation(inst));
    }
  }

  std::vector<Action> actions;
  std::set<InstanceId> decided;
  for (const NodeId& edge : snapshot.nodes_in_tier(Tier::EdgeModule)) {
    if (!snapshot.node(edge).up) continue;
    if (snapshot.utilization(edge) <= thresholds_.high) continue;

    bool moved_or_deferred = false;
    while (snapshot.utilization(edge) > thresholds_.low) {
      const AppInstance* victim = nullptr;
      double victim_share = -1.0;
      for (const auto& [id, inst] : instances_) {
        if (inst.host != edge || inst.status != InstanceStatus::Running || decided.count(id)) continue;
        const AppSpec& spec = catalog_.app(inst.app);
        if (spec.kind != AppKind::DataApp) continue;
        double share = bottleneck_fraction(reservation(inst), snapshot.node(edge).capacity);
        if (share > victim_share) {
          victim = &inst;
          victim_share = share;
        }
      }
      if (!victim) break;
      decided.insert(victim->id);

      const AppSpec& spec = catalog_.app(victim->app);
      HostQuery q{&spec, victim->source, victim->replicas, {edge}, thresholds_.high};
      if (auto target = choose_host(snapshot, q)) {
        const ResourceVector res = reservation(*victim);
        snapshot.reserve(*target, res);
        snapshot.release(edge, res);
        actions.push_back(Offload{victim->id, edge, *target});
      } else {
        actions.push_back(Defer{victim->id, edge, kNoFeasibleTarget});
      }
      moved_or_deferred = true;
    }
    if (!moved_or_deferred) actions.push_back(Defer{"", edge, kNoMovableInstance});
  }
  return actions;
}

bool Scheduler::offload_still_valid(const Offload& o) const {
  auto it = instances_.find(o.instance);
  if (it == instances_.end()) return false;
  const AppInstance& inst = it->second;
  if (inst.status != InstanceStatus::Running || inst.host != o.from) return false;
  if (!topology_.has_node(o.target)) return false;
  const Node& target = topology_.node(o.target);
  const AppSpec& spec = catalog_.app(inst.app);
  if (!target.up || !spec.allowed_tiers.count(target.tier)) return false;
  const ResourceVector res = reservation(inst);
  if (!topology_.can_reserve(o.target, res)) return false;
  if (target.tier == Tier::EdgeModule &&
      bottleneck_fraction(target.alloc + res, target.capacity) > thresholds_.high) {
    return false;
  }
  auto lat = topology_.try_path_latency(inst.source, o.target);
  if (!lat) return false;
  if (spec.latency_requirement_ms && *lat > *spec.latency_requirement_ms) return false;
  return topology_.shortest_path(o.from, o.target).has_value();
}

std::optional<MigrationRecord> Scheduler::apply_action(const Action& action, Migrator& migrator,
                                                       SimTime now) {
  if (std::holds_alternative<Defer>(action)) return std::nullopt;
  const auto& o = std::get<Offload>(action);
  if (!offload_still_valid(o)) {
    fail(ErrorCode::StaleAction, o.instance + " -> " + o.target);
  }
  return migrator.migrate(o.instance, o.target, now);
}

}  // namespace edgeorch
