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

#include "edgeorch/platform.hpp"

#include <algorithm>

#include "edgeorch/error.hpp"

namespace edgeorch {
namespace {

ojson resources_json(const ResourceVector& r) {
  ojson j;
  j["cpu_millicores"] = r.cpu_millicores;
  j["mem_mb"] = r.mem_mb;
  j["storage_mb"] = r.storage_mb;
  return j;
}

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

}  // namespace

Platform::Platform(Scenario scenario, std::optional<std::uint64_t> seed)
    : scenario_((validate(scenario), std::move(scenario))),
      end_ms_(scenario_.duration_ms),
      kernel_(seed.value_or(scenario_.seed)),
      topology_(build_topology(scenario_)),
      catalog_(build_catalog(scenario_)),
      discovery_(topology_, catalog_),
      scheduler_(topology_, catalog_, scenario_.thresholds),
      migrator_(topology_, scheduler_),
      dataflow_(topology_, discovery_, catalog_, scenario_.buffer_mb),
      faults_(topology_) {
  if (seed) scenario_.seed = *seed;
  for (const auto& [id, n] : topology_.nodes()) last_alloc_[id] = n.alloc;
}

void Platform::inject_fault(const Fault& fault) {
  faults_.validate(fault);
  kernel_.schedule(fault.start, EventKind::FaultStart, FaultPayload{fault});
}

const Trace& Platform::run(std::optional<SimTime> until) {
  if (started_) fail(ErrorCode::InvalidArgument, "a platform runs once");
  started_ = true;
  if (until) end_ms_ = std::min(end_ms_, *until);
  setup();
  return kernel_.run(end_ms_, [this](const Event& e) { handle(e); });
}

void Platform::setup() {
  ojson start;
  start["scenario"] = scenario_.name;
  start["schema_version"] = scenario_.schema_version;
  start["seed"] = scenario_.seed;
  start["duration_ms"] = scenario_.duration_ms;
  start["end_ms"] = end_ms_;
  start["scheduler_tick_ms"] = scenario_.scheduler_tick_ms;
  start["flow_tick_ms"] = scenario_.flow_tick_ms;
  start["metrics_window_ms"] = scenario_.metrics_window_ms;
  start["buffer_mb"] = scenario_.buffer_mb;
  start["thresholds"] = {{"high", scenario_.thresholds.high}, {"low", scenario_.thresholds.low}};
  kernel_.emit("run_start", scenario_.name, std::move(start));

  for (const auto& [id, n] : topology_.nodes()) {
    ojson d = resources_json(n.capacity);
    d["tier"] = to_string(n.tier);
    kernel_.emit("node_added", id, std::move(d));
  }
  for (const auto& [id, l] : topology_.links()) {
    kernel_.emit("link_added", id,
                 {{"a", l.a}, {"b", l.b}, {"latency_ms", l.latency_ms}, {"bandwidth_mbps", l.bandwidth_mbps}});
  }
  for (const auto& [id, a] : catalog_.apps()) {
    ojson d;
    d["kind"] = to_string(a.kind);
    d["demand"] = resources_json(a.demand);
    d["aggregation_factor"] = a.aggregation_factor;
    d["state_mb"] = a.state_size_mb;
    if (a.latency_requirement_ms) d["latency_requirement_ms"] = *a.latency_requirement_ms;
    kernel_.emit("app_registered", id, std::move(d));
  }
  for (const auto& [model, p] : catalog_.profiles()) {
    kernel_.emit("profile_registered", model,
                 {{"os_version", p.os_version}, {"protocol", to_string(p.protocol)},
                  {"data_rate_kbps", p.data_rate_kbps}, {"iot_app", p.iot_app}});
  }
  for (const auto& f : catalog_.firmware()) {
    kernel_.emit("firmware_registered", f.model,
                 {{"os_version", f.os_version}, {"version", f.firmware_version}});
  }

  for (const auto& entry : scenario_.script) {
    kernel_.schedule(entry.time, entry.kind, entry.payload);
  }
  if (scenario_.flow_tick_ms < end_ms_) kernel_.schedule(scenario_.flow_tick_ms, EventKind::FlowAdvance);
  if (scenario_.scheduler_tick_ms < end_ms_) {
    kernel_.schedule(scenario_.scheduler_tick_ms, EventKind::SchedulerTick);
  }
  kernel_.schedule(end_ms_, EventKind::Custom, EndPayload{});
}

void Platform::handle(const Event& e) {
  advance_flows(e.time);
  const SimTime now = kernel_.now();

  switch (e.kind) {
    case EventKind::Attach: on_attach(std::get<AttachPayload>(e.payload)); break;
    case EventKind::Detach: on_detach(std::get<DetachPayload>(e.payload)); break;
    case EventKind::Roam: on_roam(std::get<RoamPayload>(e.payload)); break;
    case EventKind::WorkloadChange:
      if (const auto* d = std::get_if<DeployPayload>(&e.payload)) on_deploy(*d);
      if (const auto* s = std::get_if<ScalePayload>(&e.payload)) on_scale(*s);
      break;
    case EventKind::SchedulerTick:
      on_tick();
      if (now + scenario_.scheduler_tick_ms < end_ms_) {
        kernel_.schedule(now + scenario_.scheduler_tick_ms, EventKind::SchedulerTick);
      }
      break;
    case EventKind::FlowAdvance:
      if (now + scenario_.flow_tick_ms < end_ms_) {
        kernel_.schedule(now + scenario_.flow_tick_ms, EventKind::FlowAdvance);
      }
      break;
    case EventKind::FaultStart: {
      const Fault& f = std::get<FaultPayload>(e.payload).fault;
      on_fault_start(f);
      kernel_.schedule(now + f.duration, EventKind::FaultEnd, FaultPayload{f});
      break;
    }
    case EventKind::FaultEnd: on_fault_end(std::get<FaultPayload>(e.payload).fault); break;
    case EventKind::MigrationComplete:
      on_migration_complete(std::get<MigrationPayload>(e.payload).instance);
      break;
    case EventKind::Custom:
      if (const auto* u = std::get_if<UserStatusPayload>(&e.payload)) on_user_status(*u);
      if (std::holds_alternative<EndPayload>(e.payload)) {
        emit_alloc_changes();
        kernel_.emit("run_end", scenario_.name, {{"end_ms", now}});
        kernel_.stop();
        return;
      }
      break;
  }
  emit_alloc_changes();
}

// ---------------------------------------------------------------------------
// discovery and roaming

void Platform::on_attach(const AttachPayload& p) {
  DiscoveryOutcome out;
  try {
    out = discovery_.handle_attach(p.gateway, p.device, p.model, p.os_version, kernel_.now());
  } catch (const Error& e) {
    emit_warning(p.device, "attach_rejected", e.what());
    return;
  }
  kernel_.emit("attach", p.device,
               {{"gateway", p.gateway}, {"model", p.model}, {"os_version", p.os_version},
                {"repeat", !out.install_request.has_value()}});
  if (out.firmware_version) {
    kernel_.emit("firmware_resolved", p.device,
                 {{"model", p.model}, {"os_version", p.os_version}, {"firmware_version", *out.firmware_version}});
  } else {
    emit_warning(p.device, "firmware_missing", p.model + "/" + p.os_version);
  }
  if (!dataflow_.open_flow_of(p.device)) {
    FlowId id = dataflow_.open_unrouted(p.device, p.gateway);
    kernel_.emit("flow_opened", id,
                 {{"device", p.device}, {"gateway", p.gateway}, {"rate_kbps", dataflow_.flow(id).rate_kbps}});
  }
  if (out.install_request) {
    kernel_.emit("install_requested", p.device,
                 {{"app", out.install_request->app}, {"gateway", out.install_request->gateway}});
    handle_install(*out.install_request);
  }
}

void Platform::on_detach(const DetachPayload& p) {
  try {
    discovery_.handle_detach(p.gateway, p.device, kernel_.now());
  } catch (const Error& e) {
    emit_warning(p.device, "detach_rejected", e.what());
    return;
  }
  kernel_.emit("detach", p.device, {{"gateway", p.gateway}});
  if (const Flow* f = dataflow_.open_flow_of(p.device)) {
    FlowId id = f->id;
    dataflow_.close_flow(id);
    const Flow& c = dataflow_.flow(id);
    kernel_.emit("flow_closed", id,
                 {{"device", c.device}, {"generated_bits", c.generated_bits},
                  {"delivered_bits", c.delivered_bits}, {"dropped_bits", c.dropped_bits},
                  {"buffered_bits", c.buffered_bits}});
  }
}

void Platform::on_roam(const RoamPayload& p) {
  const Attachment* cur = discovery_.current(p.device);
  if (cur && cur->gateway == p.to_gateway) return;
  std::string model;
  if (cur) {
    model = cur->model;
  } else {
    for (const auto& a : discovery_.history()) {
      if (a.device_id == p.device) model = a.model;
    }
  }
  if (model.empty()) {
    emit_warning(p.device, "roam_unknown_device", "device has never attached");
    return;
  }
  if (cur) on_detach({p.device, cur->gateway});
  on_attach({p.device, p.to_gateway, model, catalog_.profile(model).os_version});
}

void Platform::handle_install(const InstallRequest& req) {
  if (!controller_available()) {
    deferred_commands_.push_back(DeferredInstall{req});
    kernel_.emit("command_deferred", req.device, {{"command", "install"}, {"gateway", req.gateway}});
    return;
  }
  const AppInstance* bound = scheduler_.bound_instance(req.device);
  if (bound && bound->host != req.gateway) {
    start_roam(req.device, req.gateway);
    return;
  }
  const bool fresh = !bound || bound->status == InstanceStatus::Stopped;
  try {
    const AppInstance& inst = scheduler_.install_iot_app(req);
    if (fresh) {
      kernel_.emit("iot_app_installed", inst.id,
                   {{"app", inst.app}, {"device", req.device}, {"gateway", inst.host}});
      emit_status(inst);
    }
  } catch (const Error& e) {
    if (e.code() != ErrorCode::GatewayFull) throw;
    emit_warning(req.device, "gateway_full", e.what());
  }
}

void Platform::start_roam(const DeviceId& device, const NodeId& to_gateway) {
  const AppInstance* bound = scheduler_.bound_instance(device);
  if (!bound) {
    emit_warning(device, "no_bound_app", device);
    return;
  }
  if (bound->status == InstanceStatus::Migrating) {
    // Picked up again when the running migration completes.
    kernel_.emit("roam_pending", device, {{"instance", bound->id}, {"to", to_gateway}});
    return;
  }
  const InstanceId id = bound->id;
  try {
    MigrationRecord rec = migrator_.roam(device, to_gateway, kernel_.now());
    if (rec.from == rec.to) {
      handle_install(InstallRequest{device, to_gateway, scheduler_.instance(id).app, kernel_.now()});
      return;
    }
    migration_reason_[id] = "roam";
    emit_migration_started(rec, "roam");
    emit_status(scheduler_.instance(id));
    kernel_.schedule(rec.completed_at, EventKind::MigrationComplete, MigrationPayload{id});
  } catch (const Error& e) {
    if (e.code() == ErrorCode::TargetGatewayFull) {
      emit_warning(device, "target_gateway_full", e.what());
      emit_status(scheduler_.instance(id));
    } else if (e.code() == ErrorCode::TargetInfeasible || e.code() == ErrorCode::Unreachable) {
      emit_warning(device, "roam_failed", e.what());
    } else {
      throw;
    }
  }
}

void Platform::on_migration_complete(const InstanceId& id) {
  MigrationRecord rec = migrator_.complete(id, kernel_.now());
  std::string reason = migration_reason_[id];
  migration_reason_.erase(id);
  kernel_.emit("migration_completed", id,
               {{"from", rec.from}, {"to", rec.to}, {"started_at", rec.started_at},
                {"completed_at", rec.completed_at}, {"bytes_moved_mb", rec.bytes_moved_mb},
                {"downtime_ms", rec.downtime_ms}, {"state_version", rec.state_version},
                {"reason", reason}});
  const AppInstance& inst = scheduler_.instance(id);
  emit_status(inst);

  if (inst.bound_device) {
    const DeviceId device = *inst.bound_device;
    kernel_.emit("status_updated", device,
                 {{"instance", id}, {"gateway", inst.host}, {"state_version", inst.state.version}});
    auto cur = discovery_.current_gateway(device);
    if (cur && *cur != inst.host) {
      handle_install(InstallRequest{device, *cur, inst.app, kernel_.now()});
    }
  }
}

void Platform::on_user_status(const UserStatusPayload& p) {
  const AppInstance* bound = scheduler_.bound_instance(p.device);
  if (!bound) {
    emit_warning(p.device, "no_bound_app", "user status for unmanaged device");
    return;
  }
  if (bound->status != InstanceStatus::Running) {
    emit_warning(p.device, "state_update_rejected",
                 bound->id + " is " + std::string(to_string(bound->status)));
    return;
  }
  AppInstance& inst = scheduler_.mutable_instance(bound->id);
  inst.state.set(p.key, p.value);
  kernel_.emit("state_updated", inst.id,
               {{"device", p.device}, {"key", p.key}, {"value", p.value}, {"state_version", inst.state.version}});
}

// ---------------------------------------------------------------------------
// workload and the threshold loop

void Platform::on_deploy(const DeployPayload& p) {
  if (!controller_available()) {
    deferred_commands_.push_back(p);
    kernel_.emit("command_deferred", p.app, {{"command", "deploy"}, {"source", p.source}});
    return;
  }
  try {
    const AppInstance& inst = scheduler_.place({p.app, p.source, p.replicas});
    kernel_.emit("instance_placed", inst.id,
                 {{"app", inst.app}, {"host", inst.host}, {"source", inst.source},
                  {"replicas", inst.replicas}, {"latency_ms", topology_.path_latency(inst.source, inst.host)}});
    emit_status(inst);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::Unschedulable) throw;
    emit_warning(p.app, "unschedulable", e.what());
  }
}

void Platform::on_scale(const ScalePayload& p) {
  if (!controller_available()) {
    deferred_commands_.push_back(p);
    kernel_.emit("command_deferred", p.app, {{"command", "scale"}, {"replicas", p.replicas}});
    return;
  }
  const AppInstance* inst = scheduler_.find_instance(p.app, p.source);
  if (!inst) {
    emit_warning(p.app, "scale_target_missing", "no live instance of " + p.app);
    return;
  }
  const InstanceId id = inst->id;
  const std::int64_t before = inst->replicas;
  try {
    scheduler_.scale(id, p.replicas);
    kernel_.emit("scaled", id, {{"host", inst->host}, {"from", before}, {"to", p.replicas}});
  } catch (const Error& e) {
    if (e.code() != ErrorCode::InsufficientCapacity && e.code() != ErrorCode::InstanceNotRunning) throw;
    emit_warning(id, "scale_failed", e.what());
  }
}

void Platform::on_tick() {
  if (!controller_available()) {
    deferred_ticks_.push_back(kernel_.now());
    kernel_.emit("scheduler_tick_deferred", "scheduler");
    return;
  }
  run_tick(std::nullopt);
}

void Platform::run_tick(std::optional<SimTime> replay_of) {
  const SimTime now = kernel_.now();
  std::vector<Action> actions = scheduler_.check_thresholds(now);
  ojson d;
  d["actions"] = actions.size();
  if (replay_of) d["replay_of"] = *replay_of;
  kernel_.emit(replay_of ? "scheduler_tick_replayed" : "scheduler_tick", "scheduler", std::move(d));

  for (const Action& action : actions) {
    if (const auto* defer = std::get_if<Defer>(&action)) {
      kernel_.emit("defer", defer->instance.empty() ? defer->node : defer->instance,
                   {{"instance", defer->instance}, {"node", defer->node}, {"reason", defer->reason}});
      continue;
    }
    const auto& o = std::get<Offload>(action);
    kernel_.emit("offload_decided", o.instance, {{"from", o.from}, {"target", o.target}});
    try {
      auto rec = scheduler_.apply_action(action, migrator_, now);
      migration_reason_[o.instance] = "offload";
      emit_migration_started(*rec, "offload");
      emit_status(scheduler_.instance(o.instance));
      kernel_.schedule(rec->completed_at, EventKind::MigrationComplete, MigrationPayload{o.instance});
    } catch (const Error& e) {
      if (e.code() != ErrorCode::StaleAction && e.code() != ErrorCode::TargetInfeasible) throw;
      kernel_.emit("action_stale", o.instance, {{"target", o.target}, {"detail", e.what()}});
    }
  }
}

// ---------------------------------------------------------------------------
// faults and controller availability

void Platform::on_fault_start(const Fault& f) {
  faults_.begin(f);
  kernel_.emit("fault_start", f.target.empty() ? "*" : f.target,
               {{"kind", to_string(f.kind)}, {"duration_ms", f.duration}});
}

void Platform::on_fault_end(const Fault& f) {
  faults_.end(f);
  kernel_.emit("fault_end", f.target.empty() ? "*" : f.target, {{"kind", to_string(f.kind)}});
  if (controller_available() && (!deferred_commands_.empty() || !deferred_ticks_.empty())) {
    replay_deferred();
  }
}

void Platform::replay_deferred() {
  auto commands = std::move(deferred_commands_);
  deferred_commands_.clear();
  for (const auto& cmd : commands) run_command(cmd);

  auto ticks = std::move(deferred_ticks_);
  deferred_ticks_.clear();
  for (SimTime t : ticks) run_tick(t);
}

void Platform::run_command(const DeferredCommand& cmd) {
  std::visit(overloaded{
                 [this](const DeferredInstall& d) {
                   auto cur = discovery_.current_gateway(d.request.device);
                   if (!cur || *cur != d.request.gateway) {
                     kernel_.emit("command_dropped", d.request.device,
                                  {{"command", "install"}, {"gateway", d.request.gateway}});
                     return;
                   }
                   kernel_.emit("command_replayed", d.request.device, {{"command", "install"}});
                   handle_install(d.request);
                 },
                 [this](const DeployPayload& p) {
                   kernel_.emit("command_replayed", p.app, {{"command", "deploy"}});
                   on_deploy(p);
                 },
                 [this](const ScalePayload& p) {
                   kernel_.emit("command_replayed", p.app, {{"command", "scale"}});
                   on_scale(p);
                 },
             },
             cmd);
}

// ---------------------------------------------------------------------------
// data plane

FlowRoute Platform::route_for(const Flow& f) const {
  FlowRoute r;
  if (!topology_.node(f.gateway).up) return r;
  // The gateway only dispatches data while the device's IoT-App runs there.
  const AppInstance* agent = scheduler_.bound_instance(f.device);
  if (!agent || agent->status != InstanceStatus::Running || agent->host != f.gateway) return r;

  if (const AppInstance* serving = scheduler_.serving_instance(f.gateway)) {
    if (serving->status != InstanceStatus::Running) return r;
    r.sink = serving->host;
    r.processor = serving->id;
    if (topology_.node(serving->host).tier == Tier::CentralCloud) {
      r.sink_is_cloud = true;
    } else {
      r.aggregation_factor = catalog_.app(serving->app).aggregation_factor;
      for (const auto& cloud : topology_.nodes_in_tier(Tier::CentralCloud)) {
        if (topology_.try_path_latency(serving->host, cloud)) r.uplink_available = true;
      }
    }
    return r;
  }

  std::optional<std::pair<double, NodeId>> nearest;
  for (const auto& edge : topology_.nodes_in_tier(Tier::EdgeModule)) {
    if (auto lat = topology_.try_path_latency(f.gateway, edge)) {
      std::pair<double, NodeId> key{*lat, edge};
      if (!nearest || key < *nearest) nearest = key;
    }
  }
  if (nearest) r.sink = nearest->second;
  return r;
}

void Platform::refresh_routes() {
  for (const auto& [id, f] : dataflow_.flows()) {
    if (f.open) dataflow_.set_route(id, route_for(f));
  }
}

void Platform::advance_flows(SimTime now) {
  if (now <= last_flow_time_) return;
  const SimTime dt = now - last_flow_time_;
  last_flow_time_ = now;
  refresh_routes();
  // The kernel clock already reads `now`; records are stamped at the end of
  // the interval they cover.
  for (const FlowDelta& d : dataflow_.advance_all(dt)) {
    const Flow& f = dataflow_.flow(d.flow);
    ojson j;
    j["device"] = d.device;
    j["gateway"] = f.gateway;
    j["sink"] = d.sink ? ojson(*d.sink) : ojson(nullptr);
    j["dt_ms"] = d.dt_ms;
    j["generated_bits"] = d.generated_bits;
    j["delivered_bits"] = d.delivered_bits;
    j["dropped_bits"] = d.dropped_bits;
    j["buffered_bits"] = d.buffered_bits;
    j["uplink_bits"] = d.uplink_bits;
    kernel_.emit("flow_advance", d.flow, std::move(j));
  }
}

// ---------------------------------------------------------------------------
// trace helpers

void Platform::emit_alloc_changes() {
  for (const auto& [id, n] : topology_.nodes()) {
    auto& last = last_alloc_[id];
    if (n.alloc != last) {
      last = n.alloc;
      kernel_.emit("alloc", id, resources_json(n.alloc));
    }
  }
}

void Platform::emit_status(const AppInstance& inst) {
  ojson d;
  d["app"] = inst.app;
  d["status"] = to_string(inst.status);
  d["host"] = inst.host;
  d["tier"] = to_string(topology_.node(inst.host).tier);
  d["replicas"] = inst.replicas;
  if (inst.migration_target) d["target"] = *inst.migration_target;
  kernel_.emit("instance_status", inst.id, std::move(d));
}

void Platform::emit_warning(const std::string& subject, const std::string& reason,
                            const std::string& detail) {
  kernel_.emit("warning", subject, {{"reason", reason}, {"detail", detail}});
}

void Platform::emit_migration_started(const MigrationRecord& rec, const std::string& reason) {
  kernel_.emit("migration_started", rec.instance,
               {{"from", rec.from}, {"to", rec.to}, {"bytes_mb", rec.bytes_moved_mb},
                {"downtime_ms", rec.downtime_ms}, {"due_at", rec.completed_at},
                {"state_version", rec.state_version}, {"reason", reason}});
}

RunResult run_scenario(const Scenario& scenario, const RunOptions& options) {
  Platform platform(scenario, options.seed);
  RunResult out;
  out.trace = platform.run(options.until);
  out.report = report_from_trace(out.trace);
  return out;
}

}  // namespace edgeorch
