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

#include "edgeorch/dataflow.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "edgeorch/error.hpp"

namespace edgeorch {

Dataflow::Dataflow(const Topology& topology, const Discovery& discovery, const Catalog& catalog,
                   double buffer_mb)
    : topology_(topology), discovery_(discovery), catalog_(catalog), buffer_bits_(mb_to_bits(buffer_mb)) {
  if (buffer_bits_ < 0) fail(ErrorCode::InvalidArgument, "negative buffer size");
}

FlowId Dataflow::open_unrouted(const DeviceId& device, const NodeId& gateway) {
  const Attachment* a = discovery_.current(device);
  if (!a || a->gateway != gateway) fail(ErrorCode::NotAttached, device + " @ " + gateway);
  if (open_flow_of(device)) fail(ErrorCode::InvalidArgument, device + " already has an open flow");

  char buf[32];
  std::snprintf(buf, sizeof buf, "flow-%04d", ++next_);
  Flow f;
  f.id = buf;
  f.device = device;
  f.gateway = gateway;
  f.rate_kbps = catalog_.profile(a->model).data_rate_kbps;
  FlowId id = f.id;
  flows_.emplace(id, std::move(f));
  return id;
}

FlowId Dataflow::open_flow(const DeviceId& device, const NodeId& gateway, const NodeId& sink) {
  const Attachment* a = discovery_.current(device);
  if (!a || a->gateway != gateway) fail(ErrorCode::NotAttached, device + " @ " + gateway);
  if (!topology_.shortest_path(gateway, sink)) fail(ErrorCode::Unreachable, gateway + " -> " + sink);
  FlowId id = open_unrouted(device, gateway);
  FlowRoute r;
  r.sink = sink;
  flows_.at(id).route = r;
  return id;
}

void Dataflow::close_flow(const FlowId& id) {
  auto it = flows_.find(id);
  if (it == flows_.end()) fail(ErrorCode::UnknownFlow, id);
  it->second.open = false;
}

void Dataflow::set_route(const FlowId& id, FlowRoute route) {
  auto it = flows_.find(id);
  if (it == flows_.end()) fail(ErrorCode::UnknownFlow, id);
  it->second.route = std::move(route);
}

const Flow& Dataflow::flow(const FlowId& id) const {
  auto it = flows_.find(id);
  if (it == flows_.end()) fail(ErrorCode::UnknownFlow, id);
  return it->second;
}

const Flow* Dataflow::open_flow_of(const DeviceId& device) const {
  for (const auto& [id, f] : flows_) {
    if (f.open && f.device == device) return &f;
  }
  return nullptr;
}

std::optional<std::vector<LinkId>> Dataflow::route_path(const Flow& f) const {
  if (!f.open || !f.route.sink) return std::nullopt;
  if (!topology_.has_node(*f.route.sink)) return std::nullopt;
  return topology_.shortest_path(f.gateway, *f.route.sink);
}

std::map<LinkId, int> Dataflow::link_load() const {
  std::map<LinkId, int> load;
  for (const auto& [id, f] : flows_) {
    if (auto path = route_path(f)) {
      for (const auto& l : *path) ++load[l];
    }
  }
  return load;
}

FlowDelta Dataflow::step(Flow& f, SimTime dt_ms, const std::map<LinkId, int>& load) {
  FlowDelta d;
  d.flow = f.id;
  d.device = f.device;
  d.sink = f.route.sink;
  d.dt_ms = dt_ms;
  if (!f.open || dt_ms <= 0) {
    d.buffered_bits = f.buffered_bits;
    return d;
  }

  const std::int64_t generated = f.rate_kbps * dt_ms;
  std::int64_t available = f.buffered_bits + generated;

  // Equal share of every link on the path; the path's share is the minimum.
  std::int64_t deliverable = 0;
  auto path = route_path(f);
  if (path) {
    deliverable = std::numeric_limits<std::int64_t>::max();
    for (const auto& lid : *path) {
      const Link& l = topology_.link(lid);
      double link_bits = l.bandwidth_mbps * 1000.0 * static_cast<double>(dt_ms);
      auto share = static_cast<std::int64_t>(std::floor(link_bits / load.at(lid)));
      deliverable = std::min(deliverable, share);
    }
  }

  const std::int64_t delivered = std::min(available, deliverable);
  std::int64_t buffered = available - delivered;
  const std::int64_t dropped = std::max<std::int64_t>(0, buffered - buffer_bits_);
  buffered -= dropped;

  if (path) {
    for (const auto& lid : *path) link_bits_[lid] += delivered;
  }

  // Output bound for the cloud queues at the edge and drains no faster than
  // the device produces, so a backlog never bursts the uplink.
  if (f.route.sink_is_cloud) {
    f.uplink_pending_bits += static_cast<double>(delivered);
  } else if (f.route.aggregation_factor > 0.0) {
    f.uplink_pending_bits += static_cast<double>(delivered) / f.route.aggregation_factor;
  }
  double sent = 0.0;
  if ((f.route.sink_is_cloud || f.route.uplink_available) && f.uplink_pending_bits > 0.0) {
    sent = std::min(f.uplink_pending_bits, static_cast<double>(generated));
    f.uplink_pending_bits -= sent;
  }

  f.generated_bits += generated;
  f.delivered_bits += delivered;
  f.dropped_bits += dropped;
  f.buffered_bits = buffered;
  f.uplink_bits += sent;

  d.generated_bits = generated;
  d.delivered_bits = delivered;
  d.dropped_bits = dropped;
  d.buffered_bits = buffered;
  d.uplink_bits = sent;
  return d;
}

FlowDelta Dataflow::advance(const FlowId& id, SimTime dt_ms) {
  auto it = flows_.find(id);
  if (it == flows_.end()) fail(ErrorCode::UnknownFlow, id);
  return step(it->second, dt_ms, link_load());
}

std::vector<FlowDelta> Dataflow::advance_all(SimTime dt_ms) {
  const auto load = link_load();
  std::vector<FlowDelta> out;
  for (auto& [id, f] : flows_) {
    if (f.open) out.push_back(step(f, dt_ms, load));
  }
  return out;
}

double aggregate(const Scheduler& scheduler, const InstanceId& instance, double window_mb) {
  const AppInstance& inst = scheduler.instance(instance);
  const AppSpec& spec = scheduler.catalog().app(inst.app);
  if (spec.kind != AppKind::DataApp) fail(ErrorCode::NotADataApp, instance);
  if (inst.status != InstanceStatus::Running) fail(ErrorCode::InstanceNotRunning, instance);
  return window_mb / spec.aggregation_factor;
}

double uplink_ratio(const UplinkWindow& window) {
  if (!(window.generated_bits > 0.0)) fail(ErrorCode::EmptyWindow, "no data generated in window");
  return window.uplink_bits / window.generated_bits;
}

}  // namespace edgeorch
