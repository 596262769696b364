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
#include <map>
#include <optional>
#include <vector>

#include "edgeorch/catalog.hpp"
#include "edgeorch/discovery.hpp"
#include "edgeorch/ids.hpp"
#include "edgeorch/scheduler.hpp"
#include "edgeorch/topology.hpp"

namespace edgeorch {

// Flow counters are kept in bits: kbps x ms is an exact integer bit count,
// which makes per-flow conservation exact.
inline constexpr std::int64_t kBitsPerMb = 8'000'000;

inline double bits_to_mb(double bits) noexcept { return bits / static_cast<double>(kBitsPerMb); }
inline std::int64_t mb_to_bits(double mb) noexcept {
  return static_cast<std::int64_t>(mb * static_cast<double>(kBitsPerMb));
}

/// Where a flow's data currently goes and what happens to it there. Set by
/// the platform before every integration step.
struct FlowRoute {
  /// Empty when nothing can accept the data right now (no IoT-App running on
  /// the gateway, serving Data-App mid-migration, ...). Data then buffers.
  std::optional<NodeId> sink;
  /// Serving Data-App instance, if any.
  std::optional<InstanceId> processor;
  /// Aggregation applied at an edge-hosted processor; 0 means none.
  double aggregation_factor = 0.0;
  /// Processor runs in the central cloud: raw data crosses edge -> cloud.
  bool sink_is_cloud = false;
  /// An up path from the sink to the central cloud exists for results.
  bool uplink_available = false;

  bool operator==(const FlowRoute&) const = default;
};

struct Flow {
  FlowId id;
  DeviceId device;
  NodeId gateway;
  std::int64_t rate_kbps = 0;
  bool open = true;
  FlowRoute route;

  std::int64_t generated_bits = 0;
  std::int64_t delivered_bits = 0;
  std::int64_t dropped_bits = 0;
  std::int64_t buffered_bits = 0;
  /// Bits sent edge -> cloud on behalf of this flow, and output still queued
  /// at the edge (cloud unreachable, or draining a backlog).
  double uplink_bits = 0.0;
  double uplink_pending_bits = 0.0;

  bool conserved() const noexcept {
    return generated_bits == delivered_bits + dropped_bits + buffered_bits && generated_bits >= 0 &&
           delivered_bits >= 0 && dropped_bits >= 0 && buffered_bits >= 0;
  }
};

/// Change produced by one integration step of one flow.
struct FlowDelta {
  FlowId flow;
  DeviceId device;
  std::optional<NodeId> sink;
  SimTime dt_ms = 0;
  std::int64_t generated_bits = 0;
  std::int64_t delivered_bits = 0;
  std::int64_t dropped_bits = 0;
  /// Absolute buffer level after the step.
  std::int64_t buffered_bits = 0;
  double uplink_bits = 0.0;

  bool empty() const noexcept {
    return generated_bits == 0 && delivered_bits == 0 && dropped_bits == 0 && uplink_bits == 0.0;
  }
};

/// Fluid accounting of sensed data from devices through gateways to the
/// edge layer, and of aggregated results sent on to the cloud.
class Dataflow {
 public:
  Dataflow(const Topology& topology, const Discovery& discovery, const Catalog& catalog,
           double buffer_mb);

  /// Checked open: the device must be attached at `gateway` and `sink`
  /// reachable over up links.
  FlowId open_flow(const DeviceId& device, const NodeId& gateway, const NodeId& sink);
  /// Open without a reachable sink; the flow buffers until routed.
  FlowId open_unrouted(const DeviceId& device, const NodeId& gateway);
  void close_flow(const FlowId& id);
  void set_route(const FlowId& id, FlowRoute route);

  /// Integrate one flow; the bandwidth share accounts for every other
  /// routed open flow.
  FlowDelta advance(const FlowId& id, SimTime dt_ms);
  /// Integrate every open flow over the same interval. Order is by flow id.
  std::vector<FlowDelta> advance_all(SimTime dt_ms);

  const Flow& flow(const FlowId& id) const;
  const std::map<FlowId, Flow>& flows() const noexcept { return flows_; }
  /// Open flow for `device`, if any.
  const Flow* open_flow_of(const DeviceId& device) const;
  std::int64_t buffer_capacity_bits() const noexcept { return buffer_bits_; }
  /// Cumulative bits delivered across each link.
  const std::map<LinkId, std::int64_t>& link_delivered_bits() const noexcept { return link_bits_; }

 private:
  std::optional<std::vector<LinkId>> route_path(const Flow& f) const;
  std::map<LinkId, int> link_load() const;
  FlowDelta step(Flow& f, SimTime dt_ms, const std::map<LinkId, int>& load);

  const Topology& topology_;
  const Discovery& discovery_;
  const Catalog& catalog_;
  std::int64_t buffer_bits_;
  std::map<FlowId, Flow> flows_;
  std::map<LinkId, std::int64_t> link_bits_;
  int next_ = 0;
};

/// Size of the aggregated output of a Data-App instance for `window_mb` of
/// raw input. Throws NotADataApp for IoT-App instances.
double aggregate(const Scheduler& scheduler, const InstanceId& instance, double window_mb);

struct UplinkWindow {
  double generated_bits = 0.0;
  double uplink_bits = 0.0;
};

/// Bytes sent edge -> cloud over bytes generated at devices. Throws
/// EmptyWindow when nothing was generated.
double uplink_ratio(const UplinkWindow& window);

}  // namespace edgeorch
