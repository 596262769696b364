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
#include <functional>
#include <optional>
#include <queue>
#include <random>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "edgeorch/ids.hpp"
#include "edgeorch/topology.hpp"
#include "edgeorch/trace.hpp"

namespace edgeorch {

enum class EventKind {
  Attach,
  Detach,
  Roam,
  WorkloadChange,
  SchedulerTick,
  FlowAdvance,
  FaultStart,
  FaultEnd,
  MigrationComplete,
  Custom,
};

std::string_view to_string(EventKind kind) noexcept;

enum class FaultKind { LinkDown, NodeDown, CloudPartition };

std::string_view to_string(FaultKind kind) noexcept;
std::optional<FaultKind> parse_fault_kind(std::string_view text) noexcept;

struct Fault {
  /// Link id for LinkDown, node id otherwise (the cloud node for a partition).
  std::string target;
  FaultKind kind = FaultKind::LinkDown;
  SimTime start = 0;
  SimTime duration = 0;

  bool operator==(const Fault&) const = default;
};

struct AttachPayload {
  DeviceId device;
  NodeId gateway;
  std::string model;
  std::string os_version;
  bool operator==(const AttachPayload&) const = default;
};
struct DetachPayload {
  DeviceId device;
  NodeId gateway;
  bool operator==(const DetachPayload&) const = default;
};
struct RoamPayload {
  DeviceId device;
  NodeId to_gateway;
  bool operator==(const RoamPayload&) const = default;
};
struct DeployPayload {
  AppId app;
  NodeId source;
  std::int64_t replicas = 1;
  bool operator==(const DeployPayload&) const = default;
};
struct ScalePayload {
  AppId app;
  std::optional<NodeId> source;
  std::int64_t replicas = 1;
  bool operator==(const ScalePayload&) const = default;
};
struct UserStatusPayload {
  DeviceId device;
  std::string key;
  std::string value;
  bool operator==(const UserStatusPayload&) const = default;
};
struct FaultPayload {
  Fault fault;
  bool operator==(const FaultPayload&) const = default;
};
struct MigrationPayload {
  InstanceId instance;
  bool operator==(const MigrationPayload&) const = default;
};
struct EndPayload {
  bool operator==(const EndPayload&) const = default;
};

using EventPayload =
    std::variant<std::monostate, AttachPayload, DetachPayload, RoamPayload, DeployPayload,
                 ScalePayload, UserStatusPayload, FaultPayload, MigrationPayload, EndPayload>;

struct Event {
  SimTime time = 0;
  std::uint64_t sequence = 0;
  EventKind kind = EventKind::Custom;
  EventPayload payload;
};

/// Discrete-event engine. Events run in (time, sequence) order; sequence is
/// assigned at schedule time, so equal-time events are FIFO.
class Kernel {
 public:
  using Handler = std::function<void(const Event&)>;

  explicit Kernel(std::uint64_t seed = 0) : rng_(seed) {}

  SimTime now() const noexcept { return now_; }
  /// Throws TimeInPast if `time` is before the current clock.
  std::uint64_t schedule(SimTime time, EventKind kind, EventPayload payload = {});

  /// Run events with time <= until, or until the queue drains or stop() is
  /// called from a handler.
  const Trace& run(SimTime until, const Handler& handler);
  void stop() noexcept { stopped_ = true; }

  std::size_t pending() const noexcept { return queue_.size(); }
  std::mt19937_64& rng() noexcept { return rng_; }

  /// Append a record stamped with the current clock.
  const TraceRecord& emit(std::string kind, std::string subject, ojson details = ojson::object());
  const Trace& trace() const noexcept { return trace_; }

 private:
  struct Later {
    bool operator()(const Event& a, const Event& b) const noexcept {
      return a.time != b.time ? a.time > b.time : a.sequence > b.sequence;
    }
  };

  SimTime now_ = 0;
  std::uint64_t next_seq_ = 0;
  bool stopped_ = false;
  std::priority_queue<Event, std::vector<Event>, Later> queue_;
  std::mt19937_64 rng_;
  Trace trace_;
};

/// Applies faults to a topology and tracks which are active. Nested faults
/// on the same element restore only when the last one ends.
class FaultInjector {
 public:
  explicit FaultInjector(Topology& topology) : topology_(topology) {}

  /// Throws UnknownTarget / InvalidFault for a fault that cannot apply here.
  void validate(const Fault& fault) const;
  void begin(const Fault& fault);
  void end(const Fault& fault);

  /// True while any cloud partition is active or every cloud node is down.
  bool controller_unavailable() const;
  int active() const noexcept { return active_; }

 private:
  std::vector<LinkId> partition_links(const Fault& fault) const;

  Topology& topology_;
  int active_ = 0;
  int partitions_ = 0;
};

}  // namespace edgeorch
