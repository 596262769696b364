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

#include "edgeorch/kernel.hpp"

#include "edgeorch/error.hpp"

namespace edgeorch {

std::string_view to_string(EventKind kind) noexcept {
  switch (kind) {
    case EventKind::Attach: return "Attach";
    case EventKind::Detach: return "Detach";
    case EventKind::Roam: return "Roam";
    case EventKind::WorkloadChange: return "WorkloadChange";
    case EventKind::SchedulerTick: return "SchedulerTick";
    case EventKind::FlowAdvance: return "FlowAdvance";
    case EventKind::FaultStart: return "FaultStart";
    case EventKind::FaultEnd: return "FaultEnd";
    case EventKind::MigrationComplete: return "MigrationComplete";
    case EventKind::Custom: return "Custom";
  }
  return "Custom";
}

std::string_view to_string(FaultKind kind) noexcept {
  switch (kind) {
    case FaultKind::LinkDown: return "link_down";
    case FaultKind::NodeDown: return "node_down";
    case FaultKind::CloudPartition: return "cloud_partition";
  }
  return "link_down";
}

std::optional<FaultKind> parse_fault_kind(std::string_view text) noexcept {
  if (text == "link_down") return FaultKind::LinkDown;
  if (text == "node_down") return FaultKind::NodeDown;
  if (text == "cloud_partition") return FaultKind::CloudPartition;
  return std::nullopt;
}

std::uint64_t Kernel::schedule(SimTime time, EventKind kind, EventPayload payload) {
  if (time < now_) {
    fail(ErrorCode::TimeInPast,
         "event at " + std::to_string(time) + " ms, clock at " + std::to_string(now_) + " ms");
  }
  Event e{time, next_seq_++, kind, std::move(payload)};
  queue_.push(std::move(e));
  return next_seq_ - 1;
}

const Trace& Kernel::run(SimTime until, const Handler& handler) {
  stopped_ = false;
  while (!queue_.empty() && !stopped_) {
    if (queue_.top().time > until) break;
    Event e = queue_.top();
    queue_.pop();
    now_ = e.time;
    handler(e);
  }
  return trace_;
}

const TraceRecord& Kernel::emit(std::string kind, std::string subject, ojson details) {
  return trace_.append(now_, std::move(kind), std::move(subject), std::move(details));
}

void FaultInjector::validate(const Fault& fault) const {
  if (fault.duration <= 0) fail(ErrorCode::InvalidFault, "fault duration must be > 0");
  if (fault.start < 0) fail(ErrorCode::InvalidFault, "fault start must be >= 0");
  switch (fault.kind) {
    case FaultKind::LinkDown:
      if (!topology_.has_link(fault.target)) fail(ErrorCode::UnknownTarget, fault.target);
      break;
    case FaultKind::NodeDown:
      if (!topology_.has_node(fault.target)) fail(ErrorCode::UnknownTarget, fault.target);
      break;
    case FaultKind::CloudPartition:
      if (fault.target.empty()) {
        if (topology_.nodes_in_tier(Tier::CentralCloud).empty()) {
          fail(ErrorCode::UnknownTarget, "no central cloud node to partition");
        }
      } else {
        if (!topology_.has_node(fault.target)) fail(ErrorCode::UnknownTarget, fault.target);
        if (topology_.node(fault.target).tier != Tier::CentralCloud) {
          fail(ErrorCode::InvalidFault, fault.target + " is not a central cloud node");
        }
      }
      break;
  }
}

std::vector<LinkId> FaultInjector::partition_links(const Fault& fault) const {
  std::vector<LinkId> out;
  for (const auto& [id, l] : topology_.links()) {
    bool hit = fault.target.empty()
                   ? topology_.node(l.a).tier == Tier::CentralCloud ||
                         topology_.node(l.b).tier == Tier::CentralCloud
                   : l.touches(fault.target);
    if (hit) out.push_back(id);
  }
  return out;
}

void FaultInjector::begin(const Fault& fault) {
  validate(fault);
  switch (fault.kind) {
    case FaultKind::LinkDown: topology_.mark_link_down(fault.target); break;
    case FaultKind::NodeDown: topology_.mark_node_down(fault.target); break;
    case FaultKind::CloudPartition:
      for (const auto& l : partition_links(fault)) topology_.mark_link_down(l);
      ++partitions_;
      break;
  }
  ++active_;
}

void FaultInjector::end(const Fault& fault) {
  switch (fault.kind) {
    case FaultKind::LinkDown: topology_.restore_link(fault.target); break;
    case FaultKind::NodeDown: topology_.restore_node(fault.target); break;
    case FaultKind::CloudPartition:
      for (const auto& l : partition_links(fault)) topology_.restore_link(l);
      --partitions_;
      break;
  }
  --active_;
}

bool FaultInjector::controller_unavailable() const {
  if (partitions_ > 0) return true;
  auto clouds = topology_.nodes_in_tier(Tier::CentralCloud);
  if (clouds.empty()) return false;
  for (const auto& c : clouds) {
    if (topology_.node(c).up) return false;
  }
  return true;
}

}  // namespace edgeorch
