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
#include <string>
#include <vector>

#include "edgeorch/migration.hpp"
#include "edgeorch/trace.hpp"

namespace edgeorch {

/// Metrics for one reporting window (start_ms, end_ms].
struct WindowMetrics {
  SimTime start_ms = 0;
  SimTime end_ms = 0;
  std::int64_t generated_bits = 0;
  std::int64_t delivered_bits = 0;
  std::int64_t dropped_bits = 0;
  double uplink_bits = 0.0;
  /// Empty when nothing was generated in the window.
  std::optional<double> uplink_ratio;
  int migrations = 0;
  int offloads = 0;
  int defers = 0;
  /// Bottleneck utilization of every node at the end of the window.
  std::map<NodeId, double> utilization;

  bool operator==(const WindowMetrics&) const = default;
};

struct LossCounters {
  std::int64_t generated_bits = 0;
  std::int64_t delivered_bits = 0;
  std::int64_t dropped_bits = 0;
  std::int64_t buffered_bits = 0;

  bool operator==(const LossCounters&) const = default;
};

struct DeferredEntry {
  SimTime time_ms = 0;
  InstanceId instance;
  NodeId node;
  std::string reason;

  bool operator==(const DeferredEntry&) const = default;
};

struct ReportSummary {
  std::uint64_t records = 0;
  int installs = 0;
  int roams = 0;
  int offloads = 0;
  int defers = 0;
  int stale_actions = 0;
  int migrations = 0;
  int warnings = 0;
  int scheduler_ticks = 0;
  int deferred_ticks = 0;
  int replayed_ticks = 0;
  double uplink_bits = 0.0;
  std::optional<double> uplink_ratio;

  bool operator==(const ReportSummary&) const = default;
};

/// Everything a run reports. A pure function of the trace.
struct Report {
  std::string scenario;
  SimTime end_ms = 0;
  SimTime window_ms = 0;
  std::vector<WindowMetrics> windows;
  std::vector<MigrationRecord> migrations;
  LossCounters loss;
  std::vector<DeferredEntry> deferred;
  ReportSummary summary;

  bool operator==(const Report&) const = default;

  /// Delimited table, one row per window.
  std::string metrics_csv() const;
  /// Human-readable summary table.
  std::string summary_text() const;
};

/// Throws MalformedTrace when the trace is not a complete, ordered run.
Report report_from_trace(const Trace& trace);
Report report_from_jsonl(std::string_view text);

}  // namespace edgeorch
