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

#include "edgeorch/report.hpp"

#include <iomanip>
#include <sstream>

#include "edgeorch/error.hpp"
#include "edgeorch/topology.hpp"

namespace edgeorch {
namespace {

ResourceVector resources_of(const ojson& j) {
  return {j.at("cpu_millicores").get<std::int64_t>(), j.at("mem_mb").get<std::int64_t>(),
          j.at("storage_mb").get<std::int64_t>()};
}

std::optional<double> ratio(double num, std::int64_t den) {
  if (den <= 0) return std::nullopt;
  return num / static_cast<double>(den);
}

class Builder {
 public:
  explicit Builder(const Trace& trace) : trace_(trace) {}

  Report build() {
    const auto& recs = trace_.records();
    if (recs.empty() || recs.front().kind != "run_start") {
      fail(ErrorCode::MalformedTrace, "trace must open with run_start");
    }
    if (recs.back().kind != "run_end") fail(ErrorCode::MalformedTrace, "trace must close with run_end");

    const ojson& start = recs.front().details;
    report_.scenario = start.at("scenario").get<std::string>();
    report_.window_ms = start.at("metrics_window_ms").get<SimTime>();
    report_.end_ms = recs.back().details.at("end_ms").get<SimTime>();
    if (report_.window_ms <= 0) fail(ErrorCode::MalformedTrace, "metrics_window_ms must be positive");

    for (SimTime s = 0; s < report_.end_ms; s += report_.window_ms) {
      WindowMetrics w;
      w.start_ms = s;
      w.end_ms = std::min(s + report_.window_ms, report_.end_ms);
      report_.windows.push_back(std::move(w));
    }

    for (const auto& r : recs) {
      close_windows_before(r.time_ms);
      apply(r);
    }
    close_windows_before(report_.end_ms + 1);

    for (const auto& [flow, bits] : buffered_) report_.loss.buffered_bits += bits;
    for (auto& w : report_.windows) w.uplink_ratio = ratio(w.uplink_bits, w.generated_bits);
    auto& s = report_.summary;
    s.records = recs.size();
    s.uplink_ratio = ratio(s.uplink_bits, report_.loss.generated_bits);
    return std::move(report_);
  }

 private:
  WindowMetrics* window_at(SimTime t) {
    if (report_.windows.empty()) return nullptr;
    std::size_t i = t <= 0 ? 0 : static_cast<std::size_t>((t - 1) / report_.window_ms);
    if (i >= report_.windows.size()) return nullptr;
    return &report_.windows[i];
  }

  // Snapshot utilization for every window that ends strictly before `t`.
  void close_windows_before(SimTime t) {
    while (closed_ < report_.windows.size() && report_.windows[closed_].end_ms < t) {
      auto& w = report_.windows[closed_];
      for (const auto& [id, cap] : capacity_) w.utilization[id] = bottleneck_fraction(alloc_[id], cap);
      ++closed_;
    }
  }

  void apply(const TraceRecord& r) {
    const ojson& d = r.details;
    WindowMetrics* w = window_at(r.time_ms);
    auto& s = report_.summary;
    const std::string& k = r.kind;

    if (k == "node_added") {
      capacity_[r.subject] = resources_of(d);
      alloc_[r.subject] = {};
    } else if (k == "alloc") {
      alloc_[r.subject] = resources_of(d);
    } else if (k == "flow_advance") {
      auto gen = d.at("generated_bits").get<std::int64_t>();
      auto del = d.at("delivered_bits").get<std::int64_t>();
      auto drop = d.at("dropped_bits").get<std::int64_t>();
      auto up = d.at("uplink_bits").get<double>();
      buffered_[r.subject] = d.at("buffered_bits").get<std::int64_t>();
      report_.loss.generated_bits += gen;
      report_.loss.delivered_bits += del;
      report_.loss.dropped_bits += drop;
      s.uplink_bits += up;
      if (w) {
        w->generated_bits += gen;
        w->delivered_bits += del;
        w->dropped_bits += drop;
        w->uplink_bits += up;
      }
    } else if (k == "flow_closed") {
      buffered_[r.subject] = d.at("buffered_bits").get<std::int64_t>();
    } else if (k == "migration_completed") {
      MigrationRecord m;
      m.instance = r.subject;
      m.from = d.at("from").get<std::string>();
      m.to = d.at("to").get<std::string>();
      m.started_at = d.at("started_at").get<SimTime>();
      m.completed_at = d.at("completed_at").get<SimTime>();
      m.bytes_moved_mb = d.at("bytes_moved_mb").get<double>();
      m.downtime_ms = d.at("downtime_ms").get<SimTime>();
      m.state_version = d.at("state_version").get<std::uint64_t>();
      report_.migrations.push_back(std::move(m));
      ++s.migrations;
      if (d.at("reason").get<std::string>() == "roam") ++s.roams;
      if (w) ++w->migrations;
    } else if (k == "offload_decided") {
      ++s.offloads;
      if (w) ++w->offloads;
    } else if (k == "defer") {
      report_.deferred.push_back({r.time_ms, d.at("instance").get<std::string>(),
                                  d.at("node").get<std::string>(), d.at("reason").get<std::string>()});
      ++s.defers;
      if (w) ++w->defers;
    } else if (k == "iot_app_installed") {
      ++s.installs;
    } else if (k == "action_stale") {
      ++s.stale_actions;
    } else if (k == "warning") {
      ++s.warnings;
    } else if (k == "scheduler_tick") {
      ++s.scheduler_ticks;
    } else if (k == "scheduler_tick_deferred") {
      ++s.deferred_ticks;
    } else if (k == "scheduler_tick_replayed") {
      ++s.replayed_ticks;
    }
  }

  const Trace& trace_;
  Report report_;
  std::size_t closed_ = 0;
  std::map<NodeId, ResourceVector> capacity_;
  std::map<NodeId, ResourceVector> alloc_;
  std::map<FlowId, std::int64_t> buffered_;
};

std::string fmt_opt(const std::optional<double>& v, int precision) {
  if (!v) return "";
  std::ostringstream os;
  os << std::fixed << std::setprecision(precision) << *v;
  return os.str();
}

}  // namespace

Report report_from_trace(const Trace& trace) {
  try {
    return Builder(trace).build();
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::MalformedTrace, e.what());
  }
}

Report report_from_jsonl(std::string_view text) { return report_from_trace(Trace::parse_jsonl(text)); }

std::string Report::metrics_csv() const {
  std::ostringstream os;
  os << "window_start_ms,window_end_ms,generated_bits,delivered_bits,dropped_bits,uplink_bits,"
        "uplink_ratio,migrations,offloads,defers";
  std::vector<NodeId> nodes;
  if (!windows.empty()) {
    for (const auto& [id, u] : windows.front().utilization) nodes.push_back(id);
  }
  for (const auto& id : nodes) os << ",util_" << id;
  os << '\n';
  for (const auto& w : windows) {
    os << w.start_ms << ',' << w.end_ms << ',' << w.generated_bits << ',' << w.delivered_bits << ','
       << w.dropped_bits << ',' << fmt_opt(w.uplink_bits, 1) << ',' << fmt_opt(w.uplink_ratio, 6) << ','
       << w.migrations << ',' << w.offloads << ',' << w.defers;
    for (const auto& id : nodes) {
      auto it = w.utilization.find(id);
      os << ',' << (it == w.utilization.end() ? "" : fmt_opt(it->second, 4));
    }
    os << '\n';
  }
  return os.str();
}

std::string Report::summary_text() const {
  std::ostringstream os;
  auto row = [&os](std::string_view key, const auto& value) {
    os << std::left << std::setw(20) << key << value << '\n';
  };
  row("scenario", scenario);
  row("end_ms", end_ms);
  row("records", summary.records);
  row("windows", windows.size());
  row("installs", summary.installs);
  row("migrations", summary.migrations);
  row("roams", summary.roams);
  row("offloads", summary.offloads);
  row("defers", summary.defers);
  row("stale_actions", summary.stale_actions);
  row("warnings", summary.warnings);
  row("scheduler_ticks", summary.scheduler_ticks);
  row("deferred_ticks", summary.deferred_ticks);
  row("replayed_ticks", summary.replayed_ticks);
  row("generated_bits", loss.generated_bits);
  row("delivered_bits", loss.delivered_bits);
  row("dropped_bits", loss.dropped_bits);
  row("buffered_bits", loss.buffered_bits);
  row("uplink_ratio", summary.uplink_ratio ? fmt_opt(summary.uplink_ratio, 4) : std::string("n/a"));
  for (const auto& m : migrations) {
    os << "migration " << m.instance << ' ' << m.from << " -> " << m.to << " at " << m.started_at
       << " ms, downtime " << m.downtime_ms << " ms\n";
  }
  return os.str();
}

}  // namespace edgeorch
