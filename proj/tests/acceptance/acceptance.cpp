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

// Acceptance run: one PASS/FAIL line per criterion, non-zero exit on any
// failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <sstream>
#include <string>

#include "checks.hpp"
#include "edgeorch/migration.hpp"
#include "edgeorch/platform.hpp"
#include "oracles.hpp"

namespace {

using namespace edgeorch;
using Clock = std::chrono::steady_clock;

const char* const kFixtures[] = {"roaming", "scaling", "partition", "steady", "empty"};

Scenario fixture(const std::string& name) {
  return load_scenario(std::filesystem::path(EDGEORCH_SCENARIO_DIR) / (name + ".json"));
}

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) {
      pass = false;
      detail = what;
    }
  }
};

Outcome roaming_storyboard() {
  Outcome o;
  const auto start = Clock::now();
  Platform p(fixture("roaming"));
  const Trace& trace = p.run();
  const Report report = report_from_trace(trace);
  const double elapsed = seconds_since(start);

  auto kind = [](std::string k, std::string field, std::string value) {
    return [=](const TraceRecord& t) { return t.kind == k && t.details.value(field, ojson()) == value; };
  };
  const std::string missing = testing::check_order(
      trace, {{"attach at gw1", kind("attach", "gateway", "gw1")},
              {"IoT-App installed on gw1", kind("iot_app_installed", "gateway", "gw1")},
              {"flow gw1 to edge", [](const TraceRecord& t) {
                 return t.kind == "flow_advance" && t.details.at("gateway") == "gw1" &&
                        t.details.at("sink") == "edge1" && t.details.at("delivered_bits") > 0;
               }},
              {"detach from gw1", kind("detach", "gateway", "gw1")},
              {"attach at gw2", kind("attach", "gateway", "gw2")},
              {"migration to gw2", kind("migration_started", "to", "gw2")},
              {"migration completed", kind("migration_completed", "to", "gw2")},
              {"central status event", kind("status_updated", "gateway", "gw2")},
              {"flow gw2 to edge", [](const TraceRecord& t) {
                 return t.kind == "flow_advance" && t.details.at("gateway") == "gw2" &&
                        t.details.at("sink") == "edge1" && t.details.at("delivered_bits") > 0;
               }}});
  o.require(missing.empty(), "step missing or out of order: " + missing);

  auto written = testing::find_record(trace, [](const TraceRecord& t) { return t.kind == "state_updated"; });
  auto moved = testing::find_record(trace, [](const TraceRecord& t) { return t.kind == "migration_completed"; });
  o.require(written && moved, "no state update or migration");
  if (written && moved) {
    const auto& w = trace.records()[*written].details;
    const auto& m = trace.records()[*moved].details;
    o.require(m.at("state_version") == w.at("state_version"), "state version changed across migration");
    const AppInstance* inst = p.scheduler().bound_instance("bracelet-7");
    o.require(inst && inst->host == "gw2" && inst->state.version == w.at("state_version").get<std::uint64_t>() &&
                  inst->state.payload.count(w.at("key").get<std::string>()) &&
                  inst->state.payload.at(w.at("key").get<std::string>()) == w.at("value").get<std::string>(),
              "state payload not preserved on gw2");

    const double rate_kbps = p.catalog().profile("smart-bracelet").data_rate_kbps;
    const double outage_bits = m.at("downtime_ms").get<double>() * rate_kbps;
    o.require(outage_bits <= static_cast<double>(p.dataflow().buffer_capacity_bits()),
              "outage exceeds buffer, zero-loss premise does not hold");
  }
  o.require(report.loss.dropped_bits == 0, "dropped " + std::to_string(report.loss.dropped_bits) + " bits");
  o.require(elapsed < 5.0, "runtime " + std::to_string(elapsed) + " s");
  if (o.pass) {
    std::ostringstream os;
    os << "ordered trace, state v" << report.migrations.at(0).state_version << " kept, downtime "
       << report.migrations.at(0).downtime_ms << " ms, 0 bits lost, " << elapsed << " s";
    o.detail = os.str();
  }
  return o;
}

Outcome scaling_storyboard() {
  Outcome o;
  const auto start = Clock::now();
  Scenario s = fixture("scaling");
  auto r = run_scenario(s);
  const double elapsed = seconds_since(start);

  const double high = s.thresholds.high;
  double gen = 0, up = 0;
  bool windows_ok = true;
  for (const auto& w : r.report.windows) {
    if (w.start_ms < 5000 || w.end_ms > 20000) continue;
    gen += static_cast<double>(w.generated_bits);
    up += w.uplink_bits;
    if (!w.uplink_ratio || std::abs(*w.uplink_ratio - 0.1) > 0.001) windows_ok = false;
  }
  const double ratio = gen > 0 ? up / gen : -1;
  o.require(gen > 0 && std::abs(ratio - 0.1) <= 0.001, "steady uplink ratio " + std::to_string(ratio));
  o.require(windows_ok, "a steady window strays from 0.100");
  o.require(r.report.summary.offloads >= 1, "no offload fired");

  bool relieved = true;
  for (const auto& m : r.report.migrations) {
    // Utilization of the source at the end of the window the move completed in.
    for (const auto& w : r.report.windows) {
      if (m.completed_at > w.start_ms && m.completed_at <= w.end_ms && w.utilization.count(m.from) &&
          w.utilization.at(m.from) > high) {
        relieved = false;
      }
    }
  }
  o.require(relieved || r.report.summary.defers > 0, "offload left the source above the high threshold");
  o.require(elapsed < 5.0, "runtime " + std::to_string(elapsed) + " s");
  if (o.pass) {
    std::ostringstream os;
    os << "steady uplink ratio " << ratio << ", " << r.report.summary.offloads << " offload(s), "
       << r.report.summary.defers << " defer(s), " << elapsed << " s";
    o.detail = os.str();
  }
  return o;
}

Outcome oracle_equivalence() {
  Outcome o;
  const auto start = Clock::now();
  int checked = 0;
  for (const char* name : kFixtures) {
    auto m = testing::placement_mismatches(fixture(name));
    o.require(m.empty(), m.empty() ? "" : m.front());
    ++checked;
  }
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    auto m = testing::placement_mismatches(oracle::random_scenario(seed));
    o.require(m.empty(), m.empty() ? "" : "seed " + std::to_string(seed) + ": " + m.front());
    ++checked;
  }
  const double elapsed = seconds_since(start);
  o.require(elapsed < 30.0, "runtime " + std::to_string(elapsed) + " s");
  if (o.pass) o.detail = std::to_string(checked) + " scenarios agree, " + std::to_string(elapsed) + " s";
  return o;
}

Outcome determinism() {
  Outcome o;
  for (const char* name : kFixtures) {
    const Scenario s = fixture(name);
    const auto first = run_scenario(s).trace.hash();
    for (int i = 1; i < 10; ++i) {
      o.require(run_scenario(s).trace.hash() == first, std::string(name) + " hash differs on run " + std::to_string(i));
    }
  }
  if (o.pass) o.detail = "10 runs per fixture, identical hashes";
  return o;
}

Outcome conservation() {
  Outcome o;
  for (const char* name : kFixtures) {
    auto r = run_scenario(fixture(name));
    auto problems = oracle::check_invariants(r.trace);
    o.require(problems.empty(), std::string(name) + ": " + (problems.empty() ? "" : problems.front()));
    auto c = oracle::recompute_counters(r.trace);
    o.require(c.total.generated_bits == c.total.delivered_bits + c.total.dropped_bits + c.total.buffered_bits,
              std::string(name) + ": recomputed counters do not balance");
    o.require(c.total.generated_bits == r.report.loss.generated_bits &&
                  c.total.delivered_bits == r.report.loss.delivered_bits &&
                  c.total.dropped_bits == r.report.loss.dropped_bits &&
                  c.total.buffered_bits == r.report.loss.buffered_bits,
              std::string(name) + ": report counters differ from recomputation");
  }
  if (o.pass) o.detail = "every fixture replays clean";
  return o;
}

Outcome edge_autonomy() {
  Outcome o;
  auto r = run_scenario(fixture("partition"));
  const Trace& trace = r.trace;
  SimTime from = -1, to = -1;
  for (const auto& t : trace.records()) {
    if (t.kind == "fault_start" && t.details.at("kind") == "cloud_partition") from = t.time_ms;
    if (t.kind == "fault_end" && t.details.at("kind") == "cloud_partition") to = t.time_ms;
  }
  o.require(from >= 0 && to - from == 60000, "no 60 s cloud partition in the trace");

  std::map<std::string, std::string> status, tier;
  std::int64_t delivered_during = 0;
  int deferred = 0, replayed = 0;
  bool edge_running = true;
  for (const auto& t : trace.records()) {
    const bool inside = t.time_ms >= from && t.time_ms < to;
    if (t.kind == "instance_status") {
      status[t.subject] = t.details.at("status").get<std::string>();
      tier[t.subject] = t.details.at("tier").get<std::string>();
    }
    if (inside && t.kind == "instance_status" && t.details.at("tier") == "edge_module" &&
        t.details.at("status") != "running") {
      edge_running = false;
    }
    if (t.time_ms == from && t.kind == "fault_start") {
      for (const auto& [id, st] : status) {
        if (tier[id] == "edge_module" && st != "running") edge_running = false;
      }
    }
    if (inside && t.kind == "flow_advance" && t.details.at("sink").is_string() &&
        t.details.at("sink").get<std::string>().rfind("edge", 0) == 0) {
      delivered_during += t.details.at("delivered_bits").get<std::int64_t>();
    }
    if (t.kind == "scheduler_tick_deferred") ++deferred;
    if (t.kind == "scheduler_tick_replayed" && t.time_ms >= to) ++replayed;
  }
  o.require(edge_running, "an edge-hosted instance left Running during the partition");
  o.require(delivered_during > 0, "no gateway to edge delivery during the partition");
  o.require(deferred > 0 && replayed == deferred,
            "deferred " + std::to_string(deferred) + " ticks, replayed " + std::to_string(replayed));
  auto problems = oracle::check_invariants(trace);
  o.require(problems.empty(), problems.empty() ? "" : problems.front());
  o.require(r.report.loss.dropped_bits == 0, "bits dropped during the partition");
  if (o.pass) {
    std::ostringstream os;
    os << delivered_during << " bits delivered to the edge during the partition, " << deferred
       << " ticks deferred and replayed";
    o.detail = os.str();
  }
  return o;
}

Outcome migration_cost() {
  Outcome o;
  std::vector<Link> path{Link{"l", "a", "b", 2.0, 100.0, true}};
  const double d = transfer_duration(100.0, path);
  o.require(d == 8002.0, "got " + std::to_string(d));
  if (o.pass) o.detail = "100 MB over 100 Mbps / 2 ms = 8002 ms";
  return o;
}

Outcome no_flap() {
  Outcome o;
  auto r = run_scenario(fixture("steady"));
  const int ticks = r.report.summary.scheduler_ticks;
  const int cycles = oracle::offload_cycles(r.trace);
  o.require(ticks >= 100, "only " + std::to_string(ticks) + " scheduler ticks");
  o.require(cycles == 0, std::to_string(cycles) + " offload cycles");
  if (o.pass) o.detail = std::to_string(ticks) + " ticks, 0 offload cycles";
  return o;
}

}  // namespace

int main() {
  const std::pair<const char*, std::function<Outcome()>> criteria[] = {
      {"1 roaming storyboard", roaming_storyboard},
      {"2 scaling storyboard", scaling_storyboard},
      {"3 scheduler matches brute-force oracle", oracle_equivalence},
      {"4 determinism", determinism},
      {"5 conservation", conservation},
      {"6 edge autonomy under cloud partition", edge_autonomy},
      {"7 migration cost arithmetic", migration_cost},
      {"8 no offload flapping", no_flap},
  };
  int failed = 0;
  for (const auto& [name, check] : criteria) {
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    std::printf("[%s] %s: %s\n", o.pass ? "PASS" : "FAIL", name, o.detail.c_str());
    failed += !o.pass;
  }
  return failed == 0 ? 0 : 1;
}
