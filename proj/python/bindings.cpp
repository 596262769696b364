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

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <vector>

#include "edgeorch/error.hpp"
#include "edgeorch/migration.hpp"
#include "edgeorch/platform.hpp"

namespace py = pybind11;
using namespace edgeorch;

namespace {

py::dict summary_dict(const ReportSummary& s) {
  py::dict d;
  d["records"] = s.records;
  d["installs"] = s.installs;
  d["roams"] = s.roams;
  d["offloads"] = s.offloads;
  d["defers"] = s.defers;
  d["stale_actions"] = s.stale_actions;
  d["migrations"] = s.migrations;
  d["warnings"] = s.warnings;
  d["scheduler_ticks"] = s.scheduler_ticks;
  d["deferred_ticks"] = s.deferred_ticks;
  d["replayed_ticks"] = s.replayed_ticks;
  d["uplink_bits"] = s.uplink_bits;
  d["uplink_ratio"] = s.uplink_ratio;
  return d;
}

py::dict migration_dict(const MigrationRecord& m) {
  py::dict d;
  d["instance"] = m.instance;
  d["from"] = m.from;
  d["to"] = m.to;
  d["started_at"] = m.started_at;
  d["completed_at"] = m.completed_at;
  d["bytes_moved_mb"] = m.bytes_moved_mb;
  d["downtime_ms"] = m.downtime_ms;
  d["state_version"] = m.state_version;
  return d;
}

py::dict window_dict(const WindowMetrics& w) {
  py::dict d;
  d["start_ms"] = w.start_ms;
  d["end_ms"] = w.end_ms;
  d["generated_bits"] = w.generated_bits;
  d["delivered_bits"] = w.delivered_bits;
  d["dropped_bits"] = w.dropped_bits;
  d["uplink_bits"] = w.uplink_bits;
  d["uplink_ratio"] = w.uplink_ratio;
  d["migrations"] = w.migrations;
  d["offloads"] = w.offloads;
  d["defers"] = w.defers;
  d["utilization"] = w.utilization;
  return d;
}

Scenario scenario_from(const std::string& path_or_text) {
  // A leading brace means inline JSON; anything else is a file path.
  auto first = path_or_text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && path_or_text[first] == '{') return parse_scenario(path_or_text);
  return load_scenario(path_or_text);
}

}  // namespace

PYBIND11_MODULE(_edgeorch, m) {
  m.doc() = "Edge orchestration simulator core";

  // Raised for every library error; `code` holds the error class name.
  py::exception<Error> error(m, "EdgeorchError");
  static PyObject* error_type = error.ptr();
  Py_INCREF(error_type);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object exc = py::reinterpret_borrow<py::object>(error_type)(e.what());
      exc.attr("code") = std::string(to_string(e.code()));
      PyErr_SetObject(error_type, exc.ptr());
    }
  });

  py::class_<Report>(m, "Report")
      .def_readonly("scenario", &Report::scenario)
      .def_readonly("end_ms", &Report::end_ms)
      .def_readonly("window_ms", &Report::window_ms)
      .def_property_readonly("summary", [](const Report& r) { return summary_dict(r.summary); })
      .def_property_readonly("loss",
                             [](const Report& r) {
                               py::dict d;
                               d["generated_bits"] = r.loss.generated_bits;
                               d["delivered_bits"] = r.loss.delivered_bits;
                               d["dropped_bits"] = r.loss.dropped_bits;
                               d["buffered_bits"] = r.loss.buffered_bits;
                               return d;
                             })
      .def_property_readonly("windows",
                             [](const Report& r) {
                               py::list out;
                               for (const auto& w : r.windows) out.append(window_dict(w));
                               return out;
                             })
      .def_property_readonly("migrations",
                             [](const Report& r) {
                               py::list out;
                               for (const auto& mr : r.migrations) out.append(migration_dict(mr));
                               return out;
                             })
      .def("metrics_csv", &Report::metrics_csv)
      .def("summary_text", &Report::summary_text)
      .def("__eq__", [](const Report& a, const Report& b) { return a == b; });

  py::class_<RunResult>(m, "RunResult")
      .def_property_readonly("trace_jsonl", [](const RunResult& r) { return r.trace.to_jsonl(); })
      .def_property_readonly("trace_hash", [](const RunResult& r) { return r.trace.hash(); })
      .def_property_readonly("records", [](const RunResult& r) { return r.trace.size(); })
      .def_readonly("report", &RunResult::report);

  m.def(
      "validate",
      [](const std::string& scenario) {
        Scenario s = scenario_from(scenario);
        validate(s);
        return s.name;
      },
      py::arg("scenario"), "Parse and validate a scenario file path or JSON text; returns its name.");

  m.def(
      "run",
      [](const std::string& scenario, std::optional<std::uint64_t> seed, std::optional<SimTime> until) {
        RunOptions opts;
        opts.seed = seed;
        opts.until = until;
        Scenario s = scenario_from(scenario);
        py::gil_scoped_release release;
        return run_scenario(s, opts);
      },
      py::arg("scenario"), py::arg("seed") = py::none(), py::arg("until") = py::none(),
      "Run a scenario (file path or JSON text) to completion.");

  m.def("report_from_jsonl", &report_from_jsonl, py::arg("trace"),
        "Rebuild the report from a JSON-lines trace.");

  m.def(
      "transfer_duration",
      [](double size_mb, const std::vector<std::pair<double, double>>& path) {
        std::vector<Link> links;
        for (const auto& [latency, bandwidth] : path) {
          links.push_back(Link{"l" + std::to_string(links.size()), "a", "b", latency, bandwidth, true});
        }
        return transfer_duration(size_mb, links);
      },
      py::arg("size_mb"), py::arg("path"),
      "Stop-and-copy time in ms over (latency_ms, bandwidth_mbps) hops.");
}
