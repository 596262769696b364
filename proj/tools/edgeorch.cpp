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

// Command-line front end: validate a scenario, run it, or rebuild a report
// from a saved trace.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "edgeorch/error.hpp"
#include "edgeorch/platform.hpp"
#include "edgeorch/report.hpp"
#include "edgeorch/scenario.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 1;
constexpr int kExitRuntime = 2;

bool is_validation_error(edgeorch::ErrorCode code) {
  using edgeorch::ErrorCode;
  return code == ErrorCode::ParseError || code == ErrorCode::UnknownReference ||
         code == ErrorCode::InvariantViolation;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hierarchical edge-cloud platform simulator"};
  app.require_subcommand(1);

  std::string scenario_path;
  auto* validate_cmd = app.add_subcommand("validate", "Parse and validate a scenario file");
  validate_cmd->add_option("scenario", scenario_path, "Scenario JSON")->required();

  std::string run_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::int64_t> until;
  std::string trace_out;
  std::string metrics_out;
  auto* run_cmd = app.add_subcommand("run", "Run a scenario and print its summary");
  run_cmd->add_option("scenario", run_path, "Scenario JSON")->required();
  run_cmd->add_option("--seed", seed, "Override the scenario seed");
  run_cmd->add_option("--until", until, "Stop at this simulated time (ms)");
  run_cmd->add_option("--trace", trace_out, "Write the JSONL trace here ('-' for stdout)");
  run_cmd->add_option("--metrics", metrics_out, "Write per-window metrics CSV here ('-' for stdout)");

  std::string trace_path;
  bool as_metrics = false;
  auto* report_cmd = app.add_subcommand("report", "Rebuild the report from a JSONL trace");
  report_cmd->add_option("trace", trace_path, "Trace JSONL")->required();
  report_cmd->add_flag("--metrics", as_metrics, "Print the metrics CSV instead of the summary");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*validate_cmd) {
      auto s = edgeorch::load_scenario(scenario_path);
      std::cout << "ok " << s.name << ": " << s.nodes.size() << " nodes, " << s.links.size() << " links, "
                << s.apps.size() << " apps, " << s.script.size() << " script entries\n";
      return kExitOk;
    }
    if (*run_cmd) {
      auto s = edgeorch::load_scenario(run_path);
      auto result = edgeorch::run_scenario(s, {seed, until});
      // '-' sends that output to stdout in place of the summary.
      auto emit = [](const std::string& dest, const std::string& text) {
        if (dest == "-") {
          std::cout << text;
        } else if (!dest.empty()) {
          write_file(dest, text);
        }
      };
      emit(trace_out, result.trace.to_jsonl());
      emit(metrics_out, result.report.metrics_csv());
      if (trace_out != "-" && metrics_out != "-") std::cout << result.report.summary_text();
      return kExitOk;
    }
    if (*report_cmd) {
      auto report = edgeorch::report_from_jsonl(read_file(trace_path));
      std::cout << (as_metrics ? report.metrics_csv() : report.summary_text());
      return kExitOk;
    }
  } catch (const edgeorch::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return is_validation_error(e.code()) ? kExitInvalid : kExitRuntime;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitOk;
}
