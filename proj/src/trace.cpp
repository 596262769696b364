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

#include "edgeorch/trace.hpp"

#include <functional>
#include <sstream>

#include "edgeorch/error.hpp"

namespace edgeorch {

const TraceRecord& Trace::append(SimTime time, std::string kind, std::string subject,
                                 ojson details) {
  TraceRecord r;
  r.time_ms = time;
  r.seq = records_.size();
  r.kind = std::move(kind);
  r.subject = std::move(subject);
  r.details = std::move(details);
  records_.push_back(std::move(r));
  return records_.back();
}

std::string to_json_line(const TraceRecord& r) {
  ojson j;
  j["time_ms"] = r.time_ms;
  j["seq"] = r.seq;
  j["kind"] = r.kind;
  j["subject"] = r.subject;
  j["details"] = r.details;
  return j.dump();
}

std::string Trace::to_jsonl() const {
  std::string out;
  for (const auto& r : records_) {
    out += to_json_line(r);
    out += '\n';
  }
  return out;
}

Trace Trace::parse_jsonl(std::string_view text) {
  Trace t;
  std::size_t pos = 0;
  std::size_t lineno = 0;
  while (pos < text.size()) {
    std::size_t nl = text.find('\n', pos);
    std::string_view line = text.substr(pos, nl == std::string_view::npos ? nl : nl - pos);
    pos = nl == std::string_view::npos ? text.size() : nl + 1;
    ++lineno;
    if (line.empty()) continue;

    ojson j;
    try {
      j = ojson::parse(line);
    } catch (const nlohmann::json::exception& e) {
      fail(ErrorCode::MalformedTrace, "line " + std::to_string(lineno) + ": " + e.what());
    }
    TraceRecord r;
    try {
      r.time_ms = j.at("time_ms").get<SimTime>();
      r.seq = j.at("seq").get<std::uint64_t>();
      r.kind = j.at("kind").get<std::string>();
      r.subject = j.at("subject").get<std::string>();
      r.details = j.at("details");
    } catch (const nlohmann::json::exception& e) {
      fail(ErrorCode::MalformedTrace, "line " + std::to_string(lineno) + ": " + e.what());
    }
    if (r.seq != t.records_.size()) {
      fail(ErrorCode::MalformedTrace, "line " + std::to_string(lineno) + ": expected seq " +
                                          std::to_string(t.records_.size()));
    }
    if (!t.records_.empty() && r.time_ms < t.records_.back().time_ms) {
      fail(ErrorCode::MalformedTrace, "line " + std::to_string(lineno) + ": time goes backwards");
    }
    t.records_.push_back(std::move(r));
  }
  return t;
}

std::uint64_t Trace::hash() const {
  return std::hash<std::string>{}(to_jsonl());
}

}  // namespace edgeorch
