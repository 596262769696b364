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
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "edgeorch/ids.hpp"

namespace edgeorch {

using ojson = nlohmann::ordered_json;

/// One line of a run trace. Serialized as a JSON object with the key order
/// time_ms, seq, kind, subject, details.
struct TraceRecord {
  SimTime time_ms = 0;
  std::uint64_t seq = 0;
  std::string kind;
  std::string subject;
  ojson details = ojson::object();

  bool operator==(const TraceRecord&) const = default;
};

class Trace {
 public:
  const TraceRecord& append(SimTime time, std::string kind, std::string subject,
                            ojson details = ojson::object());

  const std::vector<TraceRecord>& records() const noexcept { return records_; }
  std::size_t size() const noexcept { return records_.size(); }
  bool empty() const noexcept { return records_.empty(); }

  std::string to_jsonl() const;
  /// Throws MalformedTrace on unparsable lines, missing fields, gaps in the
  /// sequence numbers or decreasing timestamps.
  static Trace parse_jsonl(std::string_view text);

  /// Hash of the serialized form; equal traces hash equal.
  std::uint64_t hash() const;

  bool operator==(const Trace&) const = default;

 private:
  std::vector<TraceRecord> records_;
};

std::string to_json_line(const TraceRecord& r);

}  // namespace edgeorch
