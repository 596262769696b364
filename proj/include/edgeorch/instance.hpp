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
#include <string_view>

#include "edgeorch/ids.hpp"
#include "edgeorch/topology.hpp"

namespace edgeorch {

/// Application state carried across migrations. For IoT-Apps the payload is
/// the user status and preferences; version bumps on every mutation.
struct StateBlob {
  double size_mb = 0.0;
  std::uint64_t version = 0;
  std::map<std::string, std::string> payload;

  void set(const std::string& key, const std::string& value) {
    payload[key] = value;
    ++version;
  }

  bool operator==(const StateBlob&) const = default;
};

enum class InstanceStatus { Pending, Running, Migrating, Stopped };

std::string_view to_string(InstanceStatus s) noexcept;

struct AppInstance {
  InstanceId id;
  AppId app;
  NodeId host;
  /// Data source the latency requirement is measured from.
  NodeId source;
  std::int64_t replicas = 1;
  std::optional<DeviceId> bound_device;
  StateBlob state;
  InstanceStatus status = InstanceStatus::Pending;
  /// Set while Migrating.
  std::optional<NodeId> migration_target;

  bool operator==(const AppInstance&) const = default;
};

}  // namespace edgeorch
