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

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "edgeorch/catalog.hpp"
#include "edgeorch/ids.hpp"
#include "edgeorch/topology.hpp"

namespace edgeorch {

enum class AttachStatus { Attached, Detached };

struct Attachment {
  DeviceId device_id;
  std::string model;
  NodeId gateway;
  SimTime attached_at = 0;
  std::optional<SimTime> detached_at;
  AttachStatus status = AttachStatus::Attached;

  bool operator==(const Attachment&) const = default;
};

/// Ask the orchestrator to run `app` on `gateway` for `device`.
struct InstallRequest {
  DeviceId device;
  NodeId gateway;
  AppId app;
  SimTime time = 0;

  bool operator==(const InstallRequest&) const = default;
};

struct DiscoveryOutcome {
  Attachment attachment;
  /// Empty when the catalog has no firmware for (model, os_version); the
  /// device is still onboarded.
  std::optional<std::string> firmware_version;
  /// Empty on an idempotent re-attach to the same gateway.
  std::optional<InstallRequest> install_request;
};

/// Gateway agent: tracks which device is bound to which gateway and turns
/// attach notifications into firmware lookups and install requests.
class Discovery {
 public:
  Discovery(const Topology& topology, const Catalog& catalog)
      : topology_(topology), catalog_(catalog) {}

  DiscoveryOutcome handle_attach(const NodeId& gateway, const DeviceId& device,
                                 const std::string& model, const std::string& os_version,
                                 SimTime time);
  Attachment handle_detach(const NodeId& gateway, const DeviceId& device, SimTime time);

  std::optional<NodeId> current_gateway(const DeviceId& device) const;
  /// The live Attached record, or nullptr.
  const Attachment* current(const DeviceId& device) const;
  /// Every record ever created, in creation order.
  const std::vector<Attachment>& history() const noexcept { return history_; }

 private:
  const Topology& topology_;
  const Catalog& catalog_;
  std::vector<Attachment> history_;
  std::map<DeviceId, std::size_t> live_;  // device -> index into history_
};

}  // namespace edgeorch
