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

#include "edgeorch/discovery.hpp"

#include "edgeorch/error.hpp"

namespace edgeorch {

DiscoveryOutcome Discovery::handle_attach(const NodeId& gateway, const DeviceId& device,
                                          const std::string& model, const std::string& os_version,
                                          SimTime time) {
  const Node& gw = topology_.node(gateway);
  if (gw.tier != Tier::Gateway) fail(ErrorCode::NotAGateway, gateway);
  if (!catalog_.has_profile(model)) fail(ErrorCode::UnknownDeviceProfile, model);
  const DeviceProfile& profile = catalog_.profile(model);

  DiscoveryOutcome out;
  out.firmware_version = catalog_.try_match_firmware(model, os_version);

  if (auto it = live_.find(device); it != live_.end()) {
    const Attachment& existing = history_[it->second];
    if (existing.gateway != gateway) {
      fail(ErrorCode::AlreadyAttachedElsewhere, device + " is attached at " + existing.gateway);
    }
    out.attachment = existing;
    return out;
  }

  Attachment a{device, model, gateway, time, std::nullopt, AttachStatus::Attached};
  live_[device] = history_.size();
  history_.push_back(a);
  out.attachment = a;
  out.install_request = InstallRequest{device, gateway, profile.iot_app, time};
  return out;
}

Attachment Discovery::handle_detach(const NodeId& gateway, const DeviceId& device, SimTime time) {
  auto it = live_.find(device);
  if (it == live_.end() || history_[it->second].gateway != gateway) {
    fail(ErrorCode::NotAttachedHere, device + " @ " + gateway);
  }
  Attachment& a = history_[it->second];
  a.status = AttachStatus::Detached;
  a.detached_at = time;
  live_.erase(it);
  return a;
}

std::optional<NodeId> Discovery::current_gateway(const DeviceId& device) const {
  if (const Attachment* a = current(device)) return a->gateway;
  return std::nullopt;
}

const Attachment* Discovery::current(const DeviceId& device) const {
  auto it = live_.find(device);
  return it == live_.end() ? nullptr : &history_[it->second];
}

}  // namespace edgeorch
