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

#include "edgeorch/catalog.hpp"

#include <cctype>
#include <charconv>

#include "edgeorch/error.hpp"

namespace edgeorch {

std::string_view to_string(AppKind kind) noexcept {
  return kind == AppKind::IoTApp ? "iot_app" : "data_app";
}

std::optional<AppKind> parse_app_kind(std::string_view text) noexcept {
  if (text == "iot_app") return AppKind::IoTApp;
  if (text == "data_app") return AppKind::DataApp;
  return std::nullopt;
}

std::string_view to_string(Protocol p) noexcept {
  switch (p) {
    case Protocol::BLE: return "BLE";
    case Protocol::ZigBee: return "ZigBee";
    case Protocol::ZWave: return "ZWave";
    case Protocol::LoRa: return "LoRa";
    case Protocol::Other: return "other";
  }
  return "other";
}

Protocol parse_protocol(std::string_view text) noexcept {
  std::string t;
  for (char c : text) {
    if (c != '-' && c != '_') t.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  }
  if (t == "ble") return Protocol::BLE;
  if (t == "zigbee") return Protocol::ZigBee;
  if (t == "zwave") return Protocol::ZWave;
  if (t == "lora") return Protocol::LoRa;
  return Protocol::Other;
}

FirmwareVersion FirmwareVersion::parse(std::string_view text) {
  FirmwareVersion v;
  v.text_ = std::string(text);
  if (text.empty()) fail(ErrorCode::InvalidFirmware, "empty version string");
  std::size_t pos = 0;
  while (true) {
    std::size_t dot = text.find('.', pos);
    std::string_view part = text.substr(pos, dot == std::string_view::npos ? dot : dot - pos);
    std::uint64_t value = 0;
    auto [end, ec] = std::from_chars(part.data(), part.data() + part.size(), value);
    if (part.empty() || ec != std::errc{} || end != part.data() + part.size()) {
      fail(ErrorCode::InvalidFirmware, "not a dotted numeric version: " + v.text_);
    }
    v.parts_.push_back(value);
    if (dot == std::string_view::npos) break;
    pos = dot + 1;
  }
  return v;
}

AppId Catalog::register_app(AppSpec spec) {
  if (spec.id.empty()) fail(ErrorCode::InvalidAppSpec, "app id must not be empty");
  if (has_app(spec.id)) fail(ErrorCode::DuplicateAppId, spec.id);
  if (!spec.demand.non_negative()) fail(ErrorCode::InvalidAppSpec, spec.id + ": negative demand");
  if (!(spec.aggregation_factor >= 1.0)) {
    fail(ErrorCode::InvalidAppSpec, spec.id + ": aggregation_factor must be >= 1");
  }
  if (!(spec.state_size_mb >= 0.0)) fail(ErrorCode::InvalidAppSpec, spec.id + ": negative state size");
  if (spec.allowed_tiers.empty()) fail(ErrorCode::TierViolation, spec.id + ": no allowed tiers");
  if (spec.kind == AppKind::IoTApp) {
    if (spec.allowed_tiers != std::set<Tier>{Tier::Gateway}) {
      fail(ErrorCode::TierViolation, spec.id + ": IoT-Apps run on gateways only");
    }
    if (spec.latency_requirement_ms) {
      fail(ErrorCode::InvalidAppSpec, spec.id + ": latency requirement applies to Data-Apps");
    }
  } else {
    if (spec.allowed_tiers.count(Tier::Gateway)) {
      fail(ErrorCode::TierViolation, spec.id + ": Data-Apps cannot run on gateways");
    }
    if (spec.latency_requirement_ms && !(*spec.latency_requirement_ms >= 0.0)) {
      fail(ErrorCode::InvalidAppSpec, spec.id + ": negative latency requirement");
    }
  }
  AppId id = spec.id;
  apps_.emplace(id, std::move(spec));
  return id;
}

void Catalog::remove_app(const AppId& id) {
  if (apps_.erase(id) == 0) fail(ErrorCode::UnknownApp, id);
}

void Catalog::register_profile(DeviceProfile profile) {
  if (profile.model.empty()) fail(ErrorCode::InvalidProfile, "empty model");
  if (has_profile(profile.model)) fail(ErrorCode::DuplicateProfile, profile.model);
  if (profile.data_rate_kbps <= 0) fail(ErrorCode::InvalidProfile, profile.model + ": data rate must be > 0");
  auto it = apps_.find(profile.iot_app);
  if (it == apps_.end()) fail(ErrorCode::UnknownApp, profile.model + " -> " + profile.iot_app);
  if (it->second.kind != AppKind::IoTApp) {
    fail(ErrorCode::InvalidProfile, profile.model + ": managing app must be an IoT-App");
  }
  std::string model = profile.model;
  profiles_.emplace(model, std::move(profile));
}

void Catalog::register_firmware(const FirmwareEntry& entry) {
  if (entry.model.empty()) fail(ErrorCode::InvalidFirmware, "empty model");
  if (entry.os_version.empty()) fail(ErrorCode::InvalidFirmware, "empty os_version");
  auto version = FirmwareVersion::parse(entry.firmware_version);
  for (const auto& e : firmware_) {
    if (e.model == entry.model && e.os_version == entry.os_version &&
        FirmwareVersion::parse(e.firmware_version) == version) {
      fail(ErrorCode::DuplicateFirmware,
           entry.model + "/" + entry.os_version + "/" + entry.firmware_version);
    }
  }
  firmware_.push_back(entry);
}

const AppSpec& Catalog::app(const AppId& id) const {
  auto it = apps_.find(id);
  if (it == apps_.end()) fail(ErrorCode::UnknownApp, id);
  return it->second;
}

const DeviceProfile& Catalog::profile(const std::string& model) const {
  auto it = profiles_.find(model);
  if (it == profiles_.end()) fail(ErrorCode::UnknownProfile, model);
  return it->second;
}

std::optional<std::string> Catalog::try_match_firmware(const std::string& model,
                                                       const std::string& os_version) const {
  const FirmwareEntry* best = nullptr;
  std::optional<FirmwareVersion> best_version;
  for (const auto& e : firmware_) {
    if (e.model != model || e.os_version != os_version) continue;
    auto v = FirmwareVersion::parse(e.firmware_version);
    if (!best_version || v > *best_version) {
      best = &e;
      best_version = std::move(v);
    }
  }
  if (!best) return std::nullopt;
  return best->firmware_version;
}

std::string Catalog::match_firmware(const std::string& model, const std::string& os_version) const {
  auto v = try_match_firmware(model, os_version);
  if (!v) fail(ErrorCode::NoCompatibleFirmware, model + "/" + os_version);
  return *v;
}

const AppSpec& Catalog::resolve_iot_app(const DeviceProfile& profile) const {
  auto pit = profiles_.find(profile.model);
  if (pit == profiles_.end()) fail(ErrorCode::UnknownProfile, profile.model);
  auto it = apps_.find(pit->second.iot_app);
  if (it == apps_.end()) fail(ErrorCode::DanglingAppReference, profile.model + " -> " + pit->second.iot_app);
  return it->second;
}

}  // namespace edgeorch
