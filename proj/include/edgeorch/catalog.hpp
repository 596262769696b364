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

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "edgeorch/topology.hpp"

namespace edgeorch {

enum class AppKind { IoTApp, DataApp };

std::string_view to_string(AppKind kind) noexcept;
std::optional<AppKind> parse_app_kind(std::string_view text) noexcept;

struct AppSpec {
  AppId id;
  AppKind kind = AppKind::DataApp;
  ResourceVector demand;  // per replica
  std::optional<double> latency_requirement_ms;  // DataApp only
  double aggregation_factor = 1.0;  // raw bytes in per aggregated byte out
  double state_size_mb = 0.0;
  std::set<Tier> allowed_tiers;

  bool operator==(const AppSpec&) const = default;
};

enum class Protocol { BLE, ZigBee, ZWave, LoRa, Other };

std::string_view to_string(Protocol p) noexcept;
Protocol parse_protocol(std::string_view text) noexcept;

struct DeviceProfile {
  std::string model;
  std::string os_version;
  Protocol protocol = Protocol::Other;
  std::int64_t data_rate_kbps = 0;
  AppId iot_app;

  bool operator==(const DeviceProfile&) const = default;
};

/// Dotted numeric version ("1.10", "2.0.3"). Ordered component-wise by
/// numeric value, so 1.10 > 1.9 and 1.2 < 1.2.1.
class FirmwareVersion {
 public:
  static FirmwareVersion parse(std::string_view text);

  const std::string& str() const noexcept { return text_; }
  const std::vector<std::uint64_t>& components() const noexcept { return parts_; }

  std::strong_ordering operator<=>(const FirmwareVersion& o) const noexcept {
    return parts_ <=> o.parts_;
  }
  bool operator==(const FirmwareVersion& o) const noexcept { return parts_ == o.parts_; }

 private:
  std::string text_;
  std::vector<std::uint64_t> parts_;
};

struct FirmwareEntry {
  std::string model;
  std::string os_version;
  std::string firmware_version;
};

/// Application, device-profile and firmware registry. Filled once when a
/// scenario is loaded and read-only while it runs.
class Catalog {
 public:
  AppId register_app(AppSpec spec);
  /// Removing an app leaves profiles that point at it dangling; they fail on
  /// resolve_iot_app rather than being cascaded away.
  void remove_app(const AppId& id);
  void register_profile(DeviceProfile profile);
  void register_firmware(const FirmwareEntry& entry);

  bool has_app(const AppId& id) const noexcept { return apps_.count(id) != 0; }
  const AppSpec& app(const AppId& id) const;
  const DeviceProfile& profile(const std::string& model) const;
  bool has_profile(const std::string& model) const noexcept { return profiles_.count(model) != 0; }

  const std::map<AppId, AppSpec>& apps() const noexcept { return apps_; }
  const std::map<std::string, DeviceProfile>& profiles() const noexcept { return profiles_; }
  const std::vector<FirmwareEntry>& firmware() const noexcept { return firmware_; }

  /// Highest firmware version registered for exactly (model, os_version).
  std::string match_firmware(const std::string& model, const std::string& os_version) const;
  std::optional<std::string> try_match_firmware(const std::string& model,
                                                const std::string& os_version) const;

  const AppSpec& resolve_iot_app(const DeviceProfile& profile) const;

 private:
  std::map<AppId, AppSpec> apps_;
  std::map<std::string, DeviceProfile> profiles_;
  std::vector<FirmwareEntry> firmware_;
};

}  // namespace edgeorch
