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

#include "edgeorch/scenario.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "edgeorch/error.hpp"

namespace edgeorch {
namespace {

using nlohmann::json;

template <typename T>
T get_or(const json& j, const char* key, T fallback) {
  auto it = j.find(key);
  if (it == j.end() || it->is_null()) return fallback;
  return it->get<T>();
}

ResourceVector parse_resources(const json& j, ResourceVector fallback) {
  return {get_or<std::int64_t>(j, "cpu_millicores", fallback.cpu_millicores),
          get_or<std::int64_t>(j, "mem_mb", fallback.mem_mb),
          get_or<std::int64_t>(j, "storage_mb", fallback.storage_mb)};
}

Tier require_tier(const std::string& text) {
  auto t = parse_tier(text);
  if (!t) fail(ErrorCode::ParseError, "unknown tier '" + text + "'");
  return *t;
}

Node parse_node(const json& j) {
  Node n;
  n.id = j.at("id").get<std::string>();
  n.tier = require_tier(j.at("tier").get<std::string>());
  n.capacity = parse_resources(j, default_capacity(n.tier));
  return n;
}

Link parse_link(const json& j) {
  Link l;
  l.a = j.at("a").get<std::string>();
  l.b = j.at("b").get<std::string>();
  l.id = get_or<std::string>(j, "id", l.a + "--" + l.b);
  l.latency_ms = j.at("latency_ms").get<double>();
  l.bandwidth_mbps = j.at("bandwidth_mbps").get<double>();
  return l;
}

AppSpec parse_app(const json& j) {
  AppSpec a;
  a.id = j.at("id").get<std::string>();
  auto kind = parse_app_kind(j.at("kind").get<std::string>());
  if (!kind) fail(ErrorCode::ParseError, "app " + a.id + ": kind must be iot_app or data_app");
  a.kind = *kind;
  a.demand = parse_resources(j.at("demand"), {});
  if (j.contains("latency_requirement_ms") && !j.at("latency_requirement_ms").is_null()) {
    a.latency_requirement_ms = j.at("latency_requirement_ms").get<double>();
  }
  a.aggregation_factor = get_or<double>(j, "aggregation_factor", 1.0);
  a.state_size_mb = get_or<double>(j, "state_mb", 0.0);
  if (j.contains("allowed_tiers")) {
    for (const auto& t : j.at("allowed_tiers")) a.allowed_tiers.insert(require_tier(t.get<std::string>()));
  } else if (a.kind == AppKind::IoTApp) {
    a.allowed_tiers = {Tier::Gateway};
  } else {
    a.allowed_tiers = {Tier::EdgeModule, Tier::CentralCloud};
  }
  return a;
}

DeviceProfile parse_device(const json& j) {
  DeviceProfile d;
  d.model = j.at("model").get<std::string>();
  d.os_version = get_or<std::string>(j, "os_version", "");
  d.protocol = parse_protocol(get_or<std::string>(j, "protocol", "other"));
  d.data_rate_kbps = j.at("data_rate_kbps").get<std::int64_t>();
  d.iot_app = j.at("iot_app").get<std::string>();
  return d;
}

FirmwareEntry parse_firmware(const json& j) {
  return {j.at("model").get<std::string>(), j.at("os_version").get<std::string>(),
          j.at("version").get<std::string>()};
}

ScriptEntry parse_script_entry(const json& j, const std::vector<DeviceProfile>& devices) {
  ScriptEntry e;
  e.time = j.at("time_ms").get<SimTime>();
  const auto type = j.at("type").get<std::string>();
  if (type == "attach") {
    AttachPayload p;
    p.device = j.at("device").get<std::string>();
    p.gateway = j.at("gateway").get<std::string>();
    p.model = j.at("model").get<std::string>();
    std::string os;
    for (const auto& d : devices) {
      if (d.model == p.model) os = d.os_version;
    }
    p.os_version = get_or<std::string>(j, "os_version", os);
    e.kind = EventKind::Attach;
    e.payload = p;
  } else if (type == "detach") {
    e.kind = EventKind::Detach;
    e.payload = DetachPayload{j.at("device").get<std::string>(), j.at("gateway").get<std::string>()};
  } else if (type == "roam") {
    e.kind = EventKind::Roam;
    e.payload = RoamPayload{j.at("device").get<std::string>(), j.at("to").get<std::string>()};
  } else if (type == "deploy") {
    e.kind = EventKind::WorkloadChange;
    e.payload = DeployPayload{j.at("app").get<std::string>(), j.at("source").get<std::string>(),
                              get_or<std::int64_t>(j, "replicas", 1)};
  } else if (type == "scale") {
    ScalePayload p;
    p.app = j.at("app").get<std::string>();
    if (j.contains("source")) p.source = j.at("source").get<std::string>();
    p.replicas = j.at("replicas").get<std::int64_t>();
    e.kind = EventKind::WorkloadChange;
    e.payload = p;
  } else if (type == "user_status") {
    e.kind = EventKind::Custom;
    e.payload = UserStatusPayload{j.at("device").get<std::string>(), j.at("key").get<std::string>(),
                                  j.at("value").get<std::string>()};
  } else if (type == "fault") {
    Fault f;
    auto kind = parse_fault_kind(j.at("kind").get<std::string>());
    if (!kind) fail(ErrorCode::ParseError, "unknown fault kind " + j.at("kind").dump());
    f.kind = *kind;
    f.target = get_or<std::string>(j, "target", "");
    f.start = e.time;
    f.duration = j.at("duration_ms").get<SimTime>();
    e.kind = EventKind::FaultStart;
    e.payload = FaultPayload{f};
  } else {
    fail(ErrorCode::ParseError, "unknown script event type '" + type + "'");
  }
  return e;
}

// Errors raised while building the live structures are reported under the
// two validation classes the CLI distinguishes.
[[noreturn]] void rethrow_as_validation(const Error& e) {
  switch (e.code()) {
    case ErrorCode::UnknownNode:
    case ErrorCode::UnknownLink:
    case ErrorCode::UnknownApp:
    case ErrorCode::UnknownProfile:
    case ErrorCode::UnknownTarget:
    case ErrorCode::UnknownReference:
      fail(ErrorCode::UnknownReference, e.what());
    default:
      fail(ErrorCode::InvariantViolation, e.what());
  }
}

void check(bool ok, const std::string& what) {
  if (!ok) fail(ErrorCode::InvariantViolation, what);
}

void require_ref(bool ok, const std::string& what) {
  if (!ok) fail(ErrorCode::UnknownReference, what);
}

}  // namespace

Topology build_topology(const Scenario& s) {
  Topology t;
  for (const auto& n : s.nodes) t.add_node(n);
  for (const auto& l : s.links) t.add_link(l.a, l.b, l.latency_ms, l.bandwidth_mbps, l.id);
  return t;
}

Catalog build_catalog(const Scenario& s) {
  Catalog c;
  for (const auto& a : s.apps) c.register_app(a);
  for (const auto& d : s.devices) c.register_profile(d);
  for (const auto& f : s.firmware) c.register_firmware(f);
  return c;
}

void validate(const Scenario& s) {
  check(s.schema_version == kScenarioSchemaVersion,
        "unsupported schema_version " + std::to_string(s.schema_version));
  check(s.duration_ms >= 0, "duration_ms must be >= 0");
  check(s.scheduler_tick_ms > 0, "scheduler_tick_ms must be > 0");
  check(s.flow_tick_ms > 0, "flow_tick_ms must be > 0");
  check(s.metrics_window_ms > 0 && s.metrics_window_ms % s.flow_tick_ms == 0,
        "metrics_window_ms must be a positive multiple of flow_tick_ms");
  check(s.buffer_mb >= 0.0, "buffer_mb must be >= 0");
  try {
    s.thresholds.validate();
  } catch (const Error& e) {
    fail(ErrorCode::InvariantViolation, e.what());
  }

  Topology topo;
  Catalog cat;
  try {
    topo = build_topology(s);
    cat = build_catalog(s);
  } catch (const Error& e) {
    rethrow_as_validation(e);
  }

  auto gateway = [&](const NodeId& id, const std::string& ctx) {
    require_ref(topo.has_node(id), ctx + ": unknown node '" + id + "'");
    check(topo.node(id).tier == Tier::Gateway, ctx + ": '" + id + "' is not a gateway");
  };

  std::set<DeviceId> seen_devices;
  std::vector<std::pair<SimTime, const DeployPayload*>> deploys;
  for (const auto& e : s.script) {
    if (const auto* d = std::get_if<DeployPayload>(&e.payload)) deploys.emplace_back(e.time, d);
    if (const auto* a = std::get_if<AttachPayload>(&e.payload)) seen_devices.insert(a->device);
  }

  FaultInjector probe(topo);
  for (std::size_t i = 0; i < s.script.size(); ++i) {
    const ScriptEntry& e = s.script[i];
    const std::string ctx = "script[" + std::to_string(i) + "]";
    check(e.time >= 0 && e.time <= s.duration_ms, ctx + ": time outside [0, duration_ms]");
    std::visit(
        [&](const auto& p) {
          using P = std::decay_t<decltype(p)>;
          if constexpr (std::is_same_v<P, AttachPayload>) {
            gateway(p.gateway, ctx);
            require_ref(cat.has_profile(p.model), ctx + ": unknown device model '" + p.model + "'");
          } else if constexpr (std::is_same_v<P, DetachPayload>) {
            gateway(p.gateway, ctx);
            require_ref(seen_devices.count(p.device) != 0, ctx + ": device '" + p.device + "' never attaches");
          } else if constexpr (std::is_same_v<P, RoamPayload>) {
            gateway(p.to_gateway, ctx);
            require_ref(seen_devices.count(p.device) != 0, ctx + ": device '" + p.device + "' never attaches");
          } else if constexpr (std::is_same_v<P, DeployPayload>) {
            require_ref(cat.has_app(p.app), ctx + ": unknown app '" + p.app + "'");
            check(cat.app(p.app).kind == AppKind::DataApp, ctx + ": only Data-Apps are deployed by script");
            require_ref(topo.has_node(p.source), ctx + ": unknown source '" + p.source + "'");
            check(p.replicas >= 1, ctx + ": replicas must be >= 1");
          } else if constexpr (std::is_same_v<P, ScalePayload>) {
            require_ref(cat.has_app(p.app), ctx + ": unknown app '" + p.app + "'");
            check(p.replicas >= 1, ctx + ": replicas must be >= 1");
            if (p.source) require_ref(topo.has_node(*p.source), ctx + ": unknown source '" + *p.source + "'");
            bool deployed = false;
            for (const auto& [t, d] : deploys) {
              if (t <= e.time && d->app == p.app && (!p.source || d->source == *p.source)) deployed = true;
            }
            require_ref(deployed, ctx + ": no earlier deploy of '" + p.app + "' to scale");
          } else if constexpr (std::is_same_v<P, UserStatusPayload>) {
            require_ref(seen_devices.count(p.device) != 0, ctx + ": device '" + p.device + "' never attaches");
          } else if constexpr (std::is_same_v<P, FaultPayload>) {
            try {
              probe.validate(p.fault);
            } catch (const Error& err) {
              rethrow_as_validation(err);
            }
          } else {
            fail(ErrorCode::InvariantViolation, ctx + ": event kind not allowed in a script");
          }
        },
        e.payload);
  }
}

Scenario parse_scenario(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    fail(ErrorCode::ParseError, e.what());
  }
  Scenario s;
  try {
    if (!j.is_object()) fail(ErrorCode::ParseError, "scenario must be a JSON object");
    s.schema_version = j.at("schema_version").get<int>();
    s.name = get_or<std::string>(j, "name", "unnamed");
    s.seed = get_or<std::uint64_t>(j, "seed", 0);
    s.duration_ms = j.at("duration_ms").get<SimTime>();
    s.scheduler_tick_ms = get_or<SimTime>(j, "scheduler_tick_ms", 1000);
    s.flow_tick_ms = get_or<SimTime>(j, "flow_tick_ms", 100);
    s.metrics_window_ms = get_or<SimTime>(j, "metrics_window_ms", 1000);
    s.buffer_mb = get_or<double>(j, "buffer_mb", 10.0);
    if (j.contains("thresholds")) {
      const auto& t = j.at("thresholds");
      s.thresholds.high = get_or<double>(t, "high", 0.8);
      s.thresholds.low = get_or<double>(t, "low", 0.6);
    }
    const json empty = json::object();
    const json& topo = j.contains("topology") ? j.at("topology") : empty;
    for (const auto& n : get_or<json>(topo, "nodes", json::array())) s.nodes.push_back(parse_node(n));
    for (const auto& l : get_or<json>(topo, "links", json::array())) s.links.push_back(parse_link(l));
    const json& cat = j.contains("catalog") ? j.at("catalog") : empty;
    for (const auto& a : get_or<json>(cat, "apps", json::array())) s.apps.push_back(parse_app(a));
    for (const auto& d : get_or<json>(cat, "devices", json::array())) s.devices.push_back(parse_device(d));
    for (const auto& f : get_or<json>(cat, "firmware", json::array())) s.firmware.push_back(parse_firmware(f));
    for (const auto& e : get_or<json>(j, "script", json::array())) {
      s.script.push_back(parse_script_entry(e, s.devices));
    }
  } catch (const json::exception& e) {
    fail(ErrorCode::ParseError, e.what());
  }
  validate(s);
  return s;
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::ParseError, "cannot open " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str());
}

}  // namespace edgeorch
