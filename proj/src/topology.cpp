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

#include "edgeorch/topology.hpp"

#include <algorithm>
#include <queue>
#include <set>
#include <tuple>

#include "edgeorch/error.hpp"

namespace edgeorch {

std::string_view to_string(Tier tier) noexcept {
  switch (tier) {
    case Tier::CentralCloud: return "central_cloud";
    case Tier::EdgeModule: return "edge_module";
    case Tier::Gateway: return "gateway";
  }
  return "unknown";
}

std::optional<Tier> parse_tier(std::string_view text) noexcept {
  if (text == "central_cloud" || text == "cloud") return Tier::CentralCloud;
  if (text == "edge_module" || text == "edge") return Tier::EdgeModule;
  if (text == "gateway") return Tier::Gateway;
  return std::nullopt;
}

ResourceVector& ResourceVector::operator+=(const ResourceVector& o) noexcept {
  cpu_millicores += o.cpu_millicores;
  mem_mb += o.mem_mb;
  storage_mb += o.storage_mb;
  return *this;
}

ResourceVector& ResourceVector::operator-=(const ResourceVector& o) noexcept {
  cpu_millicores -= o.cpu_millicores;
  mem_mb -= o.mem_mb;
  storage_mb -= o.storage_mb;
  return *this;
}

bool ResourceVector::fits_within(const ResourceVector& limit) const noexcept {
  return cpu_millicores <= limit.cpu_millicores && mem_mb <= limit.mem_mb &&
         storage_mb <= limit.storage_mb;
}

bool ResourceVector::non_negative() const noexcept {
  return cpu_millicores >= 0 && mem_mb >= 0 && storage_mb >= 0;
}

double bottleneck_fraction(const ResourceVector& demand, const ResourceVector& capacity) noexcept {
  auto frac = [](std::int64_t num, std::int64_t den) {
    return den > 0 ? static_cast<double>(num) / static_cast<double>(den) : 0.0;
  };
  return std::max({frac(demand.cpu_millicores, capacity.cpu_millicores),
                   frac(demand.mem_mb, capacity.mem_mb),
                   frac(demand.storage_mb, capacity.storage_mb)});
}

ResourceVector default_capacity(Tier tier) noexcept {
  switch (tier) {
    case Tier::Gateway:
      // quad-core Cortex-A53, 1 GB RAM, 16 GB SD card
      return {4000, 1024, 16 * 1024};
    case Tier::EdgeModule:
      // 4-core Xeon E3 class unit, 16 GB RAM, 480 GB SSD
      return {4000, 16 * 1024, 480 * 1024};
    case Tier::CentralCloud:
      // 2 compute servers x 2 sockets x 8 cores, 2 x 96 GB RAM, 11 TB SAN
      return {32000, 2 * 96 * 1024, 11LL * 1024 * 1024};
  }
  return {};
}

NodeId Topology::add_node(Node spec) {
  if (spec.id.empty()) fail(ErrorCode::InvalidCapacity, "node id must not be empty");
  if (has_node(spec.id)) fail(ErrorCode::DuplicateNodeId, spec.id);
  const auto& c = spec.capacity;
  if (c.cpu_millicores <= 0 || c.mem_mb <= 0 || c.storage_mb <= 0) {
    fail(ErrorCode::InvalidCapacity, "node " + spec.id + " needs positive capacities");
  }
  spec.alloc = {};
  spec.up = true;
  NodeId id = spec.id;
  nodes_.emplace(id, std::move(spec));
  return id;
}

LinkId Topology::add_link(const NodeId& a, const NodeId& b, double latency_ms,
                          double bandwidth_mbps, LinkId id) {
  if (!has_node(a)) fail(ErrorCode::UnknownNode, a);
  if (!has_node(b)) fail(ErrorCode::UnknownNode, b);
  if (a == b) fail(ErrorCode::SelfLoop, a);
  if (!(bandwidth_mbps > 0.0)) fail(ErrorCode::NonPositiveBandwidth, a + "--" + b);
  if (!(latency_ms >= 0.0)) fail(ErrorCode::InvalidLatency, a + "--" + b);
  if (id.empty()) id = a + "--" + b;
  if (has_link(id)) fail(ErrorCode::DuplicateLinkId, id);
  links_.emplace(id, Link{id, a, b, latency_ms, bandwidth_mbps, true});
  return id;
}

const Node& Topology::node(const NodeId& id) const {
  auto it = nodes_.find(id);
  if (it == nodes_.end()) fail(ErrorCode::UnknownNode, id);
  return it->second;
}

Node& Topology::mutable_node(const NodeId& id) {
  auto it = nodes_.find(id);
  if (it == nodes_.end()) fail(ErrorCode::UnknownNode, id);
  return it->second;
}

const Link& Topology::link(const LinkId& id) const {
  auto it = links_.find(id);
  if (it == links_.end()) fail(ErrorCode::UnknownLink, id);
  return it->second;
}

std::vector<NodeId> Topology::nodes_in_tier(Tier tier) const {
  std::vector<NodeId> out;
  for (const auto& [id, n] : nodes_) {
    if (n.tier == tier) out.push_back(id);
  }
  return out;
}

std::optional<std::vector<LinkId>> Topology::shortest_path(const NodeId& a, const NodeId& b) const {
  const Node& src = node(a);
  const Node& dst = node(b);
  if (a == b) return std::vector<LinkId>{};
  if (!src.up || !dst.up) return std::nullopt;

  // Dijkstra; ties broken by node id through the heap ordering so the chosen
  // path is a deterministic function of the graph.
  std::map<NodeId, double> dist;
  std::map<NodeId, LinkId> via;
  using Entry = std::tuple<double, NodeId>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;
  std::set<NodeId> done;
  dist[a] = 0.0;
  heap.emplace(0.0, a);
  while (!heap.empty()) {
    auto [d, u] = heap.top();
    heap.pop();
    if (!done.insert(u).second) continue;
    if (u == b) break;
    for (const auto& [lid, l] : links_) {
      if (!l.up || !l.touches(u)) continue;
      const NodeId& v = l.other(u);
      if (done.count(v) || !nodes_.at(v).up) continue;
      double nd = d + l.latency_ms;
      auto it = dist.find(v);
      if (it == dist.end() || nd < it->second) {
        dist[v] = nd;
        via[v] = lid;
        heap.emplace(nd, v);
      }
    }
  }
  if (!done.count(b)) return std::nullopt;

  std::vector<LinkId> path;
  for (NodeId cur = b; cur != a;) {
    const Link& l = links_.at(via.at(cur));
    path.push_back(l.id);
    cur = l.other(cur);
  }
  std::reverse(path.begin(), path.end());
  return path;
}

std::optional<double> Topology::try_path_latency(const NodeId& a, const NodeId& b) const {
  auto path = shortest_path(a, b);
  if (!path) return std::nullopt;
  double total = 0.0;
  for (const auto& lid : *path) total += links_.at(lid).latency_ms;
  return total;
}

double Topology::path_latency(const NodeId& a, const NodeId& b) const {
  auto lat = try_path_latency(a, b);
  if (!lat) fail(ErrorCode::Unreachable, a + " -> " + b);
  return *lat;
}

bool Topology::can_reserve(const NodeId& id, const ResourceVector& demand) const {
  const Node& n = node(id);
  return demand.non_negative() && (n.alloc + demand).fits_within(n.capacity);
}

void Topology::reserve(const NodeId& id, const ResourceVector& demand) {
  Node& n = mutable_node(id);
  if (!demand.non_negative()) fail(ErrorCode::InsufficientCapacity, "negative demand on " + id);
  ResourceVector next = n.alloc + demand;
  if (!next.fits_within(n.capacity)) fail(ErrorCode::InsufficientCapacity, id);
  n.alloc = next;
}

void Topology::release(const NodeId& id, const ResourceVector& demand) {
  Node& n = mutable_node(id);
  if (!demand.non_negative() || !demand.fits_within(n.alloc)) {
    fail(ErrorCode::ReleaseUnderflow, id);
  }
  n.alloc -= demand;
}

double Topology::utilization(const NodeId& id) const {
  const Node& n = node(id);
  return bottleneck_fraction(n.alloc, n.capacity);
}

void Topology::mark_link_down(const LinkId& id) {
  if (!has_link(id)) fail(ErrorCode::UnknownLink, id);
  ++link_down_count_[id];
  links_.at(id).up = false;
}

void Topology::restore_link(const LinkId& id) {
  if (!has_link(id)) fail(ErrorCode::UnknownLink, id);
  auto it = link_down_count_.find(id);
  if (it == link_down_count_.end()) return;
  if (--it->second == 0) {
    link_down_count_.erase(it);
    links_.at(id).up = true;
  }
}

void Topology::mark_node_down(const NodeId& id) {
  Node& n = mutable_node(id);
  ++node_down_count_[id];
  n.up = false;
}

void Topology::restore_node(const NodeId& id) {
  Node& n = mutable_node(id);
  auto it = node_down_count_.find(id);
  if (it == node_down_count_.end()) return;
  if (--it->second == 0) {
    node_down_count_.erase(it);
    n.up = true;
  }
}

}  // namespace edgeorch
