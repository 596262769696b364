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
#include <vector>

#include "edgeorch/ids.hpp"

namespace edgeorch {

enum class Tier { CentralCloud, EdgeModule, Gateway };

std::string_view to_string(Tier tier) noexcept;
std::optional<Tier> parse_tier(std::string_view text) noexcept;

/// CPU in millicores, memory and storage in MB. Integral so that reservation
/// arithmetic is exact and reserve/release are true inverses.
struct ResourceVector {
  std::int64_t cpu_millicores = 0;
  std::int64_t mem_mb = 0;
  std::int64_t storage_mb = 0;

  bool operator==(const ResourceVector&) const = default;

  ResourceVector& operator+=(const ResourceVector& o) noexcept;
  ResourceVector& operator-=(const ResourceVector& o) noexcept;
  friend ResourceVector operator+(ResourceVector a, const ResourceVector& b) noexcept { return a += b; }
  friend ResourceVector operator-(ResourceVector a, const ResourceVector& b) noexcept { return a -= b; }
  friend ResourceVector operator*(ResourceVector a, std::int64_t k) noexcept {
    a.cpu_millicores *= k;
    a.mem_mb *= k;
    a.storage_mb *= k;
    return a;
  }

  /// Component-wise <=.
  bool fits_within(const ResourceVector& limit) const noexcept;
  bool non_negative() const noexcept;
  bool is_zero() const noexcept { return *this == ResourceVector{}; }
};

/// Largest per-component fraction demand/capacity.
double bottleneck_fraction(const ResourceVector& demand, const ResourceVector& capacity) noexcept;

/// Hardware defaults per tier, taken from the reference lab deployment:
/// Raspberry Pi 3 gateways, mini-ITX edge units and a two-server compute pool
/// with an 11 TB SAN for the central cloud.
ResourceVector default_capacity(Tier tier) noexcept;

struct Node {
  NodeId id;
  Tier tier = Tier::EdgeModule;
  ResourceVector capacity;
  ResourceVector alloc;
  bool up = true;

  ResourceVector free() const noexcept { return capacity - alloc; }
  bool operator==(const Node&) const = default;
};

struct Link {
  LinkId id;
  NodeId a;
  NodeId b;
  double latency_ms = 0.0;
  double bandwidth_mbps = 0.0;
  bool up = true;

  bool touches(const NodeId& n) const noexcept { return a == n || b == n; }
  const NodeId& other(const NodeId& n) const noexcept { return a == n ? b : a; }
  bool operator==(const Link&) const = default;
};

/// Three-tier node graph with per-node resource accounting.
///
/// Topology is a value type: copying it yields an immutable-by-convention
/// snapshot that the scheduler plans against. Only the simulation kernel
/// mutates the live instance.
class Topology {
 public:
  NodeId add_node(Node spec);
  /// An empty id yields "<a>--<b>".
  LinkId add_link(const NodeId& a, const NodeId& b, double latency_ms, double bandwidth_mbps,
                  LinkId id = {});

  bool has_node(const NodeId& id) const noexcept { return nodes_.count(id) != 0; }
  bool has_link(const LinkId& id) const noexcept { return links_.count(id) != 0; }
  const Node& node(const NodeId& id) const;
  const Link& link(const LinkId& id) const;
  const std::map<NodeId, Node>& nodes() const noexcept { return nodes_; }
  const std::map<LinkId, Link>& links() const noexcept { return links_; }
  std::vector<NodeId> nodes_in_tier(Tier tier) const;

  /// Shortest latency over up links through up nodes; nullopt when partitioned.
  std::optional<double> try_path_latency(const NodeId& a, const NodeId& b) const;
  /// Throws Unreachable when no up path exists.
  double path_latency(const NodeId& a, const NodeId& b) const;
  /// Links of the minimum-latency path, in order from a to b. Empty when a == b.
  std::optional<std::vector<LinkId>> shortest_path(const NodeId& a, const NodeId& b) const;

  void reserve(const NodeId& id, const ResourceVector& demand);
  void release(const NodeId& id, const ResourceVector& demand);
  bool can_reserve(const NodeId& id, const ResourceVector& demand) const;

  /// Bottleneck utilization: max of the three alloc/capacity fractions.
  double utilization(const NodeId& id) const;

  // Fault hooks. Down-marks nest, so overlapping faults restore correctly.
  void mark_link_down(const LinkId& id);
  void restore_link(const LinkId& id);
  void mark_node_down(const NodeId& id);
  void restore_node(const NodeId& id);

  bool operator==(const Topology&) const = default;

 private:
  Node& mutable_node(const NodeId& id);

  std::map<NodeId, Node> nodes_;
  std::map<LinkId, Link> links_;
  std::map<LinkId, int> link_down_count_;
  std::map<NodeId, int> node_down_count_;
};

}  // namespace edgeorch
