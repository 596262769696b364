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

#include <random>

#include "helpers.hpp"
#include "oracles.hpp"

namespace edgeorch {
namespace {

using testing::lab_topology;
using testing::make_node;

TEST(Topology, AddNodeTierDefaults) {
  Topology t;
  t.add_node(make_node("gw1", Tier::Gateway));
  t.add_node(make_node("edge1", Tier::EdgeModule));
  EXPECT_EQ(t.node("gw1").capacity.mem_mb, 1024);
  EXPECT_EQ(t.node("gw1").capacity.storage_mb, 16384);
  EXPECT_EQ(t.node("edge1").capacity.mem_mb, 16384);
  EXPECT_EQ(t.node("edge1").capacity.storage_mb, 491520);
  EXPECT_TRUE(t.node("edge1").alloc.is_zero());
}

TEST(Topology, AddNodeRejectsBadInput) {
  Topology t;
  Node zero = make_node("gw1", Tier::Gateway);
  zero.capacity.mem_mb = 0;
  EXPECT_CODE(t.add_node(zero), ErrorCode::InvalidCapacity);
  t.add_node(make_node("gw1", Tier::Gateway));
  EXPECT_CODE(t.add_node(make_node("gw1", Tier::EdgeModule)), ErrorCode::DuplicateNodeId);
}

TEST(Topology, AddLink) {
  Topology t;
  t.add_node(make_node("gw1", Tier::Gateway));
  t.add_node(make_node("edge1", Tier::EdgeModule));
  LinkId id = t.add_link("gw1", "edge1", 2, 100);
  EXPECT_EQ(id, "gw1--edge1");
  EXPECT_TRUE(t.link(id).up);
  EXPECT_CODE(t.add_link("gw1", "gw1", 1, 10), ErrorCode::SelfLoop);
  EXPECT_CODE(t.add_link("gw1", "edge1", 1, 0, "x"), ErrorCode::NonPositiveBandwidth);
  EXPECT_CODE(t.add_link("gw1", "nowhere", 1, 10), ErrorCode::UnknownNode);
  EXPECT_CODE(t.add_link("gw1", "edge1", -1, 10, "y"), ErrorCode::InvalidLatency);
}

TEST(Topology, PathLatency) {
  Topology t = lab_topology();
  EXPECT_EQ(t.path_latency("gw1", "gw1"), 0.0);
  EXPECT_EQ(t.path_latency("gw1", "cloud"), 22.0);
  EXPECT_EQ(t.path_latency("cloud", "gw1"), 22.0);
  EXPECT_EQ(t.path_latency("gw1", "edge2"), 7.0);
}

TEST(Topology, PathLatencyUnreachable) {
  Topology t;
  t.add_node(make_node("gw1", Tier::Gateway));
  t.add_node(make_node("edge1", Tier::EdgeModule));
  t.add_node(make_node("cloud", Tier::CentralCloud));
  t.add_link("gw1", "edge1", 2, 100);
  t.add_link("edge1", "cloud", 20, 1000);
  t.mark_link_down("edge1--cloud");
  EXPECT_CODE(t.path_latency("gw1", "cloud"), ErrorCode::Unreachable);
  EXPECT_FALSE(t.try_path_latency("gw1", "cloud").has_value());
  t.restore_link("edge1--cloud");
  EXPECT_EQ(t.path_latency("gw1", "cloud"), 22.0);
}

TEST(Topology, DownNodeBlocksTransit) {
  Topology t = lab_topology();
  t.mark_node_down("edge1");
  EXPECT_FALSE(t.try_path_latency("gw1", "cloud").has_value());
  t.restore_node("edge1");
  EXPECT_EQ(t.path_latency("gw1", "cloud"), 22.0);
}

TEST(Topology, NestedDownMarks) {
  Topology t = lab_topology();
  t.mark_link_down("gw1--edge1");
  t.mark_link_down("gw1--edge1");
  t.restore_link("gw1--edge1");
  EXPECT_FALSE(t.link("gw1--edge1").up);
  t.restore_link("gw1--edge1");
  EXPECT_TRUE(t.link("gw1--edge1").up);
}

TEST(Topology, Reserve) {
  Topology t;
  t.add_node(make_node("gw1", Tier::Gateway));
  t.reserve("gw1", {0, 512, 0});
  EXPECT_EQ(t.node("gw1").free().mem_mb, 512);

  Topology before = t;
  EXPECT_CODE(t.reserve("gw1", {0, 2048, 0}), ErrorCode::InsufficientCapacity);
  EXPECT_EQ(t, before);

  t.reserve("gw1", {});
  EXPECT_EQ(t, before);
}

TEST(Topology, Release) {
  Topology t = lab_topology();
  const Topology before = t;
  t.reserve("edge1", {1000, 2048, 10240});
  t.release("edge1", {1000, 2048, 10240});
  EXPECT_EQ(t, before);

  EXPECT_CODE(t.release("edge1", {1, 0, 0}), ErrorCode::ReleaseUnderflow);
  t.release("edge1", {});
  EXPECT_EQ(t, before);
}

TEST(Topology, Utilization) {
  Topology t;
  Node n = make_node("gw1", Tier::Gateway);
  t.add_node(n);
  EXPECT_EQ(t.utilization("gw1"), 0.0);
  t.reserve("gw1", {0, 512, 0});
  EXPECT_EQ(t.utilization("gw1"), 0.5);
  t.reserve("gw1", n.capacity - ResourceVector{0, 512, 0});
  EXPECT_EQ(t.utilization("gw1"), 1.0);
  EXPECT_CODE(t.utilization("nope"), ErrorCode::UnknownNode);
}

// Random connected graphs of up to 8 nodes, compared with Floyd-Warshall.
class PathProperties : public ::testing::TestWithParam<int> {};

Topology random_graph(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> nodes(2, 8), lat(0, 9), coin(0, 2);
  Topology t;
  const int n = nodes(rng);
  for (int i = 0; i < n; ++i) t.add_node(make_node("n" + std::to_string(i), Tier::EdgeModule));
  for (int i = 1; i < n; ++i) {
    std::uniform_int_distribution<int> parent(0, i - 1);
    t.add_link("n" + std::to_string(parent(rng)), "n" + std::to_string(i), lat(rng), 100);
  }
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      auto id = "x" + std::to_string(i) + "-" + std::to_string(j);
      if (coin(rng) == 0) t.add_link("n" + std::to_string(i), "n" + std::to_string(j), lat(rng), 100, id);
    }
  }
  return t;
}

TEST_P(PathProperties, MatchesAllPairsOracle) {
  std::mt19937_64 rng(static_cast<std::uint64_t>(GetParam()));
  Topology t = random_graph(rng);
  auto oracle = oracle::all_pairs_latency(t);
  for (const auto& [a, na] : t.nodes()) {
    for (const auto& [b, nb] : t.nodes()) {
      auto lat = t.try_path_latency(a, b);
      ASSERT_TRUE(lat.has_value());
      EXPECT_EQ(*lat, oracle.at({a, b})) << a << " -> " << b;
      EXPECT_EQ(*lat, t.path_latency(b, a));
      for (const auto& [c, nc] : t.nodes()) {
        EXPECT_LE(*lat, t.path_latency(a, c) + t.path_latency(c, b));
      }
    }
  }
}

TEST_P(PathProperties, LinkDownNeverShortens) {
  std::mt19937_64 rng(static_cast<std::uint64_t>(GetParam()) + 1000);
  Topology t = random_graph(rng);
  const auto links = t.links();
  for (const auto& [lid, l] : links) {
    Topology cut = t;
    cut.mark_link_down(lid);
    auto after = oracle::all_pairs_latency(cut);
    for (const auto& [a, na] : t.nodes()) {
      for (const auto& [b, nb] : t.nodes()) {
        auto lat = cut.try_path_latency(a, b);
        EXPECT_EQ(lat.has_value(), after.count({a, b}) == 1);
        if (lat) {
          EXPECT_EQ(*lat, after.at({a, b}));
          EXPECT_GE(*lat, t.path_latency(a, b));
        }
      }
    }
  }
}

INSTANTIATE_TEST_SUITE_P(Seeds, PathProperties, ::testing::Range(0, 25));

}  // namespace
}  // namespace edgeorch
