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

#include <gtest/gtest.h>

#include <filesystem>
#include <string>

#include "edgeorch/error.hpp"
#include "edgeorch/scenario.hpp"
#include "edgeorch/topology.hpp"

#define EXPECT_CODE(stmt, expected_code)                                                  \
  do {                                                                                    \
    try {                                                                                 \
      stmt;                                                                               \
      ADD_FAILURE() << "expected " << ::edgeorch::to_string(expected_code) << ", got no error"; \
    } catch (const ::edgeorch::Error& e_) {                                               \
      EXPECT_EQ(e_.code(), expected_code) << e_.what();                                   \
    }                                                                                     \
  } while (0)

namespace edgeorch::testing {

inline Node make_node(const NodeId& id, Tier tier) {
  Node n;
  n.id = id;
  n.tier = tier;
  n.capacity = default_capacity(tier);
  return n;
}

/// cloud, edge1, edge2, gw1, gw2; gateways hang off edge1, edges reach the
/// cloud at 20 ms.
inline Topology lab_topology() {
  Topology t;
  t.add_node(make_node("cloud", Tier::CentralCloud));
  t.add_node(make_node("edge1", Tier::EdgeModule));
  t.add_node(make_node("edge2", Tier::EdgeModule));
  t.add_node(make_node("gw1", Tier::Gateway));
  t.add_node(make_node("gw2", Tier::Gateway));
  t.add_link("gw1", "edge1", 2, 100);
  t.add_link("gw2", "edge1", 2, 100);
  t.add_link("gw1", "gw2", 2, 100);
  t.add_link("edge1", "edge2", 5, 1000);
  t.add_link("edge1", "cloud", 20, 1000);
  t.add_link("edge2", "cloud", 20, 1000);
  return t;
}

inline std::filesystem::path scenario_path(const std::string& name) {
  return std::filesystem::path(EDGEORCH_SCENARIO_DIR) / (name + ".json");
}

inline Scenario fixture(const std::string& name) { return load_scenario(scenario_path(name)); }

inline const char* const kFixtures[] = {"roaming", "scaling", "partition", "steady", "empty"};

}  // namespace edgeorch::testing
