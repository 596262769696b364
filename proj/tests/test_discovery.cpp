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
#include "helpers.hpp"

namespace edgeorch {
namespace {

class DiscoveryTest : public ::testing::Test {
 protected:
  void SetUp() override {
    topo = testing::lab_topology();
    AppSpec agent;
    agent.id = "bracelet-monitor";
    agent.kind = AppKind::IoTApp;
    agent.demand = {200, 128, 256};
    agent.allowed_tiers = {Tier::Gateway};
    catalog.register_app(agent);
    catalog.register_profile({"smart-bracelet", "2.1", Protocol::BLE, 64, "bracelet-monitor"});
    catalog.register_firmware({"smart-bracelet", "2.1", "1.2"});
    catalog.register_firmware({"smart-bracelet", "2.1", "1.10"});
  }

  Topology topo;
  Catalog catalog;
};

TEST_F(DiscoveryTest, AttachEmitsInstallRequest) {
  Discovery d(topo, catalog);
  auto out = d.handle_attach("gw1", "b7", "smart-bracelet", "2.1", 1000);
  EXPECT_EQ(out.attachment.gateway, "gw1");
  EXPECT_EQ(out.attachment.status, AttachStatus::Attached);
  ASSERT_TRUE(out.firmware_version);
  EXPECT_EQ(*out.firmware_version, "1.10");
  ASSERT_TRUE(out.install_request);
  EXPECT_EQ(*out.install_request, (InstallRequest{"b7", "gw1", "bracelet-monitor", 1000}));
}

TEST_F(DiscoveryTest, ReattachSameGatewayIsIdempotent) {
  Discovery d(topo, catalog);
  d.handle_attach("gw1", "b7", "smart-bracelet", "2.1", 1000);
  auto again = d.handle_attach("gw1", "b7", "smart-bracelet", "2.1", 1500);
  EXPECT_FALSE(again.install_request);
  EXPECT_EQ(again.attachment.attached_at, 1000);
  EXPECT_EQ(d.history().size(), 1u);
}

TEST_F(DiscoveryTest, AttachErrors) {
  Discovery d(topo, catalog);
  EXPECT_CODE(d.handle_attach("gw1", "b7", "toaster", "1", 0), ErrorCode::UnknownDeviceProfile);
  EXPECT_TRUE(d.history().empty());
  EXPECT_CODE(d.handle_attach("edge1", "b7", "smart-bracelet", "2.1", 0), ErrorCode::NotAGateway);
  d.handle_attach("gw1", "b7", "smart-bracelet", "2.1", 0);
  EXPECT_CODE(d.handle_attach("gw2", "b7", "smart-bracelet", "2.1", 5), ErrorCode::AlreadyAttachedElsewhere);
}

TEST_F(DiscoveryTest, MissingFirmwareStillOnboards) {
  Discovery d(topo, catalog);
  auto out = d.handle_attach("gw1", "b7", "smart-bracelet", "9.9", 0);
  EXPECT_FALSE(out.firmware_version);
  EXPECT_TRUE(out.install_request);
}

TEST_F(DiscoveryTest, Detach) {
  Discovery d(topo, catalog);
  d.handle_attach("gw1", "b7", "smart-bracelet", "2.1", 0);
  EXPECT_CODE(d.handle_detach("gw2", "b7", 10), ErrorCode::NotAttachedHere);
  auto a = d.handle_detach("gw1", "b7", 10);
  EXPECT_EQ(a.status, AttachStatus::Detached);
  EXPECT_EQ(a.detached_at, 10);
  EXPECT_CODE(d.handle_detach("gw1", "b7", 11), ErrorCode::NotAttachedHere);
}

TEST_F(DiscoveryTest, CurrentGateway) {
  Discovery d(topo, catalog);
  EXPECT_FALSE(d.current_gateway("never"));
  d.handle_attach("gw1", "b7", "smart-bracelet", "2.1", 0);
  EXPECT_EQ(d.current_gateway("b7"), "gw1");
  d.handle_detach("gw1", "b7", 10);
  EXPECT_FALSE(d.current_gateway("b7"));
  d.handle_attach("gw2", "b7", "smart-bracelet", "2.1", 20);
  EXPECT_EQ(d.current_gateway("b7"), "gw2");
}

TEST_F(DiscoveryTest, AtMostOneLiveAttachment) {
  Discovery d(topo, catalog);
  const char* gws[] = {"gw1", "gw2"};
  for (int i = 0; i < 20; ++i) {
    const char* gw = gws[i % 2];
    d.handle_attach(gw, "b7", "smart-bracelet", "2.1", i * 10);
    d.handle_attach(gw, "b7", "smart-bracelet", "2.1", i * 10 + 1);
    int live = 0;
    for (const auto& a : d.history()) live += a.status == AttachStatus::Attached;
    EXPECT_EQ(live, 1);
    d.handle_detach(gw, "b7", i * 10 + 5);
  }
  EXPECT_EQ(d.history().size(), 20u);
}

}  // namespace
}  // namespace edgeorch
