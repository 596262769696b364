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

#include "edgeorch/migration.hpp"
#include "edgeorch/scheduler.hpp"
#include "helpers.hpp"

namespace edgeorch {
namespace {

using testing::make_node;

Link link(double latency_ms, double bandwidth_mbps, bool up = true) {
  return Link{"l", "a", "b", latency_ms, bandwidth_mbps, up};
}

TEST(TransferDuration, HundredMegabytesOverOneLink) {
  std::vector<Link> path{link(2, 100)};
  EXPECT_EQ(transfer_duration(100, path), 8002.0);
  EXPECT_EQ(to_sim_duration(transfer_duration(100, path)), 8002);
}

TEST(TransferDuration, ZeroPayloadIsLatencyOnly) {
  std::vector<Link> path{link(2, 100), link(20, 1000)};
  EXPECT_EQ(transfer_duration(0, path), 22.0);
}

TEST(TransferDuration, SlowestLinkBounds) {
  std::vector<Link> path{link(5, 1000), link(1, 10)};
  EXPECT_EQ(transfer_duration(1, path), 806.0);
}

TEST(TransferDuration, DownLink) {
  std::vector<Link> path{link(2, 100), link(3, 100, false)};
  EXPECT_CODE(transfer_duration(1, path), ErrorCode::LinkDown);
}

TEST(TransferDuration, RoundsUpToWholeMilliseconds) {
  EXPECT_EQ(to_sim_duration(80.25), 81);
  EXPECT_EQ(to_sim_duration(82.0), 82);
  EXPECT_EQ(to_sim_duration(0.0), 0);
}

class MigrationTest : public ::testing::Test {
 protected:
  void SetUp() override {
    t.add_node(make_node("gw1", Tier::Gateway));
    t.add_node(make_node("gw2", Tier::Gateway));
    t.add_node(make_node("edge1", Tier::EdgeModule));
    t.add_node(make_node("cloud", Tier::CentralCloud));
    t.add_link("gw1", "edge1", 2, 100);
    t.add_link("gw2", "edge1", 2, 100);
    t.add_link("gw1", "gw2", 2, 100);
    t.add_link("edge1", "cloud", 2, 100);

    AppSpec data;
    data.id = "analytics";
    data.kind = AppKind::DataApp;
    data.demand = {1000, 2048, 10240};
    data.state_size_mb = 100;
    data.allowed_tiers = {Tier::EdgeModule, Tier::CentralCloud};
    c.register_app(data);

    AppSpec agent;
    agent.id = "agent";
    agent.kind = AppKind::IoTApp;
    agent.demand = {200, 128, 256};
    agent.state_size_mb = 1;
    agent.allowed_tiers = {Tier::Gateway};
    c.register_app(agent);
  }

  Topology t;
  Catalog c;
};

TEST_F(MigrationTest, StopAndCopyToCloud) {
  Scheduler s(t, c);
  Migrator m(t, s);
  InstanceId id = s.place({"analytics", "gw1", 1}).id;
  ASSERT_EQ(s.instance(id).host, "edge1");
  s.mutable_instance(id).state.set("window", "42");

  auto rec = m.migrate(id, "cloud", 1000);
  EXPECT_EQ(rec.downtime_ms, 8002);
  EXPECT_EQ(rec.completed_at, 9002);
  EXPECT_EQ(rec.bytes_moved_mb, 100.0);
  EXPECT_EQ(s.instance(id).status, InstanceStatus::Migrating);
  // Reserved on both sides while in flight.
  EXPECT_EQ(t.node("edge1").alloc, (ResourceVector{1000, 2048, 10240}));
  EXPECT_EQ(t.node("cloud").alloc, (ResourceVector{1000, 2048, 10240}));
  EXPECT_EQ(m.snapshot(id).payload.at("window"), "42");

  auto done = m.complete(id, rec.completed_at);
  EXPECT_EQ(done.completed_at - done.started_at, 8002);
  const auto& inst = s.instance(id);
  EXPECT_EQ(inst.host, "cloud");
  EXPECT_EQ(inst.status, InstanceStatus::Running);
  EXPECT_EQ(inst.state.version, 1u);
  EXPECT_EQ(inst.state.payload.at("window"), "42");
  EXPECT_TRUE(t.node("edge1").alloc.is_zero());
  EXPECT_EQ(m.completed().size(), 1u);
}

TEST_F(MigrationTest, MigrateToCurrentHostIsNoOp) {
  Scheduler s(t, c);
  Migrator m(t, s);
  InstanceId id = s.place({"analytics", "gw1", 1}).id;
  const Topology before = t;
  auto rec = m.migrate(id, "edge1", 10);
  EXPECT_EQ(rec.downtime_ms, 0);
  EXPECT_EQ(rec.from, rec.to);
  EXPECT_EQ(t, before);
  EXPECT_EQ(s.instance(id).status, InstanceStatus::Running);
}

TEST_F(MigrationTest, InfeasibleTargetLeavesSourceUntouched) {
  Scheduler s(t, c);
  Migrator m(t, s);
  InstanceId id = s.place({"analytics", "gw1", 1}).id;
  t.reserve("cloud", t.node("cloud").capacity - ResourceVector{0, 1024, 0});
  const Topology before = t;
  EXPECT_CODE(m.migrate(id, "cloud", 0), ErrorCode::TargetInfeasible);
  EXPECT_CODE(m.migrate(id, "gw1", 0), ErrorCode::TargetInfeasible);
  EXPECT_EQ(t, before);
  EXPECT_EQ(s.instance(id).status, InstanceStatus::Running);
}

TEST_F(MigrationTest, OnlyRunningInstancesMigrate) {
  Scheduler s(t, c);
  Migrator m(t, s);
  InstanceId id = s.place({"analytics", "gw1", 1}).id;
  m.migrate(id, "cloud", 0);
  EXPECT_CODE(m.migrate(id, "cloud", 1), ErrorCode::InstanceNotRunning);
}

TEST_F(MigrationTest, RoamKeepsState) {
  Scheduler s(t, c);
  Migrator m(t, s);
  InstanceId id = s.install_iot_app({"b7", "gw1", "agent", 0}).id;
  s.mutable_instance(id).state.set("heart_rate_alert", "120");

  auto rec = m.roam("b7", "gw2", 10500);
  EXPECT_EQ(rec.downtime_ms, 82);
  EXPECT_EQ(rec.state_version, 1u);
  m.complete(id, rec.completed_at);
  const auto& inst = s.instance(id);
  EXPECT_EQ(inst.host, "gw2");
  EXPECT_EQ(inst.source, "gw2");
  EXPECT_EQ(inst.state.version, 1u);
  EXPECT_EQ(inst.state.payload.at("heart_rate_alert"), "120");
  EXPECT_TRUE(t.node("gw1").alloc.is_zero());
  EXPECT_EQ(t.node("gw2").alloc, (ResourceVector{200, 128, 256}));
}

TEST_F(MigrationTest, RoamToSameGatewayIsNoOp) {
  Scheduler s(t, c);
  Migrator m(t, s);
  s.install_iot_app({"b7", "gw1", "agent", 0});
  const Topology before = t;
  auto rec = m.roam("b7", "gw1", 5);
  EXPECT_EQ(rec.from, rec.to);
  EXPECT_EQ(rec.downtime_ms, 0);
  EXPECT_EQ(t, before);
}

TEST_F(MigrationTest, RoamErrors) {
  Scheduler s(t, c);
  Migrator m(t, s);
  EXPECT_CODE(m.roam("ghost", "gw2", 0), ErrorCode::NoBoundApp);

  InstanceId id = s.install_iot_app({"b7", "gw1", "agent", 0}).id;
  t.reserve("gw2", {0, 1024 - 64, 0});
  EXPECT_CODE(m.roam("b7", "gw2", 0), ErrorCode::TargetGatewayFull);
  EXPECT_EQ(s.instance(id).status, InstanceStatus::Stopped);
  EXPECT_EQ(s.instance(id).host, "gw1");
  EXPECT_TRUE(t.node("gw1").alloc.is_zero());

  // A stopped instance can still follow its device once there is room.
  t.release("gw2", {0, 1024 - 64, 0});
  auto rec = m.roam("b7", "gw2", 10);
  m.complete(id, rec.completed_at);
  EXPECT_EQ(s.instance(id).host, "gw2");
  EXPECT_EQ(s.instance(id).status, InstanceStatus::Running);
  EXPECT_TRUE(t.node("gw1").alloc.is_zero());
  EXPECT_EQ(t.node("gw2").alloc, (ResourceVector{200, 128, 256}));
}

}  // namespace
}  // namespace edgeorch
