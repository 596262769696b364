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

#include <stdexcept>
#include <string>
#include <string_view>

namespace edgeorch {

enum class ErrorCode {
  InvalidArgument,
  // topology
  DuplicateNodeId,
  DuplicateLinkId,
  InvalidCapacity,
  InvalidLatency,
  UnknownNode,
  UnknownLink,
  SelfLoop,
  NonPositiveBandwidth,
  Unreachable,
  InsufficientCapacity,
  ReleaseUnderflow,
  // catalog
  DuplicateAppId,
  DuplicateProfile,
  DuplicateFirmware,
  TierViolation,
  InvalidAppSpec,
  InvalidProfile,
  InvalidFirmware,
  UnknownApp,
  UnknownProfile,
  DanglingAppReference,
  NoCompatibleFirmware,
  // discovery
  NotAGateway,
  UnknownDeviceProfile,
  AlreadyAttachedElsewhere,
  NotAttachedHere,
  // scheduler
  Unschedulable,
  GatewayFull,
  UnknownInstance,
  InvalidReplicas,
  InvalidThresholds,
  StaleAction,
  // migration
  LinkDown,
  TargetInfeasible,
  InstanceNotRunning,
  NoBoundApp,
  TargetGatewayFull,
  // dataflow
  NotAttached,
  UnknownFlow,
  NotADataApp,
  EmptyWindow,
  // simkernel
  TimeInPast,
  UnknownTarget,
  InvalidFault,
  // control
  ParseError,
  UnknownReference,
  InvariantViolation,
  MalformedTrace,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Every failure raised by the library carries one of the codes above so
/// callers (and tests) can branch on the failure class instead of the text.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& detail);

}  // namespace edgeorch
