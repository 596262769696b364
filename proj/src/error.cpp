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

#include "edgeorch/error.hpp"

namespace edgeorch {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::DuplicateNodeId: return "DuplicateNodeId";
    case ErrorCode::DuplicateLinkId: return "DuplicateLinkId";
    case ErrorCode::InvalidCapacity: return "InvalidCapacity";
    case ErrorCode::InvalidLatency: return "InvalidLatency";
    case ErrorCode::UnknownNode: return "UnknownNode";
    case ErrorCode::UnknownLink: return "UnknownLink";
    case ErrorCode::SelfLoop: return "SelfLoop";
    case ErrorCode::NonPositiveBandwidth: return "NonPositiveBandwidth";
    case ErrorCode::Unreachable: return "Unreachable";
    case ErrorCode::InsufficientCapacity: return "InsufficientCapacity";
    case ErrorCode::ReleaseUnderflow: return "ReleaseUnderflow";
    case ErrorCode::DuplicateAppId: return "DuplicateAppId";
    case ErrorCode::DuplicateProfile: return "DuplicateProfile";
    case ErrorCode::DuplicateFirmware: return "DuplicateFirmware";
    case ErrorCode::TierViolation: return "TierViolation";
    case ErrorCode::InvalidAppSpec: return "InvalidAppSpec";
    case ErrorCode::InvalidProfile: return "InvalidProfile";
    case ErrorCode::InvalidFirmware: return "InvalidFirmware";
    case ErrorCode::UnknownApp: return "UnknownApp";
    case ErrorCode::UnknownProfile: return "UnknownProfile";
    case ErrorCode::DanglingAppReference: return "DanglingAppReference";
    case ErrorCode::NoCompatibleFirmware: return "NoCompatibleFirmware";
    case ErrorCode::NotAGateway: return "NotAGateway";
    case ErrorCode::UnknownDeviceProfile: return "UnknownDeviceProfile";
    case ErrorCode::AlreadyAttachedElsewhere: return "AlreadyAttachedElsewhere";
    case ErrorCode::NotAttachedHere: return "NotAttachedHere";
    case ErrorCode::Unschedulable: return "Unschedulable";
    case ErrorCode::GatewayFull: return "GatewayFull";
    case ErrorCode::UnknownInstance: return "UnknownInstance";
    case ErrorCode::InvalidReplicas: return "InvalidReplicas";
    case ErrorCode::InvalidThresholds: return "InvalidThresholds";
    case ErrorCode::StaleAction: return "StaleAction";
    case ErrorCode::LinkDown: return "LinkDown";
    case ErrorCode::TargetInfeasible: return "TargetInfeasible";
    case ErrorCode::InstanceNotRunning: return "InstanceNotRunning";
    case ErrorCode::NoBoundApp: return "NoBoundApp";
    case ErrorCode::TargetGatewayFull: return "TargetGatewayFull";
    case ErrorCode::NotAttached: return "NotAttached";
    case ErrorCode::UnknownFlow: return "UnknownFlow";
    case ErrorCode::NotADataApp: return "NotADataApp";
    case ErrorCode::EmptyWindow: return "EmptyWindow";
    case ErrorCode::TimeInPast: return "TimeInPast";
    case ErrorCode::UnknownTarget: return "UnknownTarget";
    case ErrorCode::InvalidFault: return "InvalidFault";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::UnknownReference: return "UnknownReference";
    case ErrorCode::InvariantViolation: return "InvariantViolation";
    case ErrorCode::MalformedTrace: return "MalformedTrace";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

void fail(ErrorCode code, const std::string& detail) { throw Error(code, detail); }

}  // namespace edgeorch
