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
#include <string>

namespace edgeorch {

using NodeId = std::string;
using LinkId = std::string;
using AppId = std::string;
using DeviceId = std::string;
using InstanceId = std::string;
using FlowId = std::string;

/// Simulation time, integer milliseconds.
using SimTime = std::int64_t;

}  // namespace edgeorch
