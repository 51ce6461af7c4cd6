// Copyright 2026 The qclass Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <string>

#include "json.hpp"
#include "qclass/blocks.hpp"
#include "qclass/machines.hpp"
#include "qclass/sdp.hpp"

namespace qclass::json_io {

using Json = nlohmann::ordered_json;

/// Serializes with every floating-point number at 17 significant digits.
/// Non-finite numbers become null.
std::string dump(const Json& j, int indent = 2);

Json to_json(const MachineReport& report);
/// Sector (keyed by M) -> basis and row-major matrix.
Json to_json(const BlockOperator& op);
/// Block key -> matrix, eigenvalues; plus constraint residuals.
Json to_json(const sdp::BlockSdpProblem& problem, const sdp::Seed& seed);

}  // namespace qclass::json_io
