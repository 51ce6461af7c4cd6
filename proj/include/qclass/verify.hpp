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

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "qclass/json_io.hpp"

namespace qclass::verify {

struct Check {
  std::string id;
  std::string anchor;  // the quantity or claim being checked
  double expected = 0.0;
  double got = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

struct Options {
  std::uint64_t seed = 1;
  double tol = 1e-8;  // SDP tolerance
  int threads = 0;
};

enum class Suite { su2, blocks, machines, mixed, oracle, all };

/// Throws DomainError for unknown names.
Suite parse_suite(std::string_view name);
std::string to_string(Suite suite);

std::vector<Check> run(Suite suite, const Options& options);

bool all_pass(const std::vector<Check>& checks);
json_io::Json to_json(const std::vector<Check>& checks);

}  // namespace qclass::verify
