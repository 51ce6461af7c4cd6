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

#include <stdexcept>
#include <string>

namespace qclass {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Internal consistency check failed (non-Hermitian input, disagreeing
/// evaluation paths, ...).
class IntegrityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The SDP solver stopped before reaching the requested duality gap.
class SolverError : public std::runtime_error {
 public:
  SolverError(const std::string& what, double best_objective, double gap)
      : std::runtime_error(what), best_objective_(best_objective), gap_(gap) {}

  double best_objective() const { return best_objective_; }
  double gap() const { return gap_; }

 private:
  double best_objective_;
  double gap_;
};

class InfeasibleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace qclass
