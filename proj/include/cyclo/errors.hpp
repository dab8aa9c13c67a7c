// Copyright 2026 The cycloheight Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace cyclo {

/// Exact division was requested but the divisor leaves a nonzero remainder.
/// Always a caller bug.
class NonExactDivision : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Resource guard: the requested index exceeds the configured degree cap.
class DegreeCapExceeded : public std::runtime_error {
 public:
  DegreeCapExceeded(unsigned long long n, unsigned long long cap)
      : std::runtime_error("degree cap exceeded: n=" + std::to_string(n) +
                           " > cap=" + std::to_string(cap)),
        n_(n),
        cap_(cap) {}

  unsigned long long n() const noexcept { return n_; }
  unsigned long long cap() const noexcept { return cap_; }

 private:
  unsigned long long n_;
  unsigned long long cap_;
};

/// A computation was abandoned because its deterministic work estimate
/// exceeded the caller's budget.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class PreconditionViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace cyclo
