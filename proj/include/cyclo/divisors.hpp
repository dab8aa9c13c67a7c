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

#include <chrono>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cyclo/cyclotomic.hpp"
#include "cyclo/intpoly.hpp"

namespace cyclo {

inline constexpr std::uint64_t kDefaultDegreeCap = 200000;

/// A divisor of x^base_n - 1, written as the product of Phi_d over the
/// selected d. Every selected d divides base_n; `selected` is ascending.
struct DivisorSelection {
  std::uint64_t base_n = 1;
  std::vector<std::uint64_t> selected;

  friend bool operator==(const DivisorSelection&, const DivisorSelection&) = default;
};

/// Throws InvalidInput when some selected d does not divide base_n or the
/// list is not strictly ascending.
void validate(const DivisorSelection& sel);

/// prod_{d in sel} Phi_d(x)
IntPoly divisor_poly(const DivisorSelection& sel, CycloCache& cache = default_cache());

enum class Method { brute, formula, reduced };

std::string_view to_string(Method m);
/// Throws InvalidInput on unknown names.
Method parse_method(std::string_view s);

/// A computed B(n) value and how it was obtained.
struct HeightRecord {
  std::uint64_t n = 1;
  // Set when n is known to be p*q^b; zero otherwise.
  std::uint64_t p = 0;
  std::uint64_t q = 0;
  unsigned b = 0;
  Integer b_value;
  DivisorSelection witness;
  Method method = Method::brute;
  /// Closed-form branch that produced the value; empty for brute force.
  std::string regime;
  std::chrono::nanoseconds elapsed{0};
};

struct EnumerateOptions {
  std::uint64_t degree_cap = kDefaultDegreeCap;
  /// 0 picks std::thread::hardware_concurrency().
  unsigned workers = 0;
  /// Abort with BudgetExceeded when the work estimate exceeds this many
  /// coefficient operations; 0 disables the check.
  double work_budget = 0;
};

/// Result of maximizing the height over all subset products of a factor
/// list. `selected` holds the chosen cyclotomic indices, ascending.
struct SubsetMaximum {
  Integer height;
  std::vector<std::uint64_t> selected;
};

/// Exhaustive maximum of H(prod_{i in S} Phi_{indices[i]}) over all subsets S
/// of `indices` (which must be strictly ascending). Ties go to the first
/// subset in lexicographic order of ascending index sequences.
SubsetMaximum max_subset_height(std::span<const std::uint64_t> indices, const EnumerateOptions& opts = {},
                                CycloCache& cache = default_cache());

/// Deterministic estimate of the coefficient operations max_subset_height
/// performs on `indices`.
double subset_work_estimate(std::span<const std::uint64_t> indices, CycloCache& cache = default_cache());

/// B(n) by exhaustive enumeration of the 2^d(n) subset products of the
/// cyclotomic factors of x^n - 1. Throws DegreeCapExceeded if n exceeds the
/// cap and BudgetExceeded if the work estimate exceeds the budget.
HeightRecord enumerate_b(std::uint64_t n, const EnumerateOptions& opts = {}, CycloCache& cache = default_cache());

/// Work estimate for enumerate_b(n).
double enumerate_work_estimate(std::uint64_t n, CycloCache& cache = default_cache());

/// Maximum height over the divisors of prod_{i=1}^{b-1} Phi_{q^i} Phi_{pq^i}.
/// Requires distinct primes and b >= 2; p*q^{b-1} must be within the cap.
SubsetMaximum reduced_h_b(std::uint64_t p, std::uint64_t q, unsigned b, const EnumerateOptions& opts = {},
                          CycloCache& cache = default_cache());

}  // namespace cyclo
