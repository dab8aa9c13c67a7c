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

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cyclo/divisors.hpp"

namespace cyclo {

/// Ordering of an odd prime pair that selects the B(pq^3) branch.
enum class Regime { p_lt_q, q_lt_p_lt_q2, q2_lt_p_lt_q3, p_gt_q3 };

/// Exactly one regime holds for distinct primes, since p is never q, q^2 or q^3.
Regime regime_of(std::uint64_t p, std::uint64_t q);
std::string_view to_string(Regime r);

/// One closed-form evaluation of B(pq^b).
struct BranchValue {
  std::string branch;
  Integer value;
};

/// Every closed form that applies to (p, q, b), most specific first:
///   p=2; p=3<q; q = +-1 (mod p) with p<q; b=1; b=2; the b=3 forms
///   (sigma form, four-regime dispatch, the general max{...} form and the
///   single-height form for p<q); b=4 and b=5 for odd p<q.
/// Throws InvalidInput unless p, q are distinct primes and b >= 1.
std::vector<BranchValue> formula_branches(std::uint64_t p, std::uint64_t q, unsigned b,
                                          CycloCache& cache = default_cache());

/// Closed-form B(pq^b) using the first applicable branch; nullopt when no
/// closed form is known (p > q with b >= 4, or p<q, b >= 6 outside the
/// p in {2,3} and q = +-1 (mod p) families).
std::optional<HeightRecord> b_formula(std::uint64_t p, std::uint64_t q, unsigned b,
                                      CycloCache& cache = default_cache());

/// H(prod Phi_{n_i}). Throws DegreeCapExceeded when the product degree
/// exceeds `degree_cap`.
Integer h_of_product(std::span<const std::uint64_t> factor_indices, std::uint64_t degree_cap = kDefaultDegreeCap,
                     CycloCache& cache = default_cache());

/// Overflow-checked p * q^b; nullopt on overflow.
std::optional<std::uint64_t> pq_power(std::uint64_t p, std::uint64_t q, unsigned b);

/// B(pq^b) by closed form when one exists, else by enumeration.
HeightRecord b_value_auto(std::uint64_t p, std::uint64_t q, unsigned b, const EnumerateOptions& opts = {},
                          CycloCache& cache = default_cache());

struct ResidueInvariance {
  HeightRecord left;   // B(pq^b)
  HeightRecord right;  // B(pr^b)
  bool equal = false;
};

/// Compares B(pq^b) and B(pr^b) for odd primes p<q<r with q = +-r (mod p)
/// and b <= 5. Throws PreconditionViolation when the residues do not match.
ResidueInvariance residue_invariance_check(std::uint64_t p, std::uint64_t q, std::uint64_t r, unsigned b,
                                           const EnumerateOptions& opts = {}, CycloCache& cache = default_cache());

/// q = +-r (mod p)
bool same_residue_class(std::uint64_t p, std::uint64_t q, std::uint64_t r);

}  // namespace cyclo
