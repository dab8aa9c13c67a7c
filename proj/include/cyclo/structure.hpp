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
#include <string>
#include <vector>

#include "cyclo/cyclotomic.hpp"
#include "cyclo/intpoly.hpp"

namespace cyclo {

/// Outcome of a coefficient scan. On failure `index`, `expected` and `got`
/// describe the first violation found.
struct CheckReport {
  bool holds = true;
  std::uint64_t checked = 0;
  long long index = -1;
  Integer expected;
  Integer got;
  std::string detail;

  void fail(long long at, const Integer& want, const Integer& have, std::string what);
};

/// Phi_pq Phi_{pq^2} Phi_{q^3}
IntPoly transport_product(std::uint64_t p, std::uint64_t q, CycloCache& cache = default_cache());

/// c_i = c_{i-p} for i >= p with i != 0, 1 (mod q^2), and c_{i1} = c_{i2}
/// for r q^2 + 1 < i1 < i2 < (r+1) q^2 with i1 = i2 (mod p).
CheckReport periodicity_scan(const IntPoly& g, std::uint64_t p, std::uint64_t q);

/// periodicity_scan on transport_product(p, q). Requires odd primes p < q.
CheckReport periodicity_check(std::uint64_t p, std::uint64_t q, CycloCache& cache = default_cache());

/// The ramp/plateau/ramp weights min(i+1, p, p+q-1-i), i = 0..p+q-2.
std::vector<std::uint64_t> trapezoid_weights(std::uint64_t p, std::uint64_t q);

/// Checks (x^p - 1) g = sum_i a_i (x^{i q^2 + 1} - x^{i q^2}) with a the
/// trapezoid weights for (p, q).
CheckReport trapezoid_scan(const IntPoly& g, std::uint64_t p, std::uint64_t q);

/// trapezoid_scan on transport_product(p, q). Requires odd primes p < q.
CheckReport trapezoid_profile_check(std::uint64_t p, std::uint64_t q, CycloCache& cache = default_cache());

struct TransportReport {
  /// c_n = d_{l_n} for n < min((2p-1) q^2, q^3).
  CheckReport coefficients;
  /// The same comparison over all n < (2p-1) q^2. When q < 2p-1 this fails
  /// from n = q^3 on, where Phi_{q^3} runs out of blocks; informational.
  CheckReport extended;
  Integer height_q;
  Integer height_r;
  /// Smallest index attaining the height in each product.
  std::uint64_t first_peak_q = 0;
  std::uint64_t first_peak_r = 0;
  /// Both first peaks lie below (2p-1) q^2 (resp. r^2) and are 0 or 1 mod
  /// q^2 (resp. r^2).
  bool peaks_ok = false;
  bool holds() const { return coefficients.holds && peaks_ok && height_q == height_r; }
};

/// With c, d the coefficients of transport_product(p, q) and (p, r), checks
/// c_n = d_{l_n}, l_n = floor(n/q^2) r^2 + n mod q^2, the first-peak
/// positions and equality of the two heights.
/// Requires odd primes p < q < r; throws PreconditionViolation unless
/// q = +-r (mod p).
TransportReport coefficient_transport_check(std::uint64_t p, std::uint64_t q, std::uint64_t r,
                                            CycloCache& cache = default_cache());

struct BoundRow {
  std::string shape;  // the polynomial measured, e.g. "Phi_pq3*Phi_p*f2"
  std::string f2;     // the divisor of x^{q^2}-1, e.g. "Phi_1*Phi_q"
  Integer observed;
  Integer bound;
  bool holds() const { return observed <= bound; }
};

struct BoundsReport {
  std::vector<BoundRow> rows;
  bool holds() const;
  /// First failing row, or nullptr.
  const BoundRow* first_violation() const;
};

/// Height bounds for divisors of x^{pq^3}-1 in the range q < p < q^3: the
/// eight f-shapes times every f2 | x^{q^2}-1 against Phi_{pq^3} and Phi_{q^3},
/// the three separately handled products and, for p < q^2, the refined
/// bound on Phi_p Phi_{pq^2} Phi_{q^3} f2. Checks "<=" only.
BoundsReport table1_bounds_check(std::uint64_t p, std::uint64_t q, CycloCache& cache = default_cache());

}  // namespace cyclo
