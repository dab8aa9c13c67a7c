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
#include <memory>
#include <shared_mutex>
#include <unordered_map>
#include <vector>

#include "cyclo/intpoly.hpp"

namespace cyclo {

/// Deterministic trial division up to sqrt(n).
bool is_prime(std::uint64_t n);

/// All primes in [lo, hi], ascending.
std::vector<std::uint64_t> primes_in(std::uint64_t lo, std::uint64_t hi);

struct PrimePower {
  std::uint64_t prime;
  unsigned exponent;

  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

/// A positive integer together with its prime factorization.
///
/// Primes are strictly increasing, every exponent is at least 1, and each
/// prime has been certified by trial division. n = 1 has no factors.
class FactoredIndex {
 public:
  /// Factorizes n by trial division. Throws InvalidInput for n = 0.
  explicit FactoredIndex(std::uint64_t n);

  /// Builds n from an explicit factorization; primes are certified and the
  /// list is sorted. Throws InvalidInput on a composite base, a zero
  /// exponent, a repeated prime or overflow.
  static FactoredIndex from_factors(std::vector<PrimePower> factors);

  std::uint64_t value() const noexcept { return n_; }
  const std::vector<PrimePower>& factors() const noexcept { return factors_; }

  /// Product of the distinct primes.
  std::uint64_t radical() const noexcept;
  std::uint64_t totient() const noexcept;
  int mobius() const noexcept;
  bool is_prime_power() const noexcept { return factors_.size() == 1; }
  std::uint64_t divisor_count() const noexcept;
  /// All divisors, ascending.
  std::vector<std::uint64_t> divisors() const;

 private:
  FactoredIndex() = default;

  std::uint64_t n_ = 1;
  std::vector<PrimePower> factors_;
};

inline FactoredIndex factorize(std::uint64_t n) { return FactoredIndex(n); }

/// The nonnegative solution of rho*p + sigma*q = (p-1)(q-1) with
/// 0 <= sigma <= p-1 and 0 <= rho <= q-1.
struct SigmaRho {
  std::uint64_t p;
  std::uint64_t q;
  std::uint64_t sigma;
  std::uint64_t rho;
};

/// Throws InvalidInput unless p and q are distinct primes.
SigmaRho sigma_rho(std::uint64_t p, std::uint64_t q);

/// Memo table n -> Phi_n. Readers run concurrently; insertion is serialized.
/// References returned by phi() stay valid for the cache's lifetime.
class CycloCache {
 public:
  CycloCache() = default;
  CycloCache(const CycloCache&) = delete;
  CycloCache& operator=(const CycloCache&) = delete;

  const IntPoly& phi(std::uint64_t n);
  std::size_t size() const;
  void clear();

 private:
  const IntPoly* find(std::uint64_t n) const;
  const IntPoly& insert(std::uint64_t n, IntPoly poly);

  mutable std::shared_mutex mutex_;
  std::unordered_map<std::uint64_t, std::unique_ptr<const IntPoly>> table_;
};

/// Process-wide cache shared by every module.
CycloCache& default_cache();

/// The n-th cyclotomic polynomial. Reduces to the squarefree radical r
/// (Phi_n(x) = Phi_r(x^{n/r})) and obtains Phi_r by dividing x^r - 1 by
/// Phi_d for every proper divisor d of r, ascending.
const IntPoly& phi_n(std::uint64_t n, CycloCache& cache = default_cache());

/// Phi_pq assembled directly from its +1/-1 exponent pattern, without any
/// polynomial arithmetic. Independent of phi_n.
IntPoly phi_pq_direct(std::uint64_t p, std::uint64_t q);

/// A(n) = H(Phi_n).
Integer a_height(std::uint64_t n, CycloCache& cache = default_cache());

}  // namespace cyclo
