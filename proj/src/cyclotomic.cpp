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

#include "cyclo/cyclotomic.hpp"

#include <algorithm>
#include <limits>
#include <mutex>
#include <string>

#include "cyclo/errors.hpp"

namespace cyclo {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  if (n < 4) return true;
  if (n % 2 == 0 || n % 3 == 0) return false;
  for (std::uint64_t d = 5; d <= n / d; d += 6) {
    if (n % d == 0 || n % (d + 2) == 0) return false;
  }
  return true;
}

std::vector<std::uint64_t> primes_in(std::uint64_t lo, std::uint64_t hi) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t k = std::max<std::uint64_t>(lo, 2); k <= hi; ++k) {
    if (is_prime(k)) out.push_back(k);
  }
  return out;
}

FactoredIndex::FactoredIndex(std::uint64_t n) : n_(n) {
  if (n == 0) throw InvalidInput("factorize: n must be positive");
  std::uint64_t m = n;
  for (std::uint64_t d = 2; d <= m / d; d += (d == 2 ? 1 : 2)) {
    if (m % d != 0) continue;
    unsigned e = 0;
    while (m % d == 0) {
      m /= d;
      ++e;
    }
    factors_.push_back({d, e});
  }
  if (m > 1) factors_.push_back({m, 1});
}

FactoredIndex FactoredIndex::from_factors(std::vector<PrimePower> factors) {
  std::sort(factors.begin(), factors.end(),
            [](const PrimePower& a, const PrimePower& b) { return a.prime < b.prime; });
  FactoredIndex out;
  std::uint64_t n = 1;
  for (std::size_t i = 0; i < factors.size(); ++i) {
    const auto& f = factors[i];
    if (!is_prime(f.prime)) throw InvalidInput("from_factors: " + std::to_string(f.prime) + " is not prime");
    if (f.exponent == 0) throw InvalidInput("from_factors: zero exponent");
    if (i > 0 && factors[i - 1].prime == f.prime) throw InvalidInput("from_factors: repeated prime");
    for (unsigned e = 0; e < f.exponent; ++e) {
      if (n > std::numeric_limits<std::uint64_t>::max() / f.prime) throw InvalidInput("from_factors: overflow");
      n *= f.prime;
    }
  }
  out.n_ = n;
  out.factors_ = std::move(factors);
  return out;
}

std::uint64_t FactoredIndex::radical() const noexcept {
  std::uint64_t r = 1;
  for (const auto& f : factors_) r *= f.prime;
  return r;
}

std::uint64_t FactoredIndex::totient() const noexcept {
  std::uint64_t t = 1;
  for (const auto& f : factors_) {
    t *= f.prime - 1;
    for (unsigned e = 1; e < f.exponent; ++e) t *= f.prime;
  }
  return t;
}

int FactoredIndex::mobius() const noexcept {
  for (const auto& f : factors_) {
    if (f.exponent > 1) return 0;
  }
  return factors_.size() % 2 == 0 ? 1 : -1;
}

std::uint64_t FactoredIndex::divisor_count() const noexcept {
  std::uint64_t c = 1;
  for (const auto& f : factors_) c *= f.exponent + 1;
  return c;
}

std::vector<std::uint64_t> FactoredIndex::divisors() const {
  std::vector<std::uint64_t> out{1};
  for (const auto& f : factors_) {
    const std::size_t base = out.size();
    std::uint64_t pk = 1;
    for (unsigned e = 1; e <= f.exponent; ++e) {
      pk *= f.prime;
      for (std::size_t i = 0; i < base; ++i) out.push_back(out[i] * pk);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

SigmaRho sigma_rho(std::uint64_t p, std::uint64_t q) {
  if (p == q || !is_prime(p) || !is_prime(q)) {
    throw InvalidInput("sigma_rho: need distinct primes, got " + std::to_string(p) + ", " + std::to_string(q));
  }
  const std::uint64_t target = (p - 1) * (q - 1);
  for (std::uint64_t sigma = 0; sigma < p; ++sigma) {
    if ((q % p) * sigma % p != target % p) continue;
    if (sigma * q > target) break;
    const std::uint64_t rho = (target - sigma * q) / p;
    if (rho <= q - 1) return {p, q, sigma, rho};
  }
  throw std::logic_error("sigma_rho: no solution in the window");
}

const IntPoly* CycloCache::find(std::uint64_t n) const {
  std::shared_lock lock(mutex_);
  auto it = table_.find(n);
  return it == table_.end() ? nullptr : it->second.get();
}

const IntPoly& CycloCache::insert(std::uint64_t n, IntPoly poly) {
  std::unique_lock lock(mutex_);
  auto [it, inserted] = table_.try_emplace(n, nullptr);
  if (inserted) it->second = std::make_unique<const IntPoly>(std::move(poly));
  return *it->second;
}

std::size_t CycloCache::size() const {
  std::shared_lock lock(mutex_);
  return table_.size();
}

void CycloCache::clear() {
  std::unique_lock lock(mutex_);
  table_.clear();
}

const IntPoly& CycloCache::phi(std::uint64_t n) {
  if (n == 0) throw InvalidInput("phi_n: n must be positive");
  if (const IntPoly* hit = find(n)) return *hit;
  if (n == 1) return insert(1, IntPoly{-1, 1});

  const FactoredIndex fi(n);
  const std::uint64_t r = fi.radical();
  if (r != n) return insert(n, substitute_power(phi(r), n / r));

  IntPoly acc = IntPoly::x_pow_minus_one(n);
  for (std::uint64_t d : fi.divisors()) {
    if (d == n) break;
    acc = div_exact(acc, phi(d));
  }
  return insert(n, std::move(acc));
}

CycloCache& default_cache() {
  static CycloCache cache;
  return cache;
}

const IntPoly& phi_n(std::uint64_t n, CycloCache& cache) { return cache.phi(n); }

IntPoly phi_pq_direct(std::uint64_t p, std::uint64_t q) {
  const SigmaRho sr = sigma_rho(p, q);
  const std::uint64_t pq = p * q;
  std::vector<std::int64_t> c((p - 1) * (q - 1) + 1, 0);
  for (std::uint64_t i = 0; i <= sr.rho; ++i) {
    for (std::uint64_t j = 0; j <= sr.sigma; ++j) c[i * p + j * q] = 1;
  }
  for (std::uint64_t i = sr.rho + 1; i <= q - 1; ++i) {
    for (std::uint64_t j = sr.sigma + 1; j <= p - 1; ++j) c[i * p + j * q - pq] = -1;
  }
  return IntPoly(std::move(c));
}

Integer a_height(std::uint64_t n, CycloCache& cache) { return height(cache.phi(n)); }

}  // namespace cyclo
