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

#include "cyclo/formulas.hpp"

#include <algorithm>
#include <chrono>
#include <limits>

#include "cyclo/errors.hpp"

namespace cyclo {

namespace {

constexpr std::uint64_t kNoCap = std::numeric_limits<std::uint64_t>::max();

Integer pow_ui(std::uint64_t base, unsigned e) {
  Integer r;
  mpz_ui_pow_ui(r.get_mpz_t(), base, e);
  return r;
}

Integer int_of(std::uint64_t v) { return Integer(static_cast<unsigned long>(v)); }

void require_pair(std::uint64_t p, std::uint64_t q, unsigned b) {
  if (p == q || !is_prime(p) || !is_prime(q)) {
    throw InvalidInput("need distinct primes p, q; got " + std::to_string(p) + ", " + std::to_string(q));
  }
  if (b == 0) throw InvalidInput("need b >= 1");
}

Integer h_of(std::initializer_list<std::uint64_t> idx, CycloCache& cache) {
  std::vector<std::uint64_t> v(idx);
  return h_of_product(v, kNoCap, cache);
}

// H(Phi_p Phi_q Phi_{pq^2} Phi_{q^3})
Integer cube_witness_height(std::uint64_t p, std::uint64_t q, CycloCache& cache) {
  return h_of({p, q, p * q * q, q * q * q}, cache);
}

// H(Phi_pq Phi_{q^2})
Integer g0_height(std::uint64_t p, std::uint64_t q, CycloCache& cache) { return h_of({p * q, q * q}, cache); }

struct Branch {
  const char* tag;
  bool (*applies)(std::uint64_t p, std::uint64_t q, unsigned b);
  Integer (*value)(std::uint64_t p, std::uint64_t q, unsigned b, CycloCache& cache);
};

using U = std::uint64_t;

bool odd_pair(std::uint64_t p, std::uint64_t q) { return p % 2 == 1 && q % 2 == 1; }

// Branches in dispatch priority.
const Branch kBranches[] = {
    {"p=2", [](U p, U q, unsigned) { return p == 2 && q > 2; },
     [](U, U, unsigned, CycloCache&) -> Integer { return Integer(2); }},
    {"p=3", [](U p, U q, unsigned) { return p == 3 && q > 3; },
     [](U, U, unsigned b, CycloCache&) -> Integer { return 3 * pow_ui(2, (b - 1) / 2); }},
    {"q=+-1", [](U p, U q, unsigned) { return p < q && (q % p == 1 || q % p == p - 1); },
     [](U p, U, unsigned b, CycloCache&) -> Integer { return int_of(p) * pow_ui(p - 1, (b - 1) / 2); }},
    {"b1", [](U, U, unsigned b) { return b == 1; },
     [](U p, U q, unsigned, CycloCache&) -> Integer { return int_of(std::min(p, q)); }},
    {"b2", [](U, U, unsigned b) { return b == 2; },
     [](U p, U q, unsigned, CycloCache&) -> Integer { return int_of(std::min(p, q * q)); }},
    {"b3:sigma", [](U p, U q, unsigned b) { return b == 3 && p < q && odd_pair(p, q); },
     [](U p, U q, unsigned, CycloCache&) -> Integer {
       const std::uint64_t s1 = sigma_rho(p, q).sigma + 1;
       return int_of(std::max(s1 * p, (p - s1) * p));
     }},
    {"b3:p<q", [](U p, U q, unsigned b) { return b == 3 && p < q && odd_pair(p, q); },
     [](U p, U q, unsigned, CycloCache& c) -> Integer { return cube_witness_height(p, q, c); }},
    {"b3:q<p<q^2", [](U p, U q, unsigned b) { return b == 3 && odd_pair(p, q) && q < p && p < q * q; },
     [](U p, U q, unsigned, CycloCache& c) -> Integer {
       const Integer h = cube_witness_height(p, q, c);
       return h > int_of(p) ? h : int_of(p);
     }},
    {"b3:q^2<p<q^3", [](U p, U q, unsigned b) { return b == 3 && odd_pair(p, q) && q * q < p && p < q * q * q; },
     [](U p, U, unsigned, CycloCache&) -> Integer { return int_of(p); }},
    {"b3:p>q^3", [](U p, U q, unsigned b) { return b == 3 && odd_pair(p, q) && p > q * q * q; },
     [](U, U q, unsigned, CycloCache&) -> Integer { return int_of(q * q * q); }},
    {"b3:general", [](U p, U q, unsigned b) { return b == 3 && odd_pair(p, q); },
     [](U p, U q, unsigned, CycloCache& c) -> Integer {
       const Integer floor_value = int_of(std::min(p, q * q * q));
       const Integer h = cube_witness_height(p, q, c);
       return h > floor_value ? h : floor_value;
     }},
    {"b4", [](U p, U q, unsigned b) { return b == 4 && p < q && odd_pair(p, q); },
     [](U p, U q, unsigned, CycloCache& c) -> Integer {
       const Integer a = int_of(p) * h_of({p * q, p * q * q, q * q * q}, c);
       const Integer g = int_of(p) * g0_height(p, q, c);
       return a > g ? a : g;
     }},
    {"b5", [](U p, U q, unsigned b) { return b == 5 && p < q && odd_pair(p, q); },
     [](U p, U q, unsigned, CycloCache& c) -> Integer {
       const Integer h = g0_height(p, q, c);
       return int_of(p) * h * h;
     }},
};

HeightRecord formula_record(std::uint64_t p, std::uint64_t q, unsigned b, BranchValue bv,
                            std::chrono::steady_clock::time_point start) {
  const auto n = pq_power(p, q, b);
  if (!n) throw InvalidInput("p*q^b overflows 64 bits");
  HeightRecord rec;
  rec.n = *n;
  rec.p = p;
  rec.q = q;
  rec.b = b;
  rec.b_value = std::move(bv.value);
  rec.witness = {*n, {}};
  rec.method = Method::formula;
  rec.regime = std::move(bv.branch);
  rec.elapsed = std::chrono::steady_clock::now() - start;
  return rec;
}

}  // namespace

Regime regime_of(std::uint64_t p, std::uint64_t q) {
  if (p < q) return Regime::p_lt_q;
  if (p < q * q) return Regime::q_lt_p_lt_q2;
  if (p < q * q * q) return Regime::q2_lt_p_lt_q3;
  return Regime::p_gt_q3;
}

std::string_view to_string(Regime r) {
  switch (r) {
    case Regime::p_lt_q:
      return "p<q";
    case Regime::q_lt_p_lt_q2:
      return "q<p<q^2";
    case Regime::q2_lt_p_lt_q3:
      return "q^2<p<q^3";
    case Regime::p_gt_q3:
      return "p>q^3";
  }
  return "unknown";
}

std::optional<std::uint64_t> pq_power(std::uint64_t p, std::uint64_t q, unsigned b) {
  std::uint64_t n = p;
  for (unsigned i = 0; i < b; ++i) {
    if (n > std::numeric_limits<std::uint64_t>::max() / q) return std::nullopt;
    n *= q;
  }
  return n;
}

Integer h_of_product(std::span<const std::uint64_t> factor_indices, std::uint64_t degree_cap, CycloCache& cache) {
  std::uint64_t degree = 0;
  for (auto n : factor_indices) {
    if (n == 0) throw InvalidInput("h_of_product: indices must be positive");
    degree += FactoredIndex(n).totient();
  }
  if (degree > degree_cap) throw DegreeCapExceeded(degree, degree_cap);
  IntPoly acc = IntPoly::constant(1);
  for (auto n : factor_indices) acc = mul(acc, cache.phi(n));
  return height(acc);
}

std::vector<BranchValue> formula_branches(std::uint64_t p, std::uint64_t q, unsigned b, CycloCache& cache) {
  require_pair(p, q, b);
  std::vector<BranchValue> out;
  for (const auto& br : kBranches) {
    if (br.applies(p, q, b)) out.push_back({br.tag, br.value(p, q, b, cache)});
  }
  return out;
}

std::optional<HeightRecord> b_formula(std::uint64_t p, std::uint64_t q, unsigned b, CycloCache& cache) {
  require_pair(p, q, b);
  const auto start = std::chrono::steady_clock::now();
  for (const auto& br : kBranches) {
    if (br.applies(p, q, b)) return formula_record(p, q, b, {br.tag, br.value(p, q, b, cache)}, start);
  }
  return std::nullopt;
}

HeightRecord b_value_auto(std::uint64_t p, std::uint64_t q, unsigned b, const EnumerateOptions& opts,
                          CycloCache& cache) {
  if (auto rec = b_formula(p, q, b, cache)) return *rec;
  const auto n = pq_power(p, q, b);
  if (!n) throw InvalidInput("p*q^b overflows 64 bits");
  HeightRecord rec = enumerate_b(*n, opts, cache);
  rec.p = p;
  rec.q = q;
  rec.b = b;
  return rec;
}

bool same_residue_class(std::uint64_t p, std::uint64_t q, std::uint64_t r) {
  const std::uint64_t a = q % p, c = r % p;
  return a == c || (a + c) % p == 0;
}

ResidueInvariance residue_invariance_check(std::uint64_t p, std::uint64_t q, std::uint64_t r, unsigned b,
                                           const EnumerateOptions& opts, CycloCache& cache) {
  if (!(p < q && q < r) || p % 2 == 0 || !is_prime(p) || !is_prime(q) || !is_prime(r)) {
    throw InvalidInput("residue_invariance_check: need odd primes p < q < r");
  }
  if (b == 0 || b > 5) throw InvalidInput("residue_invariance_check: need 1 <= b <= 5");
  if (!same_residue_class(p, q, r)) {
    throw PreconditionViolation("residue_invariance_check: " + std::to_string(q) + " is not +-" + std::to_string(r) +
                                " mod " + std::to_string(p));
  }
  ResidueInvariance out;
  out.left = b_value_auto(p, q, b, opts, cache);
  out.right = b_value_auto(p, r, b, opts, cache);
  out.equal = out.left.b_value == out.right.b_value;
  return out;
}

}  // namespace cyclo
