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

#include "cyclo/structure.hpp"

#include <algorithm>
#include <limits>

#include "cyclo/errors.hpp"
#include "cyclo/formulas.hpp"

namespace cyclo {

namespace {

constexpr std::uint64_t kNoCap = std::numeric_limits<std::uint64_t>::max();

Integer at(const std::vector<Integer>& c, std::uint64_t i) { return i < c.size() ? c[i] : Integer(0); }

Integer int_of(std::uint64_t v) { return Integer(static_cast<unsigned long>(v)); }

void require_odd_ordered(std::uint64_t p, std::uint64_t q, const char* who) {
  if (!(p < q) || p % 2 == 0 || !is_prime(p) || !is_prime(q)) {
    throw InvalidInput(std::string(who) + ": need odd primes p < q");
  }
}

std::uint64_t first_peak(const std::vector<Integer>& c, const Integer& h) {
  for (std::uint64_t i = 0; i < c.size(); ++i) {
    if (abs(c[i]) == h) return i;
  }
  return 0;
}

}  // namespace

void CheckReport::fail(long long at_index, const Integer& want, const Integer& have, std::string what) {
  if (!holds) return;
  holds = false;
  index = at_index;
  expected = want;
  got = have;
  detail = std::move(what);
}

IntPoly transport_product(std::uint64_t p, std::uint64_t q, CycloCache& cache) {
  return mul(mul(cache.phi(p * q), cache.phi(p * q * q)), cache.phi(q * q * q));
}

CheckReport periodicity_scan(const IntPoly& g, std::uint64_t p, std::uint64_t q) {
  CheckReport rep;
  const auto c = g.coeffs();
  const std::uint64_t q2 = q * q;
  for (std::uint64_t i = p; i < c.size(); ++i) {
    const std::uint64_t m = i % q2;
    if (m == 0 || m == 1) continue;
    ++rep.checked;
    if (c[i] != c[i - p]) rep.fail(static_cast<long long>(i), c[i - p], c[i], "c_i != c_{i-p}");
  }
  for (std::uint64_t lo = 0; lo < c.size(); lo += q2) {
    const std::uint64_t hi = std::min<std::uint64_t>(lo + q2, c.size());
    for (std::uint64_t i = lo + 2; i + p < hi; ++i) {
      ++rep.checked;
      if (c[i] != c[i + p]) rep.fail(static_cast<long long>(i + p), c[i], c[i + p], "window coefficients differ");
    }
  }
  return rep;
}

CheckReport periodicity_check(std::uint64_t p, std::uint64_t q, CycloCache& cache) {
  require_odd_ordered(p, q, "periodicity_check");
  return periodicity_scan(transport_product(p, q, cache), p, q);
}

std::vector<std::uint64_t> trapezoid_weights(std::uint64_t p, std::uint64_t q) {
  std::vector<std::uint64_t> a(p + q - 1);
  for (std::uint64_t i = 0; i < a.size(); ++i) a[i] = std::min({i + 1, p, p + q - 1 - i});
  return a;
}

CheckReport trapezoid_scan(const IntPoly& g, std::uint64_t p, std::uint64_t q) {
  CheckReport rep;
  const auto lhs = mul(IntPoly::x_pow_minus_one(p), g).coeffs();
  const auto a = trapezoid_weights(p, q);
  const std::uint64_t q2 = q * q;
  std::vector<Integer> rhs((a.size() - 1) * q2 + 2);
  for (std::uint64_t i = 0; i < a.size(); ++i) {
    rhs[i * q2] -= int_of(a[i]);
    rhs[i * q2 + 1] += int_of(a[i]);
  }
  const std::uint64_t len = std::max(lhs.size(), rhs.size());
  for (std::uint64_t i = 0; i < len; ++i) {
    ++rep.checked;
    const Integer want = at(rhs, i), have = at(lhs, i);
    if (want != have) rep.fail(static_cast<long long>(i), want, have, "(x^p-1)g differs from the trapezoid sum");
  }
  return rep;
}

CheckReport trapezoid_profile_check(std::uint64_t p, std::uint64_t q, CycloCache& cache) {
  require_odd_ordered(p, q, "trapezoid_profile_check");
  return trapezoid_scan(transport_product(p, q, cache), p, q);
}

TransportReport coefficient_transport_check(std::uint64_t p, std::uint64_t q, std::uint64_t r, CycloCache& cache) {
  require_odd_ordered(p, q, "coefficient_transport_check");
  require_odd_ordered(q, r, "coefficient_transport_check");
  if (!same_residue_class(p, q, r)) {
    throw PreconditionViolation("coefficient_transport_check: " + std::to_string(q) + " is not +-" +
                                std::to_string(r) + " mod " + std::to_string(p));
  }
  TransportReport rep;
  const IntPoly gq = transport_product(p, q, cache);
  const IntPoly gr = transport_product(p, r, cache);
  const auto c = gq.coeffs();
  const auto d = gr.coeffs();
  const std::uint64_t q2 = q * q, r2 = r * r;
  const std::uint64_t limit = (2 * p - 1) * q2, blocks_end = q2 * q;
  for (std::uint64_t n = 0; n < limit; ++n) {
    const std::uint64_t l = (n / q2) * r2 + n % q2;
    CheckReport& into = n < blocks_end ? rep.coefficients : rep.extended;
    ++into.checked;
    if (at(c, n) != at(d, l)) {
      const std::string what = "c_n != d_l at l=" + std::to_string(l);
      into.fail(static_cast<long long>(n), at(d, l), at(c, n), what);
      if (&into == &rep.coefficients) rep.extended.fail(static_cast<long long>(n), at(d, l), at(c, n), what);
    }
  }
  rep.height_q = height(gq);
  rep.height_r = height(gr);
  rep.first_peak_q = first_peak(c, rep.height_q);
  rep.first_peak_r = first_peak(d, rep.height_r);
  auto peak_ok = [p](std::uint64_t l, std::uint64_t s2) { return l < (2 * p - 1) * s2 && l % s2 <= 1; };
  rep.peaks_ok = peak_ok(rep.first_peak_q, q2) && peak_ok(rep.first_peak_r, r2);
  return rep;
}

bool BoundsReport::holds() const { return first_violation() == nullptr; }

const BoundRow* BoundsReport::first_violation() const {
  for (const auto& row : rows) {
    if (!row.holds()) return &row;
  }
  return nullptr;
}

BoundsReport table1_bounds_check(std::uint64_t p, std::uint64_t q, CycloCache& cache) {
  if (p == q || !is_prime(p) || !is_prime(q) || !(q < p && p < q * q * q)) {
    throw InvalidInput("table1_bounds_check: need primes q < p < q^3");
  }
  const std::uint64_t q2 = q * q, q3 = q2 * q;
  const Integer P = int_of(p), two_q = int_of(2 * q), q_sq = int_of(q2);
  const Integer max_p_q2 = std::max(P, q_sq), max_p_2q = std::max(P, two_q);

  struct Shape {
    const char* name;
    std::vector<std::uint64_t> factors;
    Integer with_pq3;
    Integer with_q3;
  };
  const std::vector<Shape> shapes = {
      {"f2", {}, 1, 1},
      {"Phi_p*f2", {p}, P, P},
      {"Phi_pq*f2", {p * q}, two_q, P},
      {"Phi_pq2*f2", {p * q2}, P, P},
      {"Phi_p*Phi_pq*f2", {p, p * q}, P, P},
      {"Phi_p*Phi_pq2*f2", {p, p * q2}, P, max_p_q2},
      {"Phi_pq*Phi_pq2*f2", {p * q, p * q2}, two_q, max_p_2q},
      {"Phi_p*Phi_pq*Phi_pq2*f2", {p, p * q, p * q2}, P, P},
  };

  const std::uint64_t f2_base[] = {1, q, q2};
  const char* f2_name[] = {"Phi_1", "Phi_q", "Phi_q2"};

  BoundsReport rep;
  auto measure = [&](const std::string& shape, const std::string& f2, std::vector<std::uint64_t> idx,
                     unsigned f2_mask, const Integer& bound) {
    for (int k = 0; k < 3; ++k) {
      if (f2_mask >> k & 1) idx.push_back(f2_base[k]);
    }
    rep.rows.push_back({shape, f2, h_of_product(idx, kNoCap, cache), bound});
  };

  for (unsigned mask = 0; mask < 8; ++mask) {
    std::string f2;
    for (int k = 0; k < 3; ++k) {
      if (mask >> k & 1) f2 += (f2.empty() ? "" : "*") + std::string(f2_name[k]);
    }
    if (f2.empty()) f2 = "1";
    for (const auto& s : shapes) {
      auto a = s.factors;
      a.push_back(p * q3);
      measure(std::string("Phi_pq3*") + s.name, f2, a, mask, s.with_pq3);
      auto b = s.factors;
      b.push_back(q3);
      measure(std::string("Phi_q3*") + s.name, f2, b, mask, s.with_q3);
    }
    measure("Phi_q3*Phi_pq*f2", f2, {q3, p * q}, mask, P);
    measure("Phi_pq3*Phi_pq*f2", f2, {p * q3, p * q}, mask, two_q);
    measure("Phi_pq2*Phi_p*f2", f2, {p * q2, p}, mask, max_p_2q);
    if (p < q2) {
      // mask bit 0 is Phi_1, bit 1 is Phi_q
      const Integer refined = mask == 2 ? q_sq : (mask == 1 || mask == 3) ? two_q : P;
      measure("Phi_p*Phi_pq2*Phi_q3*f2 (p<q^2)", f2, {p, p * q2, q3}, mask, refined);
    }
  }
  return rep;
}

}  // namespace cyclo
