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

#include <algorithm>

#include "doctest.h"

#include "cyclo/divisors.hpp"
#include "cyclo/errors.hpp"
#include "support.hpp"

using namespace cyclo;

namespace {

// Lexicographically first subset (as an ascending divisor sequence) that
// attains the maximum height.
std::vector<std::uint64_t> reference_witness(std::uint64_t n) {
  const auto divs = oracle::divisors(n);
  std::vector<oracle::Poly> phis;
  for (auto d : divs) phis.push_back(oracle::cyclotomic(d));
  long long best = -1;
  std::vector<std::uint64_t> best_set;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << divs.size()); ++mask) {
    oracle::Poly acc{1};
    std::vector<std::uint64_t> set;
    for (std::size_t i = 0; i < divs.size(); ++i) {
      if (mask >> i & 1) {
        acc = oracle::mul(acc, phis[i]);
        set.push_back(divs[i]);
      }
    }
    const long h = oracle::height(acc);
    if (h > best || (h == best && set < best_set)) {
      best = h;
      best_set = set;
    }
  }
  return best_set;
}

}  // namespace

TEST_SUITE("divisors") {
  TEST_CASE("method names") {
    CHECK(parse_method("brute") == Method::brute);
    CHECK(parse_method("formula") == Method::formula);
    CHECK(to_string(Method::reduced) == "reduced");
    CHECK_THROWS_AS(parse_method("guess"), InvalidInput);
  }

  TEST_CASE("selection validation") {
    CHECK_NOTHROW(validate({12, {1, 3, 4}}));
    CHECK_THROWS_AS(validate({12, {5}}), InvalidInput);
    CHECK_THROWS_AS(validate({12, {4, 3}}), InvalidInput);
    CHECK(divisor_poly({6, {1, 2}}) == IntPoly::x_pow_minus_one(2));
    CHECK(divisor_poly({6, {}}) == IntPoly::constant(1));
  }

  TEST_CASE("B(n) matches exhaustive reference for small n") {
    for (std::uint64_t n = 1; n <= 200; ++n) {
      if (oracle::divisors(n).size() > 12) continue;
      CAPTURE(n);
      CHECK(enumerate_b(n).b_value == oracle::max_divisor_height(n));
    }
  }

  TEST_CASE("witness is the lexicographically first maximizer") {
    for (std::uint64_t n : {6u, 12u, 30u, 36u, 45u, 60u, 63u, 75u, 90u, 105u, 135u, 150u, 189u, 375u}) {
      CAPTURE(n);
      const auto rec = enumerate_b(n);
      CHECK(rec.witness.base_n == n);
      CHECK_NOTHROW(validate(rec.witness));
      CHECK(height(divisor_poly(rec.witness)) == rec.b_value);
      CHECK(rec.witness.selected == reference_witness(n));
    }
  }

  TEST_CASE("prime powers and two-prime closed forms") {
    CHECK(enumerate_b(1).b_value == 1);
    for (std::uint64_t n : {2u, 97u, 128u, 243u, 625u, 2401u}) CHECK(enumerate_b(n).b_value == 1);
    for (auto p : {2u, 3u, 5u, 7u, 11u}) {
      for (auto q : {2u, 3u, 5u, 7u, 11u, 13u}) {
        if (p == q) continue;
        CHECK(enumerate_b(p * q).b_value == std::min(p, q));
        CHECK(enumerate_b(p * q * q).b_value == std::min(p, q * q));
      }
    }
  }

  TEST_CASE("worker count does not change the result") {
    for (std::uint64_t n : {375u, 1715u, 13122u}) {
      EnumerateOptions one, many;
      one.workers = 1;
      many.workers = 4;
      const auto a = enumerate_b(n, one);
      const auto b = enumerate_b(n, many);
      CHECK(a.b_value == b.b_value);
      CHECK(a.witness == b.witness);
    }
  }

  TEST_CASE("resource guards") {
    EnumerateOptions capped;
    capped.degree_cap = 100;
    CHECK_THROWS_AS(enumerate_b(375, capped), DegreeCapExceeded);
    try {
      enumerate_b(375, capped);
    } catch (const DegreeCapExceeded& e) {
      CHECK(e.n() == 375);
      CHECK(e.cap() == 100);
    }
    EnumerateOptions tight;
    tight.work_budget = 10;
    CHECK_THROWS_AS(enumerate_b(1715, tight), BudgetExceeded);
    CHECK(enumerate_work_estimate(1715) > enumerate_work_estimate(375));
    CHECK_THROWS_AS(enumerate_b(0), InvalidInput);
  }

  TEST_CASE("subset maximum over an explicit factor list") {
    const std::vector<std::uint64_t> idx{1, 3, 5, 15};
    const auto m = max_subset_height(idx);
    CHECK(m.height == 3);
    CHECK(height(divisor_poly({15, m.selected})) == 3);
    const std::vector<std::uint64_t> bad{5, 3};
    CHECK_THROWS_AS(max_subset_height(bad), InvalidInput);
    CHECK(max_subset_height(std::vector<std::uint64_t>{}).height == 1);
  }

  TEST_CASE("B(pq^b) = p * H_b for p < q") {
    struct Case {
      std::uint64_t p, q;
      unsigned b;
    };
    for (auto c : {Case{3, 5, 3}, Case{3, 5, 4}, Case{5, 7, 3}, Case{3, 7, 4}, Case{5, 7, 4}, Case{2, 3, 5},
                   Case{3, 11, 3}}) {
      CAPTURE(c.p);
      CAPTURE(c.q);
      CAPTURE(c.b);
      std::uint64_t n = c.p;
      for (unsigned i = 0; i < c.b; ++i) n *= c.q;
      CHECK(enumerate_b(n).b_value == Integer(c.p) * reduced_h_b(c.p, c.q, c.b).height);
    }
    CHECK_THROWS_AS(reduced_h_b(3, 3, 3), InvalidInput);
    CHECK_THROWS_AS(reduced_h_b(3, 5, 1), InvalidInput);
  }

  TEST_CASE("divisors of Phi_q Phi_pq Phi_q^2 Phi_pq^2") {
    // Only Phi_pq Phi_q^2 can exceed height 1, and its height is below p.
    for (auto p : {3u, 5u, 7u, 11u}) {
      for (auto q : {5u, 7u, 11u, 13u}) {
        if (p >= q) continue;
        std::vector<std::uint64_t> idx{q, p * q, q * q, p * q * q};
        std::sort(idx.begin(), idx.end());
        for (unsigned mask = 0; mask < 16; ++mask) {
          DivisorSelection sel{p * q * q, {}};
          for (unsigned i = 0; i < 4; ++i) {
            if (mask >> i & 1) sel.selected.push_back(idx[i]);
          }
          const Integer h = height(divisor_poly(sel));
          CAPTURE(p);
          CAPTURE(q);
          CAPTURE(mask);
          const std::vector<std::uint64_t> g0{p * q, q * q};
          auto sorted_g0 = g0;
          std::sort(sorted_g0.begin(), sorted_g0.end());
          if (sel.selected == sorted_g0) {
            CHECK(h >= 1);
            CHECK(h <= p - 1);
          } else {
            CHECK(h == 1);
          }
        }
      }
    }
  }

  TEST_CASE("B(p^a q^b) >= min(p^a, q^b)") {
    for (auto p : {2u, 3u, 5u}) {
      for (auto q : {3u, 5u, 7u}) {
        if (p == q) continue;
        for (unsigned a = 1; a <= 3; ++a) {
          for (unsigned b = 1; b <= 3; ++b) {
            std::uint64_t pa = 1, qb = 1;
            for (unsigned i = 0; i < a; ++i) pa *= p;
            for (unsigned i = 0; i < b; ++i) qb *= q;
            if (pa * qb > 20000) continue;
            CHECK(enumerate_b(pa * qb).b_value >= std::min(pa, qb));
          }
        }
      }
    }
  }
}
