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

#include "doctest.h"

#include "cyclo/errors.hpp"
#include "cyclo/formulas.hpp"
#include "support.hpp"

using namespace cyclo;

namespace {

Integer formula_value(std::uint64_t p, std::uint64_t q, unsigned b) {
  auto rec = b_formula(p, q, b);
  REQUIRE(rec.has_value());
  return rec->b_value;
}

}  // namespace

TEST_SUITE("formulas") {
  TEST_CASE("regimes") {
    CHECK(regime_of(3, 5) == Regime::p_lt_q);
    CHECK(regime_of(5, 3) == Regime::q_lt_p_lt_q2);
    CHECK(regime_of(11, 3) == Regime::q2_lt_p_lt_q3);
    CHECK(regime_of(29, 3) == Regime::p_gt_q3);
    CHECK(to_string(Regime::q2_lt_p_lt_q3) == "q^2<p<q^3");
  }

  TEST_CASE("known values") {
    CHECK(formula_value(3, 5, 3) == 6);
    CHECK(formula_value(5, 3, 3) == 8);
    CHECK(formula_value(7, 3, 3) == 7);
    CHECK(formula_value(11, 3, 3) == 11);
    CHECK(formula_value(13, 3, 3) == 13);
    CHECK(formula_value(29, 3, 3) == 27);
    CHECK(formula_value(31, 3, 3) == 27);
    CHECK(formula_value(5, 7, 4) == 20);
    CHECK(formula_value(5, 7, 3) == 15);
    CHECK(formula_value(7, 17, 3) == 35);
    CHECK(formula_value(7, 17, 4) == 35);
  }

  TEST_CASE("dispatch tags") {
    CHECK(b_formula(2, 7, 6)->regime == "p=2");
    CHECK(b_formula(3, 7, 6)->regime == "p=3");
    CHECK(b_formula(5, 11, 7)->regime == "q=+-1");
    CHECK(b_formula(7, 5, 1)->regime == "b1");
    CHECK(b_formula(7, 5, 2)->regime == "b2");
    CHECK(b_formula(5, 7, 3)->regime == "b3:sigma");
    CHECK(b_formula(5, 3, 3)->regime == "b3:q<p<q^2");
    CHECK(b_formula(11, 3, 3)->regime == "b3:q^2<p<q^3");
    CHECK(b_formula(29, 3, 3)->regime == "b3:p>q^3");
    CHECK(b_formula(5, 7, 4)->regime == "b4");
    CHECK(b_formula(5, 7, 5)->regime == "b5");
    const auto rec = b_formula(5, 7, 5);
    CHECK(rec->method == Method::formula);
    CHECK(rec->n == 5 * 7 * 7 * 7 * 7 * 7);
    CHECK(rec->witness.selected.empty());
  }

  TEST_CASE("unsupported cells") {
    CHECK_FALSE(b_formula(7, 5, 4).has_value());
    CHECK_FALSE(b_formula(5, 7, 6).has_value());
    CHECK_FALSE(b_formula(5, 2, 3).has_value());
  }

  TEST_CASE("invalid input") {
    CHECK_THROWS_AS(b_formula(5, 5, 3), InvalidInput);
    CHECK_THROWS_AS(b_formula(4, 7, 3), InvalidInput);
    CHECK_THROWS_AS(b_formula(3, 7, 0), InvalidInput);
    CHECK_THROWS_AS(formula_branches(1, 7, 3), InvalidInput);
  }

  TEST_CASE("the component heights") {
    const std::vector<std::uint64_t> g0{35, 49}, three{35, 245, 343}, big{119, 2023, 4913};
    CHECK(h_of_product(g0) == 3);
    CHECK(h_of_product(three) == 4);
    CHECK(h_of_product(big) == 4);
    const std::vector<std::uint64_t> single{105};
    CHECK(h_of_product(single) == a_height(105));
    const std::vector<std::uint64_t> zero{0};
    CHECK_THROWS_AS(h_of_product(zero), InvalidInput);
    const std::vector<std::uint64_t> large{4913, 4913 * 7};
    CHECK_THROWS_AS(h_of_product(large, 1000), DegreeCapExceeded);
  }

  TEST_CASE("g0 height equals max(sigma+1, p-sigma-1)") {
    for (auto p : primes_in(3, 19)) {
      for (auto q : primes_in(p + 1, 41)) {
        const auto s = static_cast<long>(sigma_rho(p, q).sigma);
        const std::vector<std::uint64_t> g0{p * q, q * q};
        CHECK(h_of_product(g0) == std::max(s + 1, static_cast<long>(p) - s - 1));
      }
    }
  }

  TEST_CASE("every applicable branch agrees") {
    for (auto p : primes_in(2, 23)) {
      for (auto q : primes_in(2, 61)) {
        if (p == q) continue;
        for (unsigned b = 1; b <= 5; ++b) {
          const auto branches = formula_branches(p, q, b);
          for (const auto& br : branches) {
            CAPTURE(p);
            CAPTURE(q);
            CAPTURE(b);
            CAPTURE(br.branch);
            CHECK(br.value == branches.front().value);
          }
        }
      }
    }
  }

  TEST_CASE("residue displays for b = 3 and 4") {
    for (auto q : primes_in(7, 60)) {
      const auto r5 = q % 5;
      CHECK(formula_value(5, q, 3) == ((r5 == 1 || r5 == 4) ? 20 : 15));
    }
    for (auto q : primes_in(11, 60)) {
      const auto r = std::min(q % 7, 7 - q % 7);
      CHECK(formula_value(7, q, 3) == (r == 1 ? 42 : r == 2 ? 28 : 35));
      CHECK(formula_value(7, q, 4) == (r == 1 ? 42 : 35));
    }
  }

  TEST_CASE("p(p-1) exactly for q = +-1 at b = 3") {
    for (auto p : primes_in(3, 31)) {
      for (auto q : primes_in(p + 1, 31)) {
        const bool pm1 = q % p == 1 || q % p == p - 1;
        CHECK((formula_value(p, q, 3) == Integer(p * (p - 1))) == pm1);
      }
    }
  }

  TEST_CASE("sigma under q = +-r") {
    for (auto p : primes_in(3, 13)) {
      for (auto q : primes_in(p + 1, 80)) {
        for (auto r : primes_in(q + 1, 80)) {
          const auto s1 = sigma_rho(p, q).sigma, s2 = sigma_rho(p, r).sigma;
          if (q % p == r % p) CHECK(s1 == s2);
          if ((q + r) % p == 0) CHECK(s1 + s2 + 2 == p);
        }
      }
    }
  }

  TEST_CASE("residue invariance") {
    auto a = residue_invariance_check(5, 7, 17, 3);
    CHECK(a.equal);
    CHECK(a.left.b_value == 15);
    auto b = residue_invariance_check(3, 5, 7, 4);
    CHECK(b.equal);
    CHECK(b.right.b_value == 6);
    auto c = residue_invariance_check(5, 11, 19, 3);
    CHECK(c.equal);
    CHECK(c.left.b_value == 20);
    CHECK_THROWS_AS(residue_invariance_check(5, 7, 11, 3), PreconditionViolation);
    CHECK_THROWS_AS(residue_invariance_check(5, 7, 17, 6), InvalidInput);
  }

  TEST_CASE("helpers") {
    CHECK(pq_power(3, 5, 3) == 375u);
    CHECK_FALSE(pq_power(3, 1000003, 5).has_value());
    CHECK(same_residue_class(5, 7, 13));
    CHECK(same_residue_class(5, 11, 19));
    CHECK_FALSE(same_residue_class(5, 7, 11));
    const auto auto_rec = b_value_auto(7, 5, 4);
    CHECK(auto_rec.method == Method::brute);
    CHECK(auto_rec.p == 7);
    CHECK(auto_rec.b == 4);
  }
}
