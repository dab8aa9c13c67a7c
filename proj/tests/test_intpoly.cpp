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

#include <random>

#include "doctest.h"

#include "cyclo/errors.hpp"
#include "cyclo/intpoly.hpp"
#include "support.hpp"

using namespace cyclo;
using testing::from_oracle;
using testing::random_poly;
using testing::to_oracle;

TEST_SUITE("intpoly") {
  TEST_CASE("canonical form and accessors") {
    IntPoly f{1, -1, 1, 0, 0};
    CHECK(f.length() == 3);
    CHECK(f.degree() == 2);
    CHECK(f.to_string() == "x^2 - x + 1");
    CHECK(IntPoly{}.is_zero());
    CHECK(IntPoly{0, 0}.is_zero());
    CHECK(IntPoly{}.degree() == -1);
    CHECK(f.coeff(7) == 0);
    CHECK(IntPoly::x_pow_minus_one(3) == IntPoly{-1, 0, 0, 1});
    CHECK(IntPoly::monomial(5, 2) == IntPoly{0, 0, 5});
    CHECK(f.nonzero_terms() == 3);
  }

  TEST_CASE("height and norm") {
    IntPoly f{3, -7, 0, 2};
    CHECK(height(f) == 7);
    CHECK(norm1(f) == 12);
    CHECK(height(IntPoly{}) == 0);
  }

  TEST_CASE("substitute_power and reflect") {
    IntPoly f{1, 2, 3};
    CHECK(substitute_power(f, 3) == IntPoly{1, 0, 0, 2, 0, 0, 3});
    CHECK(substitute_power(f, 1) == f);
    CHECK_THROWS_AS(substitute_power(f, 0), std::invalid_argument);
    CHECK(reflect(f) == IntPoly{1, -2, 3});
  }

  TEST_CASE("exact division") {
    const IntPoly g{1, 1};
    CHECK(div_exact(IntPoly::x_pow_minus_one(2), g) == IntPoly{-1, 1});
    CHECK_THROWS_AS(div_exact(IntPoly{1, 0, 1}, g), NonExactDivision);
    CHECK_THROWS_AS(div_exact(IntPoly{1, 2}, IntPoly{}), std::invalid_argument);
    CHECK_THROWS_AS(div_exact(IntPoly{1, 3}, IntPoly{0, 2}), NonExactDivision);
  }

  TEST_CASE("big coefficients promote and demote") {
    const std::int64_t big = std::int64_t{1} << 40;
    IntPoly f{big, 1};
    IntPoly cube = f * f * f;
    CHECK_FALSE(cube.fits_int64());
    CHECK(cube.coeff(1) == Integer(3) * Integer(big) * Integer(big));
    IntPoly back = div_exact(div_exact(cube, f), f);
    CHECK(back == f);
    CHECK(back.fits_int64());
  }

  TEST_CASE("multiplication matches the reference on random inputs") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 200; ++trial) {
      auto a = random_poly(rng, rng() % 60, 1000);
      auto b = random_poly(rng, rng() % 60, 1000);
      CHECK(to_oracle(from_oracle(a) * from_oracle(b)) == oracle::mul(a, b));
    }
  }

  TEST_CASE("divide-and-conquer path agrees with schoolbook") {
    std::mt19937_64 rng(12);
    MulOptions small{16};
    for (int trial = 0; trial < 20; ++trial) {
      auto a = from_oracle(random_poly(rng, 100 + rng() % 300, 50));
      auto b = from_oracle(random_poly(rng, 100 + rng() % 300, 50));
      CHECK(mul(a, b, small) == from_oracle(oracle::mul(to_oracle(a), to_oracle(b))));
    }
  }

  TEST_CASE("sparse operands") {
    IntPoly sparse = IntPoly::monomial(3, 500) + IntPoly::monomial(-2, 100) + IntPoly::constant(1);
    std::mt19937_64 rng(13);
    auto dense = random_poly(rng, 400, 100);
    CHECK(to_oracle(sparse * from_oracle(dense)) == oracle::mul(to_oracle(sparse), dense));
  }

  TEST_CASE("mul/div round trip") {
    std::mt19937_64 rng(14);
    for (int trial = 0; trial < 300; ++trial) {
      auto f = from_oracle(random_poly(rng, rng() % 40, 30));
      auto g = from_oracle(random_poly(rng, rng() % 40, 30));
      CHECK(div_exact(f * g, g) == f);
    }
  }

  TEST_CASE("product height bounded by 1-norm times height") {
    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 1000; ++trial) {
      auto f = random_poly(rng, rng() % 30, 20);
      auto g = random_poly(rng, rng() % 30, 20);
      auto fg = oracle::mul(f, g);
      CHECK(oracle::height(fg) <= oracle::norm1(f) * oracle::height(g));
      CHECK(oracle::norm1(fg) <= oracle::norm1(f) * oracle::norm1(g));
      auto mine = from_oracle(f) * from_oracle(g);
      CHECK(height(mine) <= norm1(from_oracle(f)) * height(from_oracle(g)));
    }
  }

  TEST_CASE("strided product height bound") {
    // f of degree n times g(x^k): with s*k > n at most s products land on
    // any exponent, so H(fg) <= s H(f) H(g).
    std::mt19937_64 rng(22);
    for (int trial = 0; trial < 1000; ++trial) {
      const std::size_t n = rng() % 40;
      const std::size_t k = 1 + rng() % 12;
      const long long s = static_cast<long long>(n / k) + 1;
      auto f = from_oracle(random_poly(rng, n, 9));
      auto g = from_oracle(random_poly(rng, rng() % 10, 9));
      auto prod = f * substitute_power(g, k);
      CHECK(height(prod) <= Integer(static_cast<long>(s)) * height(f) * height(g));
    }
  }

  TEST_CASE("substitution preserves height and norm") {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 200; ++trial) {
      auto f = from_oracle(random_poly(rng, rng() % 30, 50));
      const std::size_t k = 1 + rng() % 7;
      CHECK(height(substitute_power(f, k)) == height(f));
      CHECK(norm1(substitute_power(f, k)) == norm1(f));
      CHECK(height(reflect(f)) == height(f));
    }
  }

  TEST_CASE("overflow-sized products stay exact") {
    std::mt19937_64 rng(24);
    const long long h = 1LL << 40;
    for (int trial = 0; trial < 20; ++trial) {
      auto a = from_oracle(random_poly(rng, 30, h));
      auto b = from_oracle(random_poly(rng, 30, h));
      auto prod = a * b;
      for (std::size_t k = 0; k < prod.length(); ++k) {
        Integer want = 0;
        for (std::size_t i = 0; i <= k; ++i) want += a.coeff(i) * b.coeff(k - i);
        CHECK(prod.coeff(k) == want);
      }
    }
  }
}
