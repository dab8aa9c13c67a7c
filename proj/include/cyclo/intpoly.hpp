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

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace cyclo {

/// Arbitrary-precision integer used for coefficients, heights and norms.
using Integer = mpz_class;

/// A single nonzero term c*x^exponent.
struct Term {
  std::size_t exponent;
  std::int64_t coeff;
};

struct MulOptions {
  /// Both operands need at least this many dense coefficients before the
  /// divide-and-conquer path is considered.
  std::size_t karatsuba_threshold = 512;
};

/// Dense polynomial over Z. Index i holds the coefficient of x^i.
///
/// Values are immutable once built and always canonical: no trailing zeros
/// (the zero polynomial has no coefficients), and coefficients are stored as
/// machine words whenever every one of them fits in int64. Promotion to
/// arbitrary precision happens automatically when an operation would
/// overflow, and demotion happens as soon as the result fits again, so
/// equality is structural.
class IntPoly {
 public:
  IntPoly() = default;
  IntPoly(std::initializer_list<long long> coeffs);
  explicit IntPoly(std::vector<std::int64_t> coeffs);
  explicit IntPoly(std::vector<Integer> coeffs);

  static IntPoly constant(std::int64_t c);
  static IntPoly monomial(std::int64_t c, std::size_t exponent);
  /// x^n - 1
  static IntPoly x_pow_minus_one(std::size_t n);

  bool is_zero() const noexcept { return big_mode_ ? big_.empty() : small_.empty(); }
  /// Number of stored coefficients, i.e. degree + 1 (0 for the zero polynomial).
  std::size_t length() const noexcept { return big_mode_ ? big_.size() : small_.size(); }
  /// -1 for the zero polynomial.
  long long degree() const noexcept { return static_cast<long long>(length()) - 1; }

  Integer coeff(std::size_t i) const;
  std::vector<Integer> coeffs() const;

  bool fits_int64() const noexcept { return !big_mode_; }
  /// Requires fits_int64().
  std::span<const std::int64_t> small_coeffs() const;
  /// Nonzero terms in ascending exponent order. Requires fits_int64().
  std::vector<Term> small_terms() const;

  std::size_t nonzero_terms() const;

  /// Human-readable form, highest degree first, e.g. "x^2 - x + 1".
  std::string to_string() const;

  friend bool operator==(const IntPoly& a, const IntPoly& b);

 private:
  void normalize();

  std::vector<std::int64_t> small_;
  std::vector<Integer> big_;
  bool big_mode_ = false;
};

IntPoly add(const IntPoly& f, const IntPoly& g);
IntPoly sub(const IntPoly& f, const IntPoly& g);
IntPoly negate(const IntPoly& f);
IntPoly mul(const IntPoly& f, const IntPoly& g, const MulOptions& opts = {});

/// Quotient of an exact division. Throws NonExactDivision when g does not
/// divide f over Z, and std::invalid_argument when g is zero.
IntPoly div_exact(const IntPoly& f, const IntPoly& g);

/// Largest absolute coefficient; 0 for the zero polynomial.
Integer height(const IntPoly& f);
/// Sum of absolute coefficients.
Integer norm1(const IntPoly& f);

/// f(x^k), k >= 1.
IntPoly substitute_power(const IntPoly& f, std::size_t k);
/// f(-x)
IntPoly reflect(const IntPoly& f);

inline IntPoly operator+(const IntPoly& f, const IntPoly& g) { return add(f, g); }
inline IntPoly operator-(const IntPoly& f, const IntPoly& g) { return sub(f, g); }
inline IntPoly operator-(const IntPoly& f) { return negate(f); }
inline IntPoly operator*(const IntPoly& f, const IntPoly& g) { return mul(f, g); }

namespace kernel {

/// Bound on every partial sum formed while multiplying an operand of height
/// `dense_height` by terms of total absolute weight `terms_norm1`.
/// Returns -1 when that bound does not fit in int64.
long long product_bound(std::uint64_t dense_height, std::uint64_t terms_norm1) noexcept;

std::uint64_t height(std::span<const std::int64_t> coeffs) noexcept;

/// out = dense * (sum of terms); terms ascend by exponent. The caller must
/// have checked that
/// product_bound(height(dense), norm1(terms)) is non-negative.
void mul_dense_sparse(std::span<const std::int64_t> dense, std::span<const Term> terms,
                      std::vector<std::int64_t>& out);

}  // namespace kernel

}  // namespace cyclo
