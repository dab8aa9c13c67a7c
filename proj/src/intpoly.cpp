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

#include "cyclo/intpoly.hpp"

#include <algorithm>
#include <climits>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "cyclo/errors.hpp"

namespace cyclo {

namespace {

using u128 = unsigned __int128;

constexpr u128 kInt64Max = static_cast<u128>(std::numeric_limits<std::int64_t>::max());

std::uint64_t abs_u64(std::int64_t v) noexcept {
  return v < 0 ? std::uint64_t{0} - static_cast<std::uint64_t>(v) : static_cast<std::uint64_t>(v);
}

Integer from_u128(u128 v) {
  Integer hi = static_cast<unsigned long>(v >> 64);
  Integer lo = static_cast<unsigned long>(v & ~std::uint64_t{0});
  return (hi << 64) + lo;
}

Integer to_integer(std::int64_t v) { return Integer(static_cast<long>(v)); }

std::vector<Integer> widen(const IntPoly& f) { return f.coeffs(); }

std::uint64_t norm1_saturating(std::span<const std::int64_t> c) noexcept {
  u128 s = 0;
  for (auto v : c) {
    s += abs_u64(v);
    if (s > std::numeric_limits<std::uint64_t>::max()) return std::numeric_limits<std::uint64_t>::max();
  }
  return static_cast<std::uint64_t>(s);
}

// out[0 .. na+nb-1) += a * b
void schoolbook_acc(const std::int64_t* a, std::size_t na, const std::int64_t* b, std::size_t nb,
                    std::int64_t* out) {
  for (std::size_t i = 0; i < na; ++i) {
    const std::int64_t ai = a[i];
    if (ai == 0) continue;
    std::int64_t* o = out + i;
    for (std::size_t j = 0; j < nb; ++j) o[j] += ai * b[j];
  }
}

// out[0 .. 2n-1) += a * b, both of length n.
void karatsuba_equal(const std::int64_t* a, const std::int64_t* b, std::size_t n, std::int64_t* out,
                     std::size_t threshold) {
  if (n < threshold) {
    schoolbook_acc(a, n, b, n, out);
    return;
  }
  const std::size_t lo = n / 2;
  const std::size_t hi = n - lo;
  std::vector<std::int64_t> z0(2 * lo - 1, 0), z2(2 * hi - 1, 0), z1(2 * hi - 1, 0);
  std::vector<std::int64_t> sa(hi), sb(hi);
  karatsuba_equal(a, b, lo, z0.data(), threshold);
  karatsuba_equal(a + lo, b + lo, hi, z2.data(), threshold);
  for (std::size_t i = 0; i < hi; ++i) {
    sa[i] = a[lo + i] + (i < lo ? a[i] : 0);
    sb[i] = b[lo + i] + (i < lo ? b[i] : 0);
  }
  karatsuba_equal(sa.data(), sb.data(), hi, z1.data(), threshold);
  for (std::size_t i = 0; i < z0.size(); ++i) z1[i] -= z0[i];
  for (std::size_t i = 0; i < z2.size(); ++i) z1[i] -= z2[i];
  for (std::size_t i = 0; i < z0.size(); ++i) out[i] += z0[i];
  for (std::size_t i = 0; i < z1.size(); ++i) out[lo + i] += z1[i];
  for (std::size_t i = 0; i < z2.size(); ++i) out[2 * lo + i] += z2[i];
}

void karatsuba_acc(const std::int64_t* a, std::size_t na, const std::int64_t* b, std::size_t nb,
                   std::int64_t* out, std::size_t threshold) {
  if (na < nb) {
    std::swap(a, b);
    std::swap(na, nb);
  }
  if (nb < threshold) {
    schoolbook_acc(a, na, b, nb, out);
    return;
  }
  for (std::size_t off = 0; off < na; off += nb) {
    const std::size_t len = std::min(nb, na - off);
    if (len == nb) {
      karatsuba_equal(a + off, b, nb, out + off, threshold);
    } else {
      karatsuba_acc(b, nb, a + off, len, out + off, threshold);
    }
  }
}

IntPoly mul_big(const std::vector<Integer>& f, const std::vector<Integer>& g) {
  std::vector<Integer> r(f.size() + g.size() - 1);
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (f[i] == 0) continue;
    for (std::size_t j = 0; j < g.size(); ++j) {
      if (g[j] == 0) continue;
      mpz_addmul(r[i + j].get_mpz_t(), f[i].get_mpz_t(), g[j].get_mpz_t());
    }
  }
  return IntPoly(std::move(r));
}

IntPoly div_exact_big(const std::vector<Integer>& f, const std::vector<Integer>& g) {
  if (f.size() < g.size()) {
    if (!f.empty()) throw NonExactDivision("div_exact: divisor degree exceeds dividend degree");
    return {};
  }
  std::vector<Integer> r = f;
  const std::size_t dg = g.size() - 1;
  const Integer& lc = g.back();
  std::vector<Integer> q(f.size() - dg);
  Integer rem;
  for (std::size_t i = f.size(); i-- > dg;) {
    if (r[i] == 0) continue;
    mpz_fdiv_qr(q[i - dg].get_mpz_t(), rem.get_mpz_t(), r[i].get_mpz_t(), lc.get_mpz_t());
    if (rem != 0) throw NonExactDivision("div_exact: leading coefficient does not divide");
    for (std::size_t j = 0; j <= dg; ++j) {
      if (g[j] == 0) continue;
      mpz_submul(r[i - dg + j].get_mpz_t(), q[i - dg].get_mpz_t(), g[j].get_mpz_t());
    }
  }
  for (std::size_t i = 0; i < dg; ++i) {
    if (r[i] != 0) throw NonExactDivision("div_exact: nonzero remainder");
  }
  return IntPoly(std::move(q));
}

}  // namespace

IntPoly::IntPoly(std::initializer_list<long long> coeffs) : small_(coeffs.begin(), coeffs.end()) {
  normalize();
}

IntPoly::IntPoly(std::vector<std::int64_t> coeffs) : small_(std::move(coeffs)) { normalize(); }

IntPoly::IntPoly(std::vector<Integer> coeffs) : big_(std::move(coeffs)), big_mode_(true) { normalize(); }

IntPoly IntPoly::constant(std::int64_t c) { return IntPoly(std::vector<std::int64_t>{c}); }

IntPoly IntPoly::monomial(std::int64_t c, std::size_t exponent) {
  std::vector<std::int64_t> v(exponent + 1, 0);
  v[exponent] = c;
  return IntPoly(std::move(v));
}

IntPoly IntPoly::x_pow_minus_one(std::size_t n) {
  std::vector<std::int64_t> v(n + 1, 0);
  v[0] = -1;
  v[n] += 1;
  return IntPoly(std::move(v));
}

void IntPoly::normalize() {
  if (!big_mode_) {
    while (!small_.empty() && small_.back() == 0) small_.pop_back();
    return;
  }
  while (!big_.empty() && big_.back() == 0) big_.pop_back();
  const bool fits = std::all_of(big_.begin(), big_.end(), [](const Integer& c) { return c.fits_slong_p(); });
  if (fits) {
    small_.resize(big_.size());
    for (std::size_t i = 0; i < big_.size(); ++i) small_[i] = big_[i].get_si();
    big_.clear();
    big_.shrink_to_fit();
    big_mode_ = false;
  }
}

Integer IntPoly::coeff(std::size_t i) const {
  if (i >= length()) return 0;
  return big_mode_ ? big_[i] : to_integer(small_[i]);
}

std::vector<Integer> IntPoly::coeffs() const {
  if (big_mode_) return big_;
  std::vector<Integer> out;
  out.reserve(small_.size());
  for (auto c : small_) out.push_back(to_integer(c));
  return out;
}

std::span<const std::int64_t> IntPoly::small_coeffs() const {
  if (big_mode_) throw std::logic_error("IntPoly::small_coeffs on a multi-precision polynomial");
  return small_;
}

std::vector<Term> IntPoly::small_terms() const {
  std::vector<Term> out;
  for (std::size_t i = 0; i < small_coeffs().size(); ++i) {
    if (small_[i] != 0) out.push_back({i, small_[i]});
  }
  return out;
}

std::size_t IntPoly::nonzero_terms() const {
  if (big_mode_) return std::count_if(big_.begin(), big_.end(), [](const Integer& c) { return c != 0; });
  return std::count_if(small_.begin(), small_.end(), [](std::int64_t c) { return c != 0; });
}

std::string IntPoly::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = length(); i-- > 0;) {
    Integer c = coeff(i);
    if (c == 0) continue;
    const bool neg = c < 0;
    Integer a = abs(c);
    if (first) {
      if (neg) os << '-';
    } else {
      os << (neg ? " - " : " + ");
    }
    first = false;
    if (a != 1 || i == 0) os << a.get_str();
    if (i >= 1) os << 'x';
    if (i >= 2) os << '^' << i;
  }
  return os.str();
}

bool operator==(const IntPoly& a, const IntPoly& b) {
  if (a.big_mode_ != b.big_mode_) return false;
  return a.big_mode_ ? a.big_ == b.big_ : a.small_ == b.small_;
}

IntPoly add(const IntPoly& f, const IntPoly& g) {
  if (f.fits_int64() && g.fits_int64()) {
    auto a = f.small_coeffs();
    auto b = g.small_coeffs();
    std::vector<std::int64_t> r(std::max(a.size(), b.size()), 0);
    bool overflow = false;
    for (std::size_t i = 0; i < r.size(); ++i) {
      const std::int64_t x = i < a.size() ? a[i] : 0;
      const std::int64_t y = i < b.size() ? b[i] : 0;
      overflow |= __builtin_add_overflow(x, y, &r[i]);
    }
    if (!overflow) return IntPoly(std::move(r));
  }
  auto a = widen(f);
  auto b = widen(g);
  if (a.size() < b.size()) std::swap(a, b);
  for (std::size_t i = 0; i < b.size(); ++i) a[i] += b[i];
  return IntPoly(std::move(a));
}

IntPoly negate(const IntPoly& f) {
  if (f.fits_int64()) {
    auto a = f.small_coeffs();
    std::vector<std::int64_t> r(a.size());
    bool overflow = false;
    for (std::size_t i = 0; i < a.size(); ++i) overflow |= __builtin_sub_overflow(std::int64_t{0}, a[i], &r[i]);
    if (!overflow) return IntPoly(std::move(r));
  }
  auto a = widen(f);
  for (auto& c : a) c = -c;
  return IntPoly(std::move(a));
}

IntPoly sub(const IntPoly& f, const IntPoly& g) { return add(f, negate(g)); }

IntPoly mul(const IntPoly& f, const IntPoly& g, const MulOptions& opts) {
  if (f.is_zero() || g.is_zero()) return {};
  if (f.fits_int64() && g.fits_int64()) {
    auto a = f.small_coeffs();
    auto b = g.small_coeffs();
    const std::uint64_t ha = kernel::height(a), hb = kernel::height(b);
    const std::uint64_t ta = norm1_saturating(a), tb = norm1_saturating(b);
    // Any partial sum of a product coefficient is bounded by
    // min(T(f)H(g), T(g)H(f)), whatever the accumulation order.
    const u128 bound = std::min(static_cast<u128>(ta) * hb, static_cast<u128>(tb) * ha);
    if (bound <= kInt64Max) {
      const std::size_t nza = f.nonzero_terms(), nzb = g.nonzero_terms();
      if (nza * 4 <= a.size() || nzb * 4 <= b.size()) {
        const bool a_sparser = nza * b.size() <= nzb * a.size();
        const IntPoly& dense = a_sparser ? g : f;
        const IntPoly& sparse = a_sparser ? f : g;
        auto terms = sparse.small_terms();
        std::vector<std::int64_t> out;
        kernel::mul_dense_sparse(dense.small_coeffs(), terms, out);
        return IntPoly(std::move(out));
      }
      const std::size_t threshold = std::max<std::size_t>(opts.karatsuba_threshold, 2);
      const std::size_t m = std::max(a.size(), b.size());
      // Karatsuba sums operands before multiplying, so its intermediates are
      // bounded by 4*m^2*H(f)*H(g) rather than the schoolbook bound above.
      const u128 kara_bound = static_cast<u128>(ha) * hb;
      const bool kara_safe = kara_bound != 0 && kara_bound <= kInt64Max / (4 * static_cast<u128>(m) * m);
      std::vector<std::int64_t> out(a.size() + b.size() - 1, 0);
      if (std::min(a.size(), b.size()) >= threshold && kara_safe) {
        karatsuba_acc(a.data(), a.size(), b.data(), b.size(), out.data(), threshold);
      } else {
        schoolbook_acc(a.data(), a.size(), b.data(), b.size(), out.data());
      }
      return IntPoly(std::move(out));
    }
  }
  return mul_big(widen(f), widen(g));
}

IntPoly div_exact(const IntPoly& f, const IntPoly& g) {
  if (g.is_zero()) throw std::invalid_argument("div_exact: division by the zero polynomial");
  if (f.is_zero()) return {};
  if (f.length() < g.length()) throw NonExactDivision("div_exact: divisor degree exceeds dividend degree");
  if (f.fits_int64() && g.fits_int64()) {
    std::vector<std::int64_t> r(f.small_coeffs().begin(), f.small_coeffs().end());
    const auto terms = g.small_terms();
    const std::size_t dg = g.length() - 1;
    const std::int64_t lc = terms.back().coeff;
    std::vector<std::int64_t> q(f.length() - dg, 0);
    bool overflow = false;
    for (std::size_t i = r.size(); i-- > dg && !overflow;) {
      const std::int64_t c = r[i];
      if (c == 0) continue;
      if (lc == -1 && c == std::numeric_limits<std::int64_t>::min()) {
        overflow = true;
        break;
      }
      if (c % lc != 0) throw NonExactDivision("div_exact: leading coefficient does not divide");
      const std::int64_t qc = c / lc;
      q[i - dg] = qc;
      for (const auto& t : terms) {
        std::int64_t prod;
        std::int64_t& slot = r[i - dg + t.exponent];
        if (__builtin_mul_overflow(qc, t.coeff, &prod) || __builtin_sub_overflow(slot, prod, &slot)) {
          overflow = true;
          break;
        }
      }
    }
    if (!overflow) {
      for (std::size_t i = 0; i < dg; ++i) {
        if (r[i] != 0) throw NonExactDivision("div_exact: nonzero remainder");
      }
      return IntPoly(std::move(q));
    }
  }
  return div_exact_big(widen(f), widen(g));
}

Integer height(const IntPoly& f) {
  if (f.fits_int64()) return Integer(static_cast<unsigned long>(kernel::height(f.small_coeffs())));
  Integer h = 0;
  for (const auto& c : f.coeffs()) {
    if (abs(c) > h) h = abs(c);
  }
  return h;
}

Integer norm1(const IntPoly& f) {
  if (f.fits_int64()) {
    u128 s = 0;
    for (auto c : f.small_coeffs()) s += abs_u64(c);
    return from_u128(s);
  }
  Integer s = 0;
  for (const auto& c : f.coeffs()) s += abs(c);
  return s;
}

IntPoly substitute_power(const IntPoly& f, std::size_t k) {
  if (k == 0) throw std::invalid_argument("substitute_power: k must be >= 1");
  if (k == 1 || f.is_zero()) return f;
  const std::size_t len = (f.length() - 1) * k + 1;
  if (f.fits_int64()) {
    std::vector<std::int64_t> r(len, 0);
    auto a = f.small_coeffs();
    for (std::size_t i = 0; i < a.size(); ++i) r[i * k] = a[i];
    return IntPoly(std::move(r));
  }
  std::vector<Integer> r(len);
  auto a = f.coeffs();
  for (std::size_t i = 0; i < a.size(); ++i) r[i * k] = a[i];
  return IntPoly(std::move(r));
}

IntPoly reflect(const IntPoly& f) {
  auto c = f.coeffs();
  for (std::size_t i = 1; i < c.size(); i += 2) c[i] = -c[i];
  return IntPoly(std::move(c));
}

namespace kernel {

long long product_bound(std::uint64_t dense_height, std::uint64_t terms_norm1) noexcept {
  const u128 b = static_cast<u128>(dense_height) * terms_norm1;
  return b <= kInt64Max ? static_cast<long long>(b) : -1;
}

std::uint64_t height(std::span<const std::int64_t> coeffs) noexcept {
  std::uint64_t h = 0;
  for (auto c : coeffs) h = std::max(h, abs_u64(c));
  return h;
}

void mul_dense_sparse(std::span<const std::int64_t> dense, std::span<const Term> terms,
                      std::vector<std::int64_t>& out) {
  if (dense.empty() || terms.empty()) {
    out.clear();
    return;
  }
  const std::size_t n = dense.size();
  out.assign(n + terms.back().exponent, 0);
  const std::int64_t* d = dense.data();
  for (const auto& t : terms) {
    std::int64_t* o = out.data() + t.exponent;
    const std::int64_t c = t.coeff;
    if (c == 1) {
      for (std::size_t i = 0; i < n; ++i) o[i] += d[i];
    } else if (c == -1) {
      for (std::size_t i = 0; i < n; ++i) o[i] -= d[i];
    } else {
      for (std::size_t i = 0; i < n; ++i) o[i] += c * d[i];
    }
  }
}

}  // namespace kernel

}  // namespace cyclo
