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

#include "cyclo/divisors.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <exception>
#include <mutex>
#include <limits>
#include <optional>
#include <type_traits>
#include <thread>

#include "cyclo/errors.hpp"

namespace cyclo {

namespace {

using Mask = std::uint64_t;

// Lexicographic order of the ascending index sequences encoded by two masks;
// a proper prefix sorts first.
bool lex_less(Mask a, Mask b) {
  if (a == b) return false;
  const int t = std::countr_zero(a ^ b);
  const bool a_has = (a >> t) & 1U;
  const int above = t + 1;
  if (a_has) return above < 64 && (b >> above) != 0;
  return above >= 64 || (a >> above) == 0;
}

struct Best {
  Integer height;
  Mask mask = 0;
  bool set = false;

  void offer(const Integer& h, Mask m) {
    if (!set || h > height || (h == height && lex_less(m, mask))) {
      height = h;
      mask = m;
      set = true;
    }
  }

  void offer(std::uint64_t h, Mask m) {
    if (!set || height < h || (height == h && lex_less(m, mask))) {
      height = static_cast<unsigned long>(h);
      mask = m;
      set = true;
    }
  }
};

struct Factor {
  std::uint64_t index;
  unsigned rank;  // position in the ascending index list
  const IntPoly* poly;
  bool small;
  std::vector<Term> terms;
  std::uint64_t norm1;
  // Position of the partner under x -> -x in the traversal order, or -1 when
  // the factor is fixed by it. The odd member of a pair comes first.
  int partner = -1;
};

// Canonical-representative tracking for the involution Phi_d <-> Phi_{2d}
// (d odd). A subset is canonical when the first pair holding exactly one
// member holds the odd one. Pairs sit at adjacent positions of the traversal.
struct SymState {
  enum Kind : std::uint8_t { kClean, kPending, kBroken } kind = kClean;
  int pending = -1;  // traversal position of the lone odd member
};

class SubsetSearch {
 public:
  SubsetSearch(std::span<const std::uint64_t> indices, CycloCache& cache) : indices_(indices.begin(), indices.end()) {
    if (indices.size() > 63) throw InvalidInput("max_subset_height: at most 63 factors supported");
    std::vector<Factor> factors;
    for (std::size_t i = 0; i < indices.size(); ++i) {
      if (i > 0 && indices[i] <= indices[i - 1]) throw InvalidInput("max_subset_height: indices must ascend");
      const IntPoly& poly = cache.phi(indices[i]);
      Factor f{indices[i], static_cast<unsigned>(i), &poly, poly.fits_int64(), {}, 0};
      if (f.small) {
        f.terms = poly.small_terms();
        const Integer t = norm1(poly);
        f.small = t.fits_ulong_p();
        f.norm1 = f.small ? t.get_ui() : 0;
      }
      factors.push_back(std::move(f));
    }

    // Groups of one or two factors; a pair is {Phi_d, Phi_2d} with d odd.
    symmetric_ = !indices.empty() && std::all_of(indices.begin(), indices.end(), [&](std::uint64_t d) {
      if (d % 4 == 0) return true;
      const std::uint64_t other = d % 2 == 1 ? 2 * d : d / 2;
      return std::binary_search(indices.begin(), indices.end(), other);
    });
    std::vector<std::vector<std::size_t>> groups;
    for (std::size_t i = 0; i < factors.size(); ++i) {
      const std::uint64_t d = factors[i].index;
      if (symmetric_ && d % 2 == 1) {
        const auto it = std::lower_bound(indices.begin(), indices.end(), 2 * d);
        groups.push_back({i, static_cast<std::size_t>(it - indices.begin())});
      } else if (!symmetric_ || d % 4 == 0) {
        groups.push_back({i});
      }
    }
    // Groups with the most terms go first: the last positions are multiplied
    // in exponentially many subtrees.
    std::stable_sort(groups.begin(), groups.end(), [&](const auto& a, const auto& b) {
      const Factor& fa = factors[a.front()];
      const Factor& fb = factors[b.front()];
      if (fa.terms.size() != fb.terms.size()) return fa.terms.size() > fb.terms.size();
      return fa.poly->length() > fb.poly->length();
    });
    for (const auto& g : groups) {
      for (std::size_t i : g) order_.push_back(factors[i]);
      if (g.size() == 2) {
        const int a = static_cast<int>(order_.size()) - 2;
        order_[a].partner = a + 1;
        order_[a + 1].partner = a;
      }
    }

    for (const auto& f : order_) {
      max_length_ += f.poly->length() - 1;
      if (!f.terms.empty()) pad_ = std::max(pad_, f.terms.back().exponent);
    }
    max_length_ += 1;
  }

  double work_estimate() const {
    double total = 1;
    double prefix_degree = 0;
    for (std::size_t j = 0; j < order_.size(); ++j) {
      const double deg = static_cast<double>(order_[j].poly->length() - 1);
      const double parent = prefix_degree / 2 + deg + 1;
      total += std::ldexp(1.0, static_cast<int>(j)) * parent * static_cast<double>(order_[j].terms.size() + 1);
      prefix_degree += deg;
    }
    return symmetric_ ? total / 2 : total;
  }

  Best run(unsigned workers) const {
    const std::size_t k = order_.size();
    std::size_t split = 0;
    if (workers > 1) {
      while (split < k && (std::size_t{1} << split) < 4 * static_cast<std::size_t>(workers)) ++split;
    }
    const std::size_t tasks = std::size_t{1} << split;
    if (workers <= 1 || tasks == 1) {
      Best best;
      run_task(0, split, best);
      return best;
    }

    std::atomic<std::size_t> next{0};
    std::vector<Best> local(workers);
    std::exception_ptr error;
    std::mutex error_mutex;
    {
      std::vector<std::jthread> pool;
      for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
          try {
            for (std::size_t t; (t = next.fetch_add(1)) < tasks;) run_task(t, split, local[w]);
          } catch (...) {
            std::lock_guard lock(error_mutex);
            if (!error) error = std::current_exception();
          }
        });
      }
    }
    if (error) std::rethrow_exception(error);
    Best best;
    for (const auto& b : local) {
      if (b.set) best.offer(b.height, b.mask);
    }
    return best;
  }

 private:
  // Padded working buffer: `pad_` zeros precede the coefficients and at
  // least `pad_` zeros follow them.
  template <class T>
  struct Buffer {
    std::vector<T> data;
    std::size_t length = 0;  // coefficients currently stored
    std::size_t dirty = 0;   // high-water mark of written coefficients
  };

  // One buffer per recursion depth and coefficient width. Narrow widths are
  // used while the bound H(in) * T(factor) on the product height fits, and a
  // subtree is promoted to the next width as soon as it does not.
  struct Workspace {
    std::vector<Buffer<std::int16_t>> w16;
    std::vector<Buffer<std::int32_t>> w32;
    std::vector<Buffer<std::int64_t>> w64;

    template <class T>
    std::vector<Buffer<T>>& get() {
      if constexpr (std::is_same_v<T, std::int16_t>) return w16;
      else if constexpr (std::is_same_v<T, std::int32_t>) return w32;
      else return w64;
    }
  };

  template <class T>
  Buffer<T>& buffer(Workspace& ws, std::size_t depth) const {
    auto& v = ws.get<T>();
    if (v.empty()) v.resize(order_.size() + 1);
    Buffer<T>& b = v[depth];
    if (b.data.empty()) b.data.assign(2 * pad_ + max_length_, 0);
    return b;
  }

  // State after including traversal position j, or nullopt if the subset
  // can only be the non-canonical image of another one.
  std::optional<SymState> advance(SymState s, std::size_t j) const {
    if (!symmetric_ || s.kind == SymState::kBroken) return s;
    const int partner = order_[j].partner;
    const bool odd_member = partner >= 0 && partner > static_cast<int>(j);
    const bool even_member = partner >= 0 && partner < static_cast<int>(j);
    if (s.kind == SymState::kPending) {
      if (even_member && partner == s.pending) return SymState{};
      return SymState{SymState::kBroken, -1};
    }
    if (odd_member) return SymState{SymState::kPending, static_cast<int>(j)};
    if (even_member) return std::nullopt;
    return s;
  }

  Mask mirror(Mask m) const {
    Mask out = m;
    for (std::size_t j = 0; j + 1 < order_.size(); ++j) {
      if (order_[j].partner != static_cast<int>(j) + 1) continue;
      const unsigned a = order_[j].rank, b = order_[j + 1].rank;
      const bool has_a = (m >> a) & 1U, has_b = (m >> b) & 1U;
      out &= ~((Mask{1} << a) | (Mask{1} << b));
      if (has_a) out |= Mask{1} << b;
      if (has_b) out |= Mask{1} << a;
    }
    return out;
  }

  template <class H>
  void offer(Best& best, const H& h, Mask mask, const SymState& s) const {
    best.offer(h, mask);
    if (symmetric_ && s.kind != SymState::kClean && best.mask == mask) best.offer(h, mirror(mask));
  }

  void run_task(std::size_t task, std::size_t split, Best& best) const {
    IntPoly start = IntPoly::constant(1);
    Mask mask = 0;
    SymState state;
    for (std::size_t j = 0; j < split; ++j) {
      if ((task >> j) & 1U) {
        auto next = advance(state, j);
        if (!next) return;
        state = *next;
        start = mul(start, *order_[j].poly);
        mask |= Mask{1} << order_[j].rank;
      }
    }
    if (!start.fits_int64()) {
      visit_big(split, start, mask, state, best);
      return;
    }
    Workspace ws;
    auto coeffs = start.small_coeffs();
    const std::uint64_t h = kernel::height(coeffs);
    if (h <= std::numeric_limits<std::int16_t>::max()) {
      load<std::int16_t>(ws, 0, coeffs);
      visit_small<std::int16_t>(split, 0, h, mask, state, best, ws);
    } else {
      load<std::int64_t>(ws, 0, coeffs);
      visit_small<std::int64_t>(split, 0, h, mask, state, best, ws);
    }
  }

  template <class T, class S>
  void load(Workspace& ws, std::size_t depth, std::span<const S> coeffs) const {
    Buffer<T>& b = buffer<T>(ws, depth);
    T* dst = b.data.data() + pad_;
    for (std::size_t i = 0; i < coeffs.size(); ++i) dst[i] = static_cast<T>(coeffs[i]);
    if (b.dirty > coeffs.size()) std::fill(dst + coeffs.size(), dst + b.dirty, T{0});
    b.length = b.dirty = coeffs.size();
  }

  // out = in * f in one pass over the output, returning H(out). The caller
  // guarantees every partial sum fits in T.
  template <class T>
  std::uint64_t multiply(const Buffer<T>& in, const Factor& f, Buffer<T>& out) const {
    constexpr std::size_t kBlock = 512;
    const std::size_t n = in.length + f.terms.back().exponent;
    const T* src = in.data.data() + pad_;
    T* dst = out.data.data() + pad_;
    T lo = 0, hi = 0;
    alignas(64) T acc[kBlock];
    for (std::size_t i0 = 0; i0 < n; i0 += kBlock) {
      const std::size_t len = std::min(kBlock, n - i0);
      std::fill_n(acc, len, T{0});
      for (const Term& t : f.terms) {
        const T* s = src + i0 - t.exponent;
        const T c = static_cast<T>(t.coeff);
        if (c == 1) {
          for (std::size_t k = 0; k < len; ++k) acc[k] += s[k];
        } else if (c == -1) {
          for (std::size_t k = 0; k < len; ++k) acc[k] -= s[k];
        } else {
          for (std::size_t k = 0; k < len; ++k) acc[k] += c * s[k];
        }
      }
      for (std::size_t k = 0; k < len; ++k) {
        const T v = acc[k];
        dst[i0 + k] = v;
        lo = v < lo ? v : lo;
        hi = v > hi ? v : hi;
      }
    }
    if (out.dirty > n) std::fill(dst + n, dst + out.dirty, T{0});
    out.length = n;
    out.dirty = n;
    const std::uint64_t neg = std::uint64_t{0} - static_cast<std::uint64_t>(static_cast<std::int64_t>(lo));
    return std::max(neg, static_cast<std::uint64_t>(static_cast<std::int64_t>(hi)));
  }

  template <class T>
  void visit_small(std::size_t pos, std::size_t depth, std::uint64_t h, Mask mask, SymState state, Best& best,
                   Workspace& ws) const {
    offer(best, h, mask, state);
    for (std::size_t j = pos; j < order_.size(); ++j) {
      const Factor& f = order_[j];
      const auto next = advance(state, j);
      if (!next) continue;
      const Mask child = mask | (Mask{1} << f.rank);
      const long long bound = f.small ? kernel::product_bound(h, f.norm1) : -1;
      if (bound >= 0 && bound <= std::numeric_limits<T>::max()) {
        const std::uint64_t hc = multiply<T>(buffer<T>(ws, depth), f, buffer<T>(ws, depth + 1));
        visit_small<T>(j + 1, depth + 1, hc, child, *next, best, ws);
        continue;
      }
      const Buffer<T>& cur = buffer<T>(ws, depth);
      std::span<const T> coeffs(cur.data.data() + pad_, cur.length);
      if (bound >= 0) {
        if constexpr (std::is_same_v<T, std::int16_t>) {
          if (bound <= std::numeric_limits<std::int32_t>::max()) {
            load<std::int32_t>(ws, depth, coeffs);
            const auto hc = multiply<std::int32_t>(buffer<std::int32_t>(ws, depth), f, buffer<std::int32_t>(ws, depth + 1));
            visit_small<std::int32_t>(j + 1, depth + 1, hc, child, *next, best, ws);
            continue;
          }
        }
        if constexpr (!std::is_same_v<T, std::int64_t>) {
          load<std::int64_t>(ws, depth, coeffs);
          const auto hc = multiply<std::int64_t>(buffer<std::int64_t>(ws, depth), f, buffer<std::int64_t>(ws, depth + 1));
          visit_small<std::int64_t>(j + 1, depth + 1, hc, child, *next, best, ws);
          continue;
        }
      }
      std::vector<std::int64_t> wide(coeffs.begin(), coeffs.end());
      visit_big(j + 1, mul(IntPoly(std::move(wide)), *f.poly), child, *next, best);
    }
  }

  void visit_big(std::size_t pos, const IntPoly& current, Mask mask, SymState state, Best& best) const {
    offer(best, height(current), mask, state);
    for (std::size_t j = pos; j < order_.size(); ++j) {
      const auto next = advance(state, j);
      if (!next) continue;
      const Factor& f = order_[j];
      visit_big(j + 1, mul(current, *f.poly), mask | (Mask{1} << f.rank), *next, best);
    }
  }

  std::vector<std::uint64_t> indices_;
  std::vector<Factor> order_;
  bool symmetric_ = false;
  std::size_t pad_ = 0;
  std::size_t max_length_ = 1;
};

std::vector<std::uint64_t> mask_to_indices(std::span<const std::uint64_t> indices, Mask mask) {
  std::vector<std::uint64_t> out;
  for (std::size_t i = 0; i < indices.size(); ++i) {
    if ((mask >> i) & 1U) out.push_back(indices[i]);
  }
  return out;
}

unsigned resolve_workers(unsigned requested) {
  if (requested != 0) return requested;
  return std::max(1U, std::thread::hardware_concurrency());
}

void fill_pq_shape(HeightRecord& rec, const FactoredIndex& fi) {
  const auto& fs = fi.factors();
  if (fs.size() != 2) return;
  if (fs[0].exponent == 1) {
    rec.p = fs[0].prime;
    rec.q = fs[1].prime;
    rec.b = fs[1].exponent;
  } else if (fs[1].exponent == 1) {
    rec.p = fs[1].prime;
    rec.q = fs[0].prime;
    rec.b = fs[0].exponent;
  }
}

}  // namespace

void validate(const DivisorSelection& sel) {
  if (sel.base_n == 0) throw InvalidInput("divisor selection: base_n must be positive");
  for (std::size_t i = 0; i < sel.selected.size(); ++i) {
    const std::uint64_t d = sel.selected[i];
    if (d == 0 || sel.base_n % d != 0) {
      throw InvalidInput("divisor selection: " + std::to_string(d) + " does not divide " + std::to_string(sel.base_n));
    }
    if (i > 0 && d <= sel.selected[i - 1]) throw InvalidInput("divisor selection: divisors must ascend");
  }
}

IntPoly divisor_poly(const DivisorSelection& sel, CycloCache& cache) {
  validate(sel);
  IntPoly acc = IntPoly::constant(1);
  for (std::uint64_t d : sel.selected) acc = mul(acc, cache.phi(d));
  return acc;
}

std::string_view to_string(Method m) {
  switch (m) {
    case Method::brute:
      return "brute";
    case Method::formula:
      return "formula";
    case Method::reduced:
      return "reduced";
  }
  return "unknown";
}

Method parse_method(std::string_view s) {
  if (s == "brute") return Method::brute;
  if (s == "formula") return Method::formula;
  if (s == "reduced") return Method::reduced;
  throw InvalidInput("unknown method: " + std::string(s));
}

SubsetMaximum max_subset_height(std::span<const std::uint64_t> indices, const EnumerateOptions& opts,
                                CycloCache& cache) {
  SubsetSearch search(indices, cache);
  if (opts.work_budget > 0 && search.work_estimate() > opts.work_budget) {
    throw BudgetExceeded("subset enumeration work estimate exceeds budget");
  }
  const Best best = search.run(resolve_workers(opts.workers));
  return {best.height, mask_to_indices(indices, best.mask)};
}

double subset_work_estimate(std::span<const std::uint64_t> indices, CycloCache& cache) {
  return SubsetSearch(indices, cache).work_estimate();
}

HeightRecord enumerate_b(std::uint64_t n, const EnumerateOptions& opts, CycloCache& cache) {
  if (n == 0) throw InvalidInput("enumerate_b: n must be positive");
  if (n > opts.degree_cap) throw DegreeCapExceeded(n, opts.degree_cap);
  const auto start = std::chrono::steady_clock::now();
  const FactoredIndex fi(n);
  const auto divisors = fi.divisors();
  SubsetMaximum best = max_subset_height(divisors, opts, cache);

  HeightRecord rec;
  rec.n = n;
  fill_pq_shape(rec, fi);
  rec.b_value = std::move(best.height);
  rec.witness = {n, std::move(best.selected)};
  rec.method = Method::brute;
  rec.elapsed = std::chrono::steady_clock::now() - start;
  return rec;
}

double enumerate_work_estimate(std::uint64_t n, CycloCache& cache) {
  const auto divisors = FactoredIndex(n).divisors();
  return subset_work_estimate(divisors, cache);
}

SubsetMaximum reduced_h_b(std::uint64_t p, std::uint64_t q, unsigned b, const EnumerateOptions& opts,
                          CycloCache& cache) {
  if (p == q || !is_prime(p) || !is_prime(q)) throw InvalidInput("reduced_h_b: need distinct primes");
  if (b < 2) throw InvalidInput("reduced_h_b: need b >= 2");
  std::vector<std::uint64_t> indices;
  std::uint64_t qi = 1;
  for (unsigned i = 1; i < b; ++i) {
    qi *= q;
    indices.push_back(qi);
    indices.push_back(p * qi);
  }
  const std::uint64_t base = p * qi;
  if (base > opts.degree_cap) throw DegreeCapExceeded(base, opts.degree_cap);
  std::sort(indices.begin(), indices.end());
  return max_subset_height(indices, opts, cache);
}

}  // namespace cyclo
