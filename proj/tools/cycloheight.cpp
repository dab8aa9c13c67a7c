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

// cycloheight: cyclotomic polynomials and maximal divisor heights of x^n - 1.

#include <cstdlib>
#include <iostream>
#include <memory>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "cyclo/cache.hpp"
#include "cyclo/cyclotomic.hpp"
#include "cyclo/divisors.hpp"
#include "cyclo/errors.hpp"
#include "cyclo/formulas.hpp"
#include "cyclo/report.hpp"
#include "cyclo/verify.hpp"
#include "cyclo/version.hpp"

namespace {

using namespace cyclo;

constexpr int kExitVerifyFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitCap = 3;
constexpr int kExitCacheConflict = 4;

// Brute-force cross-checks in --method auto are skipped above this estimate.
constexpr double kCheapWork = 2e8;

struct Global {
  bool no_cache = false;
  std::string cache_path;
  bool deterministic = false;
  unsigned workers = 0;
  std::uint64_t degree_cap = kDefaultDegreeCap;
  std::string format = "text";
  std::unique_ptr<ResultCache> cache;

  EnumerateOptions enumerate() const {
    EnumerateOptions o;
    o.degree_cap = degree_cap;
    o.workers = workers;
    return o;
  }

  void open_cache() {
    if (no_cache) return;
    if (cache_path.empty()) {
      const char* xdg = std::getenv("XDG_CACHE_HOME");
      const char* home = std::getenv("HOME");
      if (xdg && *xdg) {
        cache_path = std::string(xdg) + "/cycloheight/results.log";
      } else if (home && *home) {
        cache_path = std::string(home) + "/.cache/cycloheight/results.log";
      } else {
        return;
      }
    }
    cache = std::make_unique<ResultCache>(cache_path);
  }

  void remember(const HeightRecord& r) {
    if (cache) cache->store(r);
  }

  void finish(HeightRecord& r) const {
    if (deterministic) r.elapsed = std::chrono::nanoseconds{0};
  }
};

std::uint64_t env_degree_cap() {
  const char* v = std::getenv("CYCLO_DEGREE_CAP");
  if (!v || !*v) return kDefaultDegreeCap;
  try {
    std::size_t used = 0;
    const auto cap = std::stoull(v, &used);
    if (used != std::string(v).size() || cap == 0) throw std::invalid_argument(v);
    return cap;
  } catch (const std::exception&) {
    throw InvalidInput(std::string("CYCLO_DEGREE_CAP must be a positive integer, got '") + v + "'");
  }
}

// n = p q^b with p != q prime; for n = pq the smaller prime is p.
std::optional<std::tuple<std::uint64_t, std::uint64_t, unsigned>> pq_shape(std::uint64_t n) {
  if (n < 2) return std::nullopt;
  const FactoredIndex fi(n);
  const auto& f = fi.factors();
  if (f.size() != 2) return std::nullopt;
  const auto& a = f[0];
  const auto& c = f[1];
  if (a.exponent == 1) return std::make_tuple(a.prime, c.prime, c.exponent);
  if (c.exponent == 1) return std::make_tuple(c.prime, a.prime, a.exponent);
  return std::nullopt;
}

void print_records(const std::vector<HeightRecord>& recs, const std::string& format) {
  if (format == "csv") {
    std::cout << kCsvHeader << "\n";
    for (const auto& r : recs) std::cout << to_csv_row(r) << "\n";
  } else if (format == "json") {
    for (const auto& r : recs) std::cout << to_json(r).dump() << "\n";
  } else {
    for (const auto& r : recs) {
      std::cout << "B(" << r.n << ") = " << r.b_value.get_str() << "\n";
      if (r.b) std::cout << "  shape:   " << r.p << "*" << r.q << "^" << r.b << "\n";
      std::cout << "  method:  " << to_string(r.method) << "\n";
      if (!r.regime.empty()) std::cout << "  regime:  " << r.regime << "\n";
      if (!r.witness.selected.empty()) std::cout << "  witness: " << format_witness(r.witness) << "\n";
      std::cout << "  elapsed: " << elapsed_ms(r) << " ms\n";
    }
  }
}

// Returns the record to print; throws on brute/formula disagreement.
HeightRecord compute_b(Global& g, std::uint64_t n, const std::string& method) {
  const auto shape = pq_shape(n);
  if (method == "formula") {
    if (!shape) throw InvalidInput("no closed form: " + std::to_string(n) + " is not of the form p*q^b");
    auto [p, q, b] = *shape;
    auto rec = b_formula(p, q, b);
    if (!rec) throw InvalidInput("no closed form is known for p=" + std::to_string(p) + " q=" + std::to_string(q) +
                                 " b=" + std::to_string(b));
    return *rec;
  }
  if (method == "brute") {
    auto rec = enumerate_b(n, g.enumerate());
    if (shape) std::tie(rec.p, rec.q, rec.b) = *shape;
    return rec;
  }
  if (g.cache) {
    if (auto hit = g.cache->lookup(n)) {
      auto rec = to_height_record(*hit);
      if (shape) std::tie(rec.p, rec.q, rec.b) = *shape;
      return rec;
    }
  }
  std::optional<HeightRecord> formula;
  if (shape) {
    auto [p, q, b] = *shape;
    formula = b_formula(p, q, b);
  }
  const bool brute_ok = n <= g.degree_cap && (!formula || enumerate_work_estimate(n) <= kCheapWork);
  if (!brute_ok) {
    if (formula) return *formula;
    throw DegreeCapExceeded(n, g.degree_cap);
  }
  auto rec = enumerate_b(n, g.enumerate());
  if (shape) std::tie(rec.p, rec.q, rec.b) = *shape;
  if (formula) {
    if (formula->b_value != rec.b_value) {
      throw PreconditionViolation("brute force gives " + rec.b_value.get_str() + " but the " + formula->regime +
                                  " closed form gives " + formula->b_value.get_str() + " for n=" + std::to_string(n));
    }
    rec.regime = formula->regime;
  }
  return rec;
}

std::pair<std::uint64_t, std::uint64_t> parse_range(const std::string& s) {
  const auto dots = s.find("..");
  if (dots == std::string::npos) throw InvalidInput("range must look like LO..HI, got '" + s + "'");
  try {
    const auto lo = std::stoull(s.substr(0, dots));
    const auto hi = std::stoull(s.substr(dots + 2));
    if (lo > hi) throw InvalidInput("empty range '" + s + "'");
    return {lo, hi};
  } catch (const std::logic_error&) {
    throw InvalidInput("range must look like LO..HI, got '" + s + "'");
  }
}

const CLI::Validator kPositive(
    [](std::string& s) -> std::string {
      if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos ||
          s.find_first_not_of('0') == std::string::npos) {
        return "expected a positive integer, got '" + s + "'";
      }
      return {};
    },
    "POSITIVE");

int run(int argc, char** argv) {
  CLI::App app{"Cyclotomic polynomials and maximal divisor heights B(n) of x^n - 1", "cycloheight"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);
  app.fallthrough();

  Global g;
  g.degree_cap = env_degree_cap();
  app.add_flag("--no-cache", g.no_cache, "Do not read or append the result cache");
  app.add_option("--cache", g.cache_path, "Cache file (default $XDG_CACHE_HOME/cycloheight/results.log)");
  app.add_flag("--deterministic", g.deterministic, "Report elapsed_ms as 0");
  app.add_option("--workers", g.workers, "Enumeration threads (0 = all cores)");
  app.add_option("--degree-cap", g.degree_cap, "Largest n enumerated (default $CYCLO_DEGREE_CAP or 200000)")
      ->check(kPositive);

  std::uint64_t n = 0;
  auto* phi = app.add_subcommand("phi", "Print the n-th cyclotomic polynomial");
  phi->add_option("n", n)->required()->check(kPositive);

  auto* a = app.add_subcommand("a", "Print A(n), the height of the n-th cyclotomic polynomial");
  a->add_option("n", n)->required()->check(kPositive);

  std::string method = "auto";
  const std::vector<std::string> formats = {"text", "csv", "json"};
  auto* b = app.add_subcommand("b", "Print B(n), the maximal height of a divisor of x^n - 1");
  b->add_option("n", n)->required()->check(kPositive);
  b->add_option("--method", method, "brute, formula or auto")->check(CLI::IsMember({"brute", "formula", "auto"}));
  b->add_option("--format", g.format)->check(CLI::IsMember(formats));

  std::uint64_t tp = 0;
  unsigned tb = 0;
  std::string q_range;
  auto* table = app.add_subcommand("table", "Tabulate B(pq^b) over a range of primes q");
  table->add_option("--p", tp)->required()->check(kPositive);
  table->add_option("--b", tb)->required()->check(kPositive);
  table->add_option("--q", q_range, "Prime range LO..HI")->required();
  table->add_option("--method", method)->check(CLI::IsMember({"brute", "formula", "auto"}));
  table->add_option("--format", g.format)->check(CLI::IsMember(formats));

  GridOptions grid;
  auto* verify = app.add_subcommand("verify", "Cross-check closed forms against brute force on a grid");
  verify->add_option("--p-max", grid.p_max)->check(kPositive);
  verify->add_option("--q-max", grid.q_max)->check(kPositive);
  verify->add_option("--b-max", grid.b_max)->check(kPositive);
  verify->add_option("--budget", grid.work_budget, "Per-cell work budget; larger cells are skipped (0 = none)");
  verify->add_option("--unsupported-budget", grid.unsupported_budget,
                     "Work budget for cells with no closed form; larger ones are not enumerated (0 = none)");
  verify->add_option("--format", g.format)->check(CLI::IsMember(formats));

  std::uint64_t cp = 0;
  unsigned cb = 0;
  std::size_t q_count = 6;
  auto* conj = app.add_subcommand("conjecture", "Compare B(pq^b) across primes in the same class q = +-r (mod p)");
  conj->add_option("--p", cp)->required()->check(kPositive);
  conj->add_option("--b", cb)->required()->check(kPositive);
  conj->add_option("--q-count", q_count, "Primes per residue class")->check(kPositive);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  if (*phi) {
    std::cout << phi_n(n).to_string() << "\n";
    return 0;
  }
  if (*a) {
    std::cout << a_height(n).get_str() << "\n";
    return 0;
  }

  grid.degree_cap = g.degree_cap;
  grid.workers = g.workers;

  if (*b) {
    g.open_cache();
    auto rec = compute_b(g, n, method);
    g.remember(rec);
    g.finish(rec);
    print_records({rec}, g.format);
    return 0;
  }
  if (*table) {
    if (!is_prime(tp)) throw InvalidInput("--p must be prime");
    g.open_cache();
    const auto [lo, hi] = parse_range(q_range);
    std::vector<HeightRecord> recs;
    for (auto q : primes_in(lo, hi)) {
      if (q == tp) continue;
      const auto nn = pq_power(tp, q, tb);
      if (!nn) throw InvalidInput("p*q^b overflows 64 bits");
      auto rec = compute_b(g, *nn, method);
      g.remember(rec);
      g.finish(rec);
      recs.push_back(std::move(rec));
    }
    print_records(recs, g.format);
    return 0;
  }
  if (*verify) {
    const auto rep = cross_check_grid(grid);
    if (g.format == "text") {
      std::cout << to_text(rep);
    } else {
      std::vector<HeightRecord> recs;
      for (const auto& c : rep.cells) {
        if (!c.brute) continue;
        auto r = *c.brute;
        if (!c.branches.empty()) r.regime = c.branches.front().branch;
        g.finish(r);
        recs.push_back(std::move(r));
      }
      print_records(recs, g.format);
    }
    if (!rep.ok()) {
      std::cerr << "verification failed: " << rep.count(CellStatus::disagree) << " disagreeing cells\n";
      return kExitVerifyFailed;
    }
    return 0;
  }
  if (*conj) {
    if (!is_prime(cp) || cp == 2) throw InvalidInput("--p must be an odd prime");
    const auto rep = conjecture_explorer(cp, cb, primes_per_residue_class(cp, q_count), g.enumerate());
    std::cout << to_text(rep);
    return 0;
  }
  return kExitUsage;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const DegreeCapExceeded& e) {
    std::cerr << "error: " << e.what() << " (raise with --degree-cap or CYCLO_DEGREE_CAP)\n";
    return kExitCap;
  } catch (const CacheConflict& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitCacheConflict;
  } catch (const PreconditionViolation& e) {
    std::cerr << "verification failed: " << e.what() << "\n";
    return kExitVerifyFailed;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitVerifyFailed;
  }
}
