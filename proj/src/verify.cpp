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

#include "cyclo/verify.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "cyclo/errors.hpp"
#include "cyclo/report.hpp"

namespace cyclo {

namespace {

std::uint64_t residue_key(std::uint64_t p, std::uint64_t q) {
  const std::uint64_t r = q % p;
  return std::min(r, p - r);
}

}  // namespace

std::string_view to_string(CellStatus s) {
  switch (s) {
    case CellStatus::agree:
      return "agree";
    case CellStatus::disagree:
      return "DISAGREE";
    case CellStatus::unsupported:
      return "unsupported";
    case CellStatus::skipped_budget:
      return "skipped: budget";
  }
  return "?";
}

std::string_view to_string(ClassVerdict v) {
  switch (v) {
    case ClassVerdict::constant:
      return "constant";
    case ClassVerdict::varies:
      return "varies";
    case ClassVerdict::insufficient:
      return "insufficient";
  }
  return "?";
}

std::size_t GridReport::count(CellStatus s) const {
  return static_cast<std::size_t>(std::count_if(cells.begin(), cells.end(), [s](const auto& c) { return c.status == s; }));
}

GridReport cross_check_grid(const GridOptions& opts, CycloCache& cache) {
  if (opts.p_max < 2 || opts.q_max < 2 || opts.b_max < 1) throw InvalidInput("cross_check_grid: bounds must be positive");
  GridReport rep;
  EnumerateOptions eo;
  eo.degree_cap = opts.degree_cap;
  eo.workers = opts.workers;
  for (auto p : primes_in(2, opts.p_max)) {
    for (auto q : primes_in(2, opts.q_max)) {
      if (p == q) continue;
      for (unsigned b = 1; b <= opts.b_max; ++b) {
        const auto n = pq_power(p, q, b);
        if (!n || *n > opts.degree_cap) break;
        GridCell cell;
        cell.p = p;
        cell.q = q;
        cell.b = b;
        cell.n = *n;
        cell.branches = formula_branches(p, q, b, cache);
        const double work = enumerate_work_estimate(*n, cache);
        if (cell.branches.empty() && opts.unsupported_budget > 0 && work > opts.unsupported_budget) {
          rep.cells.push_back(std::move(cell));
          continue;
        }
        if (opts.work_budget > 0 && work > opts.work_budget) {
          cell.status = CellStatus::skipped_budget;
          rep.cells.push_back(std::move(cell));
          continue;
        }
        HeightRecord rec = enumerate_b(*n, eo, cache);
        rec.p = p;
        rec.q = q;
        rec.b = b;
        cell.brute = std::move(rec);
        cell.status = cell.branches.empty() ? CellStatus::unsupported : CellStatus::agree;
        for (const auto& br : cell.branches) {
          if (br.value != cell.brute->b_value) {
            cell.status = CellStatus::disagree;
            cell.failed_branch = br.branch + "=" + br.value.get_str();
            break;
          }
        }
        rep.cells.push_back(std::move(cell));
      }
    }
  }
  return rep;
}

std::string to_text(const GridReport& rep) {
  std::ostringstream out;
  for (const auto& c : rep.cells) {
    out << "p=" << c.p << " q=" << c.q << " b=" << c.b << " n=" << c.n << " " << to_string(c.status);
    if (c.brute) out << " brute=" << c.brute->b_value.get_str() << " witness=" << format_witness(c.brute->witness);
    if (!c.branches.empty()) {
      out << " formula=" << c.branches.front().value.get_str() << " regime=" << c.branches.front().branch;
    }
    if (c.status == CellStatus::disagree) {
      out << " inputs=(" << c.p << "," << c.q << "," << c.b << ") source=" << c.failed_branch
          << " got=" << c.brute->b_value.get_str();
    }
    out << "\n";
  }
  out << "summary: cells=" << rep.cells.size() << " agree=" << rep.count(CellStatus::agree)
      << " disagree=" << rep.count(CellStatus::disagree) << " unsupported=" << rep.count(CellStatus::unsupported)
      << " skipped=" << rep.count(CellStatus::skipped_budget) << "\n";
  return out.str();
}

bool ConjectureReport::no_variation() const {
  return std::none_of(classes.begin(), classes.end(), [](const auto& c) { return c.verdict == ClassVerdict::varies; });
}

ConjectureReport conjecture_explorer(std::uint64_t p, unsigned b, const std::vector<std::uint64_t>& q_list,
                                     const EnumerateOptions& opts, CycloCache& cache) {
  if (!is_prime(p) || b == 0) throw InvalidInput("conjecture_explorer: need prime p and b >= 1");
  std::map<std::uint64_t, ResidueClass> classes;
  std::vector<std::uint64_t> qs(q_list);
  std::sort(qs.begin(), qs.end());
  qs.erase(std::unique(qs.begin(), qs.end()), qs.end());
  for (auto q : qs) {
    if (q <= p || !is_prime(q)) throw InvalidInput("conjecture_explorer: every q must be a prime > p");
    ClassSample s;
    s.q = q;
    if (auto rec = b_formula(p, q, b, cache)) {
      s.value = rec->b_value;
      s.method = Method::formula;
    } else {
      const auto n = pq_power(p, q, b);
      if (n && *n <= opts.degree_cap) {
        s.value = enumerate_b(*n, opts, cache).b_value;
        s.method = Method::brute;
      } else {
        s.note = "skipped: cap";
      }
    }
    auto& cls = classes[residue_key(p, q)];
    cls.residue = residue_key(p, q);
    cls.samples.push_back(std::move(s));
  }
  ConjectureReport rep{p, b, {}};
  for (auto& [key, cls] : classes) {
    std::vector<const Integer*> values;
    for (const auto& s : cls.samples) {
      if (s.value) values.push_back(&*s.value);
    }
    if (values.size() < 2) {
      cls.verdict = ClassVerdict::insufficient;
    } else if (std::all_of(values.begin(), values.end(), [&](const Integer* v) { return *v == *values.front(); })) {
      cls.verdict = ClassVerdict::constant;
      cls.value = *values.front();
    } else {
      cls.verdict = ClassVerdict::varies;
    }
    rep.classes.push_back(std::move(cls));
  }
  return rep;
}

std::vector<std::uint64_t> primes_per_residue_class(std::uint64_t p, std::size_t per_class) {
  if (!is_prime(p)) throw InvalidInput("primes_per_residue_class: p must be prime");
  const std::size_t n_classes = p == 2 ? 1 : (p - 1) / 2;
  std::map<std::uint64_t, std::size_t> seen;
  std::vector<std::uint64_t> out;
  std::size_t full = 0;
  for (std::uint64_t q = p + 1; full < n_classes; ++q) {
    if (!is_prime(q)) continue;
    auto& k = seen[residue_key(p, q)];
    if (k < per_class) {
      out.push_back(q);
      if (++k == per_class) ++full;
    }
  }
  return out;
}

std::string to_text(const ConjectureReport& rep) {
  std::ostringstream out;
  for (const auto& cls : rep.classes) {
    out << "observation: p=" << rep.p << " b=" << rep.b << " class=+-" << cls.residue << " samples=";
    bool first = true;
    for (const auto& s : cls.samples) {
      out << (first ? "" : ",") << s.q << ":" << (s.value ? s.value->get_str() : s.note);
      first = false;
    }
    out << " verdict=" << to_string(cls.verdict);
    if (cls.value) out << " value=" << cls.value->get_str();
    out << "\n";
  }
  return out.str();
}

}  // namespace cyclo
