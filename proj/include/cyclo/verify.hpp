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

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cyclo/divisors.hpp"
#include "cyclo/formulas.hpp"

namespace cyclo {

enum class CellStatus { agree, disagree, unsupported, skipped_budget };

std::string_view to_string(CellStatus s);

/// One (p, q, b) cell of the engine cross-check.
struct GridCell {
  std::uint64_t p = 0, q = 0;
  unsigned b = 0;
  std::uint64_t n = 0;
  CellStatus status = CellStatus::unsupported;
  /// Brute-force result; absent when skipped.
  std::optional<HeightRecord> brute;
  /// Every closed form that applies; the first is the dispatched one.
  std::vector<BranchValue> branches;
  /// For disagreements: the branch that differs and its value.
  std::string failed_branch;
};

struct GridOptions {
  std::uint64_t p_max = 7;
  std::uint64_t q_max = 7;
  unsigned b_max = 3;
  std::uint64_t degree_cap = kDefaultDegreeCap;
  /// Per-cell budget in work-estimate units; 0 disables skipping.
  double work_budget = 0;
  // Cells with no closed form are enumerated only below this work estimate
  // (0 = always); above it they stay unsupported with no brute value.
  double unsupported_budget = 0;
  unsigned workers = 0;
};

struct GridReport {
  std::vector<GridCell> cells;
  std::size_t count(CellStatus s) const;
  bool ok() const { return count(CellStatus::disagree) == 0; }
};

/// For every prime pair p != q with p <= p_max, q <= q_max and every
/// b <= b_max with p q^b <= degree_cap, computes enumerate_b and compares
/// it with every applicable closed form. Cells are ordered by (p, q, b).
GridReport cross_check_grid(const GridOptions& opts, CycloCache& cache = default_cache());

/// Line-oriented report, one line per cell plus a summary line. No timing.
std::string to_text(const GridReport& rep);

struct ClassSample {
  std::uint64_t q = 0;
  std::optional<Integer> value;
  Method method = Method::formula;
  std::string note;  // "skipped: cap" when neither path applies
};

enum class ClassVerdict { constant, varies, insufficient };

std::string_view to_string(ClassVerdict v);

/// Primes q > p sharing the residue class {r, p - r} mod p.
struct ResidueClass {
  std::uint64_t residue = 0;  // the smaller of q mod p and p - q mod p
  std::vector<ClassSample> samples;
  ClassVerdict verdict = ClassVerdict::insufficient;
  std::optional<Integer> value;  // set when constant
};

struct ConjectureReport {
  std::uint64_t p = 0;
  unsigned b = 0;
  std::vector<ResidueClass> classes;
  /// No class varies. Insufficient classes do not count against this.
  bool no_variation() const;
};

/// Groups q_list (all > p) by residue class mod p and computes B(pq^b) for
/// each entry: by closed form when one applies, else by enumeration within
/// the cap, else marks the sample skipped. Classes with fewer than two
/// computed samples are "insufficient".
ConjectureReport conjecture_explorer(std::uint64_t p, unsigned b, const std::vector<std::uint64_t>& q_list,
                                     const EnumerateOptions& opts = {}, CycloCache& cache = default_cache());

/// The smallest primes q > p such that every residue class {r, p-r} mod p,
/// 1 <= r <= (p-1)/2, holds at least `per_class` of them. Ascending.
std::vector<std::uint64_t> primes_per_residue_class(std::uint64_t p, std::size_t per_class);

/// Text report. Every line is labeled as an observation.
std::string to_text(const ConjectureReport& rep);

}  // namespace cyclo
