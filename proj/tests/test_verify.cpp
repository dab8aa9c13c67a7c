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
#include "cyclo/verify.hpp"
#include "support.hpp"

using namespace cyclo;

namespace {

const GridCell* find_cell(const GridReport& rep, std::uint64_t p, std::uint64_t q, unsigned b) {
  for (const auto& c : rep.cells) {
    if (c.p == p && c.q == q && c.b == b) return &c;
  }
  return nullptr;
}

const ResidueClass* find_class(const ConjectureReport& rep, std::uint64_t residue) {
  for (const auto& c : rep.classes) {
    if (c.residue == residue) return &c;
  }
  return nullptr;
}

}  // namespace

TEST_SUITE("verify") {
  TEST_CASE("small grid has no disagreements") {
    GridOptions opts;
    opts.p_max = 7;
    opts.q_max = 7;
    opts.b_max = 5;
    opts.degree_cap = 20000;
    const auto rep = cross_check_grid(opts);
    CHECK(rep.ok());
    CHECK(rep.count(CellStatus::disagree) == 0);
    CHECK(rep.count(CellStatus::agree) > 0);

    struct Want {
      std::uint64_t p, q;
      unsigned b;
      long value;
    };
    for (auto w : {Want{3, 5, 3, 6}, Want{5, 3, 3, 8}, Want{7, 3, 3, 7}, Want{5, 7, 4, 20}, Want{3, 7, 3, 6}}) {
      CAPTURE(w.p);
      CAPTURE(w.q);
      CAPTURE(w.b);
      const auto* cell = find_cell(rep, w.p, w.q, w.b);
      REQUIRE(cell != nullptr);
      CHECK(cell->status == CellStatus::agree);
      REQUIRE(cell->brute.has_value());
      CHECK(cell->brute->b_value == w.value);
    }
    for (const auto& c : rep.cells) {
      if (c.p == 2 && c.brute) CHECK(c.brute->b_value == 2);
      if (c.status == CellStatus::unsupported) CHECK(c.branches.empty());
    }
    // cells are ordered by p, then q, then b
    for (std::size_t i = 1; i < rep.cells.size(); ++i) {
      const auto& a = rep.cells[i - 1];
      const auto& b = rep.cells[i];
      CHECK(std::tie(a.p, a.q, a.b) < std::tie(b.p, b.q, b.b));
    }
  }

  TEST_CASE("grid text output") {
    GridOptions opts;
    opts.p_max = 3;
    opts.q_max = 5;
    opts.b_max = 2;
    const auto text = to_text(cross_check_grid(opts));
    CHECK(text.find("agree") != std::string::npos);
    CHECK(text.find("DISAGREE") == std::string::npos);
    CHECK(to_string(CellStatus::skipped_budget) == "skipped: budget");
  }

  TEST_CASE("grid work budget skips cells") {
    GridOptions opts;
    opts.p_max = 5;
    opts.q_max = 5;
    opts.b_max = 3;
    opts.work_budget = 1;
    const auto rep = cross_check_grid(opts);
    CHECK(rep.count(CellStatus::skipped_budget) > 0);
    CHECK(rep.ok());
    GridOptions bad;
    bad.b_max = 0;
    CHECK_THROWS_AS(cross_check_grid(bad), InvalidInput);
  }

  TEST_CASE("cells without a closed form can skip brute force") {
    GridOptions opts;
    opts.p_max = 7;
    opts.q_max = 5;
    opts.b_max = 4;
    opts.unsupported_budget = 1;
    const auto rep = cross_check_grid(opts);
    const auto* cell = find_cell(rep, 7, 5, 4);
    REQUIRE(cell != nullptr);
    CHECK(cell->status == CellStatus::unsupported);
    CHECK_FALSE(cell->brute.has_value());
    CHECK(find_cell(rep, 7, 5, 3)->brute.has_value());
    CHECK(rep.ok());
  }

  TEST_CASE("residue classes per prime") {
    const auto qs = primes_per_residue_class(5, 3);
    std::size_t ones = 0, twos = 0;
    for (auto q : qs) {
      CHECK(q > 5);
      const auto r = std::min(q % 5, 5 - q % 5);
      (r == 1 ? ones : twos)++;
    }
    CHECK(ones == 3);
    CHECK(twos == 3);
    CHECK_THROWS_AS(primes_per_residue_class(6, 2), InvalidInput);
  }

  TEST_CASE("explorer: p = 5, b = 3") {
    const auto rep = conjecture_explorer(5, 3, primes_per_residue_class(5, 4));
    CHECK(rep.no_variation());
    REQUIRE(find_class(rep, 1) != nullptr);
    REQUIRE(find_class(rep, 2) != nullptr);
    CHECK(find_class(rep, 1)->value == Integer(20));
    CHECK(find_class(rep, 2)->value == Integer(15));
    CHECK(to_text(rep).rfind("observation:", 0) == 0);
  }

  TEST_CASE("explorer: p = 7, b = 4 and p = 3, b = 6") {
    const auto seven = conjecture_explorer(7, 4, primes_per_residue_class(7, 3));
    CHECK(seven.no_variation());
    CHECK(find_class(seven, 1)->value == Integer(42));
    CHECK(find_class(seven, 2)->value == Integer(35));
    CHECK(find_class(seven, 3)->value == Integer(35));
    const auto three = conjecture_explorer(3, 6, primes_per_residue_class(3, 3));
    CHECK(three.no_variation());
    CHECK(find_class(three, 1)->value == Integer(12));
  }

  TEST_CASE("explorer: classes without two values are insufficient") {
    // b = 6 with p = 5: only q = +-1 has a formula, the rest is beyond the cap.
    EnumerateOptions opts;
    opts.degree_cap = 1000;
    const auto rep = conjecture_explorer(5, 6, {7, 11, 13}, opts);
    CHECK(rep.classes.size() == 2);
    for (const auto& c : rep.classes) {
      CHECK(c.verdict == ClassVerdict::insufficient);
      CHECK_FALSE(c.value.has_value());
      for (const auto& s : c.samples) {
        if (s.q == 11) CHECK(s.value == Integer(80));
        else CHECK(s.note == "skipped: cap");
      }
    }
    CHECK(rep.no_variation());
    CHECK_THROWS_AS(conjecture_explorer(5, 3, {3}), InvalidInput);
  }

  TEST_CASE("reports are deterministic") {
    const auto qs = primes_per_residue_class(5, 3);
    CHECK(to_text(conjecture_explorer(5, 4, qs)) == to_text(conjecture_explorer(5, 4, qs)));
    GridOptions opts;
    opts.p_max = 5;
    opts.q_max = 5;
    opts.workers = 1;
    const auto a = to_text(cross_check_grid(opts));
    opts.workers = 3;
    CHECK(a == to_text(cross_check_grid(opts)));
  }
}
