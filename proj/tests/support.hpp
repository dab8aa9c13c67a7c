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

#include <random>
#include <vector>

#include "cyclo/intpoly.hpp"
#include "oracle.hpp"

namespace testing {

inline oracle::Poly to_oracle(const cyclo::IntPoly& f) {
  oracle::Poly out;
  for (const auto& c : f.coeffs()) out.push_back(c.get_si());
  return out;
}

inline cyclo::IntPoly from_oracle(const oracle::Poly& f) {
  return cyclo::IntPoly(std::vector<std::int64_t>(f.begin(), f.end()));
}

inline long long as_ll(const cyclo::Integer& v) { return v.get_si(); }

// Dense random polynomial of the given degree with coefficients in [-h, h]
// and a nonzero leading coefficient.
inline oracle::Poly random_poly(std::mt19937_64& rng, std::size_t degree, long long h) {
  std::uniform_int_distribution<long long> coef(-h, h);
  oracle::Poly f(degree + 1);
  for (auto& c : f) c = coef(rng);
  while (f.back() == 0) f.back() = coef(rng);
  return f;
}

}  // namespace testing
