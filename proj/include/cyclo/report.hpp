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

#include <string>
#include <string_view>

#include "json.hpp"

#include "cyclo/divisors.hpp"

namespace cyclo {

inline constexpr std::string_view kCsvHeader = "n,p,q,b,b_value,method,regime,witness,elapsed_ms";

/// Divisors joined by '+', e.g. "3+5+27+45"; empty for an empty selection.
std::string format_witness(const DivisorSelection& w);
/// Inverse of format_witness; base_n is set to `n`.
DivisorSelection parse_witness(std::string_view s, std::uint64_t n);

/// Whole milliseconds, truncated.
long long elapsed_ms(const HeightRecord& r);

/// One CSV row (no newline) in kCsvHeader column order. Fields for p, q, b
/// are empty when unset.
std::string to_csv_row(const HeightRecord& r);
/// Throws InvalidInput on a malformed row.
HeightRecord parse_csv_row(std::string_view row);

/// One JSON object with keys in kCsvHeader order. Integers are emitted as
/// JSON integers; b_value falls back to a decimal string beyond 64 bits.
nlohmann::ordered_json to_json(const HeightRecord& r);
HeightRecord from_json(const nlohmann::ordered_json& j);

}  // namespace cyclo
