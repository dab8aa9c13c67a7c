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

#include "cyclo/report.hpp"

#include <charconv>
#include <limits>
#include <vector>

#include "cyclo/errors.hpp"

namespace cyclo {

namespace {

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const auto pos = s.find(sep, start);
    if (pos == std::string_view::npos) {
      out.push_back(s.substr(start));
      return out;
    }
    out.push_back(s.substr(start, pos - start));
    start = pos + 1;
  }
}

template <typename T>
T parse_uint(std::string_view s, const char* field) {
  T v{};
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size()) {
    throw InvalidInput(std::string("bad ") + field + ": '" + std::string(s) + "'");
  }
  return v;
}

template <typename T>
T optional_uint(std::string_view s, const char* field) {
  return s.empty() ? T{0} : parse_uint<T>(s, field);
}

Integer parse_integer(std::string_view s) {
  Integer v;
  if (s.empty() || v.set_str(std::string(s), 10) != 0) throw InvalidInput("bad b_value: '" + std::string(s) + "'");
  return v;
}

std::string blank_if_zero(std::uint64_t v) { return v == 0 ? std::string() : std::to_string(v); }

}  // namespace

std::string format_witness(const DivisorSelection& w) {
  std::string out;
  for (auto d : w.selected) {
    if (!out.empty()) out += '+';
    out += std::to_string(d);
  }
  return out;
}

DivisorSelection parse_witness(std::string_view s, std::uint64_t n) {
  DivisorSelection w{n, {}};
  if (s.empty()) return w;
  for (auto part : split(s, '+')) w.selected.push_back(parse_uint<std::uint64_t>(part, "witness"));
  validate(w);
  return w;
}

long long elapsed_ms(const HeightRecord& r) {
  return std::chrono::duration_cast<std::chrono::milliseconds>(r.elapsed).count();
}

std::string to_csv_row(const HeightRecord& r) {
  std::string row = std::to_string(r.n);
  row += ',' + blank_if_zero(r.p);
  row += ',' + blank_if_zero(r.q);
  row += ',' + blank_if_zero(r.b);
  row += ',' + r.b_value.get_str();
  row += ',' + std::string(to_string(r.method));
  row += ',' + r.regime;
  row += ',' + format_witness(r.witness);
  row += ',' + std::to_string(elapsed_ms(r));
  return row;
}

HeightRecord parse_csv_row(std::string_view row) {
  const auto f = split(row, ',');
  if (f.size() != 9) throw InvalidInput("csv row needs 9 fields, got " + std::to_string(f.size()));
  HeightRecord r;
  r.n = parse_uint<std::uint64_t>(f[0], "n");
  r.p = optional_uint<std::uint64_t>(f[1], "p");
  r.q = optional_uint<std::uint64_t>(f[2], "q");
  r.b = optional_uint<unsigned>(f[3], "b");
  r.b_value = parse_integer(f[4]);
  r.method = parse_method(f[5]);
  r.regime = std::string(f[6]);
  r.witness = parse_witness(f[7], r.n);
  r.elapsed = std::chrono::milliseconds(parse_uint<long long>(f[8], "elapsed_ms"));
  return r;
}

nlohmann::ordered_json to_json(const HeightRecord& r) {
  nlohmann::ordered_json j;
  j["n"] = r.n;
  j["p"] = r.p;
  j["q"] = r.q;
  j["b"] = r.b;
  if (r.b_value.fits_slong_p()) {
    j["b_value"] = static_cast<std::int64_t>(r.b_value.get_si());
  } else {
    j["b_value"] = r.b_value.get_str();
  }
  j["method"] = std::string(to_string(r.method));
  j["regime"] = r.regime;
  j["witness"] = r.witness.selected;
  j["elapsed_ms"] = elapsed_ms(r);
  return j;
}

HeightRecord from_json(const nlohmann::ordered_json& j) {
  try {
    HeightRecord r;
    r.n = j.at("n").get<std::uint64_t>();
    r.p = j.at("p").get<std::uint64_t>();
    r.q = j.at("q").get<std::uint64_t>();
    r.b = j.at("b").get<unsigned>();
    const auto& bv = j.at("b_value");
    r.b_value = bv.is_string() ? parse_integer(bv.get<std::string>()) : Integer(std::to_string(bv.get<std::int64_t>()));
    r.method = parse_method(j.at("method").get<std::string>());
    r.regime = j.at("regime").get<std::string>();
    r.witness = {r.n, j.at("witness").get<std::vector<std::uint64_t>>()};
    r.elapsed = std::chrono::milliseconds(j.at("elapsed_ms").get<long long>());
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(std::string("bad json record: ") + e.what());
  }
}

}  // namespace cyclo
