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

#include "cyclo/cache.hpp"

#include <chrono>
#include <fstream>

#include "json.hpp"

#include "cyclo/errors.hpp"
#include "cyclo/version.hpp"

namespace cyclo {

namespace {

std::string utc_now() {
  const auto now = std::chrono::floor<std::chrono::seconds>(std::chrono::system_clock::now());
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace

std::string cache_line(const CacheRecord& rec) {
  nlohmann::ordered_json j;
  j["n"] = rec.n;
  j["b_value"] = rec.b_value.get_str();
  j["method"] = std::string(to_string(rec.method));
  j["regime"] = rec.regime;
  j["witness"] = rec.witness;
  j["version"] = rec.version;
  return j.dump();
}

CacheRecord parse_cache_line(const std::string& line) {
  try {
    const auto j = nlohmann::ordered_json::parse(line);
    CacheRecord rec;
    rec.n = j.at("n").get<std::uint64_t>();
    if (rec.b_value.set_str(j.at("b_value").get<std::string>(), 10) != 0) throw InvalidInput("bad b_value");
    rec.method = parse_method(j.at("method").get<std::string>());
    rec.regime = j.at("regime").get<std::string>();
    rec.witness = j.at("witness").get<std::vector<std::uint64_t>>();
    rec.version = j.at("version").get<std::string>();
    return rec;
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(std::string("bad cache record: ") + e.what());
  }
}

HeightRecord to_height_record(const CacheRecord& rec) {
  HeightRecord r;
  r.n = rec.n;
  r.b_value = rec.b_value;
  r.method = rec.method;
  r.regime = rec.regime;
  r.witness = {rec.n, rec.witness};
  return r;
}

ResultCache::ResultCache(std::filesystem::path path) : path_(std::move(path)) {
  std::ifstream in(path_);
  if (!in) {
    if (path_.has_parent_path()) std::filesystem::create_directories(path_.parent_path());
    std::ofstream out(path_);
    if (!out) throw std::runtime_error("cannot create cache file " + path_.string());
    out << "# " << kCacheFormat << " tool=" << kVersion << " created=" << utc_now() << "\n";
    return;
  }
  std::string line;
  if (!std::getline(in, line) || line.rfind("# " + std::string(kCacheFormat), 0) != 0) {
    throw InvalidInput("cache file " + path_.string() + " lacks a '" + std::string(kCacheFormat) + "' header");
  }
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    admit(parse_cache_line(line), line);
  }
}

void ResultCache::admit(CacheRecord rec, const std::string& line) {
  auto it = records_.find(rec.n);
  if (it == records_.end()) {
    const auto n = rec.n;
    records_.emplace(n, std::make_pair(std::move(rec), line));
    return;
  }
  if (it->second.first.b_value != rec.b_value) {
    throw CacheConflict("cache conflict for n=" + std::to_string(rec.n) + " in " + path_.string() +
                        "\n  stored:   " + it->second.second + "\n  incoming: " + line);
  }
}

std::optional<CacheRecord> ResultCache::lookup(std::uint64_t n) const {
  std::lock_guard lock(mu_);
  auto it = records_.find(n);
  if (it == records_.end()) return std::nullopt;
  return it->second.first;
}

void ResultCache::store(const HeightRecord& r) {
  CacheRecord rec{r.n, r.b_value, r.method, r.regime, r.witness.selected, std::string(kVersion)};
  const std::string line = cache_line(rec);
  std::lock_guard lock(mu_);
  const bool known = records_.count(r.n) != 0;
  admit(rec, line);
  if (known) return;
  std::ofstream out(path_, std::ios::app);
  if (!out) throw std::runtime_error("cannot append to cache file " + path_.string());
  out << line << "\n";
}

std::size_t ResultCache::size() const {
  std::lock_guard lock(mu_);
  return records_.size();
}

}  // namespace cyclo
