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

#include <filesystem>
#include <map>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>

#include "cyclo/divisors.hpp"

namespace cyclo {

inline constexpr std::string_view kCacheFormat = "cycloheight-cache v1";

/// Two records for the same n carry different B values.
class CacheConflict : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct CacheRecord {
  std::uint64_t n = 0;
  Integer b_value;
  Method method = Method::brute;
  std::string regime;
  std::vector<std::uint64_t> witness;
  std::string version;
};

/// Append-only result store. The first line is a header naming the format
/// version, tool version and creation time; every further line is one JSON
/// record. Loading a file with two different B values for the same n, or
/// storing such a value, throws CacheConflict with both records quoted.
class ResultCache {
 public:
  /// Creates the file with a header when it does not exist.
  explicit ResultCache(std::filesystem::path path);

  std::optional<CacheRecord> lookup(std::uint64_t n) const;

  /// Appends unless an identical value is already stored.
  void store(const HeightRecord& rec);

  std::size_t size() const;
  const std::filesystem::path& path() const { return path_; }

 private:
  void admit(CacheRecord rec, const std::string& line);

  std::filesystem::path path_;
  mutable std::mutex mu_;
  std::map<std::uint64_t, std::pair<CacheRecord, std::string>> records_;
};

std::string cache_line(const CacheRecord& rec);
CacheRecord parse_cache_line(const std::string& line);

/// Inverse of the stored fields; elapsed is zero, p/q/b are unset.
HeightRecord to_height_record(const CacheRecord& rec);

}  // namespace cyclo
