// Copyright 2026 The ddprep Authors
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

#include <cstddef>
#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace ddprep::cli {

/// Plain-text nested key-value configuration:
///
///   # comment
///   [model]
///   name = heisenberg_chain
///   n_sites = 8
class ConfigFile {
 public:
  struct Entry {
    std::string value;
    std::size_t line = 0;  // 0 for programmatic overrides
  };

  static ConfigFile parse(std::istream& in, const std::string& source = "<config>");
  static ConfigFile parse_string(const std::string& text, const std::string& source = "<config>");
  static ConfigFile load(const std::string& path);

  bool has(const std::string& section, const std::string& key) const;
  void set(const std::string& section, const std::string& key, const std::string& value);

  std::string get_string(const std::string& section, const std::string& key) const;
  std::string get_string(const std::string& section, const std::string& key, const std::string& fallback) const;
  std::size_t get_size(const std::string& section, const std::string& key) const;
  std::size_t get_size(const std::string& section, const std::string& key, std::size_t fallback) const;
  std::uint64_t get_u64(const std::string& section, const std::string& key, std::uint64_t fallback) const;
  double get_double(const std::string& section, const std::string& key, double fallback) const;
  bool get_bool(const std::string& section, const std::string& key, bool fallback) const;
  std::vector<std::size_t> get_size_list(const std::string& section, const std::string& key,
                                         const std::vector<std::size_t>& fallback) const;
  std::optional<double> get_optional_double(const std::string& section, const std::string& key) const;
  std::optional<std::size_t> get_optional_size(const std::string& section, const std::string& key) const;

  /// Throws ConfigError naming the first key of `section` not in `allowed`.
  void require_known(const std::string& section, const std::set<std::string>& allowed) const;
  /// Throws ConfigError naming the first section not in `allowed`.
  void require_sections(const std::set<std::string>& allowed) const;

  const std::string& source() const { return source_; }
  const std::string& text() const { return text_; }
  /// Canonical text: sections and keys sorted, overrides applied.
  std::string canonical_text() const;
  nlohmann::ordered_json to_json() const;

 private:
  const Entry& entry(const std::string& section, const std::string& key) const;
  [[noreturn]] void fail(const std::string& section, const std::string& key, const std::string& what) const;

  std::string source_;
  std::string text_;
  std::map<std::string, std::map<std::string, Entry>> sections_;
};

}  // namespace ddprep::cli
