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

#include "ddprep_cli/config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "ddprep/errors.hpp"

namespace ddprep::cli {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

bool valid_name(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '.')) return false;
  return true;
}

template <class T>
bool parse_number(const std::string& s, T& out) {
  const char* first = s.data();
  const char* last = s.data() + s.size();
  if constexpr (std::is_unsigned_v<T>) {
    if (!s.empty() && s.front() == '-') return false;
  }
  const auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc() && ptr == last;
}

}  // namespace

ConfigFile ConfigFile::parse(std::istream& in, const std::string& source) {
  ConfigFile cfg;
  cfg.source_ = source;
  std::string line, section;
  std::size_t lineno = 0;
  std::ostringstream text;
  while (std::getline(in, line)) {
    ++lineno;
    text << line << '\n';
    const auto hash = line.find_first_of("#;");
    const std::string body = trim(hash == std::string::npos ? line : line.substr(0, hash));
    if (body.empty()) continue;
    auto where = [&] { return source + ":" + std::to_string(lineno) + ": "; };
    if (body.front() == '[') {
      if (body.back() != ']') throw ConfigError(where() + "unterminated section header '" + body + "'");
      section = trim(body.substr(1, body.size() - 2));
      if (!valid_name(section)) throw ConfigError(where() + "invalid section name '" + section + "'");
      cfg.sections_[section];
      continue;
    }
    const auto eq = body.find('=');
    if (eq == std::string::npos) throw ConfigError(where() + "expected 'key = value', got '" + body + "'");
    const std::string key = trim(body.substr(0, eq));
    const std::string value = trim(body.substr(eq + 1));
    if (!valid_name(key)) throw ConfigError(where() + "invalid key '" + key + "'");
    if (section.empty()) throw ConfigError(where() + "key '" + key + "' appears before any [section]");
    auto& sec = cfg.sections_[section];
    if (sec.count(key))
      throw ConfigError(where() + "duplicate key '" + key + "' (first set on line " +
                        std::to_string(sec[key].line) + ")");
    sec[key] = {value, lineno};
  }
  cfg.text_ = text.str();
  return cfg;
}

ConfigFile ConfigFile::parse_string(const std::string& text, const std::string& source) {
  std::istringstream in(text);
  return parse(in, source);
}

ConfigFile ConfigFile::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  return parse(in, path);
}

bool ConfigFile::has(const std::string& section, const std::string& key) const {
  const auto s = sections_.find(section);
  return s != sections_.end() && s->second.count(key);
}

void ConfigFile::set(const std::string& section, const std::string& key, const std::string& value) {
  auto& e = sections_[section][key];
  e.value = value;
  e.line = 0;
}

const ConfigFile::Entry& ConfigFile::entry(const std::string& section, const std::string& key) const {
  const auto s = sections_.find(section);
  if (s == sections_.end() || !s->second.count(key)) fail(section, key, "missing required key");
  return s->second.at(key);
}

void ConfigFile::fail(const std::string& section, const std::string& key, const std::string& what) const {
  std::string loc = source_;
  if (has(section, key) && sections_.at(section).at(key).line)
    loc += ":" + std::to_string(sections_.at(section).at(key).line);
  throw ConfigError(loc + ": key '" + section + "." + key + "': " + what);
}

std::string ConfigFile::get_string(const std::string& section, const std::string& key) const {
  return entry(section, key).value;
}

std::string ConfigFile::get_string(const std::string& section, const std::string& key,
                                   const std::string& fallback) const {
  return has(section, key) ? get_string(section, key) : fallback;
}

std::size_t ConfigFile::get_size(const std::string& section, const std::string& key) const {
  std::size_t v = 0;
  const auto& e = entry(section, key);
  if (!parse_number(e.value, v)) fail(section, key, "expected a non-negative integer, got '" + e.value + "'");
  return v;
}

std::size_t ConfigFile::get_size(const std::string& section, const std::string& key, std::size_t fallback) const {
  return has(section, key) ? get_size(section, key) : fallback;
}

std::uint64_t ConfigFile::get_u64(const std::string& section, const std::string& key, std::uint64_t fallback) const {
  if (!has(section, key)) return fallback;
  std::uint64_t v = 0;
  const auto& e = entry(section, key);
  if (!parse_number(e.value, v)) fail(section, key, "expected a non-negative integer, got '" + e.value + "'");
  return v;
}

double ConfigFile::get_double(const std::string& section, const std::string& key, double fallback) const {
  if (!has(section, key)) return fallback;
  const auto& e = entry(section, key);
  double v = 0;
  if (!parse_number(e.value, v)) fail(section, key, "expected a number, got '" + e.value + "'");
  return v;
}

bool ConfigFile::get_bool(const std::string& section, const std::string& key, bool fallback) const {
  if (!has(section, key)) return fallback;
  const auto& v = entry(section, key).value;
  if (v == "true" || v == "yes" || v == "on" || v == "1") return true;
  if (v == "false" || v == "no" || v == "off" || v == "0") return false;
  fail(section, key, "expected a boolean, got '" + v + "'");
}

std::vector<std::size_t> ConfigFile::get_size_list(const std::string& section, const std::string& key,
                                                   const std::vector<std::size_t>& fallback) const {
  if (!has(section, key)) return fallback;
  const auto& e = entry(section, key);
  std::vector<std::size_t> out;
  std::stringstream ss(e.value);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t v = 0;
    if (!parse_number(trim(item), v)) fail(section, key, "expected a comma-separated list of integers, got '" + e.value + "'");
    out.push_back(v);
  }
  if (out.empty()) fail(section, key, "empty list");
  return out;
}

std::optional<double> ConfigFile::get_optional_double(const std::string& section, const std::string& key) const {
  if (!has(section, key)) return std::nullopt;
  return get_double(section, key, 0.0);
}

std::optional<std::size_t> ConfigFile::get_optional_size(const std::string& section, const std::string& key) const {
  if (!has(section, key)) return std::nullopt;
  return get_size(section, key);
}

void ConfigFile::require_known(const std::string& section, const std::set<std::string>& allowed) const {
  const auto s = sections_.find(section);
  if (s == sections_.end()) return;
  for (const auto& [key, e] : s->second)
    if (!allowed.count(key)) {
      std::string known;
      for (const auto& a : allowed) known += (known.empty() ? "" : ", ") + a;
      fail(section, key, "unknown key (known keys: " + known + ")");
    }
}

void ConfigFile::require_sections(const std::set<std::string>& allowed) const {
  for (const auto& [name, keys] : sections_)
    if (!allowed.count(name)) {
      std::string known;
      for (const auto& a : allowed) known += (known.empty() ? "" : ", ") + a;
      throw ConfigError(source_ + ": unknown section [" + name + "] (known sections: " + known + ")");
    }
}

std::string ConfigFile::canonical_text() const {
  std::ostringstream out;
  for (const auto& [name, keys] : sections_) {
    out << '[' << name << "]\n";
    for (const auto& [key, e] : keys) out << key << " = " << e.value << '\n';
  }
  return out.str();
}

nlohmann::ordered_json ConfigFile::to_json() const {
  nlohmann::ordered_json j = nlohmann::ordered_json::object();
  for (const auto& [name, keys] : sections_) {
    nlohmann::ordered_json s = nlohmann::ordered_json::object();
    for (const auto& [key, e] : keys) s[key] = e.value;
    j[name] = s;
  }
  return j;
}

}  // namespace ddprep::cli
