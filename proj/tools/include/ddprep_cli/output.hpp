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
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace ddprep::cli {

using Json = nlohmann::ordered_json;

struct Column {
  std::string name;
  std::vector<double> values;
};

/// Shortest round-trip decimal form.
std::string format_double(double v);

/// Writes equal-length columns; throws on length mismatch or I/O failure.
void write_csv(const std::string& path, const std::vector<Column>& columns);
std::vector<Column> read_csv(const std::string& path);
const Column& find_column(const std::vector<Column>& table, const std::string& name);

void write_json(const std::string& path, const Json& j);
Json read_json(const std::string& path);

void ensure_directory(const std::string& path);
std::string join_path(const std::string& dir, const std::string& file);

}  // namespace ddprep::cli
