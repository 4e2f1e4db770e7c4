// Copyright 2026 The nhlgi Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Rectangular named-column series with run metadata, and their CSV / JSON
// serialization. Floats are written with 17 significant digits so that a
// re-parse reproduces every value bit for bit.

#ifndef NHLGI_TABLE_HPP
#define NHLGI_TABLE_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "nhlgi/scan.hpp"

namespace nhlgi {

enum class Format { kCsv, kJson };

/// Parses "csv" / "json"; anything else is kInvalidArgument.
Format parse_format(const std::string& name);

struct Param {
  std::string key;
  std::vector<double> values;  // numeric parameter (one value or a grid)
  std::string text;            // used when values is empty
};

struct Table {
  std::string command;
  std::uint64_t seed = 0;
  std::vector<Param> params;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  /// Scan outputs; serialized as result objects in JSON.
  std::vector<ScanResult> results;

  void set_param(const std::string& key, double value);
  void set_param(const std::string& key, std::vector<double> values);
  void set_param(const std::string& key, const std::string& text);
  /// Throws kInternal unless the row width matches the column count.
  void add_row(std::vector<double> row);
};

/// %.17g, with "nan", "inf", "-inf" for non-finite values.
std::string format_double(double x);

std::string to_csv(const Table& table);
std::string to_json(const Table& table);
std::string serialize(const Table& table, Format format);

/// Writes the serialized table; failure to open or write is kIo.
void write_table(const Table& table, Format format, const std::string& path);

/// Inverse of to_csv for the column block (metadata lines are skipped).
struct ParsedCsv {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};
ParsedCsv parse_csv(const std::string& text);

}  // namespace nhlgi

#endif  // NHLGI_TABLE_HPP
