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

#include "nhlgi/table.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "nhlgi/version.hpp"
#include "json.hpp"

namespace nhlgi {

namespace {

using json = nlohmann::ordered_json;

json number(double x) {
  if (std::isfinite(x)) return x;
  return format_double(x);  // JSON has no literal for nan/inf
}

json param_json(const Param& p) {
  if (p.values.empty()) return p.text;
  if (p.values.size() == 1) return number(p.values[0]);
  json arr = json::array();
  for (double v : p.values) arr.push_back(number(v));
  return arr;
}

std::string param_text(const Param& p) {
  if (p.values.empty()) return p.text;
  std::string out;
  for (std::size_t i = 0; i < p.values.size(); ++i) {
    if (i) out += ',';
    out += format_double(p.values[i]);
  }
  return out;
}

}  // namespace

Format parse_format(const std::string& name) {
  if (name == "csv") return Format::kCsv;
  if (name == "json") return Format::kJson;
  fail(ErrorCode::kInvalidArgument, "unknown output format '" + name + "' (csv or json)");
}

void Table::set_param(const std::string& key, double value) {
  set_param(key, std::vector<double>{value});
}

void Table::set_param(const std::string& key, std::vector<double> values) {
  for (auto& p : params)
    if (p.key == key) {
      p.values = std::move(values);
      p.text.clear();
      return;
    }
  params.push_back({key, std::move(values), {}});
}

void Table::set_param(const std::string& key, const std::string& text) {
  for (auto& p : params)
    if (p.key == key) {
      p.values.clear();
      p.text = text;
      return;
    }
  params.push_back({key, {}, text});
}

void Table::add_row(std::vector<double> row) {
  if (row.size() != columns.size())
    fail(ErrorCode::kInternal, "Table::add_row: row width does not match the columns");
  rows.push_back(std::move(row));
}

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (x == 0) x = 0.0;  // no "-0"
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string to_csv(const Table& table) {
  std::ostringstream out;
  out << "# command: " << table.command << '\n';
  out << "# version: " << kVersion << '\n';
  out << "# seed: " << table.seed << '\n';
  for (const auto& p : table.params) out << "# " << p.key << ": " << param_text(p) << '\n';
  for (std::size_t c = 0; c < table.columns.size(); ++c)
    out << (c ? "," : "") << table.columns[c];
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) out << (c ? "," : "") << format_double(row[c]);
    out << '\n';
  }
  return out.str();
}

std::string to_json(const Table& table) {
  json meta;
  meta["command"] = table.command;
  meta["version"] = kVersion;
  meta["seed"] = table.seed;
  json params = json::object();
  for (const auto& p : table.params) params[p.key] = param_json(p);
  meta["parameters"] = params;

  json doc;
  doc["metadata"] = meta;
  doc["columns"] = table.columns;
  json rows = json::array();
  for (const auto& row : table.rows) {
    json r = json::array();
    for (double v : row) r.push_back(number(v));
    rows.push_back(r);
  }
  doc["rows"] = rows;
  if (!table.results.empty()) {
    json results = json::array();
    for (const auto& res : table.results) {
      json obj;
      obj["objective_kind"] = res.objective_kind == ScanObjective::kK3 ? "K3" : "speed";
      obj["theta"] = number(res.theta);
      obj["kappa"] = number(res.kappa);
      obj["objective"] = number(res.objective);
      json arg = json::object();
      for (std::size_t i = 0; i < res.argmax.size(); ++i)
        arg[res.argmax_names[i]] = number(res.argmax[i]);
      obj["argmax"] = arg;
      obj["evals"] = res.evals;
      obj["seed"] = res.seed;
      results.push_back(obj);
    }
    doc["results"] = results;
  }
  return doc.dump(2) + "\n";
}

std::string serialize(const Table& table, Format format) {
  return format == Format::kCsv ? to_csv(table) : to_json(table);
}

void write_table(const Table& table, Format format, const std::string& path) {
  const std::string text = serialize(table, format);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(ErrorCode::kIo, "cannot open '" + path + "' for writing");
  out << text;
  out.flush();
  if (!out) fail(ErrorCode::kIo, "write to '" + path + "' failed");
}

ParsedCsv parse_csv(const std::string& text) {
  ParsedCsv out;
  std::istringstream in(text);
  std::string line;
  bool header = true;
  auto split = [](const std::string& s) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ss(s);
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    return cells;
  };
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    const auto cells = split(line);
    if (header) {
      out.columns = cells;
      header = false;
      continue;
    }
    if (cells.size() != out.columns.size())
      fail(ErrorCode::kInvalidArgument, "parse_csv: ragged row");
    std::vector<double> row;
    row.reserve(cells.size());
    for (const auto& c : cells) {
      char* end = nullptr;
      const double v = std::strtod(c.c_str(), &end);
      if (end == c.c_str() || *end != '\0')
        fail(ErrorCode::kInvalidArgument, "parse_csv: bad number '" + c + "'");
      row.push_back(v);
    }
    out.rows.push_back(std::move(row));
  }
  return out;
}

}  // namespace nhlgi
