// Copyright (c) 2026 agenda developers.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdio>
#include <fstream>
#include <iostream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace agenda::io {

using Record = nlohmann::ordered_json;

inline std::string format_number(const std::string& key, const Record& value) {
  if (value.is_number_float()) {
    const double x = value.get<double>();
    char buf[64];
    // q-side fields are rendered in scientific notation
    if (key == "q" || key.rfind("q_", 0) == 0)
      std::snprintf(buf, sizeof(buf), "%.17e", x);
    else
      std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
  }
  if (value.is_boolean()) return value.get<bool>() ? "true" : "false";
  if (value.is_string()) return value.get<std::string>();
  return value.dump();
}

/// Flat record (or record with a "rows" array of flat records) to CSV with a
/// header row. Row-level fields come first, shared scalar fields after.
inline std::string to_csv(const Record& record) {
  std::vector<Record> rows;
  Record shared = Record::object();
  for (const auto& [key, value] : record.items()) {
    if (key == "rows" && value.is_array()) {
      for (const auto& row : value) rows.push_back(row);
    } else {
      shared[key] = value;
    }
  }
  if (rows.empty()) rows.push_back(Record::object());

  std::string header, body;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    std::string line;
    const auto append = [&](const std::string& key, const Record& value) {
      if (!line.empty()) line += ',';
      line += format_number(key, value);
      if (i == 0) {
        if (!header.empty()) header += ',';
        header += key;
      }
    };
    for (const auto& [key, value] : rows[i].items()) append(key, value);
    for (const auto& [key, value] : shared.items()) append(key, value);
    body += line;
    body += '\n';
  }
  return header + "\n" + body;
}

inline std::string render(const Record& record, const std::string& format) {
  if (format == "csv") return to_csv(record);
  return record.dump(2) + "\n";
}

inline void emit(const Record& record, const std::string& format, const std::string& out_path) {
  const std::string text = render(record, format);
  if (!out_path.empty()) {
    std::ofstream out(out_path);
    if (!out) throw std::runtime_error("cannot open output file: " + out_path);
    out << text;
    if (!out) throw std::runtime_error("write failed: " + out_path);
  }
  std::cout << text;
}

}  // namespace agenda::io
