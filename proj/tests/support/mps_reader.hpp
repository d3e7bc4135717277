// Copyright 2026 The emsloc Authors
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

// Minimal standalone MPS parser for round-trip checks. Whitespace
// tokenizing, so it accepts the writer's aligned columns without sharing
// any code with it.

#pragma once

#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace mps_reader {

struct ParsedMps {
  std::string name;
  bool maximize = false;
  std::vector<std::pair<std::string, char>> rows;          // (name, L/G/E/N)
  std::map<std::string, std::map<std::string, double>> columns;  // var -> row -> coef
  std::map<std::string, double> rhs;
  std::vector<std::string> binary_variables;

  size_t num_constraint_rows() const {
    size_t count = 0;
    for (const auto& [name, type] : rows)
      if (type != 'N') ++count;
    return count;
  }
};

inline ParsedMps parse(const std::string& text) {
  ParsedMps out;
  std::istringstream in(text);
  std::string line;
  std::string section;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream fields(line);
    if (line[0] != ' ') {
      std::string head;
      fields >> head;
      section = head;
      if (head == "NAME") fields >> out.name;
      continue;
    }
    std::vector<std::string> tokens;
    std::string token;
    while (fields >> token) tokens.push_back(token);
    if (tokens.empty()) continue;

    if (section == "OBJSENSE") {
      out.maximize = tokens[0] == "MAX" || tokens[0] == "MAXIMIZE";
    } else if (section == "ROWS") {
      if (tokens.size() != 2) throw std::runtime_error("bad ROWS line: " + line);
      out.rows.emplace_back(tokens[1], tokens[0][0]);
    } else if (section == "COLUMNS") {
      if (tokens.size() % 2 != 1) throw std::runtime_error("bad COLUMNS line: " + line);
      const std::string& column = tokens[0];
      for (size_t n = 1; n + 1 < tokens.size() + 1 && n + 1 <= tokens.size(); n += 2)
        out.columns[column][tokens[n]] = std::stod(tokens[n + 1]);
    } else if (section == "RHS") {
      if (tokens.size() % 2 != 1) throw std::runtime_error("bad RHS line: " + line);
      for (size_t n = 1; n + 1 <= tokens.size(); n += 2)
        out.rhs[tokens[n]] = std::stod(tokens[n + 1]);
    } else if (section == "BOUNDS") {
      if (tokens.size() != 3 || tokens[0] != "BV")
        throw std::runtime_error("bad BOUNDS line: " + line);
      out.binary_variables.push_back(tokens[2]);
    } else if (section == "RANGES") {
      throw std::runtime_error("unexpected RANGES section");
    }
  }
  return out;
}

}  // namespace mps_reader
