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

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "emsloc/errors.hpp"
#include "emsloc/solver.hpp"

namespace emsloc {

namespace {

std::string row_name(size_t index) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "R%06zu", index);
  return buf;
}

char relation_code(Relation relation) {
  switch (relation) {
    case Relation::kLE: return 'L';
    case Relation::kGE: return 'G';
    case Relation::kEQ: return 'E';
  }
  throw Error("unreachable relation");
}

void append_entry(std::string& out, const std::string& column, const std::string& row,
                  const std::string& value, int& on_line) {
  if (on_line == 0) {
    out += "    " + column;
    if (column.size() < 10) out.append(10 - column.size(), ' ');
  }
  out += "  " + row;
  if (row.size() < 10) out.append(10 - row.size(), ' ');
  out += "  " + value;
  if (++on_line == 2) {
    out += '\n';
    on_line = 0;
  } else {
    if (value.size() < 12) out.append(12 - value.size(), ' ');
  }
}

void flush_line(std::string& out, int& on_line) {
  if (on_line != 0) {
    out += '\n';
    on_line = 0;
  }
}

}  // namespace

std::string mps_string(const ModelSpec& model) {
  model.check_well_formed();
  std::string out;
  out += "NAME          " + model.name + "\n";
  out += "OBJSENSE\n    MAX\n";
  out += "ROWS\n";
  out += " N  OBJ\n";
  for (size_t r = 0; r < model.constraints.size(); ++r) {
    out += " ";
    out += relation_code(model.constraints[r].relation);
    out += "  " + row_name(r) + "\n";
  }

  // Column-major entries: objective coefficient first, then every row the
  // variable appears in, in row order.
  std::vector<std::vector<std::pair<size_t, long long>>> column_rows(model.num_vars());
  for (size_t r = 0; r < model.constraints.size(); ++r)
    for (const auto& [id, coefficient] : model.constraints[r].terms)
      column_rows[model.var_index(id)].emplace_back(r, coefficient);
  std::vector<const Rational*> column_objective(model.num_vars(), nullptr);
  for (const auto& [id, coefficient] : model.objective)
    column_objective[model.var_index(id)] = &coefficient;

  out += "COLUMNS\n";
  for (size_t v = 0; v < model.num_vars(); ++v) {
    const std::string column = model.variables[v].name();
    int on_line = 0;
    if (column_objective[v] != nullptr && *column_objective[v] != 0)
      append_entry(out, column, "OBJ",
                   shortest_double_string(rational_to_double(*column_objective[v])), on_line);
    for (const auto& [row, coefficient] : column_rows[v])
      append_entry(out, column, row_name(row), std::to_string(coefficient), on_line);
    flush_line(out, on_line);
  }

  out += "RHS\n";
  {
    int on_line = 0;
    for (size_t r = 0; r < model.constraints.size(); ++r)
      if (model.constraints[r].rhs != 0)
        append_entry(out, "RHS", row_name(r), std::to_string(model.constraints[r].rhs), on_line);
    flush_line(out, on_line);
  }

  out += "BOUNDS\n";
  for (size_t v = 0; v < model.num_vars(); ++v) {
    const std::string column = model.variables[v].name();
    out += " BV BND       " + column + "\n";
  }
  out += "ENDATA\n";
  return out;
}

void export_mps(const ModelSpec& model, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << mps_string(model);
  out.flush();
  if (!out) throw IoError("write failure on '" + path + "'");
}

namespace {

// "z_3", "x_3_0_12", "y_41_1_7" / "y_41_1_2_7" back to a VarId. Returns
// false for names outside the scheme.
bool parse_var_name(const std::string& name, const ModelSpec& model, VarId& out) {
  std::vector<long> parts;
  if (name.size() < 3 || name[1] != '_') return false;
  char family = name[0];
  size_t pos = 2;
  while (pos <= name.size()) {
    size_t next = name.find('_', pos);
    std::string piece = name.substr(pos, next == std::string::npos ? next : next - pos);
    if (piece.empty()) return false;
    char* end = nullptr;
    long value = std::strtol(piece.c_str(), &end, 10);
    if (end == nullptr || *end != '\0') return false;
    parts.push_back(value);
    if (next == std::string::npos) break;
    pos = next + 1;
  }
  if (family == 'z' && parts.size() == 1) {
    out = VarId::z(static_cast<int>(parts[0]));
    return true;
  }
  if (family == 'x' && parts.size() == 3) {
    out = VarId::x(static_cast<int>(parts[0]), static_cast<int>(parts[1]),
                   static_cast<int>(parts[2]));
    return true;
  }
  if (family == 'y' && parts.size() == 3 && model.dims.k_max == 0) {
    out = VarId::y_det(static_cast<int>(parts[0]), static_cast<int>(parts[1]),
                       static_cast<int>(parts[2]));
    return true;
  }
  if (family == 'y' && parts.size() == 4 && model.dims.k_max > 0) {
    out = VarId::y_prob(static_cast<int>(parts[0]), static_cast<int>(parts[1]),
                        static_cast<int>(parts[2]), static_cast<int>(parts[3]));
    return true;
  }
  return false;
}

}  // namespace

Solution parse_solution_text(const std::string& text, const ModelSpec& model) {
  Solution solution;
  solution.values.assign(model.num_vars(), 0);

  std::istringstream in(text);
  std::string line;
  size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    std::istringstream fields(line);
    std::string name;
    if (!(fields >> name)) continue;  // blank line
    if (name[0] == '#') continue;
    double value = 0.0;
    if (!(fields >> value))
      throw ParseError("solution line " + std::to_string(line_number) +
                       ": expected 'name value'");
    std::string extra;
    if (fields >> extra)
      throw ParseError("solution line " + std::to_string(line_number) + ": trailing tokens");

    int binary;
    if (std::abs(value) <= 1e-6) {
      binary = 0;
    } else if (std::abs(value - 1.0) <= 1e-6) {
      binary = 1;
    } else {
      throw ParseError("solution line " + std::to_string(line_number) + ": value " +
                       shortest_double_string(value) + " is not binary");
    }

    VarId id;
    int index = -1;
    if (parse_var_name(name, model, id)) index = model.var_index(id);
    if (index < 0) {
      std::cerr << "warning: solution mentions unknown variable '" << name << "', ignored\n";
      continue;
    }
    solution.values[index] = static_cast<std::uint8_t>(binary);
  }

  if (auto violation = find_violation(model, solution.values))
    throw AuditError("imported solution: " + *violation);
  solution.objective = evaluate_objective(model, solution.values);
  solution.status = SolveStatus::kFeasible;
  solution.bound = solution.objective;
  return solution;
}

Solution import_solution(const std::string& path, const ModelSpec& model) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_solution_text(buf.str(), model);
}

}  // namespace emsloc
