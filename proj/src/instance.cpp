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

#include "emsloc/instance.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <unordered_set>

#include "json_util.hpp"

namespace emsloc {

namespace detail {

std::string escape_json(const std::string& text) {
  std::string out;
  out.reserve(text.size());
  for (char c : text) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof(buf), "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  return out;
}

std::string rational_token(const Rational& value) {
  if (value.get_den() == 1) return value.get_num().get_str();
  if (has_finite_decimal(value)) {
    std::string decimal = rational_to_string(value);
    double as_double = std::strtod(decimal.c_str(), nullptr);
    if (rational_from_double(as_double) == value) return shortest_double_string(as_double);
    return "\"" + decimal + "\"";
  }
  return "\"" + value.get_num().get_str() + "/" + value.get_den().get_str() + "\"";
}

}  // namespace detail

using detail::json;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoError("read failure on '" + path + "'");
  return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << content;
  out.flush();
  if (!out) throw IoError("write failure on '" + path + "'");
}

std::vector<std::vector<Rational>> parse_tensor(const json& value, int num_types,
                                                int num_periods, const std::string& where) {
  if (!value.is_array() || static_cast<int>(value.size()) != num_types)
    throw ValidationError(where + ": tensor must have one row per ambulance type (" +
                          std::to_string(num_types) + ")");
  std::vector<std::vector<Rational>> tensor(num_types);
  for (int u = 0; u < num_types; ++u) {
    const json& row = value[u];
    if (!row.is_array() || static_cast<int>(row.size()) != num_periods)
      throw ValidationError(where + "[" + std::to_string(u) +
                            "]: tensor row must have one entry per period (" +
                            std::to_string(num_periods) + ")");
    tensor[u].reserve(num_periods);
    for (int t = 0; t < num_periods; ++t)
      tensor[u].push_back(detail::require_rational(
          row[t], where + "[" + std::to_string(u) + "][" + std::to_string(t) + "]"));
  }
  return tensor;
}

Matrix parse_matrix(const json& value, int rows, int cols, const std::string& where) {
  if (!value.is_array() || static_cast<int>(value.size()) != rows)
    throw ValidationError(where + ": expected " + std::to_string(rows) + " rows");
  Matrix matrix(rows, cols);
  for (int r = 0; r < rows; ++r) {
    const json& row = value[r];
    if (!row.is_array() || static_cast<int>(row.size()) != cols)
      throw ValidationError(where + "[" + std::to_string(r) + "]: expected " +
                            std::to_string(cols) + " columns");
    for (int c = 0; c < cols; ++c)
      matrix.at(r, c) = detail::require_rational(
          row[c], where + "[" + std::to_string(r) + "][" + std::to_string(c) + "]");
  }
  return matrix;
}

void append_tensor(std::string& out, const std::vector<std::vector<Rational>>& tensor) {
  out += '[';
  for (size_t u = 0; u < tensor.size(); ++u) {
    if (u) out += ',';
    out += '[';
    for (size_t t = 0; t < tensor[u].size(); ++t) {
      if (t) out += ',';
      out += detail::rational_token(tensor[u][t]);
    }
    out += ']';
  }
  out += ']';
}

void append_matrix(std::string& out, const Matrix& matrix) {
  out += "[\n";
  for (int r = 0; r < matrix.rows(); ++r) {
    out += r ? ",\n[" : "[";
    for (int c = 0; c < matrix.cols(); ++c) {
      if (c) out += ',';
      out += detail::rational_token(matrix.at(r, c));
    }
    out += ']';
  }
  out += "\n]";
}

}  // namespace

Rational Instance::total_demand() const {
  Rational total(0);
  for (int u = 0; u < num_types(); ++u) total += total_demand_of_type(u);
  return total;
}

Rational Instance::total_demand_of_type(int u) const {
  Rational total(0);
  for (const DemandPoint& point : demand_points)
    for (const Rational& d : point.demand[u]) total += d;
  return total;
}

int Instance::total_fleet() const {
  int total = 0;
  for (const AmbulanceType& type : ambulance_types) total += type.fleet_size;
  return total;
}

void Instance::validate() const {
  if (demand_points.empty()) throw ValidationError("demand_points: must be non-empty");
  if (sites.empty()) throw ValidationError("sites: must be non-empty");
  if (ambulance_types.empty()) throw ValidationError("ambulance_types: must be non-empty");
  if (num_periods < 1) throw ValidationError("num_periods: must be >= 1");

  std::unordered_set<std::string> labels;
  for (size_t u = 0; u < ambulance_types.size(); ++u) {
    const AmbulanceType& type = ambulance_types[u];
    const std::string where = "ambulance_types[" + std::to_string(u) + "]";
    if (type.id != static_cast<int>(u))
      throw ValidationError(where + ".id: must equal its position " + std::to_string(u));
    if (type.fleet_size < 1) throw ValidationError(where + ".fleet_size: must be >= 1");
    if (type.response_standard <= 0)
      throw ValidationError(where + ".response_standard: must be > 0");
    if (!labels.insert(type.label).second)
      throw ValidationError(where + ".label: duplicate label '" + type.label + "'");
  }

  for (size_t j = 0; j < sites.size(); ++j) {
    const std::string where = "sites[" + std::to_string(j) + "]";
    if (sites[j].id != static_cast<int>(j))
      throw ValidationError(where + ".id: must equal its position " + std::to_string(j));
    if (sites[j].capacity < 1) throw ValidationError(where + ".capacity: must be >= 1");
  }

  for (size_t i = 0; i < demand_points.size(); ++i) {
    const DemandPoint& point = demand_points[i];
    const std::string where = "demand_points[" + std::to_string(i) + "]";
    if (point.id != static_cast<int>(i))
      throw ValidationError(where + ".id: must equal its position " + std::to_string(i));
    if (static_cast<int>(point.demand.size()) != num_types())
      throw ValidationError(where + ".demand: must have one row per ambulance type");
    if (static_cast<int>(point.service_time_demand.size()) != num_types())
      throw ValidationError(where + ".service_time_demand: must have one row per ambulance type");
    for (int u = 0; u < num_types(); ++u) {
      if (static_cast<int>(point.demand[u].size()) != num_periods)
        throw ValidationError(where + ".demand: rows must have one entry per period");
      if (static_cast<int>(point.service_time_demand[u].size()) != num_periods)
        throw ValidationError(where + ".service_time_demand: rows must have one entry per period");
      for (int t = 0; t < num_periods; ++t) {
        if (point.demand[u][t] < 0)
          throw ValidationError(where + ".demand[" + std::to_string(u) + "][" +
                                std::to_string(t) + "]: negative demand");
        if (point.service_time_demand[u][t] < 0)
          throw ValidationError(where + ".service_time_demand[" + std::to_string(u) + "][" +
                                std::to_string(t) + "]: negative service-time demand");
      }
    }
  }

  if (travel_time.rows() != num_sites() || travel_time.cols() != num_points())
    throw ValidationError("travel_time: must be a |J| x |I| matrix");
  for (int j = 0; j < num_sites(); ++j)
    for (int i = 0; i < num_points(); ++i)
      if (travel_time.at(j, i) < 0)
        throw ValidationError("travel_time[" + std::to_string(j) + "][" + std::to_string(i) +
                              "]: negative travel time");

  if (demand_to_demand_time.rows() != num_points() ||
      demand_to_demand_time.cols() != num_points())
    throw ValidationError("demand_to_demand_time: must be a |I| x |I| matrix");
  for (int a = 0; a < num_points(); ++a) {
    if (demand_to_demand_time.at(a, a) != 0)
      throw ValidationError("demand_to_demand_time[" + std::to_string(a) + "][" +
                            std::to_string(a) + "]: diagonal must be zero");
    for (int b = 0; b < num_points(); ++b)
      if (demand_to_demand_time.at(a, b) < 0)
        throw ValidationError("demand_to_demand_time[" + std::to_string(a) + "][" +
                              std::to_string(b) + "]: negative travel time");
  }

  if (k_max < 1) throw ValidationError("k_max: must be >= 1");
  if (k_max > total_fleet())
    throw ValidationError("k_max: must not exceed the total fleet size " +
                          std::to_string(total_fleet()));
}

std::string Instance::fingerprint() const { return hex64(fnv1a64(serialize_instance(*this))); }

std::string serialize_instance(const Instance& instance) {
  std::string out;
  out += "{\n";
  out += "\"format\": \"emsloc-instance\",\n";
  out += "\"num_periods\": " + std::to_string(instance.num_periods) + ",\n";
  out += "\"k_max\": " + std::to_string(instance.k_max) + ",\n";

  out += "\"ambulance_types\": [\n";
  for (int u = 0; u < instance.num_types(); ++u) {
    const AmbulanceType& type = instance.ambulance_types[u];
    out += u ? ",\n" : "";
    out += "{\"id\":" + std::to_string(type.id) + ",\"label\":\"" +
           detail::escape_json(type.label) + "\",\"fleet_size\":" +
           std::to_string(type.fleet_size) + ",\"response_standard\":" +
           detail::rational_token(type.response_standard) + "}";
  }
  out += "\n],\n";

  out += "\"sites\": [\n";
  for (int j = 0; j < instance.num_sites(); ++j) {
    out += j ? ",\n" : "";
    out += "{\"id\":" + std::to_string(instance.sites[j].id) +
           ",\"capacity\":" + std::to_string(instance.sites[j].capacity) + "}";
  }
  out += "\n],\n";

  out += "\"demand_points\": [\n";
  for (int i = 0; i < instance.num_points(); ++i) {
    const DemandPoint& point = instance.demand_points[i];
    out += i ? ",\n" : "";
    out += "{\"id\":" + std::to_string(point.id) + ",\"demand\":";
    append_tensor(out, point.demand);
    out += ",\"service_time_demand\":";
    append_tensor(out, point.service_time_demand);
    out += "}";
  }
  out += "\n],\n";

  out += "\"travel_time\": ";
  append_matrix(out, instance.travel_time);
  out += ",\n\"demand_to_demand_time\": ";
  append_matrix(out, instance.demand_to_demand_time);
  out += "\n}\n";
  return out;
}

Instance parse_instance(const std::string& text) {
  json root = detail::parse_json(text, "instance");
  Instance instance;
  instance.num_periods =
      static_cast<int>(detail::require_int(detail::require_field(root, "num_periods", "instance"),
                                           "instance.num_periods"));
  if (instance.num_periods < 1) throw ValidationError("num_periods: must be >= 1");
  instance.k_max = static_cast<int>(
      detail::require_int(detail::require_field(root, "k_max", "instance"), "instance.k_max"));

  const json& types = detail::require_field(root, "ambulance_types", "instance");
  if (!types.is_array()) throw ParseError("instance.ambulance_types: expected an array");
  for (size_t u = 0; u < types.size(); ++u) {
    const std::string where = "instance.ambulance_types[" + std::to_string(u) + "]";
    AmbulanceType type;
    type.id = static_cast<int>(detail::require_int(detail::require_field(types[u], "id", where),
                                                   where + ".id"));
    type.label = detail::require_string(detail::require_field(types[u], "label", where),
                                        where + ".label");
    type.fleet_size = static_cast<int>(detail::require_int(
        detail::require_field(types[u], "fleet_size", where), where + ".fleet_size"));
    type.response_standard = detail::require_rational(
        detail::require_field(types[u], "response_standard", where), where + ".response_standard");
    instance.ambulance_types.push_back(std::move(type));
  }

  const json& sites = detail::require_field(root, "sites", "instance");
  if (!sites.is_array()) throw ParseError("instance.sites: expected an array");
  for (size_t j = 0; j < sites.size(); ++j) {
    const std::string where = "instance.sites[" + std::to_string(j) + "]";
    Site site;
    site.id = static_cast<int>(
        detail::require_int(detail::require_field(sites[j], "id", where), where + ".id"));
    site.capacity = static_cast<int>(detail::require_int(
        detail::require_field(sites[j], "capacity", where), where + ".capacity"));
    instance.sites.push_back(site);
  }

  const json& points = detail::require_field(root, "demand_points", "instance");
  if (!points.is_array()) throw ParseError("instance.demand_points: expected an array");
  for (size_t i = 0; i < points.size(); ++i) {
    const std::string where = "instance.demand_points[" + std::to_string(i) + "]";
    DemandPoint point;
    point.id = static_cast<int>(
        detail::require_int(detail::require_field(points[i], "id", where), where + ".id"));
    point.demand = parse_tensor(detail::require_field(points[i], "demand", where),
                                static_cast<int>(instance.ambulance_types.size()),
                                instance.num_periods, where + ".demand");
    point.service_time_demand =
        parse_tensor(detail::require_field(points[i], "service_time_demand", where),
                     static_cast<int>(instance.ambulance_types.size()), instance.num_periods,
                     where + ".service_time_demand");
    instance.demand_points.push_back(std::move(point));
  }

  instance.travel_time = parse_matrix(detail::require_field(root, "travel_time", "instance"),
                                      instance.num_sites(), instance.num_points(),
                                      "instance.travel_time");
  instance.demand_to_demand_time =
      parse_matrix(detail::require_field(root, "demand_to_demand_time", "instance"),
                   instance.num_points(), instance.num_points(),
                   "instance.demand_to_demand_time");

  instance.validate();
  return instance;
}

Instance load_instance(const std::string& path) { return parse_instance(read_file(path)); }

void save_instance(const Instance& instance, const std::string& path) {
  instance.validate();
  write_file(path, serialize_instance(instance));
}

Plan Plan::empty(const Instance& instance, int periods) {
  Plan plan;
  plan.num_periods = periods;
  plan.alloc.assign(instance.num_sites(),
                    std::vector<std::vector<int>>(instance.num_types(),
                                                  std::vector<int>(periods, 0)));
  return plan;
}

Plan Plan::replicate(int periods) const {
  if (num_periods != 1) throw Error("replicate requires a single-period plan");
  Plan copy = *this;
  copy.num_periods = periods;
  for (auto& site_alloc : copy.alloc)
    for (auto& type_alloc : site_alloc) type_alloc.assign(periods, type_alloc[0]);
  // Decode results no longer describe the replicated horizon.
  copy.has_objective = false;
  copy.coverage_rate_per_type.clear();
  copy.coverage_rate_total = Rational(0);
  return copy;
}

void Plan::validate_against(const Instance& instance) const {
  for (int j : opened)
    if (j < 0 || j >= instance.num_sites())
      throw ValidationError("plan.opened_sites: unknown site id " + std::to_string(j));
  if (static_cast<int>(alloc.size()) != instance.num_sites())
    throw ValidationError("plan.allocations: must cover every site index");
  for (int j = 0; j < instance.num_sites(); ++j) {
    if (static_cast<int>(alloc[j].size()) != instance.num_types())
      throw ValidationError("plan.allocations: must cover every ambulance type");
    for (int u = 0; u < instance.num_types(); ++u)
      if (static_cast<int>(alloc[j][u].size()) != num_periods)
        throw ValidationError("plan.allocations: must cover every period");
  }

  for (int t = 0; t < num_periods; ++t) {
    for (int j = 0; j < instance.num_sites(); ++j) {
      int held = 0;
      for (int u = 0; u < instance.num_types(); ++u) {
        int count = alloc[j][u][t];
        if (count != 0 && count != 1)
          throw ValidationError("plan.allocations: count must be 0 or 1 at site " +
                                std::to_string(j));
        held += count;
        if (count > 0 && !opened.contains(j))
          throw ValidationError("site-link violation: site " + std::to_string(j) +
                                " holds a vehicle in period " + std::to_string(t) +
                                " but is not opened");
      }
      if (held > instance.sites[j].capacity)
        throw ValidationError("capacity violation: site " + std::to_string(j) + " holds " +
                              std::to_string(held) + " vehicles in period " + std::to_string(t) +
                              " with capacity " + std::to_string(instance.sites[j].capacity));
    }
    for (int u = 0; u < instance.num_types(); ++u) {
      int used = 0;
      for (int j = 0; j < instance.num_sites(); ++j) used += alloc[j][u][t];
      if (used > instance.ambulance_types[u].fleet_size)
        throw ValidationError("fleet-limit violation: type " + instance.ambulance_types[u].label +
                              " uses " + std::to_string(used) + " vehicles in period " +
                              std::to_string(t) + " with fleet " +
                              std::to_string(instance.ambulance_types[u].fleet_size));
    }
  }
}

std::string serialize_plan(const Plan& plan) {
  std::string out;
  out += "{\n";
  out += "\"format\": \"emsloc-plan\",\n";
  out += "\"num_periods\": " + std::to_string(plan.num_periods) + ",\n";
  out += "\"opened_sites\": [";
  bool first = true;
  for (int j : plan.opened) {
    if (!first) out += ',';
    out += std::to_string(j);
    first = false;
  }
  out += "],\n";
  out += "\"allocations\": [\n";
  first = true;
  for (size_t j = 0; j < plan.alloc.size(); ++j)
    for (size_t u = 0; u < plan.alloc[j].size(); ++u)
      for (size_t t = 0; t < plan.alloc[j][u].size(); ++t)
        if (plan.alloc[j][u][t] != 0) {
          if (!first) out += ",\n";
          out += "{\"site\":" + std::to_string(j) + ",\"type\":" + std::to_string(u) +
                 ",\"period\":" + std::to_string(t) +
                 ",\"count\":" + std::to_string(plan.alloc[j][u][t]) + "}";
          first = false;
        }
  out += "\n]";
  if (plan.has_objective)
    out += ",\n\"objective\": " + detail::rational_token(plan.objective);
  out += "\n}\n";
  return out;
}

Plan parse_plan(const std::string& text, const Instance& instance) {
  json root = detail::parse_json(text, "plan");
  int periods = instance.num_periods;
  if (root.contains("num_periods"))
    periods = static_cast<int>(detail::require_int(root["num_periods"], "plan.num_periods"));
  if (periods < 1) throw ValidationError("plan.num_periods: must be >= 1");

  Plan plan = Plan::empty(instance, periods);
  const json& opened = detail::require_field(root, "opened_sites", "plan");
  if (!opened.is_array()) throw ParseError("plan.opened_sites: expected an array");
  for (const json& entry : opened)
    plan.opened.insert(static_cast<int>(detail::require_int(entry, "plan.opened_sites[]")));

  const json& allocations = detail::require_field(root, "allocations", "plan");
  if (!allocations.is_array()) throw ParseError("plan.allocations: expected an array");
  for (size_t n = 0; n < allocations.size(); ++n) {
    const std::string where = "plan.allocations[" + std::to_string(n) + "]";
    const json& entry = allocations[n];
    int j = static_cast<int>(
        detail::require_int(detail::require_field(entry, "site", where), where + ".site"));
    int u = static_cast<int>(
        detail::require_int(detail::require_field(entry, "type", where), where + ".type"));
    int t = static_cast<int>(
        detail::require_int(detail::require_field(entry, "period", where), where + ".period"));
    int count = static_cast<int>(
        detail::require_int(detail::require_field(entry, "count", where), where + ".count"));
    if (j < 0 || j >= instance.num_sites())
      throw ValidationError(where + ".site: unknown site id " + std::to_string(j));
    if (u < 0 || u >= instance.num_types())
      throw ValidationError(where + ".type: unknown ambulance type " + std::to_string(u));
    if (t < 0 || t >= periods)
      throw ValidationError(where + ".period: out of range period " + std::to_string(t));
    if (count < 0 || count > 1)
      throw ValidationError(where + ".count: allocation count must be 0 or 1");
    if (plan.alloc[j][u][t] != 0 && count != 0)
      throw ValidationError(where + ": duplicate allocation for (site,type,period)");
    plan.alloc[j][u][t] = count;
  }

  if (root.contains("objective")) {
    plan.has_objective = true;
    plan.objective = detail::require_rational(root["objective"], "plan.objective");
  }
  return plan;
}

Plan baseline_plan_load(const std::string& path, const Instance& instance) {
  Plan plan = parse_plan(read_file(path), instance);
  plan.validate_against(instance);
  return plan;
}

void save_plan(const Plan& plan, const std::string& path) {
  write_file(path, serialize_plan(plan));
}

}  // namespace emsloc
