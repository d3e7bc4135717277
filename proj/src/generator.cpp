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
#include <fstream>
#include <random>
#include <sstream>

#include "emsloc/instance.hpp"
#include "json_util.hpp"

namespace emsloc {

using detail::json;

namespace {

// All draws go through this bounded helper so the byte stream of a given
// (config, seed) pair is pinned by the standardized mt19937_64 sequence.
std::uint64_t draw(std::mt19937_64& rng, std::uint64_t bound) {
  return bound == 0 ? 0 : rng() % bound;
}

struct GridPoint {
  long long x = 0;
  long long y = 0;
};

// Euclidean distance in centiminutes, rounded to the grid. std::sqrt is
// correctly rounded, so this is deterministic for a given platform.
long long grid_distance(const GridPoint& a, const GridPoint& b, double speed) {
  double dx = static_cast<double>(a.x - b.x);
  double dy = static_cast<double>(a.y - b.y);
  return std::llround(std::sqrt(dx * dx + dy * dy) / speed);
}

Rational centi(long long value) { return Rational(static_cast<long>(value)) / 100; }

std::string profile_name(DemandProfile profile) {
  return profile == DemandProfile::kUniform ? "uniform" : "two-peak-diurnal";
}

std::string spatial_name(SpatialModel model) {
  return model == SpatialModel::kUniformSquare ? "uniform-square" : "clustered";
}

DemandProfile profile_from_name(const std::string& name) {
  if (name == "uniform") return DemandProfile::kUniform;
  if (name == "two-peak-diurnal") return DemandProfile::kTwoPeakDiurnal;
  throw ValidationError("generator.demand_profile: unknown profile '" + name + "'");
}

SpatialModel spatial_from_name(const std::string& name) {
  if (name == "uniform-square") return SpatialModel::kUniformSquare;
  if (name == "clustered") return SpatialModel::kClustered;
  throw ValidationError("generator.spatial_model: unknown spatial model '" + name + "'");
}

}  // namespace

void GeneratorConfig::validate() const {
  if (num_demand_points < 1) throw ValidationError("generator.num_demand_points: must be >= 1");
  if (num_sites < 1) throw ValidationError("generator.num_sites: must be >= 1");
  if (num_periods < 1) throw ValidationError("generator.num_periods: must be >= 1");
  if (ambulance_types.empty())
    throw ValidationError("generator.ambulance_types: must be non-empty");
  for (const GeneratorTypeConfig& type : ambulance_types) {
    if (type.fleet_size < 1)
      throw ValidationError("generator.ambulance_types: fleet_size must be >= 1");
    if (type.response_standard <= 0)
      throw ValidationError("generator.ambulance_types: response_standard must be > 0");
  }
  if (site_capacity < 1) throw ValidationError("generator.site_capacity: must be >= 1");
  if (k_max < 1) throw ValidationError("generator.k_max: must be >= 1");
  if (demand_scale_centi < 1) throw ValidationError("generator.demand_scale_centi: must be >= 1");
  if (area_centiminutes < 1) throw ValidationError("generator.area_centiminutes: must be >= 1");
  if (!(travel_speed > 0)) throw ValidationError("generator.travel_speed: must be > 0");
  if (num_clusters < 1) throw ValidationError("generator.num_clusters: must be >= 1");
  if (mean_service_minutes <= 0)
    throw ValidationError("generator.mean_service_minutes: must be > 0");
  if (period_length_minutes <= 0)
    throw ValidationError("generator.period_length_minutes: must be > 0");
  if (demand_horizon_days < 1)
    throw ValidationError("generator.demand_horizon_days: must be >= 1");
}

std::string serialize_generator_config(const GeneratorConfig& config) {
  std::string out;
  out += "{\n";
  out += "\"num_demand_points\": " + std::to_string(config.num_demand_points) + ",\n";
  out += "\"num_sites\": " + std::to_string(config.num_sites) + ",\n";
  out += "\"num_periods\": " + std::to_string(config.num_periods) + ",\n";
  out += "\"seed\": " + std::to_string(config.seed) + ",\n";
  out += "\"demand_profile\": \"" + profile_name(config.demand_profile) + "\",\n";
  out += "\"spatial_model\": \"" + spatial_name(config.spatial_model) + "\",\n";
  out += "\"ambulance_types\": [";
  for (size_t u = 0; u < config.ambulance_types.size(); ++u) {
    const GeneratorTypeConfig& type = config.ambulance_types[u];
    out += u ? "," : "";
    out += "{\"label\":\"" + detail::escape_json(type.label) + "\",\"fleet_size\":" +
           std::to_string(type.fleet_size) + ",\"response_standard\":" +
           detail::rational_token(type.response_standard) + "}";
  }
  out += "],\n";
  out += "\"site_capacity\": " + std::to_string(config.site_capacity) + ",\n";
  out += "\"k_max\": " + std::to_string(config.k_max) + ",\n";
  out += "\"demand_scale_centi\": " + std::to_string(config.demand_scale_centi) + ",\n";
  out += "\"area_centiminutes\": " + std::to_string(config.area_centiminutes) + ",\n";
  out += "\"travel_speed\": " + shortest_double_string(config.travel_speed) + ",\n";
  out += "\"num_clusters\": " + std::to_string(config.num_clusters) + ",\n";
  out += "\"mean_service_minutes\": " + detail::rational_token(config.mean_service_minutes) + ",\n";
  out += "\"period_length_minutes\": " + detail::rational_token(config.period_length_minutes) + ",\n";
  out += "\"demand_horizon_days\": " + std::to_string(config.demand_horizon_days) + "\n";
  out += "}\n";
  return out;
}

GeneratorConfig parse_generator_config(const std::string& text) {
  json root = detail::parse_json(text, "generator config");
  GeneratorConfig config;
  auto set_int = [&](const char* key, int& field) {
    if (root.contains(key))
      field = static_cast<int>(detail::require_int(root[key], std::string("generator.") + key));
  };
  set_int("num_demand_points", config.num_demand_points);
  set_int("num_sites", config.num_sites);
  set_int("num_periods", config.num_periods);
  set_int("site_capacity", config.site_capacity);
  set_int("k_max", config.k_max);
  set_int("demand_scale_centi", config.demand_scale_centi);
  set_int("area_centiminutes", config.area_centiminutes);
  set_int("num_clusters", config.num_clusters);
  set_int("demand_horizon_days", config.demand_horizon_days);
  if (root.contains("seed"))
    config.seed = static_cast<std::uint64_t>(detail::require_int(root["seed"], "generator.seed"));
  if (root.contains("demand_profile"))
    config.demand_profile =
        profile_from_name(detail::require_string(root["demand_profile"], "generator.demand_profile"));
  if (root.contains("spatial_model"))
    config.spatial_model =
        spatial_from_name(detail::require_string(root["spatial_model"], "generator.spatial_model"));
  if (root.contains("travel_speed")) {
    if (!root["travel_speed"].is_number())
      throw ParseError("generator.travel_speed: expected a number");
    config.travel_speed = root["travel_speed"].get<double>();
  }
  if (root.contains("mean_service_minutes"))
    config.mean_service_minutes =
        detail::require_rational(root["mean_service_minutes"], "generator.mean_service_minutes");
  if (root.contains("period_length_minutes"))
    config.period_length_minutes =
        detail::require_rational(root["period_length_minutes"], "generator.period_length_minutes");
  if (root.contains("ambulance_types")) {
    const json& types = root["ambulance_types"];
    if (!types.is_array() || types.empty())
      throw ParseError("generator.ambulance_types: expected a non-empty array");
    config.ambulance_types.clear();
    for (size_t u = 0; u < types.size(); ++u) {
      const std::string where = "generator.ambulance_types[" + std::to_string(u) + "]";
      GeneratorTypeConfig type;
      type.label =
          detail::require_string(detail::require_field(types[u], "label", where), where + ".label");
      type.fleet_size = static_cast<int>(detail::require_int(
          detail::require_field(types[u], "fleet_size", where), where + ".fleet_size"));
      type.response_standard = detail::require_rational(
          detail::require_field(types[u], "response_standard", where),
          where + ".response_standard");
      config.ambulance_types.push_back(std::move(type));
    }
  }
  config.validate();
  return config;
}

GeneratorConfig load_generator_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_generator_config(buf.str());
}

std::string GeneratorConfig::fingerprint() const {
  return hex64(fnv1a64(serialize_generator_config(*this)));
}

Instance generate_instance(const GeneratorConfig& config) {
  config.validate();
  std::mt19937_64 rng(config.seed);
  const long long area = config.area_centiminutes;
  const int clusters =
      config.demand_profile == DemandProfile::kTwoPeakDiurnal ? 2 : config.num_clusters;

  // Cluster centers. The two-peak profile needs the two clusters far enough
  // apart that no site can cover both; corners of the square do that as long
  // as the area comfortably exceeds the response standards.
  std::vector<GridPoint> centers(clusters);
  if (clusters == 2) {
    centers[0] = {area / 4, area / 4};
    centers[1] = {3 * area / 4, 3 * area / 4};
  } else {
    for (int c = 0; c < clusters; ++c)
      centers[c] = {static_cast<long long>(draw(rng, area + 1)),
                    static_cast<long long>(draw(rng, area + 1))};
  }
  const long long spread = area / (clusters == 2 ? 8 : 6) + 1;

  auto place = [&](bool clustered, int cluster) {
    if (!clustered)
      return GridPoint{static_cast<long long>(draw(rng, area + 1)),
                       static_cast<long long>(draw(rng, area + 1))};
    const GridPoint& center = centers[cluster];
    long long dx = static_cast<long long>(draw(rng, 2 * spread + 1)) - spread;
    long long dy = static_cast<long long>(draw(rng, 2 * spread + 1)) - spread;
    return GridPoint{std::clamp(center.x + dx, 0LL, area), std::clamp(center.y + dy, 0LL, area)};
  };

  const bool clustered = config.spatial_model == SpatialModel::kClustered ||
                         config.demand_profile == DemandProfile::kTwoPeakDiurnal;

  std::vector<GridPoint> point_pos(config.num_demand_points);
  std::vector<int> point_cluster(config.num_demand_points);
  for (int i = 0; i < config.num_demand_points; ++i) {
    point_cluster[i] = i % clusters;
    point_pos[i] = place(clustered, point_cluster[i]);
  }

  // Sites: one guaranteed near each cluster center, the rest mixed between
  // clusters and the open square so both profiles stay coverable.
  std::vector<GridPoint> site_pos(config.num_sites);
  for (int j = 0; j < config.num_sites; ++j) {
    if (clustered && j < clusters) {
      site_pos[j] = centers[j];
    } else if (clustered && j % 2 == 0) {
      site_pos[j] = place(true, static_cast<int>(draw(rng, clusters)));
    } else {
      site_pos[j] = place(false, 0);
    }
  }

  Instance instance;
  instance.num_periods = config.num_periods;
  instance.k_max = config.k_max;
  for (size_t u = 0; u < config.ambulance_types.size(); ++u)
    instance.ambulance_types.push_back({static_cast<int>(u), config.ambulance_types[u].label,
                                        config.ambulance_types[u].fleet_size,
                                        config.ambulance_types[u].response_standard});
  for (int j = 0; j < config.num_sites; ++j)
    instance.sites.push_back({j, config.site_capacity});

  const int num_types = instance.num_types();
  const int periods = config.num_periods;
  const long long scale = config.demand_scale_centi;
  const Rational service_factor =
      config.mean_service_minutes / config.period_length_minutes / config.demand_horizon_days;

  for (int i = 0; i < config.num_demand_points; ++i) {
    DemandPoint point;
    point.id = i;
    point.demand.assign(num_types, std::vector<Rational>(periods));
    point.service_time_demand.assign(num_types, std::vector<Rational>(periods));
    for (int u = 0; u < num_types; ++u) {
      if (config.demand_profile == DemandProfile::kUniform) {
        // One draw per (point, type), constant over periods, so per-period
        // totals are equal by construction.
        long long level = static_cast<long long>(draw(rng, 2 * scale + 1));
        for (int t = 0; t < periods; ++t) point.demand[u][t] = centi(level);
      } else {
        // Two peak windows: cluster 0 peaks in the first half of the horizon,
        // cluster 1 in the second half. Noise stays below (high - low) / 4 so
        // the peaks always cross.
        const long long low = scale / 2 + 1;
        const long long high = 4 * scale;
        const long long noise_bound = (high - low) / 4 + 1;
        for (int t = 0; t < periods; ++t) {
          bool first_window = t < periods / 2 || periods == 1;
          bool in_peak = (point_cluster[i] % 2 == 0) == first_window;
          long long level = (in_peak ? high : low) + static_cast<long long>(draw(rng, noise_bound));
          point.demand[u][t] = centi(level);
        }
      }
      for (int t = 0; t < periods; ++t)
        point.service_time_demand[u][t] = point.demand[u][t] * service_factor;
    }
    instance.demand_points.push_back(std::move(point));
  }

  instance.travel_time = Matrix(config.num_sites, config.num_demand_points);
  for (int j = 0; j < config.num_sites; ++j)
    for (int i = 0; i < config.num_demand_points; ++i)
      instance.travel_time.at(j, i) =
          centi(grid_distance(site_pos[j], point_pos[i], config.travel_speed));

  instance.demand_to_demand_time = Matrix(config.num_demand_points, config.num_demand_points);
  for (int a = 0; a < config.num_demand_points; ++a)
    for (int b = 0; b < config.num_demand_points; ++b)
      instance.demand_to_demand_time.at(a, b) =
          a == b ? Rational(0) : centi(grid_distance(point_pos[a], point_pos[b], config.travel_speed));

  instance.validate();
  return instance;
}

}  // namespace emsloc
