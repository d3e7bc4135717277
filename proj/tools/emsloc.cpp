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

#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>

#include "emsloc/errors.hpp"
#include "emsloc/pareto.hpp"
#include "emsloc/scenario.hpp"
#include "emsloc/solver.hpp"

namespace fs = std::filesystem;
using namespace emsloc;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvalidInput = 2;
constexpr int kExitInfeasible = 3;
constexpr int kExitTimeLimit = 4;

struct CommonOptions {
  std::string out_dir = "emsloc-out";
  bool quiet = false;
  std::uint64_t seed = 0;
  int jobs = 1;
};

std::string join_args(int argc, char** argv) {
  std::string joined;
  for (int n = 0; n < argc; ++n) {
    if (n) joined += ' ';
    joined += argv[n];
  }
  return joined;
}

void write_text(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out << content;
  out.flush();
  if (!out) throw IoError("write failure on '" + path.string() + "'");
}

std::string escape_quotes(const std::string& text) {
  std::string out;
  for (char c : text) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

// Every output directory carries exactly one manifest. wall_time_ms is the
// only field excluded from byte-level reproducibility.
void write_manifest(const fs::path& dir, const std::string& command_line,
                    const std::string& config_hash, const std::string& instance_fingerprint,
                    std::uint64_t seed, double wall_seconds) {
  std::string out = "{\n";
  out += "\"command_line\": \"" + escape_quotes(command_line) + "\",\n";
  out += "\"config_hash\": \"" + config_hash + "\",\n";
  out += "\"instance_fingerprint\": \"" + instance_fingerprint + "\",\n";
  out += "\"seed\": " + std::to_string(seed) + ",\n";
  out += "\"tool_version\": \"" EMSLOC_VERSION "\",\n";
  out += "\"wall_time_ms\": " + std::to_string(static_cast<long long>(wall_seconds * 1000.0)) +
         "\n}\n";
  write_text(dir / "manifest.json", out);
}

void emit_path(const CommonOptions& common, const fs::path& path, const std::string& label) {
  if (common.quiet) {
    std::cout << path.string() << "\n";
  } else {
    std::cout << label << ": " << path.string() << "\n";
  }
}

std::string resolve_config_path(const std::string& given) {
  if (fs::exists(given)) return given;
  const char* config_dir = std::getenv("EMSLOC_CONFIG_DIR");
  if (config_dir != nullptr) {
    fs::path candidate = fs::path(config_dir) / given;
    if (fs::exists(candidate)) return candidate.string();
  }
  return given;  // let the loader report the miss
}

std::vector<int> parse_site_list(const std::string& text) {
  std::vector<int> sites;
  std::stringstream in(text);
  std::string piece;
  while (std::getline(in, piece, ',')) {
    if (piece.empty()) continue;
    sites.push_back(std::stoi(piece));
  }
  return sites;
}

std::string plan_report(const Instance& instance, const Plan& plan, const std::string& model_name,
                        SolveStatus status) {
  std::string out;
  out += "model: " + model_name + "\n";
  out += "status: " + solve_status_name(status) + "\n";
  out += "stations installed: " + std::to_string(plan.stations_used()) + "\n";
  out += "objective: " + rational_to_string(plan.objective) + "\n";
  char buf[64];
  for (int u = 0; u < instance.num_types(); ++u) {
    std::snprintf(buf, sizeof(buf), "coverage rate %s: %.2f%%\n",
                  instance.ambulance_types[u].label.c_str(),
                  100.0 * rational_to_double(plan.coverage_rate_per_type[u]));
    out += buf;
  }
  std::snprintf(buf, sizeof(buf), "total coverage rate: %.2f%%\n",
                100.0 * rational_to_double(plan.coverage_rate_total));
  out += buf;
  return out;
}

// Shared model assembly for solve / export-mps / import-solution.
struct ModelRequest {
  std::string instance_path;
  std::string model_name = "fleet-ict";
  int epsilon = -1;  // <0: no budget row
  std::string baseline_path;
  std::string fix_mode = "z";  // z | zx
  std::string mandatory;
  bool dump_reliability = false;
};

struct AssembledModel {
  Instance instance;
  ModelSpec model;
  std::string reliability_csv;
};

AssembledModel assemble(const ModelRequest& request) {
  AssembledModel result;
  result.instance = load_instance(request.instance_path);
  ModelKind kind = model_kind_from_name(request.model_name);
  CoverageSets sets = build_coverage_sets(result.instance);
  ReliabilityTable table;
  if (model_kind_is_probabilistic(kind) || request.dump_reliability)
    table = build_reliability_table(result.instance, sets);
  result.model = build_model(kind, result.instance, sets, table);
  if (request.dump_reliability) result.reliability_csv = table.to_csv();

  if (!request.baseline_path.empty()) {
    Plan baseline = baseline_plan_load(request.baseline_path, result.instance);
    FixMode mode = request.fix_mode == "zx" ? FixMode::kZAndX : FixMode::kZOnly;
    result.model = fix_variables(std::move(result.model), baseline, mode);
  }
  if (!request.mandatory.empty()) {
    Plan mandatory = Plan::empty(result.instance, result.model.dims.num_periods);
    for (int j : parse_site_list(request.mandatory)) mandatory.opened.insert(j);
    result.model = fix_variables(std::move(result.model), mandatory, FixMode::kOpenOnly);
  }
  if (request.epsilon >= 0) result.model = add_epsilon_constraint(std::move(result.model),
                                                                  request.epsilon);
  return result;
}

int status_exit_code(SolveStatus status) {
  switch (status) {
    case SolveStatus::kInfeasible: return kExitInfeasible;
    case SolveStatus::kTimeLimit: return kExitTimeLimit;
    default: return kExitOk;
  }
}

// ---- subcommands -------------------------------------------------------

int cmd_generate(const CommonOptions& common, const std::string& command_line,
                 const GeneratorConfig& config) {
  auto start = std::chrono::steady_clock::now();
  Instance instance = generate_instance(config);
  fs::create_directories(common.out_dir);
  fs::path instance_path = fs::path(common.out_dir) / "instance.json";
  save_instance(instance, instance_path.string());
  double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  write_manifest(common.out_dir, command_line, config.fingerprint(), instance.fingerprint(),
                 config.seed, wall);
  emit_path(common, instance_path, "instance");
  if (!common.quiet)
    std::cout << "generated |I|=" << instance.num_points() << " |J|=" << instance.num_sites()
              << " |T|=" << instance.num_periods << " fingerprint " << instance.fingerprint()
              << "\n";
  return kExitOk;
}

int cmd_solve(const CommonOptions& common, const std::string& command_line,
              const ModelRequest& request, const std::string& method, double time_limit,
              std::uint64_t budget) {
  auto start = std::chrono::steady_clock::now();
  AssembledModel assembled = assemble(request);
  fs::create_directories(common.out_dir);

  if (request.dump_reliability) {
    fs::path csv_path = fs::path(common.out_dir) / "reliability.csv";
    write_text(csv_path, assembled.reliability_csv);
    emit_path(common, csv_path, "reliability");
  }

  if (method == "export") {
    fs::path mps_path = fs::path(common.out_dir) / "model.mps";
    export_mps(assembled.model, mps_path.string());
    double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    write_manifest(common.out_dir, command_line, hex64(fnv1a64(command_line)),
                   assembled.model.instance_fingerprint, common.seed, wall);
    emit_path(common, mps_path, "mps");
    return kExitOk;
  }

  Solution solution;
  if (method == "exact") {
    solution = solve_exact(assembled.model, time_limit);
  } else if (method == "heuristic") {
    solution = solve_heuristic(assembled.model, common.seed, budget);
  } else {
    throw ValidationError("unknown method '" + method + "' (expected exact, heuristic or export)");
  }

  if (solution.status == SolveStatus::kInfeasible) {
    std::cerr << "infeasible: the fixed variables contradict the constraints\n";
    double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    write_manifest(common.out_dir, command_line, hex64(fnv1a64(command_line)),
                   assembled.model.instance_fingerprint, common.seed, wall);
    return kExitInfeasible;
  }

  Plan plan = decode(solution, assembled.instance, assembled.model);
  fs::path plan_path = fs::path(common.out_dir) / "plan.json";
  save_plan(plan, plan_path.string());
  fs::path report_path = fs::path(common.out_dir) / "report.txt";
  write_text(report_path, plan_report(assembled.instance, plan, assembled.model.name,
                                      solution.status));

  double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  write_manifest(common.out_dir, command_line, hex64(fnv1a64(command_line)),
                 assembled.model.instance_fingerprint, common.seed, wall);
  emit_path(common, plan_path, "plan");
  emit_path(common, report_path, "report");
  if (!common.quiet)
    std::cout << "status " << solve_status_name(solution.status) << ", objective "
              << rational_to_string(solution.objective) << ", nodes " << solution.stats.nodes
              << "\n";
  return status_exit_code(solution.status);
}

int cmd_sweep(const CommonOptions& common, const std::string& command_line,
              const std::string& instance_path, const std::string& model_name, int eps_min,
              int eps_max, const std::string& method, double time_limit, std::uint64_t budget,
              bool no_warm_start, const std::string& mandatory, double knee_threshold) {
  auto start = std::chrono::steady_clock::now();
  Instance instance = load_instance(instance_path);
  ModelKind kind = model_kind_from_name(model_name);

  SweepConfig config;
  config.method = method == "exact" ? SolveMethod::kExact : SolveMethod::kHeuristic;
  if (method != "exact" && method != "heuristic")
    throw ValidationError("unknown method '" + method + "' (expected exact or heuristic)");
  config.time_limit_seconds = time_limit;
  config.seed = common.seed;
  config.budget = budget;
  config.warm_start = !no_warm_start;
  if (!mandatory.empty()) config.mandatory_sites = parse_site_list(mandatory);

  if (eps_min < 0) eps_min = compute_eps_min(instance);
  if (eps_max < 0) {
    // Default upper end: stations opened by an unconstrained solve.
    CoverageSets sets = build_coverage_sets(instance);
    ReliabilityTable table;
    if (model_kind_is_probabilistic(kind)) table = build_reliability_table(instance, sets);
    ModelSpec unconstrained = build_model(kind, instance, sets, table);
    Solution solution = config.method == SolveMethod::kExact
                            ? solve_exact(unconstrained, time_limit)
                            : solve_heuristic(unconstrained, common.seed, budget);
    Plan plan = decode(solution, instance, unconstrained);
    eps_max = std::max(eps_min, plan.stations_used());
  }

  ParetoFront front;
  if (common.jobs > 1 && !config.warm_start) {
    // Independent epsilons; shard the range across jobs and merge.
    int span = eps_max - eps_min + 1;
    int shard = (span + common.jobs - 1) / common.jobs;
    std::vector<std::future<ParetoFront>> futures;
    for (int lo = eps_min; lo <= eps_max; lo += shard) {
      int hi = std::min(eps_max, lo + shard - 1);
      futures.push_back(std::async(std::launch::async, [&, lo, hi] {
        return sweep(instance, kind, lo, hi, config);
      }));
    }
    for (auto& future : futures) {
      ParetoFront part = future.get();
      front.model_name = part.model_name;
      front.instance_fingerprint = part.instance_fingerprint;
      for (ParetoPoint& point : part.raw) front.raw.push_back(std::move(point));
    }
    front.points = filter_nondominated(front.raw);
  } else {
    front = sweep(instance, kind, eps_min, eps_max, config);
  }

  fs::create_directories(common.out_dir);
  fs::path front_path = fs::path(common.out_dir) / "front.csv";
  write_text(front_path, front_csv(front, instance, front.points));
  fs::path raw_path = fs::path(common.out_dir) / "sweep_raw.csv";
  write_text(raw_path, front_csv(front, instance, front.raw));

  for (const ParetoPoint& point : front.points) {
    fs::path plan_path =
        fs::path(common.out_dir) / ("plan_eps_" + std::to_string(point.epsilon) + ".json");
    save_plan(point.plan, plan_path.string());
  }

  std::string summary = "{\n\"model\": \"" + front.model_name + "\",\n";
  summary += "\"eps_min\": " + std::to_string(eps_min) + ",\n";
  summary += "\"eps_max\": " + std::to_string(eps_max) + ",\n";
  summary += "\"front_size\": " + std::to_string(front.points.size()) + ",\n";
  auto knee = knee_epsilon(front, knee_threshold);
  summary += "\"knee_threshold\": " + shortest_double_string(knee_threshold) + ",\n";
  summary += "\"knee_epsilon\": " + (knee ? std::to_string(*knee) : std::string("null")) + "\n}\n";
  fs::path summary_path = fs::path(common.out_dir) / "summary.json";
  write_text(summary_path, summary);

  double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  write_manifest(common.out_dir, command_line, hex64(fnv1a64(command_line)),
                 front.instance_fingerprint, common.seed, wall);

  emit_path(common, front_path, "front");
  emit_path(common, raw_path, "raw");
  emit_path(common, summary_path, "summary");
  if (!common.quiet) {
    std::cout << "front points: " << front.points.size() << " over eps " << eps_min << ".."
              << eps_max << "\n";
    if (knee) std::cout << "knee epsilon (threshold " << knee_threshold << "): " << *knee << "\n";
  }
  return kExitOk;
}

int cmd_scenario(const CommonOptions& common, const std::string& command_line,
                 const std::string& instance_path, const std::string& baseline_path,
                 const std::string& scenarios_text, const std::string& model_choice,
                 const std::string& method, double time_limit, std::uint64_t budget) {
  auto start = std::chrono::steady_clock::now();
  Instance instance = load_instance(instance_path);

  std::vector<ScenarioId> ids;
  {
    std::stringstream in(scenarios_text);
    std::string piece;
    while (std::getline(in, piece, ',')) {
      if (piece.empty()) continue;
      ids.push_back(scenario_from_name(piece));
    }
  }
  if (ids.empty()) throw ValidationError("no scenarios requested");

  std::vector<ScenarioModel> kinds;
  if (model_choice == "deterministic" || model_choice == "both")
    kinds.push_back(ScenarioModel::kDeterministic);
  if (model_choice == "probabilistic" || model_choice == "both")
    kinds.push_back(ScenarioModel::kProbabilistic);
  if (kinds.empty())
    throw ValidationError("unknown model '" + model_choice +
                          "' (expected deterministic, probabilistic or both)");

  bool needs_baseline = false;
  for (ScenarioId id : ids)
    if (id == ScenarioId::kS1 || id == ScenarioId::kS2 || id == ScenarioId::kS3)
      needs_baseline = true;
  Plan baseline;
  if (needs_baseline) {
    if (baseline_path.empty())
      throw ValidationError("scenarios S1-S3 require --baseline");
    baseline = baseline_plan_load(baseline_path, instance);
  }

  ScenarioSolverConfig config;
  config.method = method == "exact" ? SolveMethod::kExact : SolveMethod::kHeuristic;
  if (method != "exact" && method != "heuristic")
    throw ValidationError("unknown method '" + method + "' (expected exact or heuristic)");
  config.time_limit_seconds = time_limit;
  config.seed = common.seed;
  config.budget = budget;

  struct Job {
    ScenarioModel kind;
    ScenarioId id;
  };
  std::vector<Job> jobs;
  for (ScenarioModel kind : kinds)
    for (ScenarioId id : ids) jobs.push_back({kind, id});

  std::vector<ScenarioRow> rows(jobs.size());
  auto run_one = [&](size_t n) {
    ScenarioSpec spec = ScenarioSpec::standard(jobs[n].id, jobs[n].kind,
                                               needs_baseline ? &baseline : nullptr);
    rows[n] = run_scenario(instance, spec, config);
  };
  if (common.jobs > 1) {
    std::vector<std::future<void>> futures;
    for (size_t n = 0; n < jobs.size(); ++n)
      futures.push_back(std::async(std::launch::async, run_one, n));
    for (auto& future : futures) future.get();
  } else {
    for (size_t n = 0; n < jobs.size(); ++n) run_one(n);
  }

  fs::create_directories(common.out_dir);
  fs::path csv_path = fs::path(common.out_dir) / "scenario_report.csv";
  write_text(csv_path, scenario_csv(rows, instance));
  fs::path md_path = fs::path(common.out_dir) / "scenario_report.md";
  std::string markdown;
  for (ScenarioModel kind : kinds) {
    std::vector<ScenarioRow> of_kind;
    for (const ScenarioRow& row : rows)
      if (row.model_kind == kind) of_kind.push_back(row);
    markdown += kind == ScenarioModel::kDeterministic ? "## FLEET-ICt results\n\n"
                                                      : "## LR-MEXCLP-ICt results\n\n";
    markdown += scenario_markdown(of_kind, instance) + "\n";
  }
  write_text(md_path, markdown);
  fs::path cmp_path = fs::path(common.out_dir) / "comparison.csv";
  write_text(cmp_path, comparison_csv(compare(rows)));

  double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  write_manifest(common.out_dir, command_line, hex64(fnv1a64(command_line)),
                 instance.fingerprint(), common.seed, wall);
  emit_path(common, csv_path, "report-csv");
  emit_path(common, md_path, "report-md");
  emit_path(common, cmp_path, "comparison");
  return kExitOk;
}

int cmd_import_solution(const CommonOptions& common, const std::string& command_line,
                        const ModelRequest& request, const std::string& solution_path) {
  auto start = std::chrono::steady_clock::now();
  AssembledModel assembled = assemble(request);
  Solution solution = import_solution(solution_path, assembled.model);
  Plan plan = decode(solution, assembled.instance, assembled.model);

  fs::create_directories(common.out_dir);
  fs::path plan_path = fs::path(common.out_dir) / "plan.json";
  save_plan(plan, plan_path.string());
  fs::path report_path = fs::path(common.out_dir) / "report.txt";
  write_text(report_path, plan_report(assembled.instance, plan, assembled.model.name,
                                      solution.status));
  double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  write_manifest(common.out_dir, command_line, hex64(fnv1a64(command_line)),
                 assembled.model.instance_fingerprint, common.seed, wall);
  emit_path(common, plan_path, "plan");
  emit_path(common, report_path, "report");
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  const std::string command_line = join_args(argc, argv);

  CLI::App app{"emsloc: multi-period ambulance location models, exact and heuristic"};
  app.require_subcommand(1);

  CommonOptions common;
  app.add_option("--out", common.out_dir, "Output directory (one manifest per run)");
  app.add_flag("--quiet", common.quiet, "Emit only artifact paths");
  app.add_option("--seed", common.seed, "Seed for every random choice");
  app.add_option("--jobs", common.jobs, "Parallel workers where solves are independent");

  // generate
  auto* generate = app.add_subcommand("generate", "Write a synthetic instance");
  std::string config_path;
  GeneratorConfig gen_config;
  std::string profile = "two-peak-diurnal", spatial = "clustered";
  generate->add_option("--config", config_path, "Generator config JSON (searched in "
                                                "$EMSLOC_CONFIG_DIR as fallback)");
  generate->add_option("--points", gen_config.num_demand_points, "Demand points");
  generate->add_option("--sites", gen_config.num_sites, "Candidate sites");
  generate->add_option("--periods", gen_config.num_periods, "Periods");
  generate->add_option("--profile", profile, "uniform | two-peak-diurnal");
  generate->add_option("--spatial", spatial, "uniform-square | clustered");
  generate->add_option("--capacity", gen_config.site_capacity, "Site capacity C_j");
  generate->add_option("--k-max", gen_config.k_max, "Maximum covering servers k_max");
  generate->add_option("--demand-scale-centi", gen_config.demand_scale_centi,
                       "Mean demand per (point,type,period), hundredths");
  generate->add_option("--area-centiminutes", gen_config.area_centiminutes,
                       "Planning square side, hundredths of a minute");
  generate->add_option("--speed", gen_config.travel_speed, "Travel speed divisor");

  // solve
  auto* solve = app.add_subcommand("solve", "Build and solve one model");
  ModelRequest solve_request;
  std::string solve_method = "exact";
  double solve_time_limit = 0.0;
  std::uint64_t solve_budget = 5'000'000;
  solve->add_option("--instance", solve_request.instance_path, "Instance JSON")->required();
  solve->add_option("--model", solve_request.model_name,
                    "fleet-ict | lr-mexclp-ict | fleet-static | lr-mexclp-static");
  solve->add_option("--method", solve_method, "exact | heuristic | export");
  solve->add_option("--epsilon", solve_request.epsilon, "Station budget (omit for none)");
  solve->add_option("--time-limit", solve_time_limit, "Seconds; 0 = unlimited");
  solve->add_option("--budget", solve_budget, "Heuristic move-evaluation budget");
  solve->add_option("--baseline", solve_request.baseline_path, "Baseline plan JSON to fix");
  solve->add_option("--fix", solve_request.fix_mode, "z | zx (what the baseline pins)");
  solve->add_option("--mandatory", solve_request.mandatory, "Comma-separated site ids to open");
  solve->add_flag("--dump-reliability", solve_request.dump_reliability,
                  "Write reliability.csv (columns i,u,k,t,b,q)");

  // sweep
  auto* sweep_cmd = app.add_subcommand("sweep", "Epsilon-constraint Pareto sweep");
  std::string sweep_instance, sweep_model = "fleet-ict", sweep_method = "exact";
  std::string sweep_mandatory;
  int eps_min = -1, eps_max = -1;
  double sweep_time_limit = 0.0, knee_threshold = 0.0;
  std::uint64_t sweep_budget = 5'000'000;
  bool no_warm_start = false;
  sweep_cmd->add_option("--instance", sweep_instance, "Instance JSON")->required();
  sweep_cmd->add_option("--model", sweep_model, "Model kind");
  sweep_cmd->add_option("--eps-min", eps_min, "Defaults to the fleet-hosting bound");
  sweep_cmd->add_option("--eps-max", eps_max,
                        "Defaults to the stations opened by an unconstrained solve");
  sweep_cmd->add_option("--method", sweep_method, "exact | heuristic");
  sweep_cmd->add_option("--time-limit", sweep_time_limit, "Seconds per point; 0 = unlimited");
  sweep_cmd->add_option("--budget", sweep_budget, "Heuristic move-evaluation budget");
  sweep_cmd->add_flag("--no-warm-start", no_warm_start,
                      "Do not seed each point with the previous plan");
  sweep_cmd->add_option("--mandatory", sweep_mandatory, "Comma-separated site ids to open");
  sweep_cmd->add_option("--knee-threshold", knee_threshold,
                        "Marginal gain per station below which the front is flat");

  // scenario
  auto* scenario_cmd = app.add_subcommand("scenario", "Run the S1-S5 protocol");
  std::string scn_instance, scn_baseline, scn_list = "S1,S2,S3,S4,S5";
  std::string scn_model = "both", scn_method = "exact";
  double scn_time_limit = 0.0;
  std::uint64_t scn_budget = 5'000'000;
  scenario_cmd->add_option("--instance", scn_instance, "Instance JSON")->required();
  scenario_cmd->add_option("--baseline", scn_baseline, "Baseline plan (S1-S3)");
  scenario_cmd->add_option("--scenarios", scn_list, "Comma-separated subset of S1..S5");
  scenario_cmd->add_option("--model", scn_model, "deterministic | probabilistic | both");
  scenario_cmd->add_option("--method", scn_method, "exact | heuristic");
  scenario_cmd->add_option("--time-limit", scn_time_limit, "Seconds per solve; 0 = unlimited");
  scenario_cmd->add_option("--budget", scn_budget, "Heuristic move-evaluation budget");

  // export-mps
  auto* export_cmd = app.add_subcommand("export-mps", "Write the model as fixed-format MPS");
  ModelRequest export_request;
  export_cmd->add_option("--instance", export_request.instance_path, "Instance JSON")->required();
  export_cmd->add_option("--model", export_request.model_name, "Model kind");
  export_cmd->add_option("--epsilon", export_request.epsilon, "Station budget (omit for none)");
  export_cmd->add_option("--baseline", export_request.baseline_path, "Baseline plan to fix");
  export_cmd->add_option("--fix", export_request.fix_mode, "z | zx");
  export_cmd->add_option("--mandatory", export_request.mandatory, "Sites to force open");

  // import-solution
  auto* import_cmd = app.add_subcommand("import-solution",
                                        "Audit an external solver's 'name value' file");
  ModelRequest import_request;
  std::string solution_path;
  import_cmd->add_option("--instance", import_request.instance_path, "Instance JSON")->required();
  import_cmd->add_option("--model", import_request.model_name, "Model kind");
  import_cmd->add_option("--epsilon", import_request.epsilon, "Station budget used at export");
  import_cmd->add_option("--baseline", import_request.baseline_path, "Baseline plan fixed");
  import_cmd->add_option("--fix", import_request.fix_mode, "z | zx");
  import_cmd->add_option("--mandatory", import_request.mandatory, "Sites forced open");
  import_cmd->add_option("--solution", solution_path, "Solution file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    int code = app.exit(err);
    return code == 0 ? kExitOk : kExitInvalidInput;
  }

  try {
    if (generate->parsed()) {
      if (!config_path.empty()) {
        gen_config = load_generator_config(resolve_config_path(config_path));
      } else {
        gen_config.demand_profile = profile == "uniform" ? DemandProfile::kUniform
                                                         : DemandProfile::kTwoPeakDiurnal;
        gen_config.spatial_model = spatial == "uniform-square" ? SpatialModel::kUniformSquare
                                                               : SpatialModel::kClustered;
      }
      gen_config.seed = common.seed;
      return cmd_generate(common, command_line, gen_config);
    }
    if (solve->parsed())
      return cmd_solve(common, command_line, solve_request, solve_method, solve_time_limit,
                       solve_budget);
    if (sweep_cmd->parsed())
      return cmd_sweep(common, command_line, sweep_instance, sweep_model, eps_min, eps_max,
                       sweep_method, sweep_time_limit, sweep_budget, no_warm_start,
                       sweep_mandatory, knee_threshold);
    if (scenario_cmd->parsed())
      return cmd_scenario(common, command_line, scn_instance, scn_baseline, scn_list, scn_model,
                          scn_method, scn_time_limit, scn_budget);
    if (export_cmd->parsed()) {
      ModelRequest request = export_request;
      return cmd_solve(common, command_line, request, "export", 0.0, 0);
    }
    if (import_cmd->parsed())
      return cmd_import_solution(common, command_line, import_request, solution_path);
  } catch (const ParseError& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kExitInvalidInput;
  } catch (const ValidationError& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kExitInvalidInput;
  } catch (const AuditError& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kExitInvalidInput;
  } catch (const IoError& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kExitInvalidInput;
  } catch (const Error& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kExitInvalidInput;
  }
  return kExitInvalidInput;
}
