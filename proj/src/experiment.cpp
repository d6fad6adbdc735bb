#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "coco/errors.hpp"
#include "coco/harness.hpp"

namespace coco {

using ordered_json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// Config JSON

namespace {

ordered_json descriptor_to_json(const InstanceDescriptor& d) {
  ordered_json j;
  j["kind"] = d.kind;
  j["dimension"] = d.dimension;
  j["path_budget"] = d.path_budget;
  j["nodes"] = d.nodes;
  j["edges"] = d.edges;
  j["rho"] = d.rho;
  j["latency_scale"] = {d.latency_scale_lo, d.latency_scale_hi};
  j["bandwidth_scale"] = {d.bandwidth_scale_lo, d.bandwidth_scale_hi};
  if (!d.graph_file.empty()) j["graph_file"] = d.graph_file;
  if (!d.rounds_file.empty()) j["rounds_file"] = d.rounds_file;
  return j;
}

InstanceDescriptor descriptor_from_json(const ordered_json& j) {
  InstanceDescriptor d;
  d.kind = j.value("kind", d.kind);
  d.dimension = j.value("dimension", d.dimension);
  d.path_budget = j.value("path_budget", d.path_budget);
  d.nodes = j.value("nodes", d.nodes);
  d.edges = j.value("edges", d.edges);
  d.rho = j.value("rho", d.rho);
  if (j.contains("latency_scale")) {
    d.latency_scale_lo = j["latency_scale"][0].get<double>();
    d.latency_scale_hi = j["latency_scale"][1].get<double>();
  }
  if (j.contains("bandwidth_scale")) {
    d.bandwidth_scale_lo = j["bandwidth_scale"][0].get<double>();
    d.bandwidth_scale_hi = j["bandwidth_scale"][1].get<double>();
  }
  d.graph_file = j.value("graph_file", d.graph_file);
  d.rounds_file = j.value("rounds_file", d.rounds_file);
  return d;
}

}  // namespace

std::string config_to_json(const ExperimentConfig& c) {
  ordered_json j;
  j["algorithm"] = c.algorithm;
  j["instance"] = descriptor_to_json(c.instance);
  j["horizon"] = c.horizon;
  j["seed"] = c.seed;
  j["predictions"] = c.predictions;
  j["noise_sigma"] = c.noise_sigma;
  j["output_dir"] = c.output_dir;
  j["tolerances"] = {{"projection", c.tolerances.projection},
                     {"benchmark_feasibility", c.tolerances.benchmark_feasibility},
                     {"bound_slack", c.tolerances.bound_slack}};
  return j.dump(2);
}

ExperimentConfig config_from_json(const std::string& text) {
  ordered_json j = ordered_json::parse(text);
  ExperimentConfig c;
  c.algorithm = j.value("algorithm", c.algorithm);
  if (j.contains("instance")) c.instance = descriptor_from_json(j["instance"]);
  c.horizon = j.value("horizon", c.horizon);
  c.seed = j.value("seed", c.seed);
  c.predictions = j.value("predictions", c.predictions);
  c.noise_sigma = j.value("noise_sigma", c.noise_sigma);
  c.output_dir = j.value("output_dir", c.output_dir);
  if (j.contains("tolerances")) {
    const auto& t = j["tolerances"];
    c.tolerances.projection = t.value("projection", c.tolerances.projection);
    c.tolerances.benchmark_feasibility =
        t.value("benchmark_feasibility", c.tolerances.benchmark_feasibility);
    c.tolerances.bound_slack = t.value("bound_slack", c.tolerances.bound_slack);
  }
  return c;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("load_config: cannot open " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return config_from_json(buffer.str());
}

// ---------------------------------------------------------------------------
// Experiment driver

namespace {

void check_queue_invariants(const std::vector<RoundRecord>& records, Summary& summary) {
  double prev_lambda_q = 0.0;
  double prev_cum_gtilde = 0.0;
  double phase_base_gtilde = 0.0;  // running total when the current phase began
  int prev_phase = records.empty() ? -1 : records.front().phase;
  for (const RoundRecord& rec : records) {
    if (rec.phase != prev_phase) {  // doubling restart forgets the queue
      prev_lambda_q = 0.0;
      phase_base_gtilde = prev_cum_gtilde;
      prev_phase = rec.phase;
    }
    if (rec.lambda_q < prev_lambda_q - 1e-12) summary.queue_ok = false;
    prev_lambda_q = rec.lambda_q;
    // CCV domination in pre-processed units, per phase under doubling
    const double phase_gtilde = rec.cum_gtilde - (rec.phase >= 0 ? phase_base_gtilde : 0.0);
    if (phase_gtilde > rec.q + 1e-9) summary.queue_ok = false;
    prev_cum_gtilde = rec.cum_gtilde;
  }
}

}  // namespace

ExperimentResult run_experiment(const ExperimentConfig& config,
                                const BenchmarkResult* precomputed_benchmark) {
  const auto start_time = std::chrono::steady_clock::now();
  Instance instance = materialize_instance(config);
  const bool optimistic = config.algorithm == "optimistic";
  if (optimistic)
    attach_predictions(instance, config.predictions, config.noise_sigma, config.seed);

  ProblemSpec spec =
      make_problem_spec(*instance.set, instance.lipschitz,
                        instance.path_env ? config.tolerances.projection : 1e-9);
  if (instance.path_env) {
    // start (and restart) from the minimum-hop route, the no-information
    // default on a hub network
    const Graph& graph = instance.path_env->graph;
    const std::vector<int> hop_path = dijkstra(graph, Vec(Vec::Ones(graph.edge_count())));
    Vec start = Vec::Zero(graph.edge_count());
    for (int e : hop_path) start(e) = 1.0;
    spec.initial_point = std::move(start);
  }
  const std::int64_t horizon = config.horizon;
  if (horizon != instance.horizon())
    throw InvalidInput("run_experiment: instance and config horizons disagree");

  BenchmarkOptions bench_options;
  bench_options.feasibility_tol = config.tolerances.benchmark_feasibility;
  bench_options.projection_tol = instance.path_env ? 10.0 * config.tolerances.projection : 1e-6;

  ExperimentResult result;
  result.records.reserve(static_cast<size_t>(horizon));
  Summary& summary = result.summary;
  summary.algorithm = config.algorithm;
  summary.horizon = horizon;
  summary.seed = config.seed;
  summary.lipschitz = spec.lipschitz;
  summary.diameter = spec.diameter;
  summary.alpha = spec.alpha();
  summary.projection_tol = spec.projection_tol;

  const bool is_dynamic = config.algorithm == "dynamic";

  CocoState state = [&] {
    if (config.algorithm == "anytime") return make_anytime_state(spec);
    if (config.algorithm == "dynamic") return make_dynamic_state(spec);
    if (config.algorithm == "fixed-horizon") return make_fixed_horizon_state(spec, horizon);
    if (config.algorithm == "doubling") return make_doubling_state(spec);
    if (config.algorithm == "optimistic")
      return make_optimistic_state(spec, &instance.pred_costs.front(),
                                   &instance.pred_constraints.front());
    throw InvalidInput("run_experiment: unknown algorithm '" + config.algorithm + "'");
  }();

  ComparatorSolver comparator = [&](const FunctionOracle& f, const FunctionOracle& g) {
    return compute_dynamic_comparator(f, g, *instance.set, bench_options);
  };
  FunctionOracle zero_pred = make_constant(0.0, instance.set->dimension());
  zero_pred.lipschitz = instance.lipschitz;

  try {
  for (std::int64_t t = 1; t <= horizon; ++t) {
    const auto& f = instance.costs[static_cast<size_t>(t - 1)];
    const auto& g = instance.constraints[static_cast<size_t>(t - 1)];
    std::pair<CocoState, RoundRecord> step = [&] {
      if (config.algorithm == "anytime") return anytime_round(std::move(state), f, g, spec);
      if (config.algorithm == "dynamic")
        return dynamic_round(std::move(state), f, g, spec, comparator);
      if (config.algorithm == "fixed-horizon")
        return fixed_horizon_round(std::move(state), f, g, spec);
      if (config.algorithm == "doubling") return doubling_round(std::move(state), f, g, spec);
      const FunctionOracle& pf =
          t < horizon ? instance.pred_costs[static_cast<size_t>(t)] : zero_pred;
      const FunctionOracle& pg =
          t < horizon ? instance.pred_constraints[static_cast<size_t>(t)] : zero_pred;
      return optimistic_round(std::move(state), f, g, pf, pg, spec);
    }();
    state = std::move(step.first);
    result.records.push_back(std::move(step.second));
  }
  } catch (const InfeasibleBenchmark& e) {  // a comparator round came up empty
    summary.error = e.what();
    summary.error_kind = "infeasible";
  } catch (const ConvergenceFailure& e) {
    summary.error = e.what();
    summary.error_kind = "convergence";
  }

  // ---------------------------------------------------------------- regret
  double effective_gap = 0.0;
  if (!summary.error.empty()) {
    // aborted mid-run: keep the partial records, skip the post-hoc series
    summary.final_ccv = result.records.empty() ? 0.0 : result.records.back().cum_ccv;
    return result;
  }
  if (is_dynamic) {
    double cum_cost = 0.0, cum_comp = 0.0;
    for (RoundRecord& rec : result.records) {
      cum_cost += rec.cost;
      cum_comp += instance.costs[static_cast<size_t>(rec.t - 1)].value(rec.comparator);
      rec.cum_regret = cum_cost - cum_comp;
    }
    summary.benchmark_available = true;
    summary.benchmark_objective = cum_comp;
    summary.benchmark_feasibility = 0.0;
    summary.benchmark_gap = 0.0;
  } else {
    try {
      const BenchmarkResult bench =
          precomputed_benchmark
              ? *precomputed_benchmark
              : compute_static_benchmark(instance.costs, instance.constraints, *instance.set,
                                         bench_options);
      summary.benchmark_available = true;
      summary.benchmark_objective = bench.objective;
      summary.benchmark_feasibility = bench.feasibility_residual;
      summary.benchmark_gap = bench.optimality_gap;
      // an exactly-feasible benchmark is itself a member of the comparator
      // set, so the theorem bounds need no optimality slack
      effective_gap = bench.feasibility_residual <= 0.0 ? 0.0 : bench.optimality_gap;
      double cum_cost = 0.0, cum_bench = 0.0;
      for (RoundRecord& rec : result.records) {
        cum_cost += rec.cost;
        cum_bench += instance.costs[static_cast<size_t>(rec.t - 1)].value(bench.x_star);
        rec.cum_regret = cum_cost - cum_bench;
      }
    } catch (const InfeasibleBenchmark&) {
      summary.benchmark_available = false;  // CCV metrics only
    }
  }

  // ---------------------------------------------------------------- checks
  check_queue_invariants(result.records, summary);
  for (const RoundRecord& rec : result.records)
    summary.max_lambda_q = std::max(summary.max_lambda_q, rec.lambda_q);

  const double slack = config.tolerances.bound_slack;
  const double big_g = spec.lipschitz;
  const double d = spec.diameter;
  summary.bounds_applicable = config.algorithm == "anytime" || is_dynamic || optimistic;
  if (summary.bounds_applicable) {
    for (const RoundRecord& rec : result.records) {
      double regret_bound = 0.0, ccv_bound = 0.0;
      bool regret_checkable = summary.benchmark_available && std::isfinite(rec.cum_regret);
      if (config.algorithm == "anytime") {
        regret_bound = anytime_regret_bound(rec.t, big_g, d) + effective_gap + slack;
        ccv_bound = anytime_ccv_bound(rec.t, big_g, d) + slack;
      } else if (is_dynamic) {
        regret_bound = dynamic_regret_bound(rec.t, rec.path_len, big_g, d) + slack;
        ccv_bound = dynamic_ccv_bound(rec.t, rec.path_len, big_g, d) + slack;
      } else {  // optimistic: envelope in pre-processed units
        const double bregman_bound = 0.5 * d * d;
        regret_bound =
            (optimistic_regret_envelope(rec.err_f, 1.0, bregman_bound, d) + slack) /
                summary.alpha +
            effective_gap;
        ccv_bound = std::numeric_limits<double>::infinity();  // CCV tracked via Q domination
      }
      if (regret_checkable && rec.cum_regret > regret_bound) {
        summary.regret_bound_ok = false;
        if (summary.first_regret_violation == 0) summary.first_regret_violation = rec.t;
      }
      if (rec.cum_ccv > ccv_bound) {
        summary.ccv_bound_ok = false;
        if (summary.first_ccv_violation == 0) summary.first_ccv_violation = rec.t;
      }
    }
  }

  if (!result.records.empty()) {
    summary.final_regret = result.records.back().cum_regret;
    summary.final_ccv = result.records.back().cum_ccv;
    if (optimistic) {
      summary.err_f_total = result.records.back().err_f;
      summary.err_g_total = result.records.back().err_g;
    }
  }
  summary.wall_time_ms = std::chrono::duration<double, std::milli>(
                             std::chrono::steady_clock::now() - start_time)
                             .count();
  return result;
}

// ---------------------------------------------------------------------------
// Outputs

const char* const kRoundsCsvHeader =
    "t,cost,violation,Q,lambda,eta,grad_norm,regret,ccv,path_len,eps_f,eps_g";

namespace {

std::string cell(double v) {
  if (std::isnan(v)) return "";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

ordered_json summary_to_json(const Summary& s) {
  ordered_json j;
  j["algorithm"] = s.algorithm;
  j["horizon"] = s.horizon;
  j["seed"] = s.seed;
  j["lipschitz"] = s.lipschitz;
  j["diameter"] = s.diameter;
  j["alpha"] = s.alpha;
  j["final_regret"] = s.final_regret;
  j["final_ccv"] = s.final_ccv;
  j["max_lambda_q"] = s.max_lambda_q;
  j["wall_time_ms"] = s.wall_time_ms;
  j["projection_tol"] = s.projection_tol;
  j["benchmark"] = {{"available", s.benchmark_available},
                    {"objective", s.benchmark_objective},
                    {"feasibility_residual", s.benchmark_feasibility},
                    {"optimality_gap", s.benchmark_gap}};
  j["checks"] = {{"queue_ok", s.queue_ok},
                 {"regret_bound_ok", s.regret_bound_ok},
                 {"ccv_bound_ok", s.ccv_bound_ok},
                 {"bounds_applicable", s.bounds_applicable},
                 {"first_regret_violation", s.first_regret_violation},
                 {"first_ccv_violation", s.first_ccv_violation}};
  if (!std::isnan(s.err_f_total)) {
    j["prediction_errors"] = {{"err_f_total", s.err_f_total}, {"err_g_total", s.err_g_total}};
  }
  if (!s.error.empty()) j["error"] = {{"kind", s.error_kind}, {"message", s.error}};
  return j;
}

}  // namespace

void emit_outputs(const std::vector<RoundRecord>& records, const Summary& summary,
                  const ExperimentConfig& config) {
  if (config.output_dir.empty()) throw IoError("emit_outputs: output_dir is empty");
  std::error_code ec;
  std::filesystem::create_directories(config.output_dir, ec);
  if (ec) throw IoError("emit_outputs: cannot create " + config.output_dir);
  const std::filesystem::path dir(config.output_dir);

  {
    std::ofstream csv(dir / "rounds.csv");
    if (!csv) throw IoError("emit_outputs: cannot open rounds.csv");
    csv << kRoundsCsvHeader << '\n';
    for (const RoundRecord& r : records) {
      csv << r.t << ',' << cell(r.cost) << ',' << cell(r.violation) << ',' << cell(r.q) << ','
          << cell(r.lambda) << ',' << cell(r.eta) << ',' << cell(r.grad_norm) << ','
          << cell(r.cum_regret) << ',' << cell(r.cum_ccv) << ',' << cell(r.path_len) << ','
          << cell(r.eps_f) << ',' << cell(r.eps_g) << '\n';
    }
    if (!csv.good()) throw IoError("emit_outputs: write failed for rounds.csv");
  }
  {
    std::ofstream csv(dir / "curves.csv");
    if (!csv) throw IoError("emit_outputs: cannot open curves.csv");
    csv << "t,regret,ccv\n";
    for (const RoundRecord& r : records)
      csv << r.t << ',' << cell(r.cum_regret) << ',' << cell(r.cum_ccv) << '\n';
    if (!csv.good()) throw IoError("emit_outputs: write failed for curves.csv");
  }
  {
    std::ofstream js(dir / "summary.json");
    if (!js) throw IoError("emit_outputs: cannot open summary.json");
    ordered_json j;
    j["config"] = ordered_json::parse(config_to_json(config));
    j["summary"] = summary_to_json(summary);
    js << j.dump(2) << '\n';
    if (!js.good()) throw IoError("emit_outputs: write failed for summary.json");
  }
}

// ---------------------------------------------------------------------------
// verify-bounds

namespace {

std::vector<std::vector<std::string>> read_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("verify_bounds: cannot open " + path.string());
  std::vector<std::vector<std::string>> rows;
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> row;
    std::string field;
    std::stringstream ss(line);
    while (std::getline(ss, field, ',')) row.push_back(field);
    if (!line.empty() && line.back() == ',') row.push_back("");
    rows.push_back(std::move(row));
  }
  return rows;
}

double field_or_nan(const std::vector<std::string>& row, size_t i) {
  if (i >= row.size() || row[i].empty()) return kUnset;
  return std::stod(row[i]);
}

}  // namespace

VerifyReport verify_bounds(const std::string& dir) {
  VerifyReport report;
  const std::filesystem::path base(dir);

  std::ifstream js(base / "summary.json");
  if (!js) throw IoError("verify_bounds: cannot open summary.json in " + dir);
  ordered_json j = ordered_json::parse(js);
  const std::string algorithm = j["summary"]["algorithm"].get<std::string>();
  const double big_g = j["summary"]["lipschitz"].get<double>();
  const double d = j["summary"]["diameter"].get<double>();
  const double alpha = j["summary"]["alpha"].get<double>();
  const bool bench_available = j["summary"]["benchmark"]["available"].get<bool>();
  const double bench_residual =
      j["summary"]["benchmark"]["feasibility_residual"].get<double>();
  const double bench_gap = j["summary"]["benchmark"]["optimality_gap"].get<double>();
  const double slack = j["config"]["tolerances"]["bound_slack"].get<double>();
  const double effective_gap = bench_residual <= 0.0 ? 0.0 : bench_gap;

  auto rows = read_csv(base / "rounds.csv");
  if (rows.empty() || rows.front().empty() ||
      (rows.front()[0] != "t"))
    throw IoError("verify_bounds: rounds.csv missing its header");
  rows.erase(rows.begin());

  double prev_ccv = 0.0;
  double running_violation = 0.0;
  double err_f_running = 0.0;
  const bool doubling = algorithm == "doubling";
  for (const auto& row : rows) {
    const std::int64_t t = static_cast<std::int64_t>(field_or_nan(row, 0));
    const double violation = field_or_nan(row, 2);
    const double q = field_or_nan(row, 3);
    const double regret = field_or_nan(row, 7);
    const double ccv = field_or_nan(row, 8);
    const double path_len = field_or_nan(row, 9);
    const double eps_f = field_or_nan(row, 10);

    running_violation += violation;
    if (ccv != running_violation)
      report.violations.push_back("t=" + std::to_string(t) +
                                  ": cumulative CCV differs from the violation prefix sum");
    if (ccv < prev_ccv)
      report.violations.push_back("t=" + std::to_string(t) + ": cumulative CCV decreased");
    prev_ccv = ccv;

    if (!doubling && alpha * ccv > q + 1e-9)
      report.violations.push_back("t=" + std::to_string(t) + ": CCV exceeds the virtual queue");

    if (algorithm == "anytime" && bench_available && !std::isnan(regret)) {
      if (regret > anytime_regret_bound(t, big_g, d) + effective_gap + slack)
        report.violations.push_back("t=" + std::to_string(t) + ": regret bound violated");
      if (ccv > anytime_ccv_bound(t, big_g, d) + slack)
        report.violations.push_back("t=" + std::to_string(t) + ": CCV bound violated");
    }
    if (algorithm == "dynamic" && !std::isnan(regret) && !std::isnan(path_len)) {
      if (regret > dynamic_regret_bound(t, path_len, big_g, d) + slack)
        report.violations.push_back("t=" + std::to_string(t) + ": dynamic regret bound violated");
      if (ccv > dynamic_ccv_bound(t, path_len, big_g, d) + slack)
        report.violations.push_back("t=" + std::to_string(t) + ": dynamic CCV bound violated");
    }
    if (algorithm == "optimistic" && bench_available && !std::isnan(regret) &&
        !std::isnan(eps_f)) {
      err_f_running += eps_f;
      const double envelope =
          (optimistic_regret_envelope(err_f_running, 1.0, 0.5 * d * d, d) + slack) / alpha +
          effective_gap;
      if (regret > envelope)
        report.violations.push_back("t=" + std::to_string(t) +
                                    ": optimistic regret envelope violated");
    }
  }
  report.ok = report.violations.empty();
  return report;
}

}  // namespace coco
