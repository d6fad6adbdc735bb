// Command-line driver: run single experiments, compare algorithms on a shared
// instance, export shortest-path instances, and re-verify recorded runs.

#include <cstdio>
#include <filesystem>
#include <future>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "coco/errors.hpp"
#include "coco/harness.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitBoundViolation = 2;
constexpr int kExitInfeasibleBenchmark = 3;
constexpr int kExitConvergenceFailure = 4;

void print_summary(const coco::Summary& s) {
  std::printf("%-14s T=%-7lld seed-run  regret=%.6g  ccv=%.6g  maxLambdaQ=%.4g  %.0f ms\n",
              s.algorithm.c_str(), static_cast<long long>(s.horizon), s.final_regret,
              s.final_ccv, s.max_lambda_q, s.wall_time_ms);
  if (!s.benchmark_available)
    std::printf("  benchmark: infeasible (CCV metrics only)\n");
  else
    std::printf("  benchmark: obj=%.6g residual=%.3g gap=%.3g\n", s.benchmark_objective,
                s.benchmark_feasibility, s.benchmark_gap);
  std::printf("  checks: queue=%s regret_bound=%s ccv_bound=%s%s\n", s.queue_ok ? "ok" : "FAIL",
              s.regret_bound_ok ? "ok" : "FAIL", s.ccv_bound_ok ? "ok" : "FAIL",
              s.bounds_applicable ? "" : " (no anytime theorem for this baseline)");
}

int run_one(const std::string& config_path, const std::string& out_override) {
  coco::ExperimentConfig config = coco::load_config(config_path);
  if (!out_override.empty()) config.output_dir = out_override;
  if (config.output_dir.empty())
    config.output_dir = (std::filesystem::path("out") / config.algorithm).string();
  coco::ExperimentResult result = coco::run_experiment(config);
  coco::emit_outputs(result.records, result.summary, config);  // partial on failure
  print_summary(result.summary);
  std::printf("  outputs: %s\n", config.output_dir.c_str());
  if (!result.summary.error.empty()) {
    std::fprintf(stderr, "run aborted: %s\n", result.summary.error.c_str());
    if (result.summary.error_kind == "infeasible") return kExitInfeasibleBenchmark;
    if (result.summary.error_kind == "convergence") return kExitConvergenceFailure;
    return 1;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Constrained online convex optimization harness"};
  app.require_subcommand(1);

  std::string config_path, out_dir;
  auto* run = app.add_subcommand("run", "Run one experiment from a JSON config");
  run->add_option("--config", config_path, "Path to the config file")->required();
  run->add_option("--out", out_dir, "Override the output directory");

  std::vector<std::string> config_paths;
  std::string compare_out;
  auto* compare = app.add_subcommand("compare", "Run several configs concurrently");
  compare->add_option("--configs", config_paths, "Config files")->required()->expected(-1);
  compare->add_option("--out", compare_out, "Root directory for per-run outputs");

  std::string gen_kind = "shortest-path", gen_out;
  std::uint64_t gen_seed = 1;
  int gen_nodes = 50, gen_edges = 200;
  std::int64_t gen_horizon = 1600;
  double gen_rho = 0.8;
  auto* gen = app.add_subcommand("gen-instance", "Generate and export an instance");
  gen->add_option("--kind", gen_kind, "Instance kind (shortest-path)");
  gen->add_option("--seed", gen_seed, "Random seed");
  gen->add_option("--nodes", gen_nodes, "Node count");
  gen->add_option("--edges", gen_edges, "Edge count");
  gen->add_option("--horizon", gen_horizon, "Rounds to generate");
  gen->add_option("--rho", gen_rho, "Bandwidth floor fraction");
  gen->add_option("--out", gen_out, "Output directory")->required();

  std::string verify_dir;
  auto* verify = app.add_subcommand("verify-bounds", "Re-check a recorded run");
  verify->add_option("--dir", verify_dir, "Run output directory")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) return run_one(config_path, out_dir);

    if (compare->parsed()) {
      std::vector<coco::ExperimentConfig> configs;
      for (const auto& path : config_paths) configs.push_back(coco::load_config(path));
      for (size_t i = 0; i < configs.size(); ++i) {
        if (!compare_out.empty())
          configs[i].output_dir =
              (std::filesystem::path(compare_out) / configs[i].algorithm).string();
        else if (configs[i].output_dir.empty())
          configs[i].output_dir = (std::filesystem::path("out") / configs[i].algorithm).string();
      }
      std::vector<std::future<coco::ExperimentResult>> futures;
      futures.reserve(configs.size());
      for (const auto& cfg : configs)
        futures.push_back(std::async(std::launch::async,
                                     [&cfg] { return coco::run_experiment(cfg); }));
      for (size_t i = 0; i < configs.size(); ++i) {
        coco::ExperimentResult result = futures[i].get();
        coco::emit_outputs(result.records, result.summary, configs[i]);
        print_summary(result.summary);
        std::printf("  outputs: %s\n", configs[i].output_dir.c_str());
      }
      return kExitOk;
    }

    if (gen->parsed()) {
      if (gen_kind != "shortest-path") {
        std::fprintf(stderr, "gen-instance: unsupported kind '%s'\n", gen_kind.c_str());
        return 1;
      }
      coco::GenerateOptions options;
      options.rho = gen_rho;
      coco::PathEnvInstance instance =
          coco::generate_instance(gen_seed, gen_nodes, gen_edges, gen_horizon, options);
      std::filesystem::create_directories(gen_out);
      const auto graph_path = (std::filesystem::path(gen_out) / "instance.graph").string();
      const auto rounds_path = (std::filesystem::path(gen_out) / "instance.rounds").string();
      coco::save_instance(instance, graph_path, rounds_path);
      std::printf("wrote %s and %s (n=%d m=%d T=%zu)\n", graph_path.c_str(),
                  rounds_path.c_str(), instance.graph.node_count,
                  instance.graph.edge_count(), instance.rounds.size());
      return kExitOk;
    }

    if (verify->parsed()) {
      coco::VerifyReport report = coco::verify_bounds(verify_dir);
      if (report.ok) {
        std::printf("verify-bounds: all recorded checks hold in %s\n", verify_dir.c_str());
        return kExitOk;
      }
      std::printf("verify-bounds: %zu violation(s)\n", report.violations.size());
      for (size_t i = 0; i < report.violations.size() && i < 20; ++i)
        std::printf("  %s\n", report.violations[i].c_str());
      return kExitBoundViolation;
    }
  } catch (const coco::InfeasibleBenchmark& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitInfeasibleBenchmark;
  } catch (const coco::ConvergenceFailure& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitConvergenceFailure;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return kExitOk;
}
