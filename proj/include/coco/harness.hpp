#ifndef COCO_HARNESS_HPP
#define COCO_HARNESS_HPP

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "coco/algorithms.hpp"
#include "coco/decision_set.hpp"
#include "coco/function_oracle.hpp"
#include "coco/graph_env.hpp"
#include "coco/round_record.hpp"

namespace coco {

// ---------------------------------------------------------------------------
// Configuration

struct InstanceDescriptor {
  std::string kind = "constraint-pressure";  // alternating-linear | drifting-optimum |
                                             // constraint-pressure | shortest-path | file
  int dimension = 2;          // synthetic kinds
  double path_budget = 1.0;   // drifting-optimum: total comparator travel
  // shortest-path parameters
  int nodes = 50;
  int edges = 200;
  double rho = 0.8;
  double latency_scale_lo = 0.5, latency_scale_hi = 1.5;
  double bandwidth_scale_lo = 0.8, bandwidth_scale_hi = 1.2;
  // kind == "file"
  std::string graph_file;
  std::string rounds_file;
};

struct Tolerances {
  double projection = 1e-3;            // flow-polytope projection distance tol
  double benchmark_feasibility = 1e-6; // relative to max(1, G D)
  double bound_slack = 1e-6;           // additive slack in bound checks
};

struct ExperimentConfig {
  std::string algorithm = "anytime";  // anytime | dynamic | optimistic | fixed-horizon | doubling
  InstanceDescriptor instance;
  std::int64_t horizon = 1000;
  std::uint64_t seed = 1;
  std::string predictions = "zero";  // optimistic runs: perfect | noisy | zero
  double noise_sigma = 0.1;
  std::string output_dir;
  Tolerances tolerances;
};

std::string config_to_json(const ExperimentConfig& config);
ExperimentConfig config_from_json(const std::string& json_text);
ExperimentConfig load_config(const std::string& path);

// ---------------------------------------------------------------------------
// Instances

// A materialized problem: the decision set, T rounds of cost/constraint
// oracles, per-round gradient predictions, and the computed constants.
struct Instance {
  std::shared_ptr<DecisionSet> set;
  std::vector<FunctionOracle> costs;
  std::vector<FunctionOracle> constraints;
  std::vector<FunctionOracle> pred_costs;        // predictions for each round
  std::vector<FunctionOracle> pred_constraints;
  double lipschitz = 0.0;  // max subgradient norm across all rounds, computed
  std::optional<PathEnvInstance> path_env;

  std::int64_t horizon() const { return static_cast<std::int64_t>(costs.size()); }
};

// Deterministic stress generators:
//  - alternating-linear: cost gradient flips sign every round (g == 0);
//  - drifting-optimum: quadratic cost whose constrained optimum travels a
//    configurable total distance;
//  - constraint-pressure: rotating linear constraint with a shrinking slack
//    and a cost that rewards pushing into it.
Instance synthetic_adversary(const std::string& kind, int dimension, std::int64_t horizon,
                             std::uint64_t seed, double path_budget = 1.0);

Instance materialize_instance(const ExperimentConfig& config);

// Fills pred_costs / pred_constraints. Modes: "perfect" (next round's true
// oracles), "zero" (zero gradients, claimed Lipschitz G), "noisy" (linear
// coefficients perturbed by sigma-scaled Gaussian noise, clipped to G).
void attach_predictions(Instance& instance, const std::string& mode, double sigma,
                        std::uint64_t seed);

// ---------------------------------------------------------------------------
// Benchmarks

struct BenchmarkResult {
  Vec x_star;
  double objective = 0.0;             // sum_t f_t(x_star)
  double feasibility_residual = 0.0;  // max_t g_t(x_star)
  double optimality_gap = 0.0;        // certified estimate of objective suboptimality
};

struct BenchmarkOptions {
  double feasibility_tol = 1e-6;  // scaled by max(1, G D)
  int inner_iterations = 400;
  int polish_iterations = 400;
  int max_penalty_doublings = 24;
  double projection_tol = 1e-4;
  bool grid_cross_check = false;  // exhaustive validation, dimensions <= 3 only
  double grid_resolution_factor = 1e-3;
};

// Minimizes sum_t f_t over the recorded feasible set {x : max_t g_t(x) <= 0}
// by exact-penalty subgradient descent, doubling the penalty weight until the
// solution is feasible. Throws InfeasibleBenchmark when no feasible point can
// be located.
BenchmarkResult compute_static_benchmark(const std::vector<FunctionOracle>& costs,
                                         const std::vector<FunctionOracle>& constraints,
                                         const DecisionSet& set,
                                         const BenchmarkOptions& options = {});

// Single-round version: min f(x) s.t. g(x) <= 0 over the set.
Vec compute_dynamic_comparator(const FunctionOracle& f, const FunctionOracle& g,
                               const DecisionSet& set, const BenchmarkOptions& options = {});

// Brute-force minimizer over a regular grid spanning the set's bounding box,
// restricted to grid points inside the set and feasible for every constraint.
// Test oracle for dimensions <= 3.
BenchmarkResult grid_search_benchmark(const std::vector<FunctionOracle>& costs,
                                      const std::vector<FunctionOracle>& constraints,
                                      const DecisionSet& set, double resolution);

// ---------------------------------------------------------------------------
// Bound formulas (original units)

double anytime_regret_bound(std::int64_t t, double lipschitz, double diameter);
double anytime_ccv_bound(std::int64_t t, double lipschitz, double diameter);
double dynamic_regret_bound(std::int64_t t, double path_len, double lipschitz, double diameter);
double dynamic_ccv_bound(std::int64_t t, double path_len, double lipschitz, double diameter);
// Pre-processed-units envelope for the optimistic policy; multiply by 2GD for
// original units.
double optimistic_regret_envelope(double err_f, double beta, double bregman_bound,
                                  double diameter);
double adagrad_regret_bound(double diameter, double sum_sq_grad);

// ---------------------------------------------------------------------------
// Experiment driver

struct Summary {
  std::string algorithm;
  std::int64_t horizon = 0;
  std::uint64_t seed = 0;
  double lipschitz = 0.0;
  double diameter = 0.0;
  double alpha = 0.0;
  double final_regret = 0.0;
  double final_ccv = 0.0;
  double max_lambda_q = 0.0;
  double wall_time_ms = 0.0;
  double projection_tol = 0.0;
  // benchmark
  double benchmark_objective = 0.0;
  double benchmark_feasibility = 0.0;
  double benchmark_gap = 0.0;
  bool benchmark_available = false;
  // bound satisfaction across every round
  bool queue_ok = true;         // lambda Q monotone and CCV <= Q
  bool regret_bound_ok = true;  // variant's regret theorem
  bool ccv_bound_ok = true;     // variant's CCV theorem
  bool bounds_applicable = true;  // false for the baselines, which carry no anytime theorem
  std::int64_t first_regret_violation = 0;
  std::int64_t first_ccv_violation = 0;
  // optimistic extras
  double err_f_total = kUnset;
  double err_g_total = kUnset;
  // non-empty when the run aborted mid-stream; records hold the rounds that
  // completed
  std::string error;
  std::string error_kind;  // infeasible | convergence | other
};

struct ExperimentResult {
  std::vector<RoundRecord> records;
  Summary summary;
};

// Streams all rounds through the configured algorithm, computes the
// appropriate benchmark (static post hoc, or the per-round comparators the
// dynamic variant already solved), fills the regret series, and evaluates the
// variant's bound checks at every round.
ExperimentResult run_experiment(const ExperimentConfig& config,
                                const BenchmarkResult* precomputed_benchmark = nullptr);

// ---------------------------------------------------------------------------
// Outputs

// Writes rounds.csv, curves.csv and summary.json into config.output_dir.
// Reruns of the same config produce byte-identical files.
void emit_outputs(const std::vector<RoundRecord>& records, const Summary& summary,
                  const ExperimentConfig& config);

extern const char* const kRoundsCsvHeader;

struct VerifyReport {
  bool ok = true;
  std::vector<std::string> violations;
};

// Re-checks the recorded run in `dir` (rounds.csv + summary.json) against the
// variant's bounds and internal consistency rules.
VerifyReport verify_bounds(const std::string& dir);

}  // namespace coco

#endif  // COCO_HARNESS_HPP
