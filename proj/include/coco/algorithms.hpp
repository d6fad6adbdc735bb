#ifndef COCO_ALGORITHMS_HPP
#define COCO_ALGORITHMS_HPP

#include <cstdint>
#include <functional>
#include <utility>

#include "coco/base_oco.hpp"
#include "coco/decision_set.hpp"
#include "coco/function_oracle.hpp"
#include "coco/lyapunov.hpp"
#include "coco/round_record.hpp"

namespace coco {

// Problem-level constants shared by every round: the decision set, a bound G
// on cost/constraint subgradient norms, the diameter D, and the induced
// pre-processing factor alpha = 1 / (2 G D).
struct ProblemSpec {
  const DecisionSet* set = nullptr;
  double lipschitz = 0.0;       // G
  double diameter = 0.0;        // D
  double projection_tol = 1e-9;
  // Starting iterate for every variant (and the doubling baseline's restart
  // target). Empty means the literal origin when the set contains it, else
  // its projection. The routing harness uses the minimum-hop route.
  Vec initial_point;

  double alpha() const { return 1.0 / (2.0 * lipschitz * diameter); }
};

ProblemSpec make_problem_spec(const DecisionSet& set, double lipschitz, double projection_tol = 1e-9);

// ftilde = alpha f, gtilde = alpha max(0, g). Both are (2D)^-1-Lipschitz and
// gtilde is non-negative everywhere.
std::pair<FunctionOracle, FunctionOracle> preprocess(const ProblemSpec& spec,
                                                     const FunctionOracle& f,
                                                     const FunctionOracle& g);

// grad ftilde + phi'_t(Q(t)) grad gtilde; norm at most (2D)^-1 (1 + phi').
Vec surrogate_gradient(const Vec& grad_f, const Vec& grad_g, double phi_prime_val);

enum class AlgoVariant { kAnytime, kDynamic, kOptimistic, kFixedHorizon, kDoubling };

// Mutable per-run state for every meta-algorithm variant. One state per run;
// rounds are strictly sequential.
struct CocoState {
  AlgoVariant variant = AlgoVariant::kAnytime;
  LambdaSchedule schedule = LambdaSchedule::anytime_static();
  VirtualQueue queue;
  std::int64_t t = 0;  // rounds completed

  OgdState ogd;    // anytime / dynamic / fixed-horizon / doubling
  OomdState oomd;  // optimistic

  double lambda_prev = 0.0;  // lambda_{t-1} for the queue ratio (lambda_0 := lambda_1)

  // totals that survive doubling restarts
  double total_violation = 0.0;  // raw units
  double total_gtilde = 0.0;     // pre-processed units

  // dynamic
  double path_len = 0.0;
  Vec prev_comparator;
  bool have_comparator = false;

  // optimistic (delayed queue: queue.q holds Q(t) entering round t)
  double lambda_cur = 0.0;         // lambda_t, fixed at the end of round t-1
  FunctionOracle pred_f_cur;       // pre-processed predictions for the current round
  FunctionOracle pred_g_cur;
  double err_f = 0.0;              // cumulative prediction errors E_t(ftilde), E_t(gtilde)
  double err_g = 0.0;

  // doubling
  int phase = 0;
  std::int64_t phase_start = 1;
  std::int64_t phase_len = 1;
  Vec x_init;  // iterate each phase restarts from
};

CocoState make_anytime_state(const ProblemSpec& spec);

CocoState make_dynamic_state(const ProblemSpec& spec);

// Predictions for round 1 are given in original units; pass nullptr for the
// zero prediction. The claimed Lipschitz bound of predictions must not exceed
// spec.lipschitz (they are clipped to it during pre-processing).
CocoState make_optimistic_state(const ProblemSpec& spec, const FunctionOracle* pred_f1,
                                const FunctionOracle* pred_g1, double beta = 1.0,
                                double bregman_bound = 0.0 /* default D^2/2 */);

CocoState make_fixed_horizon_state(const ProblemSpec& spec, std::int64_t horizon);

CocoState make_doubling_state(const ProblemSpec& spec);

// One round of the anytime policy: play the current iterate, fold the clipped
// violation into the multiplicative queue, and descend on the surrogate
// gradient with adaptive steps.
std::pair<CocoState, RoundRecord> anytime_round(CocoState state, const FunctionOracle& f,
                                                const FunctionOracle& g, const ProblemSpec& spec);

// Solves min f(x) s.t. g(x) <= 0 over the decision set for one round.
using ComparatorSolver = std::function<Vec(const FunctionOracle& f, const FunctionOracle& g)>;

std::pair<CocoState, RoundRecord> dynamic_round(CocoState state, const FunctionOracle& f,
                                                const FunctionOracle& g, const ProblemSpec& spec,
                                                const ComparatorSolver& comparator_solver);

std::pair<CocoState, RoundRecord> optimistic_round(CocoState state, const FunctionOracle& f,
                                                   const FunctionOracle& g,
                                                   const FunctionOracle& pred_f_next,
                                                   const FunctionOracle& pred_g_next,
                                                   const ProblemSpec& spec);

// Fixed-horizon baseline: the anytime policy with lambda frozen at its value
// for t = T, which makes the queue recursion purely additive.
std::pair<CocoState, RoundRecord> fixed_horizon_round(CocoState state, const FunctionOracle& f,
                                                      const FunctionOracle& g,
                                                      const ProblemSpec& spec);

// Doubling-trick baseline: fixed-horizon phases of lengths 1, 2, 4, ...; at
// each phase start the iterate and queue are discarded and the horizon
// parameter becomes the new phase length. Regret/CCV totals accumulate across
// phases.
std::pair<CocoState, RoundRecord> doubling_round(CocoState state, const FunctionOracle& f,
                                                 const FunctionOracle& g, const ProblemSpec& spec);

}  // namespace coco

#endif  // COCO_ALGORITHMS_HPP
