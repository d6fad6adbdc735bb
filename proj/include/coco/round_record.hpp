#ifndef COCO_ROUND_RECORD_HPP
#define COCO_ROUND_RECORD_HPP

#include <cstdint>
#include <limits>

#include "coco/types.hpp"

namespace coco {

inline constexpr double kUnset = std::numeric_limits<double>::quiet_NaN();

// Per-round log entry. Costs, violations, regret and CCV are in the original
// (un-scaled) units; the queue value, lambda, eta and gradient norm are in
// pre-processed units. Fields that do not apply to a variant stay NaN and
// serialize as empty CSV cells.
struct RoundRecord {
  std::int64_t t = 0;
  Vec x;                    // played action
  double cost = 0.0;        // f_t(x_t)
  double violation = 0.0;   // (g_t(x_t))^+
  double q = 0.0;           // virtual queue after this round's update
  double lambda = 0.0;
  double eta = 0.0;
  double grad_norm = 0.0;   // surrogate gradient norm at x_t
  double cum_regret = kUnset;  // filled once the benchmark is known
  double cum_ccv = 0.0;
  double cum_gtilde = 0.0;  // pre-processed cumulative clipped violation
  double lambda_q = 0.0;    // lambda * q, for monotonicity checks

  // dynamic variant
  double path_len = kUnset;
  Vec comparator;           // per-round optimal feasible action

  // optimistic variant
  double eps_f = kUnset;    // per-round prediction errors (pre-processed)
  double eps_g = kUnset;
  double err_f = kUnset;    // cumulative prediction errors
  double err_g = kUnset;

  // doubling baseline
  int phase = -1;
};

}  // namespace coco

#endif  // COCO_ROUND_RECORD_HPP
