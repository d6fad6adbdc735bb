#ifndef COCO_BASE_OCO_HPP
#define COCO_BASE_OCO_HPP

#include <functional>

#include "coco/decision_set.hpp"
#include "coco/types.hpp"

namespace coco {

// Projected online gradient descent with adaptive step sizes. One state per
// run; each step consumes the previous state.
struct OgdState {
  Vec x;                             // current iterate, inside the set
  double sum_sq_grad = 0.0;          // sum of ||grad||^2
  double weighted_sum_sq_grad = 0.0; // sum of (1 + P_t) ||grad||^2, dynamic variant
  double last_path_len = 0.0;
  double diameter = 0.0;
  double eta = 0.0;                  // step size used by the most recent step
  double projection_tol = 1e-9;
};

OgdState make_ogd_state(const Vec& x0, const DecisionSet& set, double projection_tol);

// Step with eta_t = sqrt(2) D / (2 sqrt(sum ||grad||^2)); eta_t = 0 while no
// gradient mass has been seen.
OgdState adagrad_step(const OgdState& state, const Vec& gradient, const DecisionSet& set);

// Step with eta_t = (D + 1)(1 + P_t) / sqrt(2 sum (1 + P_tau) ||grad||^2).
// path_len must never decrease across calls.
OgdState dynamic_adagrad_step(const OgdState& state, const Vec& gradient, double path_len,
                              const DecisionSet& set);

// Euclidean Bregman divergence 0.5 ||x - y||^2 (regularizer R = 0.5 ||.||^2,
// strong convexity beta = 1).
double bregman_euclidean(const Vec& x, const Vec& y);

// Optimistic online mirror descent with the Euclidean regularizer. Keeps two
// iterates: x (played) and x_secondary (the mirror point the played iterate
// is generated from via the next prediction).
struct OomdState {
  Vec x;                         // played iterate x_t
  Vec x_secondary;               // mirror iterate
  double eta = 0.0;              // step size eta_t in effect for the current round
  double err_sum = 0.0;          // cumulative prediction error of the surrogate, E_t
  double err_prev = 0.0;         // E_{t-1}
  double max_pred_lipschitz = 0.0;
  double beta = 1.0;             // strong convexity of the regularizer
  double bregman_bound = 0.0;    // upper bound B on the divergence along the run
  double projection_tol = 1e-9;
};

// initial_pred_lipschitz is the Lipschitz bound of the first predicted cost;
// with no errors observed yet, eta_1 = beta / L_1.
OomdState make_oomd_state(const Vec& x0, const DecisionSet& set, double beta,
                          double bregman_bound, double initial_pred_lipschitz,
                          double projection_tol);

// One round: descend through the mirror point with the realized gradient,
// then hedge the played iterate with the next round's predicted gradient.
//   eta_{t+1} = min{ sqrt(beta B) / (sqrt(E_t) + sqrt(E_{t-1})),
//                    beta / max_{tau <= t+1} L_tau }
// (only the second term while both error sums are zero).
OomdState oomd_step(const OomdState& state, const Vec& grad_at_x, double pred_grad_err,
                    const std::function<Vec(const Vec&)>& next_pred_grad,
                    double next_pred_lipschitz, const DecisionSet& set);

}  // namespace coco

#endif  // COCO_BASE_OCO_HPP
