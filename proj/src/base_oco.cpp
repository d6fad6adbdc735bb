#include "coco/base_oco.hpp"

#include <cmath>

#include "coco/errors.hpp"

namespace coco {

OgdState make_ogd_state(const Vec& x0, const DecisionSet& set, double projection_tol) {
  OgdState state;
  state.x = set.contains(x0, projection_tol) ? x0 : set.project(x0, projection_tol);
  state.diameter = set.diameter();
  state.projection_tol = projection_tol;
  return state;
}

OgdState adagrad_step(const OgdState& state, const Vec& gradient, const DecisionSet& set) {
  if (!all_finite(gradient)) throw InvalidInput("adagrad: non-finite gradient");
  if (static_cast<int>(gradient.size()) != set.dimension())
    throw InvalidInput("adagrad: gradient dimension mismatch");
  OgdState next = state;
  next.sum_sq_grad += gradient.squaredNorm();
  if (next.sum_sq_grad == 0.0) {
    next.eta = 0.0;
    return next;
  }
  next.eta = std::sqrt(2.0) * state.diameter / (2.0 * std::sqrt(next.sum_sq_grad));
  next.x = set.project(state.x - next.eta * gradient, state.projection_tol);
  return next;
}

OgdState dynamic_adagrad_step(const OgdState& state, const Vec& gradient, double path_len,
                              const DecisionSet& set) {
  if (!all_finite(gradient)) throw InvalidInput("dynamic adagrad: non-finite gradient");
  if (static_cast<int>(gradient.size()) != set.dimension())
    throw InvalidInput("dynamic adagrad: gradient dimension mismatch");
  if (path_len < state.last_path_len - 1e-12)
    throw InvalidInput("dynamic adagrad: path length decreased across calls");
  OgdState next = state;
  next.last_path_len = std::max(path_len, state.last_path_len);
  next.weighted_sum_sq_grad += (1.0 + path_len) * gradient.squaredNorm();
  if (next.weighted_sum_sq_grad == 0.0) {
    next.eta = 0.0;
    return next;
  }
  next.eta = (state.diameter + 1.0) * (1.0 + path_len) /
             std::sqrt(2.0 * next.weighted_sum_sq_grad);
  next.x = set.project(state.x - next.eta * gradient, state.projection_tol);
  return next;
}

double bregman_euclidean(const Vec& x, const Vec& y) { return 0.5 * (x - y).squaredNorm(); }

OomdState make_oomd_state(const Vec& x0, const DecisionSet& set, double beta,
                          double bregman_bound, double initial_pred_lipschitz,
                          double projection_tol) {
  if (beta <= 0.0 || bregman_bound <= 0.0)
    throw InvalidInput("oomd: beta and the Bregman bound must be positive");
  if (initial_pred_lipschitz <= 0.0)
    throw InvalidInput("oomd: initial predicted Lipschitz bound must be positive");
  OomdState state;
  state.x = set.contains(x0, projection_tol) ? x0 : set.project(x0, projection_tol);
  state.x_secondary = state.x;
  state.beta = beta;
  state.bregman_bound = bregman_bound;
  state.max_pred_lipschitz = initial_pred_lipschitz;
  state.eta = beta / initial_pred_lipschitz;  // no errors observed yet
  state.projection_tol = projection_tol;
  return state;
}

OomdState oomd_step(const OomdState& state, const Vec& grad_at_x, double pred_grad_err,
                    const std::function<Vec(const Vec&)>& next_pred_grad,
                    double next_pred_lipschitz, const DecisionSet& set) {
  if (!all_finite(grad_at_x)) throw InvalidInput("oomd: non-finite gradient");
  if (pred_grad_err < 0.0) throw InvalidInput("oomd: prediction error must be non-negative");
  if (next_pred_lipschitz <= 0.0)
    throw InvalidInput("oomd: predicted Lipschitz bound must be positive");
  OomdState next = state;
  next.err_prev = state.err_sum;
  next.err_sum = state.err_sum + pred_grad_err;
  // mirror step with the realized gradient (Euclidean Bregman => projected step)
  next.x_secondary =
      set.project(state.x_secondary - state.eta * grad_at_x, state.projection_tol);
  next.max_pred_lipschitz = std::max(state.max_pred_lipschitz, next_pred_lipschitz);
  const double lip_term = next.beta / next.max_pred_lipschitz;
  double eta_next = lip_term;
  const double err_denom = std::sqrt(next.err_sum) + std::sqrt(next.err_prev);
  if (err_denom > 0.0)
    eta_next = std::min(std::sqrt(next.beta * next.bregman_bound) / err_denom, lip_term);
  next.eta = eta_next;
  // hedge the played iterate with the next round's predicted gradient
  const Vec pred = next_pred_grad(next.x_secondary);
  if (!all_finite(pred)) throw InvalidInput("oomd: non-finite predicted gradient");
  next.x = set.project(next.x_secondary - eta_next * pred, state.projection_tol);
  return next;
}

}  // namespace coco
