#include "coco/algorithms.hpp"

#include <cmath>

#include "coco/errors.hpp"

namespace coco {

ProblemSpec make_problem_spec(const DecisionSet& set, double lipschitz, double projection_tol) {
  if (lipschitz <= 0.0) throw InvalidInput("problem spec: Lipschitz bound must be positive");
  ProblemSpec spec;
  spec.set = &set;
  spec.lipschitz = lipschitz;
  spec.diameter = set.diameter();
  spec.projection_tol = projection_tol;
  return spec;
}

std::pair<FunctionOracle, FunctionOracle> preprocess(const ProblemSpec& spec,
                                                     const FunctionOracle& f,
                                                     const FunctionOracle& g) {
  const double alpha = spec.alpha();
  return {scale_oracle(alpha, f), scale_oracle(alpha, clip_positive_oracle(g))};
}

Vec surrogate_gradient(const Vec& grad_f, const Vec& grad_g, double phi_prime_val) {
  if (grad_f.size() != grad_g.size()) throw InvalidInput("surrogate: gradient dimensions differ");
  return grad_f + phi_prime_val * grad_g;
}

namespace {

Vec initial_iterate(const ProblemSpec& spec) {
  if (spec.initial_point.size() > 0) {
    if (static_cast<int>(spec.initial_point.size()) != spec.set->dimension())
      throw InvalidInput("problem spec: initial point has the wrong dimension");
    return spec.initial_point;
  }
  const Vec origin = Vec::Zero(spec.set->dimension());
  if (spec.set->contains(origin, 1e-12)) return origin;
  return spec.set->project(origin, spec.projection_tol);
}

OgdState origin_ogd_state(const ProblemSpec& spec) {
  OgdState s;
  s.x = initial_iterate(spec);
  s.diameter = spec.diameter;
  s.projection_tol = spec.projection_tol;
  return s;
}

void fill_common(RoundRecord& rec, const CocoState& state, std::int64_t t, const Vec& x,
                 double cost, double violation, double lambda, double eta, double grad_norm) {
  rec.t = t;
  rec.x = x;
  rec.cost = cost;
  rec.violation = violation;
  rec.q = state.queue.q;
  rec.lambda = lambda;
  rec.eta = eta;
  rec.grad_norm = grad_norm;
  rec.cum_ccv = state.total_violation;
  rec.cum_gtilde = state.total_gtilde;
  rec.lambda_q = lambda * state.queue.q;
}

}  // namespace

CocoState make_anytime_state(const ProblemSpec& spec) {
  CocoState s;
  s.variant = AlgoVariant::kAnytime;
  s.schedule = LambdaSchedule::anytime_static();
  s.ogd = origin_ogd_state(spec);
  return s;
}

CocoState make_dynamic_state(const ProblemSpec& spec) {
  CocoState s;
  s.variant = AlgoVariant::kDynamic;
  s.schedule = LambdaSchedule::dynamic_path();
  s.ogd = origin_ogd_state(spec);
  return s;
}

CocoState make_optimistic_state(const ProblemSpec& spec, const FunctionOracle* pred_f1,
                                const FunctionOracle* pred_g1, double beta,
                                double bregman_bound) {
  CocoState s;
  s.variant = AlgoVariant::kOptimistic;
  const double d = spec.diameter;
  if (bregman_bound <= 0.0) bregman_bound = 0.5 * d * d;
  s.schedule = LambdaSchedule::optimistic_error(bregman_bound, beta, d);

  const FunctionOracle zero_pred = [&] {
    FunctionOracle z = make_constant(0.0, spec.set->dimension());
    z.lipschitz = spec.lipschitz;  // claimed bound, shared with the true functions
    return z;
  }();
  const FunctionOracle& f1 = pred_f1 ? *pred_f1 : zero_pred;
  const FunctionOracle& g1 = pred_g1 ? *pred_g1 : zero_pred;
  auto [pf, pg] = preprocess(spec, f1, g1);
  s.pred_f_cur = pf;
  s.pred_g_cur = pg;

  s.lambda_cur = s.schedule.at(1, s.schedule.gamma_seed());  // gamma_1 = E_0 + D^-2
  // L_1 bounds the predicted surrogate's gradient: (2D)^-1 (1 + phi'_1(Q(1)))
  const double lip1 = pf.lipschitz + phi_prime(s.lambda_cur, 0.0) * pg.lipschitz;
  s.oomd.x = initial_iterate(spec);
  s.oomd.x_secondary = s.oomd.x;
  s.oomd.beta = beta;
  s.oomd.bregman_bound = bregman_bound;
  s.oomd.max_pred_lipschitz = std::max(lip1, 1e-300);
  s.oomd.eta = beta / s.oomd.max_pred_lipschitz;
  s.oomd.projection_tol = spec.projection_tol;
  return s;
}

CocoState make_fixed_horizon_state(const ProblemSpec& spec, std::int64_t horizon) {
  CocoState s;
  s.variant = AlgoVariant::kFixedHorizon;
  s.schedule = LambdaSchedule::fixed_horizon(horizon);
  s.ogd = origin_ogd_state(spec);
  return s;
}

CocoState make_doubling_state(const ProblemSpec& spec) {
  CocoState s;
  s.variant = AlgoVariant::kDoubling;
  s.schedule = LambdaSchedule::fixed_horizon(1);
  s.ogd = origin_ogd_state(spec);
  s.x_init = s.ogd.x;
  s.phase = 0;
  s.phase_start = 1;
  s.phase_len = 1;
  return s;
}

namespace {

// Shared body of the anytime/fixed-horizon/doubling rounds: the variants
// differ only in where lambda comes from.
std::pair<CocoState, RoundRecord> adagrad_family_round(CocoState s, const FunctionOracle& f,
                                                       const FunctionOracle& g,
                                                       const ProblemSpec& spec,
                                                       double lambda_cur) {
  const std::int64_t t = s.t + 1;
  const Vec x = s.ogd.x;
  const double cost = f.value(x);
  const double violation = std::max(0.0, g.value(x));
  auto [ftilde, gtilde] = preprocess(spec, f, g);

  const double lambda_prev = (s.queue.last_lambda > 0.0) ? s.queue.last_lambda : lambda_cur;
  const double gtilde_x = gtilde.value(x);
  s.queue = queue_update(s.queue, lambda_prev, lambda_cur, gtilde_x);
  s.total_violation += violation;
  s.total_gtilde += gtilde_x;

  const double pp = phi_prime(lambda_cur, s.queue.q);
  const Vec grad = surrogate_gradient(ftilde.subgrad(x), gtilde.subgrad(x), pp);
  s.ogd = adagrad_step(s.ogd, grad, *spec.set);
  s.t = t;

  RoundRecord rec;
  fill_common(rec, s, t, x, cost, violation, lambda_cur, s.ogd.eta, grad.norm());
  return {std::move(s), std::move(rec)};
}

}  // namespace

std::pair<CocoState, RoundRecord> anytime_round(CocoState state, const FunctionOracle& f,
                                                const FunctionOracle& g, const ProblemSpec& spec) {
  if (state.variant != AlgoVariant::kAnytime)
    throw InvalidInput("anytime_round: state built for another variant");
  const double lambda_cur = state.schedule.at(state.t + 1);
  return adagrad_family_round(std::move(state), f, g, spec, lambda_cur);
}

std::pair<CocoState, RoundRecord> fixed_horizon_round(CocoState state, const FunctionOracle& f,
                                                      const FunctionOracle& g,
                                                      const ProblemSpec& spec) {
  if (state.variant != AlgoVariant::kFixedHorizon)
    throw InvalidInput("fixed_horizon_round: state built for another variant");
  const double lambda_cur = state.schedule.at(1);  // constant in t
  return adagrad_family_round(std::move(state), f, g, spec, lambda_cur);
}

std::pair<CocoState, RoundRecord> doubling_round(CocoState state, const FunctionOracle& f,
                                                 const FunctionOracle& g,
                                                 const ProblemSpec& spec) {
  if (state.variant != AlgoVariant::kDoubling)
    throw InvalidInput("doubling_round: state built for another variant");
  const std::int64_t t = state.t + 1;
  if (t == state.phase_start + state.phase_len) {
    // new phase: double the horizon guess, forget iterate and queue
    state.phase += 1;
    state.phase_start = t;
    state.phase_len = std::int64_t{1} << state.phase;
    state.schedule = LambdaSchedule::fixed_horizon(state.phase_len);
    state.ogd = origin_ogd_state(spec);
    state.queue = VirtualQueue{};
  }
  const double lambda_cur = state.schedule.at(1);
  const int phase = state.phase;
  auto [next, rec] = adagrad_family_round(std::move(state), f, g, spec, lambda_cur);
  rec.phase = phase;
  return {std::move(next), std::move(rec)};
}

std::pair<CocoState, RoundRecord> dynamic_round(CocoState s, const FunctionOracle& f,
                                                const FunctionOracle& g, const ProblemSpec& spec,
                                                const ComparatorSolver& comparator_solver) {
  if (s.variant != AlgoVariant::kDynamic)
    throw InvalidInput("dynamic_round: state built for another variant");
  const std::int64_t t = s.t + 1;
  const Vec x = s.ogd.x;
  const double cost = f.value(x);
  const double violation = std::max(0.0, g.value(x));
  auto [ftilde, gtilde] = preprocess(spec, f, g);

  // per-round optimal feasible action drives the path-length statistic
  const Vec comparator = comparator_solver(f, g);
  if (s.have_comparator) s.path_len += (comparator - s.prev_comparator).norm();
  s.prev_comparator = comparator;
  s.have_comparator = true;

  const double lambda_cur = s.schedule.at(t, s.path_len);
  const double lambda_prev = (s.queue.last_lambda > 0.0) ? s.queue.last_lambda : lambda_cur;
  const double gtilde_x = gtilde.value(x);
  s.queue = queue_update(s.queue, lambda_prev, lambda_cur, gtilde_x);
  s.total_violation += violation;
  s.total_gtilde += gtilde_x;

  const double pp = phi_prime(lambda_cur, s.queue.q);
  const Vec grad = surrogate_gradient(ftilde.subgrad(x), gtilde.subgrad(x), pp);
  s.ogd = dynamic_adagrad_step(s.ogd, grad, s.path_len, *spec.set);
  s.t = t;

  RoundRecord rec;
  fill_common(rec, s, t, x, cost, violation, lambda_cur, s.ogd.eta, grad.norm());
  rec.path_len = s.path_len;
  rec.comparator = comparator;
  return {std::move(s), std::move(rec)};
}

std::pair<CocoState, RoundRecord> optimistic_round(CocoState s, const FunctionOracle& f,
                                                   const FunctionOracle& g,
                                                   const FunctionOracle& pred_f_next,
                                                   const FunctionOracle& pred_g_next,
                                                   const ProblemSpec& spec) {
  if (s.variant != AlgoVariant::kOptimistic)
    throw InvalidInput("optimistic_round: state built for another variant");
  const std::int64_t t = s.t + 1;
  const Vec x = s.oomd.x;
  const double cost = f.value(x);
  const double violation = std::max(0.0, g.value(x));
  auto [ftilde, gtilde] = preprocess(spec, f, g);
  auto [pred_f, pred_g] = preprocess(spec, pred_f_next, pred_g_next);

  // prediction errors of the current round's forecasts, measured at x_t
  const Vec gf = ftilde.subgrad(x);
  const Vec gg = gtilde.subgrad(x);
  const Vec pgf = s.pred_f_cur.subgrad(x);
  const Vec pgg = s.pred_g_cur.subgrad(x);
  const double eps_f = (gf - pgf).squaredNorm();
  const double eps_g = (gg - pgg).squaredNorm();
  s.err_f += eps_f;
  s.err_g += eps_g;

  // surrogate and its forecast share the same multiplier phi'_t(Q(t)), where
  // Q(t) was fixed at the end of round t-1 (Q(1) = 0)
  const double eta_used = s.oomd.eta;
  const double pp_cur = phi_prime(s.lambda_cur, s.queue.q);
  const Vec grad = surrogate_gradient(gf, gg, pp_cur);
  const double eps_surrogate = (grad - (pgf + pp_cur * pgg)).squaredNorm();

  // lambda_{t+1} must be known now: gamma_{t+1} = E_t(gtilde) + D^-2
  const double lambda_next = s.schedule.at(t + 1, s.err_g + s.schedule.gamma_seed());
  const double gtilde_x = gtilde.value(x);
  s.queue = queue_update(s.queue, s.lambda_cur, lambda_next, gtilde_x);  // Q(t+1)
  s.total_violation += violation;
  s.total_gtilde += gtilde_x;

  const double pp_next = phi_prime(lambda_next, s.queue.q);
  auto next_grad = [pred_f, pred_g, pp_next](const Vec& z) {
    return Vec(pred_f.subgrad(z) + pp_next * pred_g.subgrad(z));
  };
  const double next_lip = std::max(pred_f.lipschitz + pp_next * pred_g.lipschitz, 1e-300);
  s.oomd = oomd_step(s.oomd, grad, eps_surrogate, next_grad, next_lip, *spec.set);

  const double lambda_used = s.lambda_cur;
  s.pred_f_cur = pred_f;
  s.pred_g_cur = pred_g;
  s.lambda_cur = lambda_next;
  s.t = t;

  RoundRecord rec;
  fill_common(rec, s, t, x, cost, violation, lambda_used, eta_used, grad.norm());
  rec.lambda_q = lambda_next * s.queue.q;  // queue is one step ahead of the round index
  rec.eps_f = eps_f;
  rec.eps_g = eps_g;
  rec.err_f = s.err_f;
  rec.err_g = s.err_g;
  return {std::move(s), std::move(rec)};
}

}  // namespace coco
