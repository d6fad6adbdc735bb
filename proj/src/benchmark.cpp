#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "coco/errors.hpp"
#include "coco/harness.hpp"

namespace coco {

namespace {

struct Aggregate {
  const std::vector<FunctionOracle>* costs;
  const std::vector<FunctionOracle>* constraints;

  double sum_cost(const Vec& x) const {
    double s = 0.0;
    for (const auto& f : *costs) s += f.value(x);
    return s;
  }
  Vec sum_cost_grad(const Vec& x) const {
    Vec g = Vec::Zero(x.size());
    for (const auto& f : *costs) g += f.subgrad(x);
    return g;
  }
  double max_constraint(const Vec& x) const {
    double m = -std::numeric_limits<double>::infinity();
    for (const auto& g : *constraints) m = std::max(m, g.value(x));
    return m;
  }
  Vec max_constraint_grad(const Vec& x) const {
    double m = -std::numeric_limits<double>::infinity();
    size_t arg = 0;
    for (size_t i = 0; i < constraints->size(); ++i) {
      const double v = (*constraints)[i].value(x);
      if (v > m) {
        m = v;
        arg = i;
      }
    }
    return (*constraints)[arg].subgrad(x);
  }
};

// projected subgradient descent with adaptive steps; returns the best-seen
// iterate under `objective`
Vec subgradient_descent(const std::function<double(const Vec&)>& objective,
                        const std::function<Vec(const Vec&)>& subgrad, const DecisionSet& set,
                        Vec x, int iterations, double projection_tol) {
  Vec best = x;
  double best_val = objective(x);
  double acc = 0.0;
  const double d = set.diameter();
  for (int k = 0; k < iterations; ++k) {
    const Vec g = subgrad(x);
    acc += g.squaredNorm();
    if (acc <= 0.0) break;
    const double eta = std::sqrt(2.0) * d / (2.0 * std::sqrt(acc));
    x = set.project(x - eta * g, projection_tol);
    const double val = objective(x);
    if (val < best_val) {
      best_val = val;
      best = x;
    }
  }
  return best;
}

}  // namespace

BenchmarkResult compute_static_benchmark(const std::vector<FunctionOracle>& costs,
                                         const std::vector<FunctionOracle>& constraints,
                                         const DecisionSet& set,
                                         const BenchmarkOptions& options) {
  if (costs.empty() || costs.size() != constraints.size())
    throw InvalidInput("static benchmark: history must pair every cost with a constraint");
  const Aggregate agg{&costs, &constraints};
  const double d = set.diameter();
  double max_constraint_lipschitz = 0.0;
  for (const auto& g : constraints)
    max_constraint_lipschitz = std::max(max_constraint_lipschitz, g.lipschitz);
  const double feas_tol =
      options.feasibility_tol * std::max(1.0, max_constraint_lipschitz * d);

  bool has_feasible = false;
  Vec best_x;
  double best_obj = std::numeric_limits<double>::infinity();
  auto consider = [&](const Vec& x) {
    if (agg.max_constraint(x) > feas_tol) return;
    const double obj = agg.sum_cost(x);
    if (!has_feasible || obj < best_obj) {
      has_feasible = true;
      best_obj = obj;
      best_x = x;
    }
  };

  Vec x = set.project(Vec::Zero(set.dimension()), options.projection_tol);
  consider(x);

  double lower_bound = -std::numeric_limits<double>::infinity();
  double mu = 1.0;
  auto make_penalty = [&](double weight) {
    auto value = [&agg, weight](const Vec& p) {
      return agg.sum_cost(p) + weight * std::max(0.0, agg.max_constraint(p));
    };
    auto grad = [&agg, weight](const Vec& p) {
      Vec g = agg.sum_cost_grad(p);
      if (agg.max_constraint(p) > 0.0) g += weight * agg.max_constraint_grad(p);
      return g;
    };
    return std::make_pair(std::function<double(const Vec&)>(value),
                          std::function<Vec(const Vec&)>(grad));
  };

  for (int outer = 0; outer <= options.max_penalty_doublings; ++outer) {
    auto [value, grad] = make_penalty(mu);
    x = subgradient_descent(value, grad, set, x, options.inner_iterations,
                            options.projection_tol);
    consider(x);
    if (agg.max_constraint(x) <= feas_tol) break;
    mu *= 2.0;
  }

  if (!has_feasible) {
    // pure feasibility descent before giving up
    auto feas_value = [&agg](const Vec& p) { return agg.max_constraint(p); };
    auto feas_grad = [&agg](const Vec& p) { return agg.max_constraint_grad(p); };
    Vec xf = subgradient_descent(feas_value, feas_grad, set, x,
                                 4 * options.inner_iterations, options.projection_tol);
    consider(xf);
    if (!has_feasible)
      throw InfeasibleBenchmark("static benchmark: no point satisfies every constraint");
    auto [value, grad] = make_penalty(mu);
    x = subgradient_descent(value, grad, set, xf, options.inner_iterations,
                            options.projection_tol);
    consider(x);
  }

  {
    auto [value, grad] = make_penalty(mu);
    Vec polished = subgradient_descent(value, grad, set, best_x, options.polish_iterations,
                                       options.projection_tol);
    consider(polished);
    // one-cut lower bound for the gap estimate (coarse but valid)
    const Vec s = grad(polished);
    const Vec v = set.linear_minimizer(s);
    lower_bound = std::max(lower_bound, value(polished) - s.dot(polished - v));
  }

  if (options.grid_cross_check && set.dimension() <= 3) {
    const double res = options.grid_resolution_factor * d;
    BenchmarkResult grid = grid_search_benchmark(costs, constraints, set, res);
    consider(grid.x_star);
  }

  // pull the answer exactly inside the feasible region when a strictly
  // feasible anchor is available, so regret accounting can use a genuine
  // member of the feasible set
  double residual = agg.max_constraint(best_x);
  if (residual > 0.0) {
    auto feas_value = [&agg](const Vec& p) { return agg.max_constraint(p); };
    auto feas_grad = [&agg](const Vec& p) { return agg.max_constraint_grad(p); };
    const Vec anchor = subgradient_descent(feas_value, feas_grad, set, best_x,
                                           options.inner_iterations, options.projection_tol);
    const double anchor_val = agg.max_constraint(anchor);
    if (anchor_val < 0.0) {
      double lo = 0.0, hi = 1.0;  // blend factor toward the anchor
      for (int it = 0; it < 60 && agg.max_constraint(best_x + lo * (anchor - best_x)) > 0.0;
           ++it) {
        const double mid = 0.5 * (lo + hi);
        if (agg.max_constraint(best_x + mid * (anchor - best_x)) <= 0.0)
          hi = mid;
        else
          lo = mid;
        if (hi - lo < 1e-12) lo = hi;
      }
      const double theta = agg.max_constraint(best_x + lo * (anchor - best_x)) <= 0.0 ? lo : hi;
      best_x = best_x + theta * (anchor - best_x);
      best_obj = agg.sum_cost(best_x);
      residual = agg.max_constraint(best_x);
    }
  }

  BenchmarkResult result;
  result.x_star = best_x;
  result.objective = best_obj;
  result.feasibility_residual = residual;
  result.optimality_gap =
      std::isfinite(lower_bound) ? std::max(0.0, best_obj - lower_bound) : 0.0;
  return result;
}

Vec compute_dynamic_comparator(const FunctionOracle& f, const FunctionOracle& g,
                               const DecisionSet& set, const BenchmarkOptions& options) {
  const std::vector<FunctionOracle> costs{f};
  const std::vector<FunctionOracle> constraints{g};
  BenchmarkOptions opts = options;
  opts.grid_cross_check = false;
  try {
    return compute_static_benchmark(costs, constraints, set, opts).x_star;
  } catch (const InfeasibleBenchmark&) {
    throw InfeasibleBenchmark("dynamic comparator: the round has no feasible point");
  }
}

BenchmarkResult grid_search_benchmark(const std::vector<FunctionOracle>& costs,
                                      const std::vector<FunctionOracle>& constraints,
                                      const DecisionSet& set, double resolution) {
  const int dim = set.dimension();
  if (dim > 3) throw InvalidInput("grid benchmark: only dimensions <= 3");
  if (resolution <= 0.0) throw InvalidInput("grid benchmark: resolution must be positive");
  auto [lo, hi] = set.bounding_box();
  std::vector<std::int64_t> steps(dim);
  for (int i = 0; i < dim; ++i)
    steps[i] = std::max<std::int64_t>(1, static_cast<std::int64_t>((hi(i) - lo(i)) / resolution));

  const Aggregate agg{&costs, &constraints};
  bool found = false;
  Vec best;
  double best_obj = std::numeric_limits<double>::infinity();
  Vec p(dim);
  std::vector<std::int64_t> idx(dim, 0);
  while (true) {
    for (int i = 0; i < dim; ++i)
      p(i) = lo(i) + (hi(i) - lo(i)) * static_cast<double>(idx[i]) / static_cast<double>(steps[i]);
    if (set.contains(p, 1e-9) && agg.max_constraint(p) <= 1e-9) {
      const double obj = agg.sum_cost(p);
      if (!found || obj < best_obj) {
        found = true;
        best_obj = obj;
        best = p;
      }
    }
    int carry = 0;
    while (carry < dim && ++idx[carry] > steps[carry]) {
      idx[carry] = 0;
      ++carry;
    }
    if (carry == dim) break;
  }
  if (!found) throw InfeasibleBenchmark("grid benchmark: no feasible grid point");
  BenchmarkResult result;
  result.x_star = best;
  result.objective = best_obj;
  result.feasibility_residual = agg.max_constraint(best);
  result.optimality_gap = 0.0;  // exhaustive up to the grid resolution
  return result;
}

// ---------------------------------------------------------------------------
// Bound formulas

double anytime_regret_bound(std::int64_t t, double lipschitz, double diameter) {
  return 2.0 * lipschitz * diameter * (std::sqrt(static_cast<double>(t)) + 1.0);
}

double anytime_ccv_bound(std::int64_t t, double lipschitz, double diameter) {
  const double td = static_cast<double>(t);
  const double l1 = std::log(td) + 1.0;
  const double l2 = std::log(l1) + 1.0;
  return 8.0 * lipschitz * diameter * std::sqrt(td) * std::sqrt(l1) * l2 * std::log(4.0 * td);
}

double dynamic_regret_bound(std::int64_t t, double path_len, double lipschitz, double diameter) {
  return 2.0 * lipschitz * diameter * std::sqrt(1.0 + path_len) *
         (std::sqrt(static_cast<double>(t)) + 1.0);
}

double dynamic_ccv_bound(std::int64_t t, double path_len, double lipschitz, double diameter) {
  return std::sqrt(1.0 + path_len) * anytime_ccv_bound(t, lipschitz, diameter);
}

double optimistic_regret_envelope(double err_f, double beta, double bregman_bound,
                                  double diameter) {
  const double ratio = bregman_bound / beta;
  return 5.0 * std::sqrt(ratio) * std::sqrt(2.0 * err_f) + 5.0 / 8.0 +
         5.0 * ratio / (2.0 * diameter);
}

double adagrad_regret_bound(double diameter, double sum_sq_grad) {
  return std::sqrt(2.0) * diameter * std::sqrt(sum_sq_grad);
}

}  // namespace coco
