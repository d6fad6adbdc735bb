#ifndef COCO_FUNCTION_ORACLE_HPP
#define COCO_FUNCTION_ORACLE_HPP

#include <functional>
#include <utility>

#include "coco/types.hpp"

namespace coco {

// Value + subgradient access to one round's convex cost or constraint.
// Oracles must be pure: same input, same output. `lipschitz` upper-bounds
// the Euclidean norm of every subgradient the oracle can return.
struct FunctionOracle {
  std::function<double(const Vec&)> value;
  std::function<Vec(const Vec&)> subgrad;
  double lipschitz = 0.0;

  double operator()(const Vec& x) const { return value(x); }
};

// f(x) = <c, x> + offset
FunctionOracle make_linear(const Vec& c, double offset = 0.0);

// f(x) = ||x - center||^2; lipschitz must be supplied as 2 * max ||x - center||
// over the decision set (the caller knows the geometry).
FunctionOracle make_quadratic_distance(const Vec& center, double lipschitz);

// f(x) = constant (zero gradient)
FunctionOracle make_constant(double value, int dim);

// alpha * f
FunctionOracle scale_oracle(double alpha, const FunctionOracle& f);

// max(0, f) with the subgradient convention that the zero vector is returned
// wherever f(x) <= 0, including exactly at the kink.
FunctionOracle clip_positive_oracle(const FunctionOracle& f);

// Max relative deviation between the oracle's subgradient at x and a central
// finite-difference estimate with step h. Meaningful only where the oracle is
// differentiable (callers assert that). Relative scale per coordinate is
// max(1, |g_i|).
double subgrad_check(const FunctionOracle& oracle, const Vec& x, double h);

// Largest convexity defect eval((a+b)/2) - (eval(a)+eval(b))/2 over `samples`
// random secants inside the box [lo, hi]. Non-positive (up to rounding) for a
// convex function. Test utility.
double convexity_defect(const FunctionOracle& oracle, const Vec& lo, const Vec& hi,
                        int samples, std::uint64_t seed);

}  // namespace coco

#endif  // COCO_FUNCTION_ORACLE_HPP
