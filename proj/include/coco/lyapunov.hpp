#ifndef COCO_LYAPUNOV_HPP
#define COCO_LYAPUNOV_HPP

#include <cstdint>
#include <string>

namespace coco {

// Time-varying potential parameter lambda_t. The anytime schedule decays in
// t; the adaptive variants decay in an auxiliary statistic (comparator path
// length, accumulated prediction error, accumulated constraint-gradient
// mass). Every variant is positive, starts at most 1/4 times its leading
// constant, and is non-increasing along any admissible run.
class LambdaSchedule {
 public:
  enum class Variant {
    kAnytimeStatic,    // aux ignored
    kDynamicPath,      // aux = comparator path length so far
    kOptimisticError,  // aux = gamma_t (cumulative constraint prediction error + D^-2)
    kGradAdaptive,     // aux = accumulated squared constraint-gradient norms
    kFixedHorizon,     // anytime formula frozen at t = T
  };

  static LambdaSchedule anytime_static();
  static LambdaSchedule dynamic_path();
  // B and beta are the Bregman bound and strong-convexity modulus of the base
  // learner's regularizer; D is the set diameter (its inverse square seeds
  // gamma before the first error is observed).
  static LambdaSchedule optimistic_error(double bregman_bound, double beta, double diameter);
  // Seeds the accumulated gradient mass with D^-2 before any observation.
  static LambdaSchedule grad_adaptive(double diameter);
  static LambdaSchedule fixed_horizon(std::int64_t horizon);

  Variant variant() const { return variant_; }
  std::string variant_name() const;
  std::int64_t horizon() const { return horizon_; }
  double gamma_seed() const;

  // lambda at round t with the variant's auxiliary statistic (ignored by the
  // static and fixed-horizon variants). Throws InvalidInput for t < 1 or
  // aux < 0.
  double at(std::int64_t t, double aux = 0.0) const;

 private:
  LambdaSchedule(Variant v, std::int64_t horizon, double bregman_bound, double beta,
                 double diameter)
      : variant_(v), horizon_(horizon), bregman_bound_(bregman_bound), beta_(beta),
        diameter_(diameter) {}

  Variant variant_;
  std::int64_t horizon_ = 0;
  double bregman_bound_ = 0.0;
  double beta_ = 1.0;
  double diameter_ = 0.0;
};

// phi(x) = exp(lambda x) - 1, the potential applied to the queue. Throws
// OverflowGuard if lambda * x > 700: theory keeps lambda_t Q(t) <= log(4t),
// so an overflow means the queue recursion is broken, not that the value is
// merely large.
double phi(double lambda, double x);

// phi'(x) = lambda exp(lambda x) = lambda (phi(x) + 1)
double phi_prime(double lambda, double x);

// Multiplicative upper bound on the cumulative (pre-processed, clipped)
// constraint violation: q <- (lambda_prev / lambda_cur) q + gtilde.
// Because lambda never increases, q dominates the plain sum of gtilde values
// and lambda_t q(t) never decreases.
struct VirtualQueue {
  double q = 0.0;
  double last_lambda = 0.0;      // lambda used in the most recent update
  double cumulative_ccv = 0.0;   // plain sum of gtilde values, for the domination check
};

VirtualQueue queue_update(const VirtualQueue& queue, double lambda_prev, double lambda_cur,
                          double gtilde_value);

}  // namespace coco

#endif  // COCO_LYAPUNOV_HPP
