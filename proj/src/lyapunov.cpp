#include "coco/lyapunov.hpp"

#include <cmath>

#include "coco/errors.hpp"

namespace coco {

namespace {

// 1 / (4 sqrt(s) sqrt(log s + 1) (log(log s + 1) + 1)) for s >= 1
double anytime_formula(double s) {
  const double l1 = std::log(s) + 1.0;
  const double l2 = std::log(l1) + 1.0;
  return 1.0 / (4.0 * std::sqrt(s) * std::sqrt(l1) * l2);
}

}  // namespace

LambdaSchedule LambdaSchedule::anytime_static() {
  return LambdaSchedule(Variant::kAnytimeStatic, 0, 0.0, 1.0, 0.0);
}

LambdaSchedule LambdaSchedule::dynamic_path() {
  return LambdaSchedule(Variant::kDynamicPath, 0, 0.0, 1.0, 0.0);
}

LambdaSchedule LambdaSchedule::optimistic_error(double bregman_bound, double beta,
                                                double diameter) {
  if (bregman_bound <= 0.0 || beta <= 0.0 || diameter <= 0.0)
    throw InvalidInput("lambda schedule: optimistic parameters must be positive");
  return LambdaSchedule(Variant::kOptimisticError, 0, bregman_bound, beta, diameter);
}

LambdaSchedule LambdaSchedule::grad_adaptive(double diameter) {
  if (diameter <= 0.0) throw InvalidInput("lambda schedule: diameter must be positive");
  return LambdaSchedule(Variant::kGradAdaptive, 0, 0.0, 1.0, diameter);
}

LambdaSchedule LambdaSchedule::fixed_horizon(std::int64_t horizon) {
  if (horizon < 1) throw InvalidInput("lambda schedule: horizon must be at least 1");
  return LambdaSchedule(Variant::kFixedHorizon, horizon, 0.0, 1.0, 0.0);
}

std::string LambdaSchedule::variant_name() const {
  switch (variant_) {
    case Variant::kAnytimeStatic: return "anytime-static";
    case Variant::kDynamicPath: return "dynamic-path";
    case Variant::kOptimisticError: return "optimistic-error";
    case Variant::kGradAdaptive: return "grad-adaptive";
    case Variant::kFixedHorizon: return "fixed-horizon";
  }
  return "unknown";
}

double LambdaSchedule::gamma_seed() const {
  if (diameter_ <= 0.0) return 0.0;
  return 1.0 / (diameter_ * diameter_);
}

double LambdaSchedule::at(std::int64_t t, double aux) const {
  if (t < 1) throw InvalidInput("lambda schedule: t must be at least 1");
  switch (variant_) {
    case Variant::kAnytimeStatic:
      return anytime_formula(static_cast<double>(t));
    case Variant::kFixedHorizon:
      return anytime_formula(static_cast<double>(horizon_));
    case Variant::kDynamicPath: {
      if (aux < 0.0) throw InvalidInput("lambda schedule: path length must be non-negative");
      return anytime_formula(static_cast<double>(t) * (1.0 + aux));
    }
    case Variant::kGradAdaptive: {
      if (aux < 0.0) throw InvalidInput("lambda schedule: gradient mass must be non-negative");
      // aux is the accumulated squared gradient mass; gamma is seeded with
      // D^-2 before any observation and floored at 1 to keep the logarithms
      // in the anytime formula non-negative.
      const double gamma = std::max(1.0, aux + gamma_seed());
      return anytime_formula(gamma);
    }
    case Variant::kOptimisticError: {
      if (aux < 0.0) throw InvalidInput("lambda schedule: gamma must be non-negative");
      const double c = std::sqrt(bregman_bound_ / beta_) + bregman_bound_ / beta_;
      const double l1 = std::log(aux + 1.0) + 1.0;
      const double l2 = std::log(l1) + 1.0;
      return 1.0 / (20.0 * c * std::sqrt(aux + 1.0) * std::sqrt(l1) * l2);
    }
  }
  throw InvalidInput("lambda schedule: unknown variant");
}

double phi(double lambda, double x) {
  if (lambda <= 0.0) throw InvalidInput("phi: lambda must be positive");
  if (x < 0.0) throw InvalidInput("phi: x must be non-negative");
  const double exponent = lambda * x;
  if (exponent > 700.0)
    throw OverflowGuard("phi: lambda * x = " + std::to_string(exponent) +
                        " exceeds the overflow guard; the queue recursion is out of spec");
  return std::expm1(exponent);
}

double phi_prime(double lambda, double x) {
  if (lambda <= 0.0) throw InvalidInput("phi_prime: lambda must be positive");
  if (x < 0.0) throw InvalidInput("phi_prime: x must be non-negative");
  const double exponent = lambda * x;
  if (exponent > 700.0)
    throw OverflowGuard("phi_prime: lambda * x = " + std::to_string(exponent) +
                        " exceeds the overflow guard; the queue recursion is out of spec");
  return lambda * std::exp(exponent);
}

VirtualQueue queue_update(const VirtualQueue& queue, double lambda_prev, double lambda_cur,
                          double gtilde_value) {
  if (lambda_cur <= 0.0) throw InvalidInput("queue update: lambda must be positive");
  if (lambda_prev < lambda_cur)
    throw InvalidInput("queue update: lambda increased; the schedule must be non-increasing");
  if (gtilde_value < 0.0) throw InvalidInput("queue update: clipped violation must be >= 0");
  VirtualQueue next;
  next.q = (lambda_prev / lambda_cur) * queue.q + gtilde_value;
  next.cumulative_ccv = queue.cumulative_ccv + gtilde_value;
  next.last_lambda = lambda_cur;
  return next;
}

}  // namespace coco
