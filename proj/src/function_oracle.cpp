#include "coco/function_oracle.hpp"

#include <algorithm>
#include <cmath>

#include "coco/errors.hpp"
#include "coco/rng.hpp"

namespace coco {

FunctionOracle make_linear(const Vec& c, double offset) {
  FunctionOracle f;
  f.value = [c, offset](const Vec& x) {
    if (x.size() != c.size()) throw InvalidInput("linear oracle: dimension mismatch");
    return c.dot(x) + offset;
  };
  f.subgrad = [c](const Vec& x) {
    if (x.size() != c.size()) throw InvalidInput("linear oracle: dimension mismatch");
    return c;
  };
  f.lipschitz = c.norm();
  return f;
}

FunctionOracle make_quadratic_distance(const Vec& center, double lipschitz) {
  FunctionOracle f;
  f.value = [center](const Vec& x) {
    if (x.size() != center.size()) throw InvalidInput("quadratic oracle: dimension mismatch");
    return (x - center).squaredNorm();
  };
  f.subgrad = [center](const Vec& x) {
    if (x.size() != center.size()) throw InvalidInput("quadratic oracle: dimension mismatch");
    return Vec(2.0 * (x - center));
  };
  f.lipschitz = lipschitz;
  return f;
}

FunctionOracle make_constant(double value, int dim) {
  FunctionOracle f;
  f.value = [value](const Vec&) { return value; };
  f.subgrad = [dim](const Vec&) { return Vec(Vec::Zero(dim)); };
  f.lipschitz = 0.0;
  return f;
}

FunctionOracle scale_oracle(double alpha, const FunctionOracle& f) {
  FunctionOracle g;
  auto value = f.value;
  auto subgrad = f.subgrad;
  g.value = [alpha, value](const Vec& x) { return alpha * value(x); };
  g.subgrad = [alpha, subgrad](const Vec& x) { return Vec(alpha * subgrad(x)); };
  g.lipschitz = std::abs(alpha) * f.lipschitz;
  return g;
}

FunctionOracle clip_positive_oracle(const FunctionOracle& f) {
  FunctionOracle g;
  auto value = f.value;
  auto subgrad = f.subgrad;
  g.value = [value](const Vec& x) { return std::max(0.0, value(x)); };
  // zero vector wherever f(x) <= 0, including at the kink
  g.subgrad = [value, subgrad](const Vec& x) {
    if (value(x) > 0.0) return subgrad(x);
    return Vec(Vec::Zero(x.size()));
  };
  g.lipschitz = f.lipschitz;
  return g;
}

double subgrad_check(const FunctionOracle& oracle, const Vec& x, double h) {
  if (!(h >= 1e-8 && h <= 1e-3)) throw InvalidInput("subgrad_check: h outside [1e-8, 1e-3]");
  const Vec g = oracle.subgrad(x);
  double worst = 0.0;
  Vec probe = x;
  for (int i = 0; i < x.size(); ++i) {
    probe(i) = x(i) + h;
    const double up = oracle.value(probe);
    probe(i) = x(i) - h;
    const double dn = oracle.value(probe);
    probe(i) = x(i);
    const double fd = (up - dn) / (2.0 * h);
    const double dev = std::abs(fd - g(i)) / std::max(1.0, std::abs(g(i)));
    worst = std::max(worst, dev);
  }
  return worst;
}

double convexity_defect(const FunctionOracle& oracle, const Vec& lo, const Vec& hi, int samples,
                        std::uint64_t seed) {
  Rng rng(seed);
  double worst = -std::numeric_limits<double>::infinity();
  Vec a(lo.size()), b(lo.size());
  for (int s = 0; s < samples; ++s) {
    for (int i = 0; i < lo.size(); ++i) {
      a(i) = rng.uniform(lo(i), hi(i));
      b(i) = rng.uniform(lo(i), hi(i));
    }
    const double mid = oracle.value(0.5 * (a + b));
    const double chord = 0.5 * (oracle.value(a) + oracle.value(b));
    worst = std::max(worst, mid - chord);
  }
  return worst;
}

}  // namespace coco
