#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdint>

#include "coco/errors.hpp"
#include "coco/lyapunov.hpp"
#include "coco/rng.hpp"

using namespace coco;

namespace {

// independent long-double evaluation of the anytime schedule, the oracle the
// frozen expectations below were produced with
long double anytime_formula_ld(long double s) {
  const long double l1 = std::log(s) + 1.0L;
  const long double l2 = std::log(l1) + 1.0L;
  return 1.0L / (4.0L * std::sqrt(s) * std::sqrt(l1) * l2);
}

long double optimistic_formula_ld(long double bregman, long double beta, long double gamma) {
  const long double c = std::sqrt(bregman / beta) + bregman / beta;
  const long double l1 = std::log(gamma + 1.0L) + 1.0L;
  const long double l2 = std::log(l1) + 1.0L;
  return 1.0L / (20.0L * c * std::sqrt(gamma + 1.0L) * std::sqrt(l1) * l2);
}

}  // namespace

TEST_CASE("anytime schedule values") {
  LambdaSchedule sched = LambdaSchedule::anytime_static();
  CHECK(sched.at(1) == 0.25);  // log 1 = 0 collapses the formula
  // frozen from the long-double oracle: 0.0889929322224950390...
  CHECK(sched.at(2) == doctest::Approx(0.088992932222495039).epsilon(1e-14));
  for (std::int64_t t : {2, 3, 10, 1000, 987654}) {
    const double expect = static_cast<double>(anytime_formula_ld(static_cast<long double>(t)));
    CHECK(sched.at(t) == doctest::Approx(expect).epsilon(1e-12));
  }
  CHECK_THROWS_AS(sched.at(0), InvalidInput);
}

TEST_CASE("anytime schedule is decreasing and square-summable below 1/8") {
  LambdaSchedule sched = LambdaSchedule::anytime_static();
  double prev = 1.0;
  double sum_sq = 0.0;
  for (std::int64_t t = 1; t <= 200000; ++t) {
    const double lt = sched.at(t);
    CHECK(lt > 0.0);
    REQUIRE(lt <= prev);
    prev = lt;
    sum_sq += lt * lt;
  }
  CHECK(sum_sq <= 0.125);
}

TEST_CASE("dynamic-path schedule reduces to the static one at zero path length") {
  LambdaSchedule sched = LambdaSchedule::dynamic_path();
  CHECK(sched.at(1, 0.0) == 0.25);
  CHECK(sched.at(7, 0.0) == LambdaSchedule::anytime_static().at(7));
  const double expect =
      static_cast<double>(anytime_formula_ld(2.0L * 2.0L));  // t (1 + P) with P = 1
  CHECK(sched.at(2, 1.0) == doctest::Approx(expect).epsilon(1e-12));
  CHECK_THROWS_AS(sched.at(3, -0.5), InvalidInput);
}

TEST_CASE("fixed-horizon schedule freezes the anytime value at T") {
  LambdaSchedule sched = LambdaSchedule::fixed_horizon(17);
  const double frozen = LambdaSchedule::anytime_static().at(17);
  for (std::int64_t t = 1; t <= 40; ++t) CHECK(sched.at(t) == frozen);
  CHECK(LambdaSchedule::fixed_horizon(1).at(1) == 0.25);
  CHECK_THROWS_AS(LambdaSchedule::fixed_horizon(0), InvalidInput);
}

TEST_CASE("optimistic-error schedule matches its formula and decreases in gamma") {
  const double bregman = 4.0, beta = 1.0, diameter = 2.0 * std::sqrt(2.0);
  LambdaSchedule sched = LambdaSchedule::optimistic_error(bregman, beta, diameter);
  CHECK(sched.gamma_seed() == doctest::Approx(1.0 / (diameter * diameter)).epsilon(1e-15));
  double prev = 1.0;
  for (double gamma : {0.0, 0.125, 1.0, 10.0, 500.0}) {
    const double expect = static_cast<double>(
        optimistic_formula_ld(static_cast<long double>(bregman), static_cast<long double>(beta),
                              static_cast<long double>(gamma)));
    const double got = sched.at(3, gamma);
    CHECK(got == doctest::Approx(expect).epsilon(1e-12));
    CHECK(got <= prev);
    prev = got;
  }
  // frozen spot value at gamma = 0.125
  CHECK(sched.at(1, 0.125) == doctest::Approx(0.0066867323552508064).epsilon(1e-13));
}

TEST_CASE("grad-adaptive schedule floors its statistic at one") {
  LambdaSchedule sched = LambdaSchedule::grad_adaptive(1.0);  // seed = 1
  CHECK(sched.at(5, 0.0) == 0.25);  // gamma = max(1, 0 + 1)
  LambdaSchedule wide = LambdaSchedule::grad_adaptive(10.0);  // seed = 0.01
  CHECK(wide.at(5, 0.0) == 0.25);   // floored
  CHECK(wide.at(5, 0.5) == 0.25);   // still below the floor
  const double expect = static_cast<double>(anytime_formula_ld(9.0L + 0.01L));
  CHECK(wide.at(5, 9.0) == doctest::Approx(expect).epsilon(1e-12));
  double prev = 1.0;
  for (double aux : {0.0, 0.5, 1.0, 3.0, 50.0}) {
    const double lt = wide.at(2, aux);
    CHECK(lt <= prev);
    prev = lt;
  }
}

TEST_CASE("potential value and slope") {
  CHECK(phi(0.25, 0.0) == 0.0);
  CHECK(phi(0.25, 4.0) == doctest::Approx(std::exp(1.0) - 1.0).epsilon(1e-15));
  CHECK(phi(0.5, 2.0) == doctest::Approx(phi(0.25, 4.0)).epsilon(1e-15));  // scaling identity
  CHECK(phi_prime(0.25, 0.0) == 0.25);
  CHECK(phi_prime(0.25, 4.0) == doctest::Approx(0.25 * std::exp(1.0)).epsilon(1e-15));
  CHECK_THROWS_AS(phi(0.0, 1.0), InvalidInput);
  CHECK_THROWS_AS(phi(0.25, -1.0), InvalidInput);
}

TEST_CASE("slope identity and scaling identity on random inputs") {
  Rng rng(4242);
  for (int rep = 0; rep < 5000; ++rep) {
    const double lambda = rng.uniform(1e-4, 0.25);
    const double x = rng.uniform(0.0, 100.0);
    const double lhs = phi_prime(lambda, x);
    const double rhs = lambda * (phi(lambda, x) + 1.0);
    REQUIRE(std::abs(lhs - rhs) <= 1e-12 * std::max(1.0, std::abs(rhs)));
    // phi_t((lambda_prev / lambda) x) == phi_prev(x)
    const double lambda_prev = lambda * rng.uniform(1.0, 3.0);
    if (lambda_prev * x > 600.0) continue;
    const double left = phi(lambda, (lambda_prev / lambda) * x);
    const double right = phi(lambda_prev, x);
    REQUIRE(std::abs(left - right) <= 1e-10 * std::max(1.0, std::abs(right)));
  }
}

TEST_CASE("overflow guard trips instead of saturating") {
  CHECK_THROWS_AS(phi(1.0, 701.0), OverflowGuard);
  CHECK_THROWS_AS(phi_prime(2.0, 400.0), OverflowGuard);
  CHECK_NOTHROW(phi(1.0, 699.0));
}

TEST_CASE("queue update: first round, frozen ratio value, identity") {
  VirtualQueue q;
  q = queue_update(q, 0.25, 0.25, 0.5);  // lambda_0 := lambda_1
  CHECK(q.q == 0.5);
  CHECK(q.cumulative_ccv == 0.5);

  const double lambda2 = LambdaSchedule::anytime_static().at(2);
  VirtualQueue q2 = queue_update(q, 0.25, lambda2, 0.0);
  // frozen oracle value: 0.125 / lambda_2 = 1.4046059263165096...
  CHECK(q2.q == doctest::Approx(1.4046059263165096).epsilon(1e-13));
  CHECK(q2.cumulative_ccv == 0.5);

  VirtualQueue q3;
  q3.q = 1.0;
  q3 = queue_update(q3, 0.1, 0.1, 0.0);
  CHECK(q3.q == 1.0);
}

TEST_CASE("queue update rejects an increasing schedule") {
  VirtualQueue q;
  CHECK_THROWS_AS(queue_update(q, 0.1, 0.2, 0.0), InvalidInput);
  CHECK_THROWS_AS(queue_update(q, 0.25, 0.25, -1.0), InvalidInput);
  CHECK_THROWS_AS(queue_update(q, 0.25, 0.0, 0.0), InvalidInput);
}

TEST_CASE("queue dominates the plain violation sum and lambda q never decreases") {
  Rng rng(777);
  LambdaSchedule sched = LambdaSchedule::anytime_static();
  for (int run = 0; run < 50; ++run) {
    VirtualQueue q;
    double lambda_prev = sched.at(1);
    double prev_lambda_q = 0.0;
    for (std::int64_t t = 1; t <= 400; ++t) {
      const double lambda = sched.at(t);
      const double g = rng.uniform() < 0.3 ? rng.uniform(0.0, 1.0) : 0.0;
      q = queue_update(q, t == 1 ? lambda : lambda_prev, lambda, g);
      REQUIRE(q.q >= q.cumulative_ccv - 1e-12);
      REQUIRE(lambda * q.q >= prev_lambda_q - 1e-12);
      prev_lambda_q = lambda * q.q;
      lambda_prev = lambda;
    }
  }
}

TEST_CASE("optimistic schedule damps any admissible error stream") {
  // sum of 2 lambda_tau^2 eps_tau stays below 1 / (100 (sqrt(B/beta) + B/beta)^2)
  Rng rng(31337);
  const double beta = 1.0;
  for (double diameter : {0.5, 2.0, 2.0 * std::sqrt(2.0), 10.0}) {
    const double bregman = 0.5 * diameter * diameter;
    const double c = std::sqrt(bregman / beta) + bregman / beta;
    const double cap = 1.0 / (100.0 * c * c);
    LambdaSchedule sched = LambdaSchedule::optimistic_error(bregman, beta, diameter);
    const double eps_max = 1.0 / (diameter * diameter);
    for (int run = 0; run < 20; ++run) {
      double err_sum = 0.0;
      double damped = 0.0;
      for (std::int64_t t = 1; t <= 3000; ++t) {
        const double gamma = err_sum + sched.gamma_seed();  // known before round t's error
        const double lambda = sched.at(t, gamma);
        const double eps = rng.uniform(0.0, eps_max);
        damped += 2.0 * lambda * lambda * eps;
        err_sum += eps;
        REQUIRE(damped <= cap);
      }
    }
  }
}
