#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "coco/base_oco.hpp"
#include "coco/decision_set.hpp"
#include "coco/errors.hpp"
#include "coco/rng.hpp"

using namespace coco;

namespace {

Vec v1(double a) {
  Vec v(1);
  v << a;
  return v;
}

}  // namespace

TEST_CASE("adagrad first step: eta sqrt2, clamped to the boundary") {
  BoxSet box(Vec(Vec::Constant(1, -1.0)), Vec(Vec::Constant(1, 1.0)));  // D = 2
  OgdState s = make_ogd_state(v1(0.0), box, 1e-9);
  s = adagrad_step(s, v1(1.0), box);
  CHECK(s.eta == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
  CHECK(s.x(0) == doctest::Approx(-1.0));  // -sqrt2 clamps to -1
}

TEST_CASE("adagrad zero gradient leaves everything untouched") {
  BoxSet box = BoxSet::centered(2, 1.0);
  OgdState s = make_ogd_state(Vec(Vec::Zero(2)), box, 1e-9);
  const OgdState next = adagrad_step(s, Vec(Vec::Zero(2)), box);
  CHECK(next.eta == 0.0);
  CHECK((next.x - s.x).norm() == 0.0);
}

TEST_CASE("adagrad second unit gradient gives eta 1 when D = 2") {
  BoxSet box(Vec(Vec::Constant(1, -1.0)), Vec(Vec::Constant(1, 1.0)));
  OgdState s = make_ogd_state(v1(0.0), box, 1e-9);
  s = adagrad_step(s, v1(1.0), box);
  s = adagrad_step(s, v1(1.0), box);
  CHECK(s.eta == doctest::Approx(1.0).epsilon(1e-15));  // sqrt2 * 2 / (2 sqrt2)
}

TEST_CASE("adagrad rejects non-finite and mis-sized gradients") {
  BoxSet box = BoxSet::centered(2, 1.0);
  OgdState s = make_ogd_state(Vec(Vec::Zero(2)), box, 1e-9);
  Vec bad(2);
  bad << std::numeric_limits<double>::quiet_NaN(), 0.0;
  CHECK_THROWS_AS(adagrad_step(s, bad, box), InvalidInput);
  CHECK_THROWS_AS(adagrad_step(s, v1(1.0), box), InvalidInput);
}

TEST_CASE("adagrad eta is non-increasing and iterates stay feasible") {
  BoxSet box = BoxSet::centered(3, 1.0);
  Rng rng(512);
  OgdState s = make_ogd_state(Vec(Vec::Zero(3)), box, 1e-9);
  double prev_eta = std::numeric_limits<double>::infinity();
  for (int t = 0; t < 500; ++t) {
    Vec g(3);
    for (int i = 0; i < 3; ++i) g(i) = rng.normal();
    if (g.norm() == 0.0) continue;
    s = adagrad_step(s, g, box);
    REQUIRE(s.eta <= prev_eta);
    REQUIRE(box.contains(s.x, 1e-9));
    prev_eta = s.eta;
  }
}

TEST_CASE("adagrad regret never exceeds sqrt2 D sqrt(sum G^2) against fixed points") {
  // random linear costs; the bound from the adaptive step sizes holds for any
  // fixed comparator in the set
  BoxSet box = BoxSet::centered(2, 1.0);
  Rng rng(2024);
  for (int run = 0; run < 20; ++run) {
    OgdState s = make_ogd_state(Vec(Vec::Zero(2)), box, 1e-9);
    std::vector<Vec> grads;
    std::vector<Vec> plays;
    double sum_sq = 0.0;
    for (int t = 0; t < 300; ++t) {
      Vec g(2);
      for (int i = 0; i < 2; ++i) g(i) = rng.normal();
      plays.push_back(s.x);
      grads.push_back(g);
      sum_sq += g.squaredNorm();
      s = adagrad_step(s, g, box);
    }
    const double bound = std::sqrt(2.0) * box.diameter() * std::sqrt(sum_sq);
    for (int probe = 0; probe < 20; ++probe) {
      const Vec u = box.sample(rng);
      double regret = 0.0;
      for (size_t t = 0; t < grads.size(); ++t) regret += grads[t].dot(plays[t] - u);
      REQUIRE(regret <= bound + 1e-9);
    }
  }
}

TEST_CASE("dynamic adagrad first step with unit diameter") {
  BoxSet box = BoxSet::centered(1, 0.5);  // D = 1
  OgdState s = make_ogd_state(v1(0.0), box, 1e-9);
  s = dynamic_adagrad_step(s, v1(1.0), 0.0, box);
  CHECK(s.eta == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));  // 2 / sqrt 2
  s = make_ogd_state(v1(0.0), box, 1e-9);
  const OgdState frozen = dynamic_adagrad_step(s, v1(0.0), 0.0, box);
  CHECK(frozen.eta == 0.0);
  CHECK(frozen.x(0) == 0.0);
}

TEST_CASE("dynamic adagrad second step matches 4/sqrt(6) after a unit path jump") {
  BoxSet box = BoxSet::centered(1, 0.5);
  OgdState s = make_ogd_state(v1(0.0), box, 1e-9);
  s = dynamic_adagrad_step(s, v1(1.0), 0.0, box);
  s = dynamic_adagrad_step(s, v1(1.0), 1.0, box);
  // (D+1)(1+P) / sqrt(2 (1 + 2)) with D = 1: 4 / sqrt 6 = 1.6329931618554520...
  CHECK(s.eta == doctest::Approx(1.6329931618554520).epsilon(1e-14));
}

TEST_CASE("dynamic adagrad rejects decreasing path lengths") {
  BoxSet box = BoxSet::centered(1, 0.5);
  OgdState s = make_ogd_state(v1(0.0), box, 1e-9);
  s = dynamic_adagrad_step(s, v1(1.0), 2.0, box);
  CHECK_THROWS_AS(dynamic_adagrad_step(s, v1(1.0), 1.0, box), InvalidInput);
}

TEST_CASE("euclidean bregman identities") {
  CHECK(bregman_euclidean(v1(0.7), v1(0.7)) == 0.0);
  Vec a(2), b(2);
  a << 1, 0;
  b << 0, 0;
  CHECK(bregman_euclidean(a, b) == doctest::Approx(0.5));
}

TEST_CASE("oomd initial step size and the perfect-prediction limit") {
  BoxSet box = BoxSet::centered(2, 1.0);
  OomdState s = make_oomd_state(Vec(Vec::Zero(2)), box, 1.0, 0.5, 4.0, 1e-9);
  CHECK(s.eta == doctest::Approx(0.25));  // beta / L_1
  // perfect predictions keep every error at zero, so eta stays beta / max L
  auto pred = [](const Vec&) { return Vec(Vec::Zero(2)); };
  for (int t = 0; t < 5; ++t) {
    s = oomd_step(s, Vec(Vec::Zero(2)), 0.0, pred, 4.0, box);
    CHECK(s.eta == doctest::Approx(0.25));
  }
  s = oomd_step(s, Vec(Vec::Zero(2)), 0.0, pred, 8.0, box);  // a steeper prediction arrives
  CHECK(s.eta == doctest::Approx(1.0 / 8.0));
  CHECK_THROWS_AS(oomd_step(s, Vec(Vec::Zero(2)), 0.0, pred, 0.0, box), InvalidInput);
  CHECK_THROWS_AS(oomd_step(s, Vec(Vec::Zero(2)), -1.0, pred, 1.0, box), InvalidInput);
}

TEST_CASE("oomd eta never increases and the error accumulators are ordered") {
  BoxSet box = BoxSet::centered(2, 1.0);
  Rng rng(88);
  OomdState s = make_oomd_state(Vec(Vec::Zero(2)), box, 1.0, 2.0, 1.0, 1e-9);
  double prev_eta = s.eta;
  auto pred = [&rng](const Vec&) {
    Vec g(2);
    g << 0.1, -0.2;
    return g;
  };
  for (int t = 0; t < 200; ++t) {
    Vec g(2);
    for (int i = 0; i < 2; ++i) g(i) = 0.3 * rng.normal();
    const double err = rng.uniform(0.0, 0.05);
    s = oomd_step(s, g, err, pred, 1.0, box);
    REQUIRE(s.eta <= prev_eta + 1e-15);
    REQUIRE(s.err_sum >= s.err_prev);
    REQUIRE(box.contains(s.x, 1e-9));
    REQUIRE(box.contains(s.x_secondary, 1e-9));
    prev_eta = s.eta;
  }
}

TEST_CASE("oomd regret with exact forecasts is bounded by the horizon-free envelope") {
  // linear costs revealed with perfect gradient forecasts: regret against any
  // fixed point stays below 5 sqrt(B/beta) sqrt(E) + 5 (B/beta) max L = const
  BoxSet box = BoxSet::centered(2, 1.0);
  Rng rng(515);
  const double beta = 1.0;
  const double bregman = 0.5 * box.diameter() * box.diameter();
  std::vector<Vec> grads;
  for (int t = 0; t < 400; ++t) {
    Vec g(2);
    for (int i = 0; i < 2; ++i) g(i) = rng.normal();
    g *= 0.5 / std::max(1.0, g.norm());
    grads.push_back(g);
  }
  double max_lip = 0.0;
  for (const Vec& g : grads) max_lip = std::max(max_lip, g.norm());
  OomdState s = make_oomd_state(Vec(Vec::Zero(2)), box, beta, bregman, max_lip, 1e-9);
  std::vector<Vec> plays;
  for (size_t t = 0; t < grads.size(); ++t) {
    plays.push_back(s.x);
    const Vec next = t + 1 < grads.size() ? grads[t + 1] : Vec(Vec::Zero(2));
    s = oomd_step(s, grads[t], 0.0, [&next](const Vec&) { return next; }, max_lip, box);
  }
  const double envelope = 5.0 * (bregman / beta) * max_lip;
  for (int probe = 0; probe < 20; ++probe) {
    const Vec u = box.sample(rng);
    double regret = 0.0;
    for (size_t t = 0; t < grads.size(); ++t) regret += grads[t].dot(plays[t] - u);
    REQUIRE(regret <= envelope + 1e-9);
  }
}

TEST_CASE("dynamic adagrad regret respects its weighted-mass bound") {
  // against any fixed comparator (path length zero <= P_t), the dynamic-step
  // learner's regret is at most sqrt2 (D+1) sqrt(sum (1+P_t) ||grad||^2)
  BoxSet box = BoxSet::centered(2, 1.0);
  Rng rng(911);
  for (int run = 0; run < 10; ++run) {
    OgdState s = make_ogd_state(Vec(Vec::Zero(2)), box, 1e-9);
    std::vector<Vec> grads, plays;
    double path = 0.0;
    double weighted_mass = 0.0;
    for (int t = 0; t < 250; ++t) {
      Vec g(2);
      for (int i = 0; i < 2; ++i) g(i) = rng.normal();
      plays.push_back(s.x);
      grads.push_back(g);
      path += rng.uniform(0.0, 0.02);  // arbitrary non-decreasing path statistic
      weighted_mass += (1.0 + path) * g.squaredNorm();
      s = dynamic_adagrad_step(s, g, path, box);
    }
    const double bound =
        std::sqrt(2.0) * (box.diameter() + 1.0) * std::sqrt(weighted_mass);
    for (int probe = 0; probe < 10; ++probe) {
      const Vec u = box.sample(rng);
      double regret = 0.0;
      for (size_t t = 0; t < grads.size(); ++t) regret += grads[t].dot(plays[t] - u);
      REQUIRE(regret <= bound + 1e-9);
    }
  }
}

TEST_CASE("oomd regret with noisy forecasts stays under the error-adaptive bound") {
  // regret <= 5 sqrt(B/beta) sqrt(E_t) + 5 (B/beta) max L for the realized
  // prediction errors fed to the learner
  BoxSet box = BoxSet::centered(2, 1.0);
  Rng rng(1618);
  const double beta = 1.0;
  const double bregman = 0.5 * box.diameter() * box.diameter();
  for (int run = 0; run < 8; ++run) {
    std::vector<Vec> grads(300), preds(301);
    double max_lip = 1e-9;
    for (size_t t = 0; t < grads.size(); ++t) {
      Vec g(2), noise(2);
      for (int i = 0; i < 2; ++i) {
        g(i) = rng.normal();
        noise(i) = 0.3 * rng.normal();
      }
      g *= 0.5 / std::max(1.0, g.norm());
      grads[t] = g;
      preds[t + 1] = g + noise;  // forecast of round t+1 made after round t
      max_lip = std::max(max_lip, preds[t + 1].norm());
    }
    preds[0] = Vec::Zero(2);
    max_lip = std::max(max_lip, 0.5);
    OomdState s = make_oomd_state(Vec(Vec::Zero(2)), box, beta, bregman, max_lip, 1e-9);
    std::vector<Vec> plays;
    double err_sum = 0.0;
    for (size_t t = 0; t < grads.size(); ++t) {
      plays.push_back(s.x);
      const double eps = (grads[t] - preds[t]).squaredNorm();
      err_sum += eps;
      const Vec next = preds[t + 1];
      s = oomd_step(s, grads[t], eps, [&next](const Vec&) { return next; }, max_lip, box);
    }
    const double bound = 5.0 * std::sqrt(bregman / beta) * std::sqrt(err_sum) +
                         5.0 * (bregman / beta) * max_lip;
    for (int probe = 0; probe < 10; ++probe) {
      const Vec u = box.sample(rng);
      double regret = 0.0;
      for (size_t t = 0; t < grads.size(); ++t) regret += grads[t].dot(plays[t] - u);
      REQUIRE(regret <= bound + 1e-9);
    }
  }
}
