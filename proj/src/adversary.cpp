#include <algorithm>
#include <cmath>

#include "coco/errors.hpp"
#include "coco/harness.hpp"
#include "coco/rng.hpp"

namespace coco {

namespace {

Vec random_unit(Rng& rng, int dim) {
  Vec v(dim);
  double norm = 0.0;
  while (norm == 0.0) {
    for (int i = 0; i < dim; ++i) v(i) = rng.normal();
    norm = v.norm();
  }
  return v / norm;
}

// largest ||x - c|| over the corners of a centered box of half-width `half`
double max_corner_distance(const Vec& c, double half) {
  double sq = 0.0;
  for (int i = 0; i < c.size(); ++i) {
    const double d = std::max(std::abs(-half - c(i)), std::abs(half - c(i)));
    sq += d * d;
  }
  return std::sqrt(sq);
}

Instance alternating_linear(int dim, std::int64_t horizon, std::uint64_t seed) {
  Instance inst;
  inst.set = std::make_shared<BoxSet>(BoxSet::centered(dim, 1.0));
  Rng rng(Rng::mix(seed ^ 0xA17E12ULL));
  const Vec c = random_unit(rng, dim);
  inst.costs.reserve(static_cast<size_t>(horizon));
  inst.constraints.reserve(static_cast<size_t>(horizon));
  for (std::int64_t t = 1; t <= horizon; ++t) {
    const double sign = (t % 2 == 0) ? 1.0 : -1.0;
    inst.costs.push_back(make_linear(sign * c));
    inst.constraints.push_back(make_constant(0.0, dim));
  }
  inst.lipschitz = 1.0;
  return inst;
}

Instance drifting_optimum(int dim, std::int64_t horizon, std::uint64_t seed,
                          double path_budget) {
  if (path_budget < 0.0) throw InvalidInput("drifting-optimum: path budget must be >= 0");
  Instance inst;
  inst.set = std::make_shared<BoxSet>(BoxSet::centered(dim, 1.0));
  Rng rng(Rng::mix(seed ^ 0xD41F7ULL));

  // quadratic bowls whose minimum wanders a total distance of path_budget,
  // bouncing inside the inner box [-0.5, 0.5]^dim
  std::vector<Vec> centers;
  centers.reserve(static_cast<size_t>(horizon));
  Vec c(dim);
  for (int i = 0; i < dim; ++i) c(i) = rng.uniform(-0.3, 0.3);
  Vec dir = random_unit(rng, dim);
  const double step = horizon > 1 ? path_budget / static_cast<double>(horizon - 1) : 0.0;
  for (std::int64_t t = 0; t < horizon; ++t) {
    centers.push_back(c);
    if (step > 0.0) {
      for (int i = 0; i < dim; ++i) {
        double next = c(i) + step * dir(i);
        if (next > 0.5 || next < -0.5) {
          dir(i) = -dir(i);
          next = c(i) + step * dir(i);
        }
        c(i) = next;
      }
      // slow random turn keeps the path from being a straight shuttle
      Vec turn = random_unit(rng, dim);
      dir = (dir + 0.05 * turn).normalized();
    }
  }

  const Vec a = random_unit(rng, dim);
  Vec mean = Vec::Zero(dim);
  for (const Vec& ct : centers) mean += ct;
  mean /= static_cast<double>(horizon);
  // halfspace <a, x> <= b cutting through the bowl path; x = -0.2 a stays
  // strictly feasible, so exact feasibility polish always has an anchor
  const double b = std::max(0.15, a.dot(mean));

  double lipschitz = 1.0;  // the constraint gradient norm
  for (std::int64_t t = 0; t < horizon; ++t) {
    const double lip = 2.0 * max_corner_distance(centers[static_cast<size_t>(t)], 1.0);
    lipschitz = std::max(lipschitz, lip);
    inst.costs.push_back(make_quadratic_distance(centers[static_cast<size_t>(t)], lip));
    inst.constraints.push_back(make_linear(a, -b));
  }
  inst.lipschitz = lipschitz;
  return inst;
}

Instance constraint_pressure(int dim, std::int64_t horizon, std::uint64_t seed) {
  Instance inst;
  inst.set = std::make_shared<BoxSet>(BoxSet::centered(dim, 1.0));
  Rng rng(Rng::mix(seed ^ 0xC057A1ULL));
  const Vec a0 = random_unit(rng, dim);
  Vec a_perp = Vec::Zero(dim);
  if (dim >= 2) {
    a_perp = random_unit(rng, dim);
    a_perp -= a_perp.dot(a0) * a0;
    if (a_perp.norm() > 1e-12)
      a_perp.normalize();
    else
      a_perp.setZero();
  }
  const double omega = rng.uniform(0.002, 0.02);  // slow rotation of the constraint normal
  for (std::int64_t t = 1; t <= horizon; ++t) {
    Vec a = a0;
    if (dim >= 2 && a_perp.norm() > 0.0) {
      const double angle = omega * static_cast<double>(t);
      a = std::cos(angle) * a0 + std::sin(angle) * a_perp;
    }
    const double slack = 0.15 + 0.5 / std::sqrt(static_cast<double>(t));
    // cost rewards pushing across the constraint boundary
    inst.costs.push_back(make_linear(-a));
    inst.constraints.push_back(make_linear(a, -slack));
  }
  inst.lipschitz = 1.0;
  return inst;
}

Instance from_path_env(PathEnvInstance env) {
  Instance inst;
  auto polytope = std::make_shared<FlowPolytope>(env.graph);
  inst.set = polytope;
  double lipschitz = 0.0;
  for (const RoundFunctions& round : env.rounds) {
    inst.costs.push_back(make_linear(round.latency));
    // g_t(x) = beta_t - <bandwidth, x>
    inst.constraints.push_back(make_linear(-round.bandwidth, round.beta));
    lipschitz = std::max({lipschitz, round.latency.norm(), round.bandwidth.norm()});
  }
  inst.lipschitz = lipschitz;
  inst.path_env = std::move(env);
  return inst;
}

}  // namespace

Instance synthetic_adversary(const std::string& kind, int dimension, std::int64_t horizon,
                             std::uint64_t seed, double path_budget) {
  if (dimension < 1) throw InvalidInput("synthetic adversary: dimension must be >= 1");
  if (horizon < 1) throw InvalidInput("synthetic adversary: horizon must be >= 1");
  if (kind == "alternating-linear") return alternating_linear(dimension, horizon, seed);
  if (kind == "drifting-optimum") return drifting_optimum(dimension, horizon, seed, path_budget);
  if (kind == "constraint-pressure") return constraint_pressure(dimension, horizon, seed);
  throw InvalidInput("synthetic adversary: unknown kind '" + kind + "'");
}

Instance materialize_instance(const ExperimentConfig& config) {
  const InstanceDescriptor& desc = config.instance;
  if (desc.kind == "shortest-path") {
    GenerateOptions options;
    options.latency_scale_lo = desc.latency_scale_lo;
    options.latency_scale_hi = desc.latency_scale_hi;
    options.bandwidth_scale_lo = desc.bandwidth_scale_lo;
    options.bandwidth_scale_hi = desc.bandwidth_scale_hi;
    options.rho = desc.rho;
    return from_path_env(
        generate_instance(config.seed, desc.nodes, desc.edges, config.horizon, options));
  }
  if (desc.kind == "file") return from_path_env(load_instance(desc.graph_file, desc.rounds_file));
  return synthetic_adversary(desc.kind, desc.dimension, config.horizon, config.seed,
                             desc.path_budget);
}

void attach_predictions(Instance& instance, const std::string& mode, double sigma,
                        std::uint64_t seed) {
  const std::int64_t horizon = instance.horizon();
  const int dim = instance.set->dimension();
  instance.pred_costs.clear();
  instance.pred_constraints.clear();
  instance.pred_costs.reserve(static_cast<size_t>(horizon));
  instance.pred_constraints.reserve(static_cast<size_t>(horizon));

  if (mode == "perfect") {
    instance.pred_costs = instance.costs;
    instance.pred_constraints = instance.constraints;
    return;
  }
  if (mode == "zero") {
    FunctionOracle zero = make_constant(0.0, dim);
    zero.lipschitz = instance.lipschitz;  // claimed bound shared with the true functions
    for (std::int64_t t = 0; t < horizon; ++t) {
      instance.pred_costs.push_back(zero);
      instance.pred_constraints.push_back(zero);
    }
    return;
  }
  if (mode == "noisy") {
    if (sigma < 0.0) throw InvalidInput("predictions: sigma must be non-negative");
    Rng rng(Rng::mix(seed ^ 0x90E15EULL));
    const double big_g = instance.lipschitz;
    auto noisy_of = [&](const FunctionOracle& truth) {
      Vec noise(dim);
      for (int i = 0; i < dim; ++i) noise(i) = rng.normal();
      noise *= sigma * big_g / std::sqrt(static_cast<double>(dim));
      // corrupted gradient field, exact values: the clipping in
      // pre-processing still sees the true constraint sign
      FunctionOracle pred;
      auto base = truth.subgrad;
      pred.subgrad = [base, noise, big_g](const Vec& x) {
        Vec g = base(x) + noise;
        const double n = g.norm();
        if (n > big_g) g *= big_g / n;  // keep the claimed Lipschitz bound honest
        return g;
      };
      pred.value = truth.value;
      pred.lipschitz = big_g;
      return pred;
    };
    for (std::int64_t t = 0; t < horizon; ++t) {
      instance.pred_costs.push_back(noisy_of(instance.costs[static_cast<size_t>(t)]));
      instance.pred_constraints.push_back(
          noisy_of(instance.constraints[static_cast<size_t>(t)]));
    }
    return;
  }
  throw InvalidInput("predictions: unknown mode '" + mode + "'");
}

}  // namespace coco
