#include "coco/decision_set.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numeric>

#include "coco/errors.hpp"

namespace coco {

void DecisionSet::check_dim(const Vec& y) const {
  if (static_cast<int>(y.size()) != dimension())
    throw InvalidInput("decision set: point has dimension " + std::to_string(y.size()) +
                       ", expected " + std::to_string(dimension()));
}

// ---------------------------------------------------------------------------
// BoxSet

BoxSet::BoxSet(Vec lower, Vec upper) : lower_(std::move(lower)), upper_(std::move(upper)) {
  if (lower_.size() != upper_.size() || lower_.size() == 0)
    throw InvalidInput("box: bound dimensions disagree");
  if ((upper_ - lower_).minCoeff() < 0.0) throw InvalidInput("box: lower exceeds upper");
  diameter_ = (upper_ - lower_).norm();
}

BoxSet BoxSet::centered(int dim, double half_width) {
  if (dim <= 0 || half_width <= 0.0) throw InvalidInput("box: bad centered parameters");
  return BoxSet(Vec::Constant(dim, -half_width), Vec::Constant(dim, half_width));
}

Vec BoxSet::project(const Vec& y, double tol) const {
  check_dim(y);
  if (tol <= 0.0) throw InvalidInput("project: tol must be positive");
  return y.cwiseMax(lower_).cwiseMin(upper_);
}

bool BoxSet::contains(const Vec& x, double tol) const {
  check_dim(x);
  return (x - lower_).minCoeff() >= -tol && (upper_ - x).minCoeff() >= -tol;
}

Vec BoxSet::linear_minimizer(const Vec& c) const {
  check_dim(c);
  Vec v(c.size());
  for (int i = 0; i < c.size(); ++i) v(i) = c(i) >= 0.0 ? lower_(i) : upper_(i);
  return v;
}

Vec BoxSet::sample(Rng& rng) const {
  Vec v(lower_.size());
  for (int i = 0; i < v.size(); ++i) v(i) = rng.uniform(lower_(i), upper_(i));
  return v;
}

// ---------------------------------------------------------------------------
// BallSet

BallSet::BallSet(Vec center, double radius) : center_(std::move(center)), radius_(radius) {
  if (center_.size() == 0 || radius_ <= 0.0) throw InvalidInput("ball: bad parameters");
}

Vec BallSet::project(const Vec& y, double tol) const {
  check_dim(y);
  if (tol <= 0.0) throw InvalidInput("project: tol must be positive");
  const Vec delta = y - center_;
  const double dist = delta.norm();
  if (dist <= radius_) return y;
  return center_ + (radius_ / dist) * delta;
}

bool BallSet::contains(const Vec& x, double tol) const {
  check_dim(x);
  return (x - center_).norm() <= radius_ + tol;
}

Vec BallSet::linear_minimizer(const Vec& c) const {
  check_dim(c);
  const double norm = c.norm();
  if (norm == 0.0) return center_;
  return center_ - (radius_ / norm) * c;
}

Vec BallSet::sample(Rng& rng) const {
  // uniform in the ball: normal direction, radius ~ U^(1/d)
  Vec dir(center_.size());
  for (int i = 0; i < dir.size(); ++i) dir(i) = rng.normal();
  const double norm = dir.norm();
  if (norm == 0.0) return center_;
  const double r = radius_ * std::pow(rng.uniform(), 1.0 / static_cast<double>(center_.size()));
  return center_ + (r / norm) * dir;
}

// ---------------------------------------------------------------------------
// VertexHullSet

VertexHullSet::VertexHullSet(std::vector<Vec> vertices) : vertices_(std::move(vertices)) {
  if (vertices_.empty()) throw InvalidInput("hull: empty vertex list");
  dim_ = static_cast<int>(vertices_.front().size());
  for (const Vec& v : vertices_)
    if (static_cast<int>(v.size()) != dim_) throw InvalidInput("hull: mixed vertex dimensions");
  diameter_ = 0.0;
  for (size_t i = 0; i < vertices_.size(); ++i)
    for (size_t j = i + 1; j < vertices_.size(); ++j)
      diameter_ = std::max(diameter_, (vertices_[i] - vertices_[j]).norm());
}

namespace {

// Minimize ||V w - y||^2 over the simplex restricted to the index set
// `active` via the KKT system of the equality-constrained problem; negative
// weights are dropped one at a time.
Vec solve_active_weights(const std::vector<Vec>& vertices, std::vector<int>& active,
                         const Vec& y) {
  while (true) {
    const int k = static_cast<int>(active.size());
    Eigen::MatrixXd kkt(k + 1, k + 1);
    Eigen::VectorXd rhs(k + 1);
    for (int i = 0; i < k; ++i) {
      for (int j = 0; j < k; ++j) kkt(i, j) = vertices[active[i]].dot(vertices[active[j]]);
      kkt(i, k) = 1.0;
      kkt(k, i) = 1.0;
      rhs(i) = vertices[active[i]].dot(y);
    }
    kkt(k, k) = 0.0;
    rhs(k) = 1.0;
    Eigen::VectorXd sol = kkt.colPivHouseholderQr().solve(rhs);
    Vec w = sol.head(k);
    int worst = -1;
    double most_negative = -1e-12;
    for (int i = 0; i < k; ++i) {
      if (w(i) < most_negative) {
        most_negative = w(i);
        worst = i;
      }
    }
    if (worst < 0 || k == 1) {
      if (k == 1) w(0) = 1.0;
      return w;
    }
    active.erase(active.begin() + worst);
  }
}

}  // namespace

Vec VertexHullSet::project(const Vec& y, double tol) const {
  check_dim(y);
  if (tol <= 0.0) throw InvalidInput("project: tol must be positive");
  // min-norm-point style active-set loop: solve exactly on the active set,
  // then add the most violated vertex until the optimality gap closes
  std::vector<int> active{0};
  {
    double best = (vertices_[0] - y).squaredNorm();
    for (size_t i = 1; i < vertices_.size(); ++i) {
      const double d = (vertices_[i] - y).squaredNorm();
      if (d < best) {
        best = d;
        active[0] = static_cast<int>(i);
      }
    }
  }
  Vec x = vertices_[active[0]];
  const double scale = std::max(1.0, y.norm() + diameter_);
  const double gap_tol = std::max(1e-13 * scale * scale, 0.0);
  for (int iter = 0; iter < 4 * static_cast<int>(vertices_.size()) + 16; ++iter) {
    const Vec grad = x - y;
    // best vertex under the gradient, smallest index on ties
    int best_idx = 0;
    double best_val = grad.dot(vertices_[0]);
    for (size_t i = 1; i < vertices_.size(); ++i) {
      const double v = grad.dot(vertices_[i]);
      if (v < best_val - 1e-15 * scale) {
        best_val = v;
        best_idx = static_cast<int>(i);
      }
    }
    const double gap = grad.dot(x) - best_val;
    if (gap <= gap_tol) break;
    if (std::find(active.begin(), active.end(), best_idx) == active.end())
      active.push_back(best_idx);
    const Vec w = solve_active_weights(vertices_, active, y);
    x = Vec::Zero(dim_);
    for (size_t i = 0; i < active.size(); ++i) x += w(static_cast<int>(i)) * vertices_[active[i]];
  }
  return x;
}

bool VertexHullSet::contains(const Vec& x, double tol) const {
  check_dim(x);
  return (project(x, std::max(tol, 1e-12)) - x).norm() <= tol;
}

Vec VertexHullSet::linear_minimizer(const Vec& c) const {
  check_dim(c);
  int best = 0;
  double best_val = c.dot(vertices_[0]);
  for (size_t i = 1; i < vertices_.size(); ++i) {
    const double v = c.dot(vertices_[i]);
    if (v < best_val) {
      best_val = v;
      best = static_cast<int>(i);
    }
  }
  return vertices_[best];
}

std::pair<Vec, Vec> VertexHullSet::bounding_box() const {
  Vec lo = vertices_.front(), hi = vertices_.front();
  for (const Vec& v : vertices_) {
    lo = lo.cwiseMin(v);
    hi = hi.cwiseMax(v);
  }
  return {lo, hi};
}

Vec VertexHullSet::sample(Rng& rng) const {
  // random convex combination with exponential weights (Dirichlet(1,...,1))
  std::vector<double> w(vertices_.size());
  double total = 0.0;
  for (double& wi : w) {
    wi = -std::log(std::max(rng.uniform(), 1e-300));
    total += wi;
  }
  Vec x = Vec::Zero(dim_);
  for (size_t i = 0; i < vertices_.size(); ++i) x += (w[i] / total) * vertices_[i];
  return x;
}

}  // namespace coco
