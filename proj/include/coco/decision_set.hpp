#ifndef COCO_DECISION_SET_HPP
#define COCO_DECISION_SET_HPP

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "coco/rng.hpp"
#include "coco/types.hpp"

namespace coco {

// Non-empty closed convex decision region with a finite Euclidean diameter.
// `diameter()` equals the true diameter, or upper-bounds it within 1e-9 for
// kinds where the exact value is expensive. Instances are immutable after
// construction and safe to share across concurrent runs.
class DecisionSet {
 public:
  virtual ~DecisionSet() = default;

  virtual int dimension() const = 0;
  virtual double diameter() const = 0;
  virtual std::string kind() const = 0;

  // Euclidean projection: argmin over the set of ||x - y||, within additive
  // distance `tol` of the exact projection. Exact (up to rounding) for boxes,
  // balls and vertex hulls; iterative for the flow polytope.
  virtual Vec project(const Vec& y, double tol) const = 0;
  Vec project(const Vec& y) const { return project(y, default_tol()); }

  // Membership within additive tolerance.
  virtual bool contains(const Vec& x, double tol) const = 0;

  // Linear minimization oracle: argmin_{v in set} <c, v>. Every built-in kind
  // provides one; it backs Frank-Wolfe style routines and gap certificates.
  virtual Vec linear_minimizer(const Vec& c) const = 0;

  // Random member, for property tests and benchmark seeding.
  virtual Vec sample(Rng& rng) const = 0;

  // Axis-aligned box enclosing the set (grid search and samplers use it).
  virtual std::pair<Vec, Vec> bounding_box() const = 0;

  virtual double default_tol() const { return 1e-9; }

 protected:
  void check_dim(const Vec& y) const;
};

// Axis-aligned box prod_i [lower_i, upper_i].
class BoxSet final : public DecisionSet {
 public:
  BoxSet(Vec lower, Vec upper);
  // Symmetric box [-half_width, half_width]^dim.
  static BoxSet centered(int dim, double half_width);

  int dimension() const override { return static_cast<int>(lower_.size()); }
  double diameter() const override { return diameter_; }
  std::string kind() const override { return "interval-box"; }
  Vec project(const Vec& y, double tol) const override;
  bool contains(const Vec& x, double tol) const override;
  Vec linear_minimizer(const Vec& c) const override;
  Vec sample(Rng& rng) const override;
  std::pair<Vec, Vec> bounding_box() const override { return {lower_, upper_}; }

  const Vec& lower() const { return lower_; }
  const Vec& upper() const { return upper_; }

 private:
  Vec lower_, upper_;
  double diameter_;
};

// Euclidean ball ||x - center|| <= radius.
class BallSet final : public DecisionSet {
 public:
  BallSet(Vec center, double radius);

  int dimension() const override { return static_cast<int>(center_.size()); }
  double diameter() const override { return 2.0 * radius_; }
  std::string kind() const override { return "euclidean-ball"; }
  Vec project(const Vec& y, double tol) const override;
  bool contains(const Vec& x, double tol) const override;
  Vec linear_minimizer(const Vec& c) const override;
  Vec sample(Rng& rng) const override;
  std::pair<Vec, Vec> bounding_box() const override {
    return {Vec(center_.array() - radius_), Vec(center_.array() + radius_)};
  }

  const Vec& center() const { return center_; }
  double radius() const { return radius_; }

 private:
  Vec center_;
  double radius_;
};

// Convex hull of an explicit vertex list. Projection runs a min-norm-point
// active-set method (exact up to linear-solve rounding).
class VertexHullSet final : public DecisionSet {
 public:
  explicit VertexHullSet(std::vector<Vec> vertices);

  int dimension() const override { return dim_; }
  double diameter() const override { return diameter_; }
  std::string kind() const override { return "explicit-vertex-hull"; }
  Vec project(const Vec& y, double tol) const override;
  bool contains(const Vec& x, double tol) const override;
  Vec linear_minimizer(const Vec& c) const override;
  Vec sample(Rng& rng) const override;
  std::pair<Vec, Vec> bounding_box() const override;

  const std::vector<Vec>& vertices() const { return vertices_; }

 private:
  std::vector<Vec> vertices_;
  int dim_;
  double diameter_;
};

}  // namespace coco

#endif  // COCO_DECISION_SET_HPP
