#ifndef COCO_TYPES_HPP
#define COCO_TYPES_HPP

#include <Eigen/Core>
#include <cstdint>

namespace coco {

// Column vector of doubles; dimension is fixed per experiment.
using Vec = Eigen::VectorXd;

inline bool all_finite(const Vec& v) { return v.allFinite(); }

}  // namespace coco

#endif  // COCO_TYPES_HPP
