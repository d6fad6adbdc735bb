#ifndef COCO_ERRORS_HPP
#define COCO_ERRORS_HPP

#include <stdexcept>
#include <string>

#include "coco/types.hpp"

namespace coco {

// Bad arguments or violated preconditions (dimension mismatch, negative
// tolerance, decreasing schedule, ...).
class InvalidInput : public std::invalid_argument {
 public:
  explicit InvalidInput(const std::string& what) : std::invalid_argument(what) {}
};

// An iterative method ran out of its iteration budget. Carries the best
// iterate found and the residual certificate at that point.
class ConvergenceFailure : public std::runtime_error {
 public:
  ConvergenceFailure(const std::string& what, Vec best, double residual)
      : std::runtime_error(what), best_iterate(std::move(best)), residual(residual) {}

  Vec best_iterate;
  double residual;
};

// exp(lambda * x) would overflow a double. The potential argument is
// theoretically bounded by log(4t), so hitting this signals a bug upstream.
class OverflowGuard : public std::runtime_error {
 public:
  explicit OverflowGuard(const std::string& what) : std::runtime_error(what) {}
};

// Destination not reachable under the given weights.
class NoPath : public std::runtime_error {
 public:
  explicit NoPath(const std::string& what) : std::runtime_error(what) {}
};

// Random instance generation could not produce a usable graph.
class GenerationFailure : public std::runtime_error {
 public:
  explicit GenerationFailure(const std::string& what) : std::runtime_error(what) {}
};

// No point satisfying every recorded constraint could be found.
class InfeasibleBenchmark : public std::runtime_error {
 public:
  explicit InfeasibleBenchmark(const std::string& what) : std::runtime_error(what) {}
};

// Filesystem problems while emitting outputs.
class IoError : public std::runtime_error {
 public:
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace coco

#endif  // COCO_ERRORS_HPP
