#pragma once

#include <stdexcept>
#include <string>

namespace kelvin_eit {

/// Argument outside the mathematical domain of an operation (radius not in
/// (0,1), dimension below 2, ball not inside the unit ball, ...).
class DomainError : public std::domain_error {
 public:
  explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

/// Evaluation at (or numerically at) the center of an inversion, or at the
/// pole of a Moebius map.
class SingularityError : public std::domain_error {
 public:
  explicit SingularityError(const std::string& what) : std::domain_error(what) {}
};

/// Boundary data whose sample count does not match the grid it claims to
/// live on.
class GridMismatchError : public std::invalid_argument {
 public:
  explicit GridMismatchError(const std::string& what) : std::invalid_argument(what) {}
};

}  // namespace kelvin_eit
