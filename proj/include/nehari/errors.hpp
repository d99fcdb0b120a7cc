#ifndef NEHARI_ERRORS_HPP
#define NEHARI_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace nehari {

/// Thrown when a requested computation falls outside the parameter regime
/// in which the underlying variational problem has the required structure
/// (e.g. lambda >= lambda_1, mu beyond the admissible coupling interval,
/// or an iterate leaving the admissible set).
class RegimeError : public std::runtime_error {
public:
  explicit RegimeError(const std::string& what) : std::runtime_error(what) {}
};

/// Thrown when a quadrature does not pass its self-consistency refinement
/// check, or an iterative eigensolver stagnates.
class ConvergenceError : public std::runtime_error {
public:
  explicit ConvergenceError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace nehari

#endif
