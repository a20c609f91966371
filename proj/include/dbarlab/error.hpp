#pragma once

#include <stdexcept>
#include <string>

namespace dbarlab {

/// Bad argument or precondition violated by the caller.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Operation not defined for the form degree (e.g. dbar of a top-degree form).
class DegreeError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A geometric or algebraic degeneracy: vanishing |dr|, empty filtered basis,
/// star-shape violations.
class DegenerateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Mass matrix is not Hermitian positive definite.
class NotPositiveDefinite : public std::runtime_error {
 public:
  NotPositiveDefinite(const std::string& what, double min_eigenvalue)
      : std::runtime_error(what), min_eigenvalue_(min_eigenvalue) {}
  double min_eigenvalue() const noexcept { return min_eigenvalue_; }

 private:
  double min_eigenvalue_;
};

/// Iterative eigensolver hit its iteration cap.
class NoConvergence : public std::runtime_error {
 public:
  NoConvergence(const std::string& what, double worst_residual)
      : std::runtime_error(what), worst_residual_(worst_residual) {}
  double worst_residual() const noexcept { return worst_residual_; }

 private:
  double worst_residual_;
};

}  // namespace dbarlab
