#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace mublp {

/// Mismatched or invalid matrix/vector dimensions.
class DimensionError : public std::invalid_argument {
 public:
  explicit DimensionError(const std::string& what) : std::invalid_argument(what) {}
};

/// A Moebius transform was evaluated too close to its pole.
class SingularTransformError : public std::domain_error {
 public:
  SingularTransformError(const std::string& what, std::complex<double> z, double denom_abs)
      : std::domain_error(what), z_(z), denom_abs_(denom_abs) {}

  std::complex<double> offending_input() const { return z_; }
  double denominator_modulus() const { return denom_abs_; }

 private:
  std::complex<double> z_;
  double denom_abs_;
};

/// A redundant analytic relation failed to hold within tolerance.
class ConsistencyError : public std::runtime_error {
 public:
  ConsistencyError(const std::string& what, double residual)
      : std::runtime_error(what), residual_(residual) {}

  double residual() const { return residual_; }

 private:
  double residual_;
};

/// An assembled matrix failed its structural (Hadamard) check.
class ConstructionError : public std::runtime_error {
 public:
  ConstructionError(const std::string& what, double max_residual)
      : std::runtime_error(what), max_residual_(max_residual) {}

  double max_residual() const { return max_residual_; }

 private:
  double max_residual_;
};

/// An exponent vector falls outside the configured lattice ball.
class OrbitOutsideSpaceError : public std::out_of_range {
 public:
  OrbitOutsideSpaceError(const std::string& what, int l1_norm, int l)
      : std::out_of_range(what), l1_norm_(l1_norm), l_(l) {}

  int l1_norm() const { return l1_norm_; }
  int l() const { return l_; }

 private:
  int l1_norm_;
  int l_;
};

}  // namespace mublp
