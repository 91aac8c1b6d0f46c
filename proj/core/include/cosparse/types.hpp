#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace cosparse {

using Index = Eigen::Index;
using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;
using RVector = Eigen::VectorXd;
using RMatrix = Eigen::MatrixXd;

/// Raised for malformed arguments: dimension mismatches, infeasible parameters.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when a computation is refused because it would exceed a configured cap.
class CapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when an operator lacks a property an operation requires (e.g. not a frame).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline void require(bool cond, const std::string& what) {
  if (!cond) throw InvalidArgument(what);
}

/// Sum of complex moduli.
inline double l1_norm(const CVector& v) { return v.cwiseAbs().sum(); }

/// True when every imaginary part is exactly zero.
inline bool is_real(const CVector& v) {
  for (Index i = 0; i < v.size(); ++i) {
    if (v[i].imag() != 0.0) return false;
  }
  return true;
}

}  // namespace cosparse
