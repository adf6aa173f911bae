#pragma once

// Shared vocabulary: scalar aliases, damping switch and the exception
// hierarchy used by every eitm module.

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace eitm {

using real_t = double;
using complex_t = std::complex<double>;
using StateVector = Eigen::VectorXcd;
using DensityMatrix = Eigen::MatrixXcd;

/// Extended precision for states that are differenced numerically: the
/// finite-difference quotient loses about log10(1/h) digits.
using wide_real_t = long double;
template <class R>
using BasicStateVector = Eigen::Matrix<std::complex<R>, Eigen::Dynamic, 1>;
using WideStateVector = BasicStateVector<wide_real_t>;

inline constexpr complex_t kI{0.0, 1.0};

/// Denominator magnitudes below this are treated as resonance poles.
inline constexpr real_t kDefaultPoleThreshold = 1e-12;

/// Off forces every decay rate to zero regardless of the stored values.
enum class DampingMode { Off, On };

inline const char* to_string(DampingMode m) { return m == DampingMode::On ? "on" : "off"; }

enum class ModelKind { FourLevel, ThreeLevel };

inline const char* to_string(ModelKind m) {
  return m == ModelKind::FourLevel ? "four-level" : "three-level";
}

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A quantity could not be evaluated at this point (pole, unstable step).
class EvaluationError : public Error {
 public:
  using Error::Error;
};

class PoleError : public EvaluationError {
 public:
  using EvaluationError::EvaluationError;
};

class StepTooLarge : public EvaluationError {
 public:
  using EvaluationError::EvaluationError;
};

class DegenerateInput : public Error {
 public:
  using Error::Error;
};

class InvalidSpec : public Error {
 public:
  using Error::Error;
};

class AllPoles : public Error {
 public:
  using Error::Error;
};

namespace detail {

inline void check_pole(complex_t denom, real_t threshold, const char* what) {
  if (!(std::abs(denom) >= threshold)) {
    throw PoleError(std::string("resonance pole: |") + what + "| below threshold");
  }
}

}  // namespace detail

}  // namespace eitm
