#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace opclass {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// Default relative tolerance used by every tolerance-qualified operation.
inline constexpr double kDefaultTol = 1e-9;

// --- error types -----------------------------------------------------------
// Precondition failures signal caller bugs and carry a short description of
// the offending argument.

struct NotHermitianError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct NotPsdError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct SpectraOverlapError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct NotInvariantError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct NotInvertibleError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct NotNilpotentError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct NonPositiveMuError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct UnsupportedClassError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct ParameterError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Malformed or unreadable input data (files, JSON payloads).
struct DataError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Throws std::invalid_argument unless M is square.
inline void require_square(const ComplexMatrix& m, const char* who) {
  if (m.rows() != m.cols()) {
    throw std::invalid_argument(std::string(who) + ": matrix must be square, got " +
                                std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
  }
}

}  // namespace opclass
