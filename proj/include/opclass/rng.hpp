#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

#include "opclass/matrix.hpp"

namespace opclass {

/// Deterministic random stream. Gaussian draws are produced by an explicit
/// Box-Muller transform on the raw engine bits so results do not depend on
/// the standard library's distribution implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
    engine_.seed(seq);
  }

  /// Uniform draw in [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1p-53; }

  /// Uniform draw in (0, 1], safe as a log argument.
  double uniform_positive() { return 1.0 - uniform(); }

  double gaussian() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double r = std::sqrt(-2.0 * std::log(uniform_positive()));
    const double theta = 2.0 * std::numbers::pi * uniform();
    spare_ = r * std::sin(theta);
    have_spare_ = true;
    return r * std::cos(theta);
  }

  Complex complex_gaussian() {
    const double r = std::sqrt(-2.0 * std::log(uniform_positive()));
    const double theta = 2.0 * std::numbers::pi * uniform();
    return Complex(r * std::cos(theta), r * std::sin(theta));
  }

  ComplexVector gaussian_vector(Eigen::Index dim) {
    ComplexVector v(dim);
    for (Eigen::Index i = 0; i < dim; ++i) v[i] = complex_gaussian();
    return v;
  }

  /// Gaussian vector normalized to the unit sphere.
  ComplexVector unit_vector(Eigen::Index dim) {
    ComplexVector v = gaussian_vector(dim);
    double norm = v.norm();
    while (norm < 1e-300) {  // essentially impossible, but stay total
      v = gaussian_vector(dim);
      norm = v.norm();
    }
    return v / norm;
  }

  ComplexMatrix gaussian_matrix(Eigen::Index rows, Eigen::Index cols) {
    ComplexMatrix m(rows, cols);
    for (Eigen::Index j = 0; j < cols; ++j)
      for (Eigen::Index i = 0; i < rows; ++i) m(i, j) = complex_gaussian();
    return m;
  }

 private:
  std::mt19937_64 engine_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace opclass
