#include "opclass/structure.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <vector>

#include "opclass/linalg.hpp"

namespace opclass {

namespace {

std::vector<Complex> eigenvalue_list(const ComplexMatrix& m) {
  if (m.rows() == 0) return {};
  Eigen::ComplexEigenSolver<ComplexMatrix> solver(m, false);
  const auto& ev = solver.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

/// Greedy nearest-neighbour multiset match within `radius`.
bool multisets_match(std::vector<Complex> left, std::vector<Complex> right, double radius) {
  if (left.size() != right.size()) return false;
  for (const Complex& l : left) {
    double best = std::numeric_limits<double>::infinity();
    std::size_t best_idx = 0;
    for (std::size_t i = 0; i < right.size(); ++i) {
      const double d = std::abs(l - right[i]);
      if (d < best) {
        best = d;
        best_idx = i;
      }
    }
    if (best > radius) return false;
    right.erase(right.begin() + static_cast<std::ptrdiff_t>(best_idx));
  }
  return true;
}

}  // namespace

Decomposition decompose(const ComplexMatrix& t, int k, double tol) {
  require_square(t, "decompose");
  if (k < 0) throw ParameterError("decompose: k must be >= 0");
  const Eigen::Index dim = t.rows();

  Decomposition d;
  if (k == 0) {
    d.basis = ComplexMatrix::Identity(dim, dim);
    d.range_dim = dim;
    d.range_block = t;
    d.coupling_block = ComplexMatrix::Zero(dim, 0);
    d.kernel_block = ComplexMatrix::Zero(0, 0);
    d.residual = 0.0;
    d.spectrum_consistent = true;
    d.kernel_block_spectrum_zero = true;
    return d;
  }

  const ComplexMatrix tk = matrix_power(t, k);
  const ComplexMatrix range = orthonormal_range(tk, tol);
  const ComplexMatrix kernel = null_space_of_adjoint(tk, tol);
  d.range_dim = range.cols();
  d.basis = ComplexMatrix(dim, dim);
  d.basis.leftCols(range.cols()) = range;
  d.basis.rightCols(kernel.cols()) = kernel;

  const ComplexMatrix m = d.basis.adjoint() * t * d.basis;
  const Eigen::Index p = d.range_dim;
  d.range_block = m.topLeftCorner(p, p);
  d.coupling_block = m.topRightCorner(p, dim - p);
  d.kernel_block = m.bottomRightCorner(dim - p, dim - p);
  d.residual = m.bottomLeftCorner(dim - p, p).norm();

  const double radius = tol * (1.0 + operator_norm(t));
  std::vector<Complex> parts = eigenvalue_list(d.range_block);
  for (const Complex& ev : eigenvalue_list(d.kernel_block)) parts.push_back(ev);
  d.spectrum_consistent = multisets_match(eigenvalue_list(t), parts, radius);

  d.kernel_block_spectrum_zero = true;
  for (const Complex& ev : eigenvalue_list(d.kernel_block)) {
    if (std::abs(ev) > radius) d.kernel_block_spectrum_zero = false;
  }
  return d;
}

ComplexMatrix restrict_to_invariant(const ComplexMatrix& t, const ComplexMatrix& v, double tol) {
  require_square(t, "restrict_to_invariant");
  if (v.rows() != t.rows()) {
    throw std::invalid_argument("restrict_to_invariant: basis row count must match T");
  }
  const ComplexMatrix gram = v.adjoint() * v;
  if ((gram - ComplexMatrix::Identity(v.cols(), v.cols())).norm() > tol * (1.0 + v.cols())) {
    throw NotInvariantError("restrict_to_invariant: columns are not orthonormal");
  }
  const ComplexMatrix tv = t * v;
  const double leakage = (tv - v * (v.adjoint() * tv)).norm();
  if (leakage > tol * (1.0 + operator_norm(t))) {
    throw NotInvariantError("restrict_to_invariant: subspace is not T-invariant (leakage " +
                            std::to_string(leakage) + ")");
  }
  return v.adjoint() * tv;
}

SimilarityResult build_similarity(const ComplexMatrix& a, const ComplexMatrix& b,
                                  const ComplexMatrix& c, int k, double tol) {
  require_square(a, "build_similarity: A");
  require_square(c, "build_similarity: C");
  if (k < 1) throw ParameterError("build_similarity: k must be >= 1");
  if (b.rows() != a.rows() || b.cols() != c.rows()) {
    throw std::invalid_argument("build_similarity: B must be rows(A) x rows(C)");
  }

  const Eigen::JacobiSVD<ComplexMatrix> svd(a);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0 || sv[sv.size() - 1] <= tol * sv[0] || sv[0] == 0.0) {
    throw NotInvertibleError("build_similarity: A is singular to tolerance");
  }
  const double c_norm = operator_norm(c);
  const double ck_norm = operator_norm(matrix_power(c, k));
  if (ck_norm > tol * std::pow(1.0 + c_norm, k)) {
    throw NotNilpotentError("build_similarity: C^k has norm " + std::to_string(ck_norm) +
                            ", not nilpotent to tolerance");
  }

  SimilarityResult out;
  out.s = solve_sylvester(a, c, b, tol);

  const Eigen::Index p = a.rows();
  const Eigen::Index q = c.rows();
  out.w = ComplexMatrix::Identity(p + q, p + q);
  out.w.topRightCorner(p, q) = out.s;
  out.r = ComplexMatrix::Zero(p + q, p + q);
  out.r.topLeftCorner(p, p) = a;
  out.r.bottomRightCorner(q, q) = c;

  ComplexMatrix t = ComplexMatrix::Zero(p + q, p + q);
  t.topLeftCorner(p, p) = a;
  t.topRightCorner(p, q) = b;
  t.bottomRightCorner(q, q) = c;
  out.intertwining_residual = (out.w * t - out.r * out.w).norm();
  return out;
}

}  // namespace opclass
