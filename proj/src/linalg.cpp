#include "opclass/linalg.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <cmath>

namespace opclass {

namespace {

Eigen::JacobiSVD<ComplexMatrix> full_svd(const ComplexMatrix& m) {
  return Eigen::JacobiSVD<ComplexMatrix>(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
}

Eigen::Index svd_rank(const Eigen::JacobiSVD<ComplexMatrix>& svd, double tol) {
  const auto& sv = svd.singularValues();
  if (sv.size() == 0) return 0;
  const double cutoff = tol * sv[0];
  Eigen::Index rank = 0;
  while (rank < sv.size() && sv[rank] > cutoff) ++rank;
  return rank;
}

}  // namespace

ComplexMatrix adjoint(const ComplexMatrix& m) { return m.adjoint(); }

ComplexMatrix matrix_power(const ComplexMatrix& m, int p) {
  require_square(m, "matrix_power");
  if (p < 0) throw std::invalid_argument("matrix_power: exponent must be >= 0");
  if (p == 0) return ComplexMatrix::Identity(m.rows(), m.cols());
  ComplexMatrix out = m;
  for (int i = 1; i < p; ++i) out = out * m;
  return out;
}

HermitianEig hermitian_eig(const ComplexMatrix& h, double tol) {
  require_square(h, "hermitian_eig");
  const double asym = (h - h.adjoint()).norm();
  if (asym > tol * h.norm()) {
    throw NotHermitianError("hermitian_eig: ||H - H*|| = " + std::to_string(asym) +
                            " exceeds tol * ||H||");
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("hermitian_eig: eigensolver failed to converge");
  }
  return HermitianEig{solver.eigenvalues(), solver.eigenvectors()};
}

PsdVerdict is_psd(const ComplexMatrix& h, double tol) {
  const HermitianEig eig = hermitian_eig(h, tol);
  PsdVerdict verdict;
  verdict.min_eigenvalue = eig.eigenvalues[0];
  verdict.witness = eig.basis.col(0);
  verdict.is_psd = verdict.min_eigenvalue >= -tol * (1.0 + operator_norm(h));
  return verdict;
}

ComplexMatrix psd_power(const ComplexMatrix& h, double r, double tol) {
  if (r <= 0.0) throw std::invalid_argument("psd_power: exponent must be > 0");
  const HermitianEig eig = hermitian_eig(h, tol);
  const double scale = eig.eigenvalues.cwiseAbs().maxCoeff();
  RealVector powered(eig.eigenvalues.size());
  for (Eigen::Index i = 0; i < eig.eigenvalues.size(); ++i) {
    double lambda = eig.eigenvalues[i];
    if (lambda < -tol * scale) {
      throw NotPsdError("psd_power: eigenvalue " + std::to_string(lambda) +
                        " is negative beyond tolerance");
    }
    if (lambda < 0.0) lambda = 0.0;
    powered[i] = std::pow(lambda, r);
  }
  return eig.basis * powered.asDiagonal() * eig.basis.adjoint();
}

ComplexMatrix orthonormal_range(const ComplexMatrix& m, double tol) {
  const auto svd = full_svd(m);
  return svd.matrixU().leftCols(svd_rank(svd, tol));
}

ComplexMatrix null_space_of_adjoint(const ComplexMatrix& m, double tol) {
  const auto svd = full_svd(m);
  return svd.matrixU().rightCols(m.rows() - svd_rank(svd, tol));
}

ComplexMatrix solve_sylvester(const ComplexMatrix& a, const ComplexMatrix& c,
                              const ComplexMatrix& b, double tol) {
  require_square(a, "solve_sylvester: A");
  require_square(c, "solve_sylvester: C");
  const Eigen::Index p = a.rows();
  const Eigen::Index q = c.rows();
  if (b.rows() != p || b.cols() != q) {
    throw std::invalid_argument("solve_sylvester: B must be rows(A) x rows(C)");
  }

  Eigen::ComplexEigenSolver<ComplexMatrix> ea(a, false);
  Eigen::ComplexEigenSolver<ComplexMatrix> ec(c, false);
  double gap = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < p; ++i)
    for (Eigen::Index j = 0; j < q; ++j)
      gap = std::min(gap, std::abs(ea.eigenvalues()[i] - ec.eigenvalues()[j]));
  if (gap < tol) {
    throw SpectraOverlapError("solve_sylvester: eigenvalue separation " + std::to_string(gap) +
                              " is below tolerance; the equation is (near-)singular");
  }

  // Column-stacked vectorization: (I (x) A - C^T (x) I) vec(S) = vec(B).
  const Eigen::Index dim = p * q;
  ComplexMatrix k = ComplexMatrix::Zero(dim, dim);
  for (Eigen::Index j = 0; j < q; ++j) {
    k.block(j * p, j * p, p, p) += a;
    for (Eigen::Index l = 0; l < q; ++l) {
      k.block(j * p, l * p, p, p) -= c(l, j) * ComplexMatrix::Identity(p, p);
    }
  }
  ComplexVector rhs(dim);
  for (Eigen::Index j = 0; j < q; ++j) rhs.segment(j * p, p) = b.col(j);

  const ComplexVector s = k.partialPivLu().solve(rhs);
  ComplexMatrix out(p, q);
  for (Eigen::Index j = 0; j < q; ++j) out.col(j) = s.segment(j * p, p);
  return out;
}

double operator_norm(const ComplexMatrix& m) {
  if (m.size() == 0) return 0.0;
  return Eigen::JacobiSVD<ComplexMatrix>(m).singularValues()[0];
}

double spectral_radius(const ComplexMatrix& m) {
  require_square(m, "spectral_radius");
  if (m.size() == 0) return 0.0;
  Eigen::ComplexEigenSolver<ComplexMatrix> solver(m, false);
  return solver.eigenvalues().cwiseAbs().maxCoeff();
}

}  // namespace opclass
