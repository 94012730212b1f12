#pragma once

#include <optional>

#include "opclass/matrix.hpp"

namespace opclass {

/// Eigendecomposition of a Hermitian matrix. Eigenvalues are real and sorted
/// ascending; `basis` columns are the matching orthonormal eigenvectors.
struct HermitianEig {
  RealVector eigenvalues;
  ComplexMatrix basis;
};

/// Outcome of a positive-semidefiniteness test. When `is_psd` is false,
/// `witness` is a unit vector with <Hx,x> = min_eigenvalue < 0.
struct PsdVerdict {
  bool is_psd = false;
  double min_eigenvalue = 0.0;
  ComplexVector witness;
};

/// Conjugate transpose.
ComplexMatrix adjoint(const ComplexMatrix& m);

/// M^p by repeated multiplication; p = 0 gives the identity and p = 1 returns
/// M itself so that low-power algebraic identities hold exactly.
ComplexMatrix matrix_power(const ComplexMatrix& m, int p);

/// Throws NotHermitianError unless ||H - H*|| <= tol * ||H||.
HermitianEig hermitian_eig(const ComplexMatrix& h, double tol = kDefaultTol);

/// PSD test with the relative threshold min_eig >= -tol * (1 + ||H||).
PsdVerdict is_psd(const ComplexMatrix& h, double tol = kDefaultTol);

/// H^r for Hermitian PSD H and r > 0. Eigenvalues in (-tol*||H||, 0) are
/// clamped to zero; smaller ones raise NotPsdError.
ComplexMatrix psd_power(const ComplexMatrix& h, double r, double tol = kDefaultTol);

/// Orthonormal basis of range(M): the left singular vectors whose singular
/// values exceed tol * sigma_max.
ComplexMatrix orthonormal_range(const ComplexMatrix& m, double tol = kDefaultTol);

/// Orthonormal basis of ker(M*) = range(M)^perp; together with
/// orthonormal_range(M) the columns form a unitary basis of the full space.
ComplexMatrix null_space_of_adjoint(const ComplexMatrix& m, double tol = kDefaultTol);

/// Solves A S - S C = B for S by dense vectorization (intended for dimension
/// up to ~64). Throws SpectraOverlapError when the spectra of A and C come
/// closer than tol, which would make the equation singular.
ComplexMatrix solve_sylvester(const ComplexMatrix& a, const ComplexMatrix& c,
                              const ComplexMatrix& b, double tol = kDefaultTol);

/// Largest singular value.
double operator_norm(const ComplexMatrix& m);

/// Largest eigenvalue modulus.
double spectral_radius(const ComplexMatrix& m);

}  // namespace opclass
