#pragma once

#include "opclass/matrix.hpp"

namespace opclass {

/// Block form of T in the unitary basis [range(T^k) | ker(T*^k)]:
///   U* T U = [[range_block, coupling_block], [~0, kernel_block]].
/// The lower-left corner is always ~0 because T maps range(T^k) into itself;
/// `residual` records its actual norm. The flags report whether the spectrum
/// of T matches the union of the block spectra (as multisets, within
/// eigenvalue-matching tolerance) and whether every eigenvalue of the kernel
/// block is within tolerance of zero.
struct Decomposition {
  ComplexMatrix basis;           // unitary, columns: range basis then kernel basis
  Eigen::Index range_dim = 0;    // number of leading basis columns spanning range(T^k)
  ComplexMatrix range_block;     // compression of T to range(T^k)
  ComplexMatrix coupling_block;  // range(T^k) <- ker(T*^k) coupling
  ComplexMatrix kernel_block;    // compression of T to ker(T*^k)
  double residual = 0.0;         // norm of the lower-left corner
  bool spectrum_consistent = false;
  bool kernel_block_spectrum_zero = false;
};

/// Splits T along range(T^k) + ker(T*^k). k = 0 gives the trivial
/// decomposition with an empty second block.
Decomposition decompose(const ComplexMatrix& t, int k, double tol = kDefaultTol);

/// Compression V* T V of T to the column span of V. Requires V to have
/// orthonormal columns spanning a T-invariant subspace
/// (||(I - V V*) T V|| <= tol * ||T||); throws NotInvariantError otherwise.
ComplexMatrix restrict_to_invariant(const ComplexMatrix& t, const ComplexMatrix& v,
                                    double tol = kDefaultTol);

/// Explicit similarity taking the block operator T = [[A, B], [0, C]] to
/// R = diag(A, C): with S solving A S - S C = B,
///   W = [[I, S], [0, I]] satisfies W T W^-1 = R.
struct SimilarityResult {
  ComplexMatrix s;
  ComplexMatrix w;
  ComplexMatrix r;
  /// ||W T - R W|| - how well the similarity intertwines.
  double intertwining_residual = 0.0;
};

/// Requires A invertible (NotInvertibleError) and C^k ~ 0 within tolerance
/// (NotNilpotentError); SpectraOverlapError cannot occur under those
/// preconditions but would propagate from the Sylvester solve.
SimilarityResult build_similarity(const ComplexMatrix& a, const ComplexMatrix& b,
                                  const ComplexMatrix& c, int k, double tol = kDefaultTol);

}  // namespace opclass
