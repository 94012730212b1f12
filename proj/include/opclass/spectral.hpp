#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "opclass/matrix.hpp"

namespace opclass {

/// Computed eigenvalue cluster: eigenvalues within tol * (1 + ||T||) of each
/// other are merged; `value` is the cluster mean.
struct EigenvalueCluster {
  Complex value;
  int multiplicity = 1;
};

/// Clustered eigenvalues, sorted by (real, imag).
std::vector<EigenvalueCluster> point_spectrum(const ComplexMatrix& t, double tol = kDefaultTol);

/// Orthonormal basis of ker(T - lambda) via SVD (singular values below
/// tol * sigma_max count as zero). Empty (0-column) when lambda is not an
/// eigenvalue to that resolution.
ComplexMatrix kernel(const ComplexMatrix& t, Complex lambda, double tol = kDefaultTol);

/// True when ker(T - lambda) is nontrivial.
bool in_point_spectrum(const ComplexMatrix& t, Complex lambda, double tol = kDefaultTol);

/// True when ker(T - lambda) and ker(T* - conj(lambda)) share a direction:
/// the top singular value of K1* K2 reaches 1 - tol.
bool in_joint_point_spectrum(const ComplexMatrix& t, Complex lambda, double tol = kDefaultTol);

/// Clustered eigenvalues whose kernels witness joint membership.
std::vector<Complex> joint_point_spectrum(const ComplexMatrix& t, double tol = kDefaultTol);

/// Magnitude below which a computed eigenvalue of T is numerically
/// indistinguishable from 0: backward-stable eigensolvers scatter a defective
/// zero of index j across a disk of radius ~ ||T|| eps^(1/j), so anything
/// under (1 + ||T||) eps^(1/(dim+1)) may be an artefact of nilpotent
/// structure. The property verifiers only trust eigenvalues above this floor
/// and never evaluate conclusions that concern lambda = 0.
double resolvable_floor(const ComplexMatrix& t);

/// A failed conclusion of one of the verified spectral properties.
struct SpectralViolation {
  std::string check;  // "eigenvector-adjoint-transfer" | "eigenspace-orthogonality" | "kernel-chain"
  Complex lambda;
  std::optional<Complex> lambda2;  // second eigenvalue for pair checks
  /// Size of the defect: ||(T* - conj(lambda)) K|| for the transfer check,
  /// ||K1* K2|| for orthogonality, kernel-dimension gap for the chain check.
  double residual = 0.0;
  /// Transfer check only: all singular values (descending) of
  /// (T* - conj(lambda)) K, i.e. the per-direction defects of the kernel.
  /// The smallest entry is the defect of the least-violating kernel
  /// direction.
  std::vector<double> defect_singular_values;
  ComplexVector witness;
};

/// Checks ker(T - lambda) <= ker(T* - conj(lambda)) for every resolved
/// eigenvalue lambda != 0; holds for every qsp(n,k) member, so any entry at
/// lambda != 0 certifies non-membership for all (n, k).
std::vector<SpectralViolation> check_eigenvector_transfer(const ComplexMatrix& t,
                                                          double tol = kDefaultTol);

/// Checks that eigenspaces at distinct resolved eigenvalues (at least one
/// nonzero) are orthogonal; a consequence of the transfer property.
std::vector<SpectralViolation> check_eigenspace_orthogonality(const ComplexMatrix& t,
                                                              double tol = kDefaultTol);

/// Checks ker(T^(1+k)) = ker(T^(2+k)) and, for every resolved eigenvalue
/// lambda != 0, ker(T - lambda) = ker((T - lambda)^2). An entry at
/// lambda = 0 reports the power-chain gap; the residual is the dimension
/// jump.
std::vector<SpectralViolation> check_kernel_stabilization(const ComplexMatrix& t, int k,
                                                          double tol = kDefaultTol);

struct SpectralReport {
  std::vector<EigenvalueCluster> eigenvalues;
  std::vector<Complex> joint_eigenvalues;
  std::vector<SpectralViolation> violations;
  double floor = 0.0;
  /// Whether the joint point spectrum equals the point spectrum away from
  /// zero (eigenvalues above the floor), as sets.
  bool joint_matches_point_away_from_zero = false;
};

SpectralReport spectral_report(const ComplexMatrix& t, int k, double tol = kDefaultTol);

nlohmann::json spectral_report_to_json(const SpectralReport& report);

}  // namespace opclass
