#pragma once

#include <optional>
#include <string>

#include "opclass/matrix.hpp"

namespace opclass {

/// Operator families decided by this library. The two quasi-paranormal
/// families carry parameters (n, k); the class-A and quasihyponormal families
/// carry only k; normaloid carries neither.
enum class Family {
  QuasiStarParanormal,  // "qsp(n,k)"
  QuasiParanormal,      // "qp(n,k)"
  QuasiStarClassA,      // "qsa(k)"
  QuasiHyponormal,      // "qh(k)"
  Normaloid,            // "normaloid"
};

struct ClassId {
  Family family = Family::QuasiStarParanormal;
  std::optional<int> n;
  std::optional<int> k;

  static ClassId qsp(int n, int k) { return {Family::QuasiStarParanormal, n, k}; }
  static ClassId qp(int n, int k) { return {Family::QuasiParanormal, n, k}; }
  static ClassId qsa(int k) { return {Family::QuasiStarClassA, std::nullopt, k}; }
  static ClassId qh(int k) { return {Family::QuasiHyponormal, std::nullopt, k}; }
  static ClassId normaloid() { return {Family::Normaloid, std::nullopt, std::nullopt}; }

  bool operator==(const ClassId&) const = default;
};

/// Validates parameter presence and ranges (n >= 0, k >= 0 where required);
/// throws ParameterError otherwise.
void validate(const ClassId& id);

/// Serialization: "qsp(n,k)", "qp(n,k)", "qsa(k)", "qh(k)", "normaloid".
std::string to_string(const ClassId& id);

/// Inverse of to_string; throws ParameterError on unrecognized input.
ClassId parse_class_id(const std::string& text);

/// The three Hermitian PSD forms behind the per-vector membership inequality
/// of qsp(n,k):
///   A = T*^k T*^(1+n) T^(1+n) T^k,  B = T*^k T T* T^k,  C = T*^k T^k.
struct FormTriplet {
  ComplexMatrix a;
  ComplexMatrix b;
  ComplexMatrix c;
};

FormTriplet form_triplet(const ComplexMatrix& t, int n, int k);

/// The family-specific middle matrix: B for qsp/qh, T*^(k+1) T^(k+1) for qp.
ComplexMatrix middle_matrix(const ComplexMatrix& t, const ClassId& id);

/// Operator pencil Q(mu) = A - (1+n) mu^n B + n mu^(1+n) C. T belongs to
/// qsp(n,k) exactly when Q(mu) is PSD for every mu > 0. Throws
/// NonPositiveMuError for mu <= 0.
ComplexMatrix pencil(const ComplexMatrix& t, int n, int k, double mu);

/// Same pencil with the qp middle matrix; decides qp(n,k) membership.
ComplexMatrix pencil_for(const ComplexMatrix& t, const ClassId& id, double mu);

/// Smooth objective whose sign at unit x decides the per-vector membership
/// inequality: F(x) = <Ax,x> <Cx,x>^n - <Mx,x>^(n+1) for the paranormal-type
/// families (M the family middle matrix), and F(x) = <Ax,x> for the class-A
/// family (A the Hermitian defect form, M = 0, C = I, n = 0). `scale` is the
/// natural magnitude ||A|| ||C||^n + ||M||^(n+1) used for relative thresholds.
struct SphereObjective {
  ComplexMatrix a;
  ComplexMatrix m;
  ComplexMatrix c;
  int n = 0;
  double scale = 0.0;

  double value(const ComplexVector& x) const;
  /// Riemannian-friendly Euclidean gradient: 2 [ c^n A x + n a c^(n-1) C x
  /// - (n+1) m^n M x ] with a, m, c the quadratic forms at x.
  ComplexVector gradient(const ComplexVector& x) const;
};

/// Builds the sphere objective for any per-vector family. Throws
/// UnsupportedClassError for normaloid (that class is not per-vector).
SphereObjective make_objective(const ComplexMatrix& t, const ClassId& id,
                               double tol = kDefaultTol);

/// Per-vector membership residual at unit x; >= 0 for every unit vector iff
/// the defining inequality of the class holds there. When T^k x = 0 all three
/// forms vanish and the residual is 0 by continuity. Requires ||x|| = 1
/// within tol.
double definitional_residual(const ClassId& id, const ComplexMatrix& t, const ComplexVector& x,
                             double tol = kDefaultTol);

}  // namespace opclass
