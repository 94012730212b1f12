#include "opclass/spectral.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>

#include "opclass/linalg.hpp"
#include "opclass/matrix_io.hpp"

namespace opclass {

using nlohmann::json;

namespace {

bool lex_less(const Complex& a, const Complex& b) {
  if (a.real() != b.real()) return a.real() < b.real();
  return a.imag() < b.imag();
}

/// Greedy clustering of eigenvalues with the given merge radius.
std::vector<EigenvalueCluster> cluster_values(std::vector<Complex> values, double radius) {
  std::vector<EigenvalueCluster> clusters;
  std::vector<Complex> sums;
  for (const Complex& v : values) {
    bool merged = false;
    for (std::size_t i = 0; i < clusters.size(); ++i) {
      if (std::abs(v - clusters[i].value) <= radius) {
        sums[i] += v;
        clusters[i].multiplicity += 1;
        clusters[i].value = sums[i] / static_cast<double>(clusters[i].multiplicity);
        merged = true;
        break;
      }
    }
    if (!merged) {
      clusters.push_back({v, 1});
      sums.push_back(v);
    }
  }
  std::sort(clusters.begin(), clusters.end(),
            [](const EigenvalueCluster& a, const EigenvalueCluster& b) {
              return lex_less(a.value, b.value);
            });
  return clusters;
}

/// max singular value of K1* K2, the cosine of the smallest principal angle.
double subspace_overlap(const ComplexMatrix& k1, const ComplexMatrix& k2) {
  if (k1.cols() == 0 || k2.cols() == 0) return 0.0;
  return operator_norm(k1.adjoint() * k2);
}

Eigen::Index kernel_dim(const ComplexMatrix& m, double tol) {
  const Eigen::JacobiSVD<ComplexMatrix> svd(m);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0) return m.cols();
  const double cutoff = tol * sv[0];
  Eigen::Index rank = 0;
  while (rank < sv.size() && sv[rank] > cutoff) ++rank;
  return m.cols() - rank;
}

/// Eigenvalue trust policy for verifier conclusions about lambda != 0:
/// accept values above the resolvable floor, and skip both honest zeros
/// (below tol scale) and the ambiguous band in between, which may be
/// scattered images of a defective zero.
struct NonzeroGate {
  double floor = 0.0;
  double zero_scale = 0.0;
  bool resolved_nonzero(const Complex& lambda) const { return std::abs(lambda) > floor; }
  bool ambiguous(const Complex& lambda) const {
    return std::abs(lambda) > zero_scale && std::abs(lambda) <= floor;
  }
};

NonzeroGate make_gate(const ComplexMatrix& t, double tol) {
  return NonzeroGate{resolvable_floor(t), tol * (1.0 + operator_norm(t))};
}

}  // namespace

std::vector<EigenvalueCluster> point_spectrum(const ComplexMatrix& t, double tol) {
  require_square(t, "point_spectrum");
  Eigen::ComplexEigenSolver<ComplexMatrix> solver(t, false);
  std::vector<Complex> values(solver.eigenvalues().data(),
                              solver.eigenvalues().data() + solver.eigenvalues().size());
  return cluster_values(std::move(values), tol * (1.0 + operator_norm(t)));
}

ComplexMatrix kernel(const ComplexMatrix& t, Complex lambda, double tol) {
  require_square(t, "kernel");
  const ComplexMatrix shifted =
      t - lambda * ComplexMatrix::Identity(t.rows(), t.cols());
  const Eigen::JacobiSVD<ComplexMatrix> svd(shifted, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double cutoff = sv.size() > 0 ? tol * sv[0] : 0.0;
  Eigen::Index rank = 0;
  while (rank < sv.size() && sv[rank] > cutoff) ++rank;
  return svd.matrixV().rightCols(t.cols() - rank);
}

bool in_point_spectrum(const ComplexMatrix& t, Complex lambda, double tol) {
  return kernel(t, lambda, tol).cols() > 0;
}

bool in_joint_point_spectrum(const ComplexMatrix& t, Complex lambda, double tol) {
  const ComplexMatrix k1 = kernel(t, lambda, tol);
  if (k1.cols() == 0) return false;
  const ComplexMatrix k2 = kernel(t.adjoint(), std::conj(lambda), tol);
  return subspace_overlap(k1, k2) >= 1.0 - tol;
}

std::vector<Complex> joint_point_spectrum(const ComplexMatrix& t, double tol) {
  std::vector<Complex> out;
  for (const EigenvalueCluster& c : point_spectrum(t, tol)) {
    if (in_joint_point_spectrum(t, c.value, tol)) out.push_back(c.value);
  }
  return out;
}

double resolvable_floor(const ComplexMatrix& t) {
  require_square(t, "resolvable_floor");
  const double eps = std::numeric_limits<double>::epsilon();
  return (1.0 + operator_norm(t)) * std::pow(eps, 1.0 / static_cast<double>(t.rows() + 1));
}

std::vector<SpectralViolation> check_eigenvector_transfer(const ComplexMatrix& t, double tol) {
  require_square(t, "check_eigenvector_transfer");
  const NonzeroGate gate = make_gate(t, tol);
  const double threshold = tol * (1.0 + operator_norm(t));
  std::vector<SpectralViolation> out;
  for (const EigenvalueCluster& c : point_spectrum(t, tol)) {
    if (!gate.resolved_nonzero(c.value)) continue;
    const ComplexMatrix k = kernel(t, c.value, tol);
    if (k.cols() == 0) continue;
    const ComplexMatrix defect =
        (t.adjoint() - std::conj(c.value) * ComplexMatrix::Identity(t.rows(), t.cols())) * k;
    const Eigen::JacobiSVD<ComplexMatrix> svd(defect, Eigen::ComputeFullV);
    const double residual = svd.singularValues().size() > 0 ? svd.singularValues()[0] : 0.0;
    if (residual > threshold) {
      SpectralViolation v;
      v.check = "eigenvector-adjoint-transfer";
      v.lambda = c.value;
      v.residual = residual;
      v.defect_singular_values.assign(svd.singularValues().data(),
                                      svd.singularValues().data() + svd.singularValues().size());
      v.witness = k * svd.matrixV().col(0);  // kernel direction with the largest defect
      out.push_back(std::move(v));
    }
  }
  return out;
}

std::vector<SpectralViolation> check_eigenspace_orthogonality(const ComplexMatrix& t, double tol) {
  require_square(t, "check_eigenspace_orthogonality");
  const NonzeroGate gate = make_gate(t, tol);
  const double threshold = tol * (1.0 + operator_norm(t));
  const std::vector<EigenvalueCluster> spectrum = point_spectrum(t, tol);
  std::vector<SpectralViolation> out;
  for (std::size_t i = 0; i < spectrum.size(); ++i) {
    const Complex li = spectrum[i].value;
    if (gate.ambiguous(li)) continue;
    const ComplexMatrix ki = kernel(t, li, tol);
    if (ki.cols() == 0) continue;
    for (std::size_t j = i + 1; j < spectrum.size(); ++j) {
      const Complex lj = spectrum[j].value;
      if (gate.ambiguous(lj)) continue;
      if (!gate.resolved_nonzero(li) && !gate.resolved_nonzero(lj)) continue;
      const ComplexMatrix kj = kernel(t, lj, tol);
      if (kj.cols() == 0) continue;
      const double overlap = subspace_overlap(ki, kj);
      if (overlap > threshold) {
        SpectralViolation v;
        v.check = "eigenspace-orthogonality";
        v.lambda = li;
        v.lambda2 = lj;
        v.residual = overlap;
        out.push_back(std::move(v));
      }
    }
  }
  return out;
}

std::vector<SpectralViolation> check_kernel_stabilization(const ComplexMatrix& t, int k,
                                                          double tol) {
  require_square(t, "check_kernel_stabilization");
  if (k < 0) throw ParameterError("check_kernel_stabilization: k must be >= 0");
  std::vector<SpectralViolation> out;

  const Eigen::Index low = kernel_dim(matrix_power(t, 1 + k), tol);
  const Eigen::Index high = kernel_dim(matrix_power(t, 2 + k), tol);
  if (low != high) {
    SpectralViolation v;
    v.check = "kernel-chain";
    v.lambda = Complex(0.0, 0.0);
    v.residual = static_cast<double>(high - low);
    out.push_back(std::move(v));
  }

  const NonzeroGate gate = make_gate(t, tol);
  const ComplexMatrix id = ComplexMatrix::Identity(t.rows(), t.cols());
  for (const EigenvalueCluster& c : point_spectrum(t, tol)) {
    if (!gate.resolved_nonzero(c.value)) continue;
    const ComplexMatrix shifted = t - c.value * id;
    const Eigen::Index first = kernel_dim(shifted, tol);
    if (first == 0) continue;
    const Eigen::Index second = kernel_dim(shifted * shifted, tol);
    if (first != second) {
      SpectralViolation v;
      v.check = "kernel-chain";
      v.lambda = c.value;
      v.residual = static_cast<double>(second - first);
      out.push_back(std::move(v));
    }
  }
  return out;
}

SpectralReport spectral_report(const ComplexMatrix& t, int k, double tol) {
  SpectralReport report;
  report.eigenvalues = point_spectrum(t, tol);
  report.joint_eigenvalues = joint_point_spectrum(t, tol);
  report.floor = resolvable_floor(t);

  for (auto&& v : check_eigenvector_transfer(t, tol)) report.violations.push_back(std::move(v));
  for (auto&& v : check_eigenspace_orthogonality(t, tol))
    report.violations.push_back(std::move(v));
  for (auto&& v : check_kernel_stabilization(t, k, tol)) report.violations.push_back(std::move(v));

  std::vector<Complex> point_above;
  for (const auto& c : report.eigenvalues) {
    if (std::abs(c.value) > report.floor) point_above.push_back(c.value);
  }
  std::vector<Complex> joint_above;
  for (const auto& v : report.joint_eigenvalues) {
    if (std::abs(v) > report.floor) joint_above.push_back(v);
  }
  report.joint_matches_point_away_from_zero = point_above.size() == joint_above.size();
  if (report.joint_matches_point_away_from_zero) {
    const double radius = tol * (1.0 + operator_norm(t));
    for (std::size_t i = 0; i < point_above.size(); ++i) {
      if (std::abs(point_above[i] - joint_above[i]) > radius) {
        report.joint_matches_point_away_from_zero = false;
        break;
      }
    }
  }
  return report;
}

namespace {

json complex_to_json(const Complex& z) { return json::array({z.real(), z.imag()}); }

}  // namespace

json spectral_report_to_json(const SpectralReport& report) {
  json eigs = json::array();
  for (const auto& c : report.eigenvalues) {
    eigs.push_back({{"value", complex_to_json(c.value)}, {"multiplicity", c.multiplicity}});
  }
  json joint = json::array();
  for (const auto& v : report.joint_eigenvalues) joint.push_back(complex_to_json(v));
  json violations = json::array();
  for (const auto& v : report.violations) {
    json entry{{"check", v.check},
               {"lambda", complex_to_json(v.lambda)},
               {"residual", v.residual}};
    entry["lambda2"] = v.lambda2 ? complex_to_json(*v.lambda2) : json(nullptr);
    if (!v.defect_singular_values.empty()) {
      entry["defect_singular_values"] = v.defect_singular_values;
    }
    if (v.witness.size() > 0) entry["witness"] = vector_to_json(v.witness);
    violations.push_back(std::move(entry));
  }
  return json{{"eigenvalues", std::move(eigs)},
              {"joint_eigenvalues", std::move(joint)},
              {"violations", std::move(violations)},
              {"resolvable_floor", report.floor},
              {"joint_matches_point_away_from_zero", report.joint_matches_point_away_from_zero}};
}

}  // namespace opclass
