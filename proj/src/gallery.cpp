#include "opclass/gallery.hpp"

#include <cmath>
#include <sstream>

#include "opclass/classes.hpp"
#include "opclass/linalg.hpp"
#include "opclass/membership.hpp"
#include "opclass/rng.hpp"
#include "opclass/spectral.hpp"
#include "opclass/structure.hpp"

namespace opclass {

namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

ExpectationResult expect(bool passed, const std::string& detail) {
  return ExpectationResult{passed, detail};
}

ExpectationResult expect_near(double actual, double target, double tol,
                              const std::string& label) {
  const double diff = std::abs(actual - target);
  return expect(diff <= tol,
                label + " = " + fmt(actual) + ", expected " + fmt(target) + " within " + fmt(tol));
}

ExpectationResult expect_status(const MembershipVerdict& v, Status want) {
  return expect(v.status == want, to_string(v.class_id) + ": " + to_string(v.status) +
                                      " (expected " + to_string(want) +
                                      "), margin = " + fmt(v.margin));
}

}  // namespace

GalleryEntry block_weighted_shift_entry(int num_blocks) {
  if (num_blocks < 4) {
    throw ParameterError("block_weighted_shift_entry: num_blocks must be >= 4");
  }
  ComplexMatrix first_target(2, 2), repeat_target(2, 2);
  first_target << 1, 1, 1, 2;
  repeat_target << 1, 2, 2, 8;
  const ComplexMatrix first = psd_power(first_target, 0.5);
  const ComplexMatrix repeat = psd_power(repeat_target, 0.25);

  const int dim = 2 * num_blocks;
  ComplexMatrix t = ComplexMatrix::Zero(dim, dim);
  t.block(2, 0, 2, 2) = first;
  for (int i = 1; i + 1 < num_blocks; ++i) t.block(2 * (i + 1), 2 * i, 2, 2) = repeat;

  GalleryEntry entry;
  entry.id = "ex-2.3.1";
  entry.description =
      "block weighted shift on " + std::to_string(num_blocks) +
      " two-dimensional cells; the adjoint-squared comparison form is indefinite";
  entry.matrix = t;

  const int interior_dim = 2 * (num_blocks - 2);
  entry.expectations.push_back(
      {"square of the first block root reconstructs its target", [first, first_target] {
         const double r = operator_norm(first * first - first_target);
         return expect(r <= 1e-10, "reconstruction residual = " + fmt(r));
       }});
  entry.expectations.push_back(
      {"fourth power of the repeating block root reconstructs its target",
       [repeat, repeat_target] {
         const ComplexMatrix sq = repeat * repeat;
         const double r = operator_norm(sq * sq - repeat_target);
         return expect(r <= 1e-10, "reconstruction residual = " + fmt(r));
       }});
  entry.expectations.push_back(
      {"adjoint-squared comparison form is indefinite (k = 0)", [t] {
         return expect_status(check_quasi_star_class_a(t, 0), Status::NonMember);
       }});
  entry.expectations.push_back(
      {"degree-one power inequality holds on sampled interior vectors", [t, interior_dim, dim] {
         Rng rng(7, 0);
         double worst = 0.0;
         const ClassId id = ClassId::qsp(1, 0);
         for (int s = 0; s < 200; ++s) {
           ComplexVector x = ComplexVector::Zero(dim);
           x.head(interior_dim) = rng.unit_vector(interior_dim);
           worst = std::min(worst, definitional_residual(id, t, x));
         }
         return expect(worst >= -1e-9, "least sampled residual = " + fmt(worst));
       }});
  return entry;
}

namespace {

ComplexMatrix perturbed_shift_matrix(double alpha, int n_dim) {
  if (!(alpha > 0.0 && alpha < 0.25)) {
    throw ParameterError("perturbed shift: alpha must lie in (0, 1/4)");
  }
  if (n_dim < 4) throw ParameterError("perturbed shift: n_dim must be >= 4");
  const int dim = n_dim + 1;
  ComplexMatrix t = ComplexMatrix::Zero(dim, dim);
  t(0, 0) = 1.0;
  t(0, 1) = alpha;
  for (int i = 1; i <= n_dim; ++i) t(i, i) = 1.0;
  for (int i = 1; i < n_dim; ++i) t(i + 1, i) = 1.0;
  return t;
}

}  // namespace

GalleryEntry perturbed_shift_entry(double alpha, int n_dim) {
  const ComplexMatrix t = perturbed_shift_matrix(alpha, n_dim);
  const int dim = n_dim + 1;

  GalleryEntry entry;
  entry.id = "ex-2.3.2";
  entry.description = "rank-one coupling of a fixed vector to a translated unilateral shift, "
                      "alpha = " +
                      fmt(alpha);
  entry.matrix = t;

  entry.expectations.push_back({"first basis vector is fixed by the operator", [t, dim] {
                                  ComplexVector e0 = ComplexVector::Zero(dim);
                                  e0(0) = 1.0;
                                  const double r = (t * e0 - e0).norm();
                                  return expect(r <= 1e-14 && in_point_spectrum(t, 1.0),
                                                "|| (T - 1) e0 || = " + fmt(r));
                                }});
  entry.expectations.push_back(
      {"adjoint moves the fixed vector by the coupling weight", [t, dim, alpha] {
         ComplexVector e0 = ComplexVector::Zero(dim);
         e0(0) = 1.0;
         ComplexVector image = e0;
         image(1) = alpha;
         const double r = (t.adjoint() * e0 - image).norm();
         return expect(r <= 1e-14, "|| T* e0 - (e0 + alpha e1) || = " + fmt(r));
       }});
  entry.expectations.push_back({"adjoint-transfer verifier fires at 1", [t] {
                                  for (const auto& v : check_eigenvector_transfer(t)) {
                                    if (std::abs(v.lambda - Complex(1.0)) <= 1e-6) {
                                      return expect(true, "defect at 1 = " + fmt(v.residual));
                                    }
                                  }
                                  return expect(false, "no transfer violation within 1e-6 of 1");
                                }});
  entry.expectations.push_back({"1 is in the point spectrum but not the joint point spectrum",
                                [t] {
                                  const bool point = in_point_spectrum(t, 1.0);
                                  const bool joint = in_joint_point_spectrum(t, 1.0);
                                  return expect(point && !joint,
                                                std::string("point: ") + (point ? "yes" : "no") +
                                                    ", joint: " + (joint ? "yes" : "no"));
                                }});
  entry.expectations.push_back({"direct search refutes membership across the sweep", [t] {
                                  double worst = 0.0;
                                  for (int n = 0; n <= 2; ++n) {
                                    for (int k = 0; k <= 3; ++k) {
                                      const auto v = check_direct(t, ClassId::qsp(n, k));
                                      if (v.status != Status::NonMember) {
                                        return expect(false, to_string(v.class_id) +
                                                                 " came back " +
                                                                 to_string(v.status));
                                      }
                                      worst = std::min(worst, v.margin);
                                    }
                                  }
                                  return expect(true, "all refuted; sharpest margin = " + fmt(worst));
                                }});
  return entry;
}

GalleryEntry step_weight_shift_entry(int n, int k) {
  if (n < 0) throw ParameterError("step_weight_shift_entry: n must be >= 0");
  if (k < 1) throw ParameterError("step_weight_shift_entry: k must be >= 1");
  WeightSequence ws;
  ws.prefix.assign(k, Rational(1));
  ws.prefix.back() = Rational(2);
  ws.tail = {Rational(1)};

  const int dim = 16;
  GalleryEntry entry;
  entry.id = "ex-2.3.3";
  entry.description = "weighted shift with a single heavy weight at position " +
                      std::to_string(k) + "; parameters (n, k) = (" + std::to_string(n) + ", " +
                      std::to_string(k) + ")";
  entry.matrix = truncate(ws, dim);
  entry.weights = ws;

  entry.expectations.push_back(
      {"exact criterion fails at (n, k) with first violation at index k", [ws, n, k] {
         const auto res = shift_membership(ws, n, k);
         const bool ok = !res.holds && res.first_violation && *res.first_violation == k;
         return expect(ok, res.holds ? "criterion unexpectedly holds"
                                     : "first violation at m = " +
                                           std::to_string(res.first_violation.value_or(-1)));
       }});
  entry.expectations.push_back({"exact criterion holds at (n, k + 1)", [ws, n, k] {
                                  const auto res = shift_membership(ws, n, k + 1);
                                  return expect(res.holds,
                                                res.holds
                                                    ? "holds"
                                                    : "violation at m = " +
                                                          std::to_string(
                                                              res.first_violation.value_or(-1)));
                                }});
  entry.expectations.push_back({"norm 2 and spectral radius 1, exactly", [ws] {
                                  const double norm = shift_norm(ws);
                                  const double radius = shift_spectral_radius(ws);
                                  return expect(norm == 2.0 && radius == 1.0,
                                                "norm = " + fmt(norm) +
                                                    ", radius = " + fmt(radius));
                                }});
  const ComplexMatrix t = entry.matrix;
  entry.expectations.push_back(
      {"truncated section witnesses the violation at the first basis vector", [t, n, k, dim] {
         if (k + n + 2 > dim) return expect(false, "section too small for the check");
         ComplexVector x = ComplexVector::Zero(dim);
         x(0) = 1.0;
         const double r = definitional_residual(ClassId::qsp(n, k), t, x);
         return expect(r < -1e-9, "residual at e1 = " + fmt(r));
       }});
  return entry;
}

GalleryEntry front_loaded_shift_entry(int n, int k) {
  if (n < 0) throw ParameterError("front_loaded_shift_entry: n must be >= 0");
  if (k < 2) throw ParameterError("front_loaded_shift_entry: k must be >= 2");
  WeightSequence ws;
  ws.prefix = {Rational(2)};
  ws.tail = {Rational(1)};

  GalleryEntry entry;
  entry.id = "ex-2.3.4";
  entry.description = "weighted shift with w1 = 2 and constant tail 1; parameters (n, k) = (" +
                      std::to_string(n) + ", " + std::to_string(k) + ")";
  entry.matrix = truncate(ws, 16);
  entry.weights = ws;

  entry.expectations.push_back({"exact criterion holds at (n, k)", [ws, n, k] {
                                  const auto res = shift_membership(ws, n, k);
                                  return expect(res.holds,
                                                res.holds
                                                    ? "holds"
                                                    : "violation at m = " +
                                                          std::to_string(
                                                              res.first_violation.value_or(-1)));
                                }});
  entry.expectations.push_back(
      {"exact criterion fails at (n, 1) because of the heavy first weight", [ws, n] {
         const auto res = shift_membership(ws, n, 1);
         const bool ok = !res.holds && res.first_violation && *res.first_violation == 1;
         return expect(ok, res.holds ? "criterion unexpectedly holds"
                                     : "first violation at m = " +
                                           std::to_string(res.first_violation.value_or(-1)));
       }});
  entry.expectations.push_back({"norm 2 exceeds spectral radius 1: not normaloid", [ws] {
                                  const double norm = shift_norm(ws);
                                  const double radius = shift_spectral_radius(ws);
                                  return expect(norm == 2.0 && radius == 1.0,
                                                "norm = " + fmt(norm) +
                                                    ", radius = " + fmt(radius));
                                }});
  entry.expectations.push_back({"power norms of a large section approach the tail radius", [ws] {
                                  const ComplexMatrix big = truncate(ws, 64);
                                  const double est =
                                      std::pow(operator_norm(matrix_power(big, 32)), 1.0 / 32.0);
                                  return expect(std::abs(est - 1.0) <= 0.05,
                                                "||T^32||^(1/32) at dimension 64 = " + fmt(est));
                                }});
  const ComplexMatrix t = entry.matrix;
  entry.expectations.push_back({"finite sections are not normaloid either", [t] {
                                  return expect_status(check_normaloid(t), Status::NonMember);
                                }});
  return entry;
}

GalleryEntry alternating_isometry_entry(int n_dim) {
  if (n_dim < 4 || n_dim % 2 != 0) {
    throw ParameterError("alternating_isometry_entry: n_dim must be even and >= 4");
  }
  const int dim = n_dim + 1;
  ComplexMatrix t = ComplexMatrix::Zero(dim, dim);
  t(0, 0) = 1.0;
  for (int j = 1; j + 1 <= n_dim; j += 2) t(j + 1, j) = 1.0;

  GalleryEntry entry;
  entry.id = "ex-2.3.5";
  entry.description =
      "direct sum of the scalar 1 and an alternating partial isometry on " +
      std::to_string(n_dim) + " coordinates";
  entry.matrix = t;

  entry.expectations.push_back({"every power up to 4 has norm exactly 1", [t] {
                                  double worst = 0.0;
                                  for (int m = 1; m <= 4; ++m) {
                                    worst = std::max(
                                        worst, std::abs(operator_norm(matrix_power(t, m)) - 1.0));
                                  }
                                  return expect(worst <= 1e-12,
                                                "largest |norm - 1| over powers = " + fmt(worst));
                                }});
  entry.expectations.push_back({"norm equals spectral radius: normaloid", [t] {
                                  return expect_status(check_normaloid(t), Status::Member);
                                }});
  entry.expectations.push_back(
      {"pencil at mu = 1 has minimum eigenvalue -1 for k = 1, n in {0,1,2}", [t] {
         double worst = 0.0;
         for (int n = 0; n <= 2; ++n) {
           const auto eig = hermitian_eig(pencil_for(t, ClassId::qsp(n, 1), 1.0));
           worst = std::max(worst, std::abs(eig.eigenvalues.minCoeff() + 1.0));
         }
         return expect(worst <= 1e-9, "largest |min eigenvalue + 1| = " + fmt(worst));
       }});
  entry.expectations.push_back({"pencil engine refutes (n, 1) membership for n in {0,1,2}", [t] {
                                  for (int n = 0; n <= 2; ++n) {
                                    const auto v = check_pencil_for(t, ClassId::qsp(n, 1));
                                    if (v.status != Status::NonMember) {
                                      return expect_status(v, Status::NonMember);
                                    }
                                  }
                                  return expect(true, "all three refuted");
                                }});
  entry.expectations.push_back(
      {"second and higher powers collapse to the rank-one projection", [t, dim] {
         ComplexMatrix proj = ComplexMatrix::Zero(dim, dim);
         proj(0, 0) = 1.0;
         const double r2 = operator_norm(matrix_power(t, 2) - proj);
         const double r3 = operator_norm(matrix_power(t, 3) - proj);
         return expect(r2 <= 1e-14 && r3 <= 1e-14,
                       "residuals: " + fmt(r2) + " (square), " + fmt(r3) + " (cube)");
       }});
  return entry;
}

GalleryEntry nilpotent_pair_entry(int m) {
  if (m < 1) throw ParameterError("nilpotent_pair_entry: m must be >= 1");
  const int dim = 2 * m;
  ComplexMatrix t = ComplexMatrix::Zero(dim, dim);
  t.block(0, m, m, m) = ComplexMatrix::Identity(m, m);

  GalleryEntry entry;
  entry.id = "ex-3.4";
  entry.description =
      "paired nilpotent blocks [[0, I],[0, 0]] on " + std::to_string(dim) + " coordinates";
  entry.matrix = t;

  entry.expectations.push_back({"adjoint image of the first basis vector has norm one", [t, dim] {
                                  ComplexVector e0 = ComplexVector::Zero(dim);
                                  e0(0) = 1.0;
                                  const double norm = (t.adjoint() * e0).norm();
                                  return expect(std::abs(norm - 1.0) <= 1e-14,
                                                "|| T* e0 || = " + fmt(norm));
                                }});
  entry.expectations.push_back(
      {"power side of the inequality vanishes at the first basis vector for every (n, k)",
       [t, dim] {
         ComplexVector e0 = ComplexVector::Zero(dim);
         e0(0) = 1.0;
         double worst = 0.0;
         for (int n = 0; n <= 2; ++n) {
           for (int k = 1; k <= 3; ++k) {
             worst = std::max(worst, (matrix_power(t, 1 + n + k) * e0).norm());
           }
         }
         return expect(worst <= 1e-14, "largest || T^(1+n+k) e0 || = " + fmt(worst));
       }});
  entry.expectations.push_back(
      {"flat vector refutes membership at k = 1 for every n", [t, m, dim] {
         ComplexVector flat = ComplexVector::Zero(dim);
         flat(m) = 1.0;
         for (int n = 0; n <= 2; ++n) {
           const double r = definitional_residual(ClassId::qsp(n, 1), t, flat);
           if (std::abs(r + 1.0) > 1e-12) {
             return expect(false, "residual at n = " + std::to_string(n) + " is " + fmt(r));
           }
           const auto v = check_direct(t, ClassId::qsp(n, 1));
           if (v.status != Status::NonMember) return expect_status(v, Status::NonMember);
         }
         return expect(true, "residual -1 and NonMember for n in {0,1,2}");
       }});
  entry.expectations.push_back(
      {"square is zero, so every k >= 2 form collapses and membership holds trivially", [t] {
         const double sq = operator_norm(matrix_power(t, 2));
         if (sq > 1e-14) return expect(false, "|| T^2 || = " + fmt(sq));
         const auto direct = check_direct(t, ClassId::qsp(1, 2));
         if (direct.status != Status::Member) return expect_status(direct, Status::Member);
         const auto class_a = check_quasi_star_class_a(t, 2);
         if (class_a.status != Status::Member) return expect_status(class_a, Status::Member);
         return expect(true, "|| T^2 || = 0; both k = 2 checks certify membership");
       }});
  entry.expectations.push_back({"adjoint-squared comparison fails at k = 1", [t] {
                                  return expect_status(check_quasi_star_class_a(t, 1),
                                                       Status::NonMember);
                                }});
  entry.expectations.push_back(
      {"zero range-compression blocks the triangular similarity construction", [t] {
         const Decomposition d = decompose(t, 1);
         const double compression = operator_norm(d.range_block);
         if (compression > 1e-12) {
           return expect(false, "range compression has norm " + fmt(compression));
         }
         try {
           build_similarity(d.range_block, d.coupling_block, d.kernel_block, 1);
         } catch (const NotInvertibleError&) {
           return expect(true, "construction rejected: range compression not invertible");
         }
         return expect(false, "construction unexpectedly succeeded");
       }});
  return entry;
}

GalleryEntry shift_spectral_entry(double alpha, int n_dim) {
  const ComplexMatrix t = perturbed_shift_matrix(alpha, n_dim);
  const int dim = n_dim + 1;

  GalleryEntry entry;
  entry.id = "ex-4.4";
  entry.description =
      "spectral view of the rank-one coupled shift: 1 is an eigenvalue whose eigenspace the "
      "adjoint fails to preserve, alpha = " +
      fmt(alpha);
  entry.matrix = t;

  entry.expectations.push_back(
      {"kernel at 1 contains the first basis vector", [t, dim] {
         const ComplexMatrix k = kernel(t, 1.0);
         if (k.cols() == 0) return expect(false, "kernel at 1 is trivial");
         ComplexVector e0 = ComplexVector::Zero(dim);
         e0(0) = 1.0;
         const double leak = (e0 - k * (k.adjoint() * e0)).norm();
         return expect(leak <= 1e-9, "projection leakage = " + fmt(leak) +
                                         ", kernel dimension = " + std::to_string(k.cols()));
       }});
  entry.expectations.push_back(
      {"1 is not a joint eigenvalue", [t] {
         const ComplexMatrix k1 = kernel(t, 1.0);
         const ComplexMatrix k2 = kernel(ComplexMatrix(t.adjoint()), 1.0);
         const double overlap =
             (k1.cols() > 0 && k2.cols() > 0) ? operator_norm(k1.adjoint() * k2) : 0.0;
         return expect(!in_joint_point_spectrum(t, 1.0),
                       "largest kernel overlap = " + fmt(overlap));
       }});
  entry.expectations.push_back(
      {"transfer defect at 1 has least singular value alpha", [t, alpha] {
         for (const auto& v : check_eigenvector_transfer(t)) {
           if (std::abs(v.lambda - Complex(1.0)) > 1e-6) continue;
           if (v.defect_singular_values.empty()) return expect(false, "no defect data recorded");
           const double least = v.defect_singular_values.back();
           return expect_near(least, alpha, 1e-8, "least defect singular value");
         }
         return expect(false, "no transfer violation within 1e-6 of 1");
       }});
  entry.expectations.push_back(
      {"fixed vector refutes membership for every (n, k), including k = 0", [t, dim, alpha] {
         ComplexVector e0 = ComplexVector::Zero(dim);
         e0(0) = 1.0;
         for (int n = 0; n <= 2; ++n) {
           const double target = 1.0 - std::pow(1.0 + alpha * alpha, n + 1);
           for (int k = 0; k <= 3; ++k) {
             const double r = definitional_residual(ClassId::qsp(n, k), t, e0);
             if (std::abs(r - target) > 1e-12 || r >= 0.0) {
               return expect(false, "residual at (n, k) = (" + std::to_string(n) + ", " +
                                        std::to_string(k) + ") is " + fmt(r) + ", expected " +
                                        fmt(target));
             }
           }
         }
         return expect(true, "residual 1 - (1 + alpha^2)^(n+1) < 0 for the whole sweep");
       }});
  entry.expectations.push_back(
      {"joint spectrum falls short of the point spectrum away from zero", [t] {
         const SpectralReport report = spectral_report(t, 1);
         return expect(!report.joint_matches_point_away_from_zero,
                       std::to_string(report.eigenvalues.size()) + " point clusters, " +
                           std::to_string(report.joint_eigenvalues.size()) +
                           " joint eigenvalues");
       }});
  return entry;
}

std::vector<std::string> gallery_ids() {
  return {"ex-2.3.1", "ex-2.3.2", "ex-2.3.3", "ex-2.3.4", "ex-2.3.5", "ex-3.4", "ex-4.4"};
}

GalleryEntry gallery_entry(const std::string& id) {
  if (id == "ex-2.3.1") return block_weighted_shift_entry();
  if (id == "ex-2.3.2") return perturbed_shift_entry();
  if (id == "ex-2.3.3") return step_weight_shift_entry();
  if (id == "ex-2.3.4") return front_loaded_shift_entry();
  if (id == "ex-2.3.5") return alternating_isometry_entry();
  if (id == "ex-3.4") return nilpotent_pair_entry();
  if (id == "ex-4.4") return shift_spectral_entry();
  throw ParameterError("unknown gallery id: " + id +
                       " (known ids: ex-2.3.1 ... ex-2.3.5, ex-3.4, ex-4.4)");
}

std::vector<ExpectationResult> run_expectations(const GalleryEntry& entry) {
  std::vector<ExpectationResult> results;
  results.reserve(entry.expectations.size());
  for (const auto& e : entry.expectations) results.push_back(e.run());
  return results;
}

}  // namespace opclass
