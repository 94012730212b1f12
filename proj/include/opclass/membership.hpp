#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <json.hpp>

#include "opclass/classes.hpp"
#include "opclass/matrix.hpp"

namespace opclass {

enum class Status { Member, NonMember, Inconclusive };
enum class Engine { Direct, Pencil, ExactShift, PsdCheck };

std::string to_string(Status s);
std::string to_string(Engine e);

/// Knobs for the numerical membership engines. Identical config + inputs
/// reproduce identical verdicts; all randomness derives from (seed, stream).
struct SearchConfig {
  int restarts = 64;
  int max_iters = 2500;
  /// Dense random sphere sampling backs up Member claims in low dimension.
  int sphere_samples = 10000;
  int sample_dim_limit = 16;
  /// Log-spaced pencil grid size and the factor by which the bracket of
  /// diagonal ratios is expanded on each side.
  int mu_grid_points = 201;
  double mu_bracket_expansion = 1e3;
  double tol = kDefaultTol;
  std::uint64_t seed = 1;
};

/// Tolerance-qualified verdict. `Member` states that no violation was found
/// at the configured resolution; `NonMember` is backed by a verifiable
/// witness: a unit vector x with residual(x) = margin < -tol * scale, or for
/// the pencil engine a pair (witness_mu, witness) with
/// <Q(witness_mu) x, x> = margin < 0.
struct MembershipVerdict {
  ClassId class_id;
  Status status = Status::Inconclusive;
  Engine engine = Engine::Direct;
  double margin = 0.0;
  /// Relative scale of the decided inequality; thresholds are tol * scale.
  double scale = 0.0;
  std::uint64_t seed = 0;
  std::optional<ComplexVector> witness;
  std::optional<double> witness_mu;
};

/// Multi-start projected gradient descent minimizing the per-vector residual
/// over the unit sphere, refreshed by basis vectors and (in low dimension) a
/// dense random sample. Throws UnsupportedClassError for normaloid.
MembershipVerdict check_direct(const ComplexMatrix& t, const ClassId& id,
                               const SearchConfig& cfg = {});

/// Membership via the pencil Q(mu) >= 0 scanned over a log grid of mu values
/// bracketing the diagonal ratios of the middle form against C. For n = 0
/// the pencil is constant and a single PSD check decides exactly. Never
/// returns Inconclusive; Member certifies "PSD at every grid point".
MembershipVerdict check_pencil(const ComplexMatrix& t, int n, int k,
                               const SearchConfig& cfg = {});

/// Pencil engine for any family with a pencil form (qsp, qp, qh).
MembershipVerdict check_pencil_for(const ComplexMatrix& t, const ClassId& id,
                                   const SearchConfig& cfg = {});

/// Exact single PSD check of the class-A defect form T*^k (|T^2| - |T*|^2) T^k.
MembershipVerdict check_quasi_star_class_a(const ComplexMatrix& t, int k,
                                           double tol = kDefaultTol);

/// Member iff operator norm and spectral radius agree within tol * (1 + norm).
MembershipVerdict check_normaloid(const ComplexMatrix& t, double tol = kDefaultTol);

/// One row of a classification sweep: the same class decided by two
/// independent engines. Definite disagreement is flagged Inconclusive.
struct ClassificationRow {
  ClassId class_id;
  MembershipVerdict primary;
  std::optional<MembershipVerdict> secondary;
  Status combined = Status::Inconclusive;
};

/// Full sweep over qsp(n,k) and qp(n,k) for n in [0, n_max], k in [0, k_max],
/// qsa(k) and qh(k) for each k, and normaloid once.
std::vector<ClassificationRow> classify(const ComplexMatrix& t, int n_max = 2, int k_max = 3,
                                        const SearchConfig& cfg = {});

nlohmann::json verdict_to_json(const MembershipVerdict& v);
nlohmann::json classification_to_json(const std::vector<ClassificationRow>& rows);

}  // namespace opclass
