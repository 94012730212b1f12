#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "opclass/matrix.hpp"
#include "opclass/shifts.hpp"

namespace opclass {

/// Outcome of one runnable expectation attached to a gallery entry.
struct ExpectationResult {
  bool passed = false;
  std::string detail;
};

/// A named, self-contained check bound to a built operator.
struct Expectation {
  std::string name;
  std::function<ExpectationResult()> run;
};

/// A concrete operator with known behaviour: the matrix, the weight
/// sequence it truncates (when it is a shift), and the checks that pin its
/// expected verdicts. Running every expectation is the regression surface
/// for the whole library.
struct GalleryEntry {
  std::string id;
  std::string description;
  ComplexMatrix matrix;
  std::optional<WeightSequence> weights;
  std::vector<Expectation> expectations;
};

/// Block weighted shift on num_blocks two-dimensional cells: the square
/// root of [[1,1],[1,2]] feeds the first cell into the second, and the
/// fourth root of [[1,2],[2,8]] repeats down the remaining subdiagonal.
/// The adjoint-squared comparison form |T^2| - |T*|^2 is indefinite, while
/// the degree-one power inequality holds on interior vectors.
GalleryEntry block_weighted_shift_entry(int num_blocks = 6);

/// One-dimensional eigenspace glued to a translated unilateral shift:
/// T = [[1, alpha e1*],[0, U + 1]] truncated to 1 + n_dim coordinates.
/// The first basis vector is fixed by T but moved by T*, so membership
/// fails for every (n, k) and the adjoint-transfer verifier fires at 1.
GalleryEntry perturbed_shift_entry(double alpha = 0.125, int n_dim = 16);

/// Weighted shift with a single heavy weight at position k (value 2, all
/// other weights 1): the exact criterion fails at (n, k) with first
/// violation at index k and holds at (n, k + 1).
GalleryEntry step_weight_shift_entry(int n = 1, int k = 1);

/// Weighted shift with w1 = 2 and constant tail 1: satisfies the exact
/// criterion at (n, k) for k >= 2 but has norm 2 against spectral radius 1,
/// so it is not normaloid.
GalleryEntry front_loaded_shift_entry(int n = 1, int k = 2);

/// Direct sum of the scalar 1 and the alternating partial isometry
/// S e_{2l-1} = e_{2l}, S e_{2l} = 0 on n_dim coordinates: every power has
/// norm exactly 1 (normaloid) yet the pencil at mu = 1 has a -1 eigenvalue
/// for every (n, 1).
GalleryEntry alternating_isometry_entry(int n_dim = 16);

/// Paired nilpotent blocks T = [[0, I],[0, 0]] on 2m coordinates: a flat
/// vector refutes membership at k = 1, while T^2 = 0 makes every k >= 2
/// form collapse to zero, and the zero range-compression blocks the
/// triangular similarity construction.
GalleryEntry nilpotent_pair_entry(int m = 4);

/// Same operator as perturbed_shift_entry, packaged with the spectral
/// expectations: 1 is in the point spectrum but not the joint point
/// spectrum, and the transfer defect at 1 has least singular value alpha.
GalleryEntry shift_spectral_entry(double alpha = 0.125, int n_dim = 16);

/// Ids of all registered entries, in presentation order.
std::vector<std::string> gallery_ids();

/// Build the entry registered under `id` with its default parameters.
/// Throws ParameterError for an unknown id.
GalleryEntry gallery_entry(const std::string& id);

/// Run every expectation in order; results align with entry.expectations.
std::vector<ExpectationResult> run_expectations(const GalleryEntry& entry);

}  // namespace opclass
