#pragma once

#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>
#include <json.hpp>

#include "opclass/matrix.hpp"

namespace opclass {

/// Exact rational weight; arbitrary precision, so products of many weights
/// never overflow.
using Rational = boost::multiprecision::cpp_rational;

/// Eventually periodic positive weight sequence w_1, w_2, ... for the
/// unilateral shift T e_m = w_m e_{m+1}. Indices 1..prefix.size() come from
/// `prefix`; afterwards the sequence cycles through `tail` (period >= 1).
struct WeightSequence {
  std::vector<Rational> prefix;
  std::vector<Rational> tail;

  /// Throws ParameterError when the tail is empty or any weight is <= 0.
  void validate() const;

  /// 1-indexed weight; m >= 1.
  Rational weight_at(long m) const;
};

/// Result of the exact shift membership test for qsp(n,k).
struct ShiftCriterionResult {
  bool holds = true;
  /// Smallest index m with w_m^(n+1) > w_(m+1) ... w_(m+n+1), when any.
  std::optional<long> first_violation;
};

/// Decides whether the weighted shift lies in qsp(n,k) by the exact product
/// test: w_m^(n+1) <= w_(m+1) ... w_(m+n+1) for every m >= max(k, 1).
/// Eventual periodicity bounds the distinct inequalities, so indices up to
/// prefix length + period + n + 1 decide the whole system. Exact rational
/// arithmetic; no tolerance is involved.
ShiftCriterionResult shift_membership(const WeightSequence& ws, int n, int k);

/// Leading N x N section of the shift: entry (m+1, m) = w_m, 1-indexed.
ComplexMatrix truncate(const WeightSequence& ws, int n_dim);

/// Operator norm of the (infinite) shift: the largest weight.
double shift_norm(const WeightSequence& ws);

/// Spectral radius of the shift: the geometric mean of one tail period.
double shift_spectral_radius(const WeightSequence& ws);

/// JSON schema { "prefix": ["2", "1"], "tail": ["1/2"] }: rationals encoded
/// as "p/q" or plain integer strings.
nlohmann::json weights_to_json(const WeightSequence& ws);
WeightSequence weights_from_json(const nlohmann::json& j, const std::string& context = "<json>");
WeightSequence load_weights(const std::string& path);

}  // namespace opclass
