#include "opclass/shifts.hpp"

#include <cmath>
#include <fstream>

namespace opclass {

using nlohmann::json;

void WeightSequence::validate() const {
  if (tail.empty()) throw ParameterError("weight sequence: tail period must be non-empty");
  for (const auto& w : prefix) {
    if (w <= 0) throw ParameterError("weight sequence: weights must be > 0");
  }
  for (const auto& w : tail) {
    if (w <= 0) throw ParameterError("weight sequence: weights must be > 0");
  }
}

Rational WeightSequence::weight_at(long m) const {
  if (m < 1) throw ParameterError("weight_at: index is 1-based, got " + std::to_string(m));
  const long prefix_len = static_cast<long>(prefix.size());
  if (m <= prefix_len) return prefix[static_cast<std::size_t>(m - 1)];
  const long period = static_cast<long>(tail.size());
  return tail[static_cast<std::size_t>((m - prefix_len - 1) % period)];
}

ShiftCriterionResult shift_membership(const WeightSequence& ws, int n, int k) {
  ws.validate();
  if (n < 0 || k < 0) throw ParameterError("shift_membership: n and k must be >= 0");
  const long start = std::max<long>(k, 1);
  const long stop = static_cast<long>(ws.prefix.size()) + static_cast<long>(ws.tail.size()) +
                    static_cast<long>(n) + 1;
  for (long m = start; m <= stop; ++m) {
    Rational lhs = 1;
    for (int i = 0; i < n + 1; ++i) lhs *= ws.weight_at(m);
    Rational rhs = 1;
    for (long j = m + 1; j <= m + n + 1; ++j) rhs *= ws.weight_at(j);
    if (lhs > rhs) return {false, m};
  }
  return {true, std::nullopt};
}

ComplexMatrix truncate(const WeightSequence& ws, int n_dim) {
  ws.validate();
  if (n_dim < 1) throw ParameterError("truncate: dimension must be >= 1");
  ComplexMatrix t = ComplexMatrix::Zero(n_dim, n_dim);
  for (long m = 1; m < n_dim; ++m) {
    t(m, m - 1) = ws.weight_at(m).convert_to<double>();
  }
  return t;
}

double shift_norm(const WeightSequence& ws) {
  ws.validate();
  Rational best = ws.tail.front();
  for (const auto& w : ws.prefix) best = std::max(best, w);
  for (const auto& w : ws.tail) best = std::max(best, w);
  return best.convert_to<double>();
}

double shift_spectral_radius(const WeightSequence& ws) {
  ws.validate();
  if (ws.tail.size() == 1) return ws.tail.front().convert_to<double>();
  double log_sum = 0.0;
  for (const auto& w : ws.tail) log_sum += std::log(w.convert_to<double>());
  return std::exp(log_sum / static_cast<double>(ws.tail.size()));
}

namespace {

json rational_to_json(const Rational& r) {
  const auto num = boost::multiprecision::numerator(r);
  const auto den = boost::multiprecision::denominator(r);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

Rational rational_from_json(const json& j, const std::string& context) {
  if (!j.is_string()) {
    throw DataError(context + ": weights must be strings like \"2\" or \"1/2\"");
  }
  try {
    return Rational(j.get<std::string>());
  } catch (const std::exception&) {
    throw DataError(context + ": cannot parse rational '" + j.get<std::string>() + "'");
  }
}

std::vector<Rational> rational_list(const json& j, const std::string& context) {
  if (!j.is_array()) throw DataError(context + ": must be an array of rational strings");
  std::vector<Rational> out;
  out.reserve(j.size());
  for (const auto& entry : j) out.push_back(rational_from_json(entry, context));
  return out;
}

}  // namespace

json weights_to_json(const WeightSequence& ws) {
  json prefix = json::array();
  for (const auto& w : ws.prefix) prefix.push_back(rational_to_json(w));
  json tail = json::array();
  for (const auto& w : ws.tail) tail.push_back(rational_to_json(w));
  return json{{"prefix", std::move(prefix)}, {"tail", std::move(tail)}};
}

WeightSequence weights_from_json(const json& j, const std::string& context) {
  if (!j.is_object() || !j.contains("prefix") || !j.contains("tail")) {
    throw DataError(context + ": weight payload needs fields 'prefix' and 'tail'");
  }
  WeightSequence ws;
  ws.prefix = rational_list(j["prefix"], context + ": field 'prefix'");
  ws.tail = rational_list(j["tail"], context + ": field 'tail'");
  try {
    ws.validate();
  } catch (const ParameterError& e) {
    throw DataError(context + ": " + e.what());
  }
  return ws;
}

WeightSequence load_weights(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError(path + ": cannot open file");
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw DataError(path + ": invalid JSON: " + e.what());
  }
  return weights_from_json(j, path);
}

}  // namespace opclass
