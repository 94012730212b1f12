#include "opclass/matrix_io.hpp"

#include <cmath>
#include <fstream>

namespace opclass {

using nlohmann::json;

json matrix_to_json(const ComplexMatrix& m) {
  json data = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      data.push_back({m(i, j).real(), m(i, j).imag()});
    }
  }
  return json{{"rows", m.rows()}, {"cols", m.cols()}, {"data", std::move(data)}};
}

ComplexMatrix matrix_from_json(const json& j, const std::string& context) {
  const auto fail = [&](const std::string& what) -> void {
    throw DataError(context + ": " + what);
  };
  if (!j.is_object()) fail("matrix payload must be a JSON object");
  for (const char* field : {"rows", "cols", "data"}) {
    if (!j.contains(field)) fail(std::string("missing field '") + field + "'");
  }
  if (!j["rows"].is_number_integer() || !j["cols"].is_number_integer()) {
    fail("fields 'rows' and 'cols' must be integers");
  }
  const auto rows = j["rows"].get<Eigen::Index>();
  const auto cols = j["cols"].get<Eigen::Index>();
  if (rows < 0 || cols < 0) fail("fields 'rows' and 'cols' must be non-negative");
  if (!j["data"].is_array()) fail("field 'data' must be an array");
  const auto& data = j["data"];
  if (static_cast<Eigen::Index>(data.size()) != rows * cols) {
    fail("field 'data' has " + std::to_string(data.size()) + " entries, expected " +
         std::to_string(rows * cols));
  }
  ComplexMatrix m(rows, cols);
  for (Eigen::Index idx = 0; idx < rows * cols; ++idx) {
    const auto& entry = data[static_cast<std::size_t>(idx)];
    if (!entry.is_array() || entry.size() != 2 || !entry[0].is_number() || !entry[1].is_number()) {
      fail("field 'data' entry " + std::to_string(idx) + " must be a [re, im] number pair");
    }
    const double re = entry[0].get<double>();
    const double im = entry[1].get<double>();
    if (!std::isfinite(re) || !std::isfinite(im)) {
      fail("field 'data' entry " + std::to_string(idx) + " is not finite");
    }
    m(idx / cols, idx % cols) = Complex(re, im);
  }
  return m;
}

ComplexMatrix load_matrix(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError(path + ": cannot open file");
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw DataError(path + ": invalid JSON: " + e.what());
  }
  return matrix_from_json(j, path);
}

void save_matrix(const std::string& path, const ComplexMatrix& m) {
  std::ofstream out(path);
  if (!out) throw DataError(path + ": cannot open file for writing");
  out << matrix_to_json(m).dump(2) << "\n";
}

json vector_to_json(const ComplexVector& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back({v[i].real(), v[i].imag()});
  return out;
}

}  // namespace opclass
