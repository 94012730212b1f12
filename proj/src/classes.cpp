#include "opclass/classes.hpp"

#include <cmath>

#include "opclass/linalg.hpp"

namespace opclass {

namespace {

bool has_n(Family f) {
  return f == Family::QuasiStarParanormal || f == Family::QuasiParanormal;
}

bool has_k(Family f) { return f != Family::Normaloid; }

/// left * M^p without materializing an identity factor for p = 0, so that
/// low-order reductions (k = 0, n = 0) are bitwise exact.
ComplexMatrix mul_power(const ComplexMatrix& left, const ComplexMatrix& m, int p) {
  if (p == 0) return left;
  return left * matrix_power(m, p);
}

double quad_form(const ComplexMatrix& m, const ComplexVector& x) {
  return std::real(x.dot(m * x));
}

}  // namespace

void validate(const ClassId& id) {
  if (has_n(id.family)) {
    if (!id.n || *id.n < 0) throw ParameterError("class " + to_string(id) + ": n must be >= 0");
  } else if (id.n) {
    throw ParameterError("class family does not take an n parameter");
  }
  if (has_k(id.family)) {
    if (!id.k || *id.k < 0) throw ParameterError("class " + to_string(id) + ": k must be >= 0");
  } else if (id.k) {
    throw ParameterError("class family does not take a k parameter");
  }
}

std::string to_string(const ClassId& id) {
  const auto n = [&] { return id.n ? std::to_string(*id.n) : std::string("?"); };
  const auto k = [&] { return id.k ? std::to_string(*id.k) : std::string("?"); };
  switch (id.family) {
    case Family::QuasiStarParanormal:
      return "qsp(" + n() + "," + k() + ")";
    case Family::QuasiParanormal:
      return "qp(" + n() + "," + k() + ")";
    case Family::QuasiStarClassA:
      return "qsa(" + k() + ")";
    case Family::QuasiHyponormal:
      return "qh(" + k() + ")";
    case Family::Normaloid:
      return "normaloid";
  }
  return "?";
}

ClassId parse_class_id(const std::string& text) {
  const auto fail = [&]() -> void {
    throw ParameterError("unrecognized class id '" + text + "'");
  };
  if (text == "normaloid") return ClassId::normaloid();
  const auto open = text.find('(');
  if (open == std::string::npos || text.back() != ')') fail();
  const std::string name = text.substr(0, open);
  const std::string args = text.substr(open + 1, text.size() - open - 2);
  const auto comma = args.find(',');
  try {
    if (name == "qsp" || name == "qp") {
      if (comma == std::string::npos) fail();
      const int n = std::stoi(args.substr(0, comma));
      const int k = std::stoi(args.substr(comma + 1));
      return name == "qsp" ? ClassId::qsp(n, k) : ClassId::qp(n, k);
    }
    if (name == "qsa" || name == "qh") {
      if (comma != std::string::npos) fail();
      const int k = std::stoi(args);
      return name == "qsa" ? ClassId::qsa(k) : ClassId::qh(k);
    }
  } catch (const std::logic_error&) {
    fail();
  }
  fail();
  return {};
}

FormTriplet form_triplet(const ComplexMatrix& t, int n, int k) {
  require_square(t, "form_triplet");
  if (n < 0 || k < 0) throw ParameterError("form_triplet: n and k must be >= 0");
  FormTriplet f;
  // A = |T^(1+n) T^k|^2 = |T^(1+n+k)|^2, B = |T* T^k|^2, C = |T^k|^2.
  const ComplexMatrix high = matrix_power(t, 1 + n + k);
  f.a = high.adjoint() * high;
  const ComplexMatrix mid = mul_power(t.adjoint(), t, k);
  f.b = mid.adjoint() * mid;
  if (k == 0) {
    f.c = ComplexMatrix::Identity(t.rows(), t.cols());
  } else {
    const ComplexMatrix low = matrix_power(t, k);
    f.c = low.adjoint() * low;
  }
  return f;
}

ComplexMatrix middle_matrix(const ComplexMatrix& t, const ClassId& id) {
  validate(id);
  switch (id.family) {
    case Family::QuasiStarParanormal:
    case Family::QuasiHyponormal:
      return form_triplet(t, id.n.value_or(0), *id.k).b;
    case Family::QuasiParanormal: {
      const ComplexMatrix p = matrix_power(t, *id.k + 1);
      return p.adjoint() * p;
    }
    default:
      throw UnsupportedClassError("middle_matrix: class " + to_string(id) +
                                  " has no pencil middle matrix");
  }
}

ComplexMatrix pencil(const ComplexMatrix& t, int n, int k, double mu) {
  return pencil_for(t, ClassId::qsp(n, k), mu);
}

ComplexMatrix pencil_for(const ComplexMatrix& t, const ClassId& id, double mu) {
  validate(id);
  if (!(mu > 0.0)) throw NonPositiveMuError("pencil: mu must be > 0, got " + std::to_string(mu));
  if (id.family != Family::QuasiStarParanormal && id.family != Family::QuasiParanormal &&
      id.family != Family::QuasiHyponormal) {
    throw UnsupportedClassError("pencil: class " + to_string(id) + " has no pencil form");
  }
  const int n = id.n.value_or(0);
  const int k = *id.k;
  const FormTriplet f = form_triplet(t, n, k);
  const ComplexMatrix m =
      id.family == Family::QuasiParanormal ? middle_matrix(t, id) : f.b;
  return f.a - (1.0 + n) * std::pow(mu, n) * m + double(n) * std::pow(mu, n + 1) * f.c;
}

double SphereObjective::value(const ComplexVector& x) const {
  const double av = quad_form(a, x);
  const double cv = quad_form(c, x);
  const double mv = quad_form(m, x);
  return av * std::pow(cv, n) - std::pow(mv, n + 1);
}

ComplexVector SphereObjective::gradient(const ComplexVector& x) const {
  const ComplexVector ax = a * x;
  const ComplexVector cx = c * x;
  const ComplexVector mx = m * x;
  const double av = std::real(x.dot(ax));
  const double cv = std::real(x.dot(cx));
  const double mv = std::real(x.dot(mx));
  ComplexVector g = std::pow(cv, n) * ax - (n + 1.0) * std::pow(mv, n) * mx;
  if (n > 0) g += n * av * std::pow(cv, n - 1) * cx;
  return 2.0 * g;
}

SphereObjective make_objective(const ComplexMatrix& t, const ClassId& id, double tol) {
  validate(id);
  require_square(t, "make_objective");
  SphereObjective obj;
  switch (id.family) {
    case Family::QuasiStarParanormal:
    case Family::QuasiParanormal:
    case Family::QuasiHyponormal: {
      const int n = id.n.value_or(0);
      const FormTriplet f = form_triplet(t, n, *id.k);
      obj.a = f.a;
      obj.c = f.c;
      obj.m = id.family == Family::QuasiParanormal ? middle_matrix(t, id) : f.b;
      obj.n = n;
      obj.scale = operator_norm(obj.a) * std::pow(operator_norm(obj.c), n) +
                  std::pow(operator_norm(obj.m), n + 1);
      break;
    }
    case Family::QuasiStarClassA: {
      // Hermitian defect form T*^k (|T^2| - |T*|^2) T^k; membership is its
      // positive semidefiniteness, i.e. F(x) = <Ax,x> >= 0 on the sphere.
      const int k = *id.k;
      const ComplexMatrix t2 = t * t;
      const ComplexMatrix abs_t2 = psd_power(t2.adjoint() * t2, 0.5, tol);
      const ComplexMatrix defect = abs_t2 - t * t.adjoint();
      const ComplexMatrix tk = matrix_power(t, k);
      ComplexMatrix form = k == 0 ? defect : ComplexMatrix(tk.adjoint() * defect * tk);
      form = 0.5 * (form + form.adjoint());  // remove roundoff asymmetry
      obj.a = form;
      obj.m = ComplexMatrix::Zero(t.rows(), t.cols());
      obj.c = ComplexMatrix::Identity(t.rows(), t.cols());
      obj.n = 0;
      obj.scale = operator_norm(form);
      break;
    }
    case Family::Normaloid:
      throw UnsupportedClassError("class 'normaloid' has no per-vector residual");
  }
  return obj;
}

double definitional_residual(const ClassId& id, const ComplexMatrix& t, const ComplexVector& x,
                             double tol) {
  if (std::abs(x.norm() - 1.0) > tol) {
    throw std::invalid_argument("definitional_residual: x must be a unit vector");
  }
  return make_objective(t, id, tol).value(x);
}

}  // namespace opclass
