#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "opclass/classes.hpp"
#include "opclass/linalg.hpp"
#include "opclass/rng.hpp"

using namespace opclass;

namespace {

ComplexMatrix nilpotent2() {
  ComplexMatrix m(2, 2);
  m << 0, 1, 0, 0;
  return m;
}

/// [[0, I],[0, 0]] on paired blocks of size m.
ComplexMatrix paired_nilpotent(int m) {
  ComplexMatrix t = ComplexMatrix::Zero(2 * m, 2 * m);
  t.block(0, m, m, m) = ComplexMatrix::Identity(m, m);
  return t;
}

}  // namespace

TEST_CASE("class ids round-trip through their string form") {
  const ClassId ids[] = {ClassId::qsp(1, 2), ClassId::qp(0, 3), ClassId::qsa(1),
                         ClassId::qh(0), ClassId::normaloid()};
  const std::string expected[] = {"qsp(1,2)", "qp(0,3)", "qsa(1)", "qh(0)", "normaloid"};
  for (int i = 0; i < 5; ++i) {
    CHECK(to_string(ids[i]) == expected[i]);
    CHECK(parse_class_id(expected[i]) == ids[i]);
  }
}

TEST_CASE("parse_class_id rejects malformed ids") {
  for (const char* bad : {"", "qsp", "qsp(1)", "qsa(1,2)", "qsp(a,b)", "banana", "qsp(1,2"}) {
    CHECK_THROWS_AS(parse_class_id(bad), ParameterError);
  }
}

TEST_CASE("validate enforces parameter presence and ranges") {
  CHECK_NOTHROW(validate(ClassId::qsp(0, 0)));
  CHECK_NOTHROW(validate(ClassId::normaloid()));
  CHECK_THROWS_AS(validate(ClassId::qsp(-1, 0)), ParameterError);
  CHECK_THROWS_AS(validate(ClassId::qsa(-2)), ParameterError);
  CHECK_THROWS_AS(validate(ClassId{Family::QuasiStarParanormal, std::nullopt, 1}),
                  ParameterError);
  CHECK_THROWS_AS(validate(ClassId{Family::Normaloid, 1, std::nullopt}), ParameterError);
  CHECK_THROWS_AS(validate(ClassId{Family::QuasiStarClassA, 1, 1}), ParameterError);
}

TEST_CASE("form_triplet reduces exactly at n = 0, k = 0") {
  Rng rng(31, 0);
  const ComplexMatrix t = rng.gaussian_matrix(4, 4);
  const FormTriplet f = form_triplet(t, 0, 0);
  CHECK((f.a - t.adjoint() * t).norm() == 0.0);
  CHECK((f.b - t * t.adjoint()).norm() <= 1e-13 * t.norm() * t.norm());
  CHECK((f.c - ComplexMatrix::Identity(4, 4)).norm() == 0.0);
}

TEST_CASE("form_triplet matches the compressed products for k = 1") {
  Rng rng(32, 0);
  const ComplexMatrix t = rng.gaussian_matrix(3, 3);
  const FormTriplet f = form_triplet(t, 1, 1);
  const ComplexMatrix t3 = t * t * t;
  CHECK((f.a - t3.adjoint() * t3).norm() <= 1e-13 * t3.norm() * t3.norm());
  const ComplexMatrix mid = t.adjoint() * t;
  CHECK((f.b - mid.adjoint() * mid).norm() <= 1e-13 * mid.norm() * mid.norm());
  CHECK((f.c - t.adjoint() * t).norm() == 0.0);
  CHECK_THROWS_AS(form_triplet(t, -1, 0), ParameterError);
}

TEST_CASE("pencil matrices are Hermitian and constant in mu when n = 0") {
  Rng rng(33, 0);
  const ComplexMatrix t = rng.gaussian_matrix(4, 4);
  for (int n : {0, 1, 2}) {
    const ComplexMatrix q = pencil(t, n, 1, 0.7);
    CHECK((q - q.adjoint()).norm() <= 1e-12 * (1.0 + q.norm()));
  }
  CHECK((pencil(t, 0, 1, 0.1) - pencil(t, 0, 1, 10.0)).norm() == 0.0);
  CHECK_THROWS_AS(pencil(t, 1, 1, 0.0), NonPositiveMuError);
  CHECK_THROWS_AS(pencil(t, 1, 1, -2.0), NonPositiveMuError);
  CHECK_THROWS_AS(pencil_for(t, ClassId::qsa(1), 1.0), UnsupportedClassError);
  CHECK_THROWS_AS(pencil_for(t, ClassId::normaloid(), 1.0), UnsupportedClassError);
}

TEST_CASE("pencil of a positive diagonal matrix stays PSD across mu") {
  ComplexMatrix d = ComplexMatrix::Zero(3, 3);
  d(0, 0) = 2.0;
  d(1, 1) = 1.0;
  d(2, 2) = 0.5;
  for (int n : {0, 1, 2}) {
    for (int k : {0, 1}) {
      for (double mu : {0.1, 0.5, 1.0, 2.0, 10.0}) {
        const auto eig = hermitian_eig(pencil(d, n, k, mu));
        CHECK(eig.eigenvalues.minCoeff() >= -1e-12);
      }
    }
  }
}

TEST_CASE("middle matrix distinguishes the adjoint and plain families") {
  Rng rng(34, 0);
  const ComplexMatrix t = rng.gaussian_matrix(3, 3);
  const FormTriplet f = form_triplet(t, 1, 1);
  CHECK((middle_matrix(t, ClassId::qsp(1, 1)) - f.b).norm() == 0.0);
  CHECK((middle_matrix(t, ClassId::qh(1)) - form_triplet(t, 0, 1).b).norm() == 0.0);
  const ComplexMatrix t2 = t * t;
  CHECK((middle_matrix(t, ClassId::qp(1, 1)) - t2.adjoint() * t2).norm() == 0.0);
  CHECK_THROWS_AS(middle_matrix(t, ClassId::normaloid()), UnsupportedClassError);
}

TEST_CASE("hand-computed residuals on the one-jet nilpotent") {
  const ComplexMatrix t = nilpotent2();
  ComplexVector e0 = ComplexVector::Zero(2), e1 = ComplexVector::Zero(2);
  e0(0) = 1.0;
  e1(1) = 1.0;

  // qh(0): <T*T x, x> - <T T* x, x>; at e0 this is 0 - 1.
  CHECK(definitional_residual(ClassId::qh(0), t, e0) == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(definitional_residual(ClassId::qh(0), t, e1) == doctest::Approx(1.0).epsilon(1e-12));

  // qp(1,0): ||T^2 x||^2 ||x||^2 - ||Tx||^4; at e1 this is 0 - 1.
  CHECK(definitional_residual(ClassId::qp(1, 0), t, e1) == doctest::Approx(-1.0).epsilon(1e-12));

  // The pencil at n = 0 is the constant A - B = diag(-1, 1).
  const auto eig = hermitian_eig(pencil(t, 0, 0, 1.0));
  CHECK(eig.eigenvalues.minCoeff() == doctest::Approx(-1.0).epsilon(1e-12));
}

TEST_CASE("vectors annihilated by T^k contribute zero residual") {
  const ComplexMatrix t = paired_nilpotent(2);
  ComplexVector e0 = ComplexVector::Zero(4);
  e0(0) = 1.0;  // T e0 = 0, so every form in the k >= 1 residual vanishes
  for (int n : {0, 1, 2}) {
    CHECK(definitional_residual(ClassId::qsp(n, 1), t, e0) == 0.0);
    CHECK(definitional_residual(ClassId::qsp(n, 2), t, e0) == 0.0);
  }

  ComplexVector flat = ComplexVector::Zero(4);
  flat(2) = 1.0;  // T flat = e0, T^2 flat = 0: residual 0 * 1^n - 1^(n+1)
  for (int n : {0, 1, 2}) {
    CHECK(definitional_residual(ClassId::qsp(n, 1), t, flat) ==
          doctest::Approx(-1.0).epsilon(1e-12));
  }
}

TEST_CASE("objective values stay within the advertised scale") {
  Rng rng(35, 0);
  const ComplexMatrix t = rng.gaussian_matrix(5, 5);
  for (const ClassId& id : {ClassId::qsp(2, 1), ClassId::qp(1, 2), ClassId::qh(1),
                            ClassId::qsa(1)}) {
    const SphereObjective obj = make_objective(t, id);
    CHECK(obj.scale > 0.0);
    for (int trial = 0; trial < 100; ++trial) {
      const ComplexVector x = rng.unit_vector(5);
      CHECK(std::abs(obj.value(x)) <= obj.scale + 1e-12);
    }
  }
}

TEST_CASE("objective gradient matches central finite differences") {
  Rng rng(36, 0);
  const ComplexMatrix t = rng.gaussian_matrix(4, 4);
  for (const ClassId& id : {ClassId::qsp(1, 1), ClassId::qp(2, 0), ClassId::qsa(1)}) {
    const SphereObjective obj = make_objective(t, id);
    const ComplexVector x = rng.unit_vector(4);
    const ComplexVector g = obj.gradient(x);
    for (int trial = 0; trial < 5; ++trial) {
      const ComplexVector d = rng.gaussian_vector(4);
      const double h = 1e-6;
      const double numeric = (obj.value(x + h * d) - obj.value(x - h * d)) / (2.0 * h);
      const double analytic = std::real(d.dot(g));
      CHECK(numeric == doctest::Approx(analytic).epsilon(1e-5));
    }
  }
}

TEST_CASE("class-A defect form is zero when the square vanishes") {
  const ComplexMatrix t = paired_nilpotent(2);  // T^2 = 0
  const SphereObjective obj = make_objective(t, ClassId::qsa(2));
  CHECK(obj.a.norm() <= 1e-12);
  CHECK(obj.scale <= 1e-12);

  // At k = 1 the form is genuinely indefinite: the flat vector sees -1.
  ComplexVector flat = ComplexVector::Zero(4);
  flat(2) = 1.0;
  CHECK(definitional_residual(ClassId::qsa(1), t, flat) == doctest::Approx(-1.0).epsilon(1e-10));
}

TEST_CASE("unsupported residual requests are rejected") {
  const ComplexMatrix t = nilpotent2();
  CHECK_THROWS_AS(make_objective(t, ClassId::normaloid()), UnsupportedClassError);
  ComplexVector long_x = ComplexVector::Zero(2);
  long_x(0) = 2.0;
  CHECK_THROWS_AS(definitional_residual(ClassId::qh(0), t, long_x), std::invalid_argument);
}
