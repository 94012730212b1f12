#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <cstdio>
#include <string>

#include "opclass/linalg.hpp"
#include "opclass/matrix_io.hpp"
#include "opclass/rng.hpp"

using namespace opclass;

namespace {

ComplexMatrix random_matrix(int rows, int cols, std::uint64_t seed) {
  Rng rng(seed, 0);
  return rng.gaussian_matrix(rows, cols);
}

ComplexMatrix random_hermitian(int dim, std::uint64_t seed) {
  const ComplexMatrix g = random_matrix(dim, dim, seed);
  return 0.5 * (g + g.adjoint());
}

ComplexMatrix random_psd(int dim, std::uint64_t seed) {
  const ComplexMatrix g = random_matrix(dim, dim, seed);
  return g.adjoint() * g;
}

/// Independent dense solver for A S - S C = B: builds the linear system
/// entry by entry from the defining equation (row-major unknown order,
/// unlike the library's column-stacked Kronecker form) and solves it with
/// hand-rolled Gaussian elimination with partial pivoting.
ComplexMatrix sylvester_oracle(const ComplexMatrix& a, const ComplexMatrix& c,
                               const ComplexMatrix& b) {
  const Eigen::Index p = a.rows(), q = c.rows(), dim = p * q;
  ComplexMatrix sys = ComplexMatrix::Zero(dim, dim);
  ComplexVector rhs(dim);
  auto idx = [q](Eigen::Index r, Eigen::Index s) { return r * q + s; };
  for (Eigen::Index i = 0; i < p; ++i) {
    for (Eigen::Index j = 0; j < q; ++j) {
      const Eigen::Index row = idx(i, j);
      for (Eigen::Index r = 0; r < p; ++r) sys(row, idx(r, j)) += a(i, r);
      for (Eigen::Index s = 0; s < q; ++s) sys(row, idx(i, s)) -= c(s, j);
      rhs(row) = b(i, j);
    }
  }
  // Forward elimination with partial pivoting.
  for (Eigen::Index col = 0; col < dim; ++col) {
    Eigen::Index pivot = col;
    for (Eigen::Index r = col + 1; r < dim; ++r) {
      if (std::abs(sys(r, col)) > std::abs(sys(pivot, col))) pivot = r;
    }
    sys.row(col).swap(sys.row(pivot));
    std::swap(rhs(col), rhs(pivot));
    for (Eigen::Index r = col + 1; r < dim; ++r) {
      const Complex f = sys(r, col) / sys(col, col);
      sys.row(r) -= f * sys.row(col);
      rhs(r) -= f * rhs(col);
    }
  }
  // Back substitution.
  ComplexVector x(dim);
  for (Eigen::Index r = dim - 1; r >= 0; --r) {
    Complex acc = rhs(r);
    for (Eigen::Index cidx = r + 1; cidx < dim; ++cidx) acc -= sys(r, cidx) * x(cidx);
    x(r) = acc / sys(r, r);
  }
  ComplexMatrix s(p, q);
  for (Eigen::Index i = 0; i < p; ++i)
    for (Eigen::Index j = 0; j < q; ++j) s(i, j) = x(idx(i, j));
  return s;
}

}  // namespace

TEST_CASE("adjoint is an involution and reverses products") {
  const ComplexMatrix a = random_matrix(4, 5, 11);
  const ComplexMatrix b = random_matrix(5, 3, 12);
  CHECK((adjoint(adjoint(a)) - a).norm() == 0.0);
  CHECK((adjoint(a * b) - adjoint(b) * adjoint(a)).norm() <= 1e-14);
}

TEST_CASE("matrix_power handles the unit cases and nilpotency") {
  const ComplexMatrix m = random_matrix(3, 3, 13);
  CHECK((matrix_power(m, 0) - ComplexMatrix::Identity(3, 3)).norm() == 0.0);
  CHECK((matrix_power(m, 1) - m).norm() == 0.0);

  ComplexMatrix diag = ComplexMatrix::Zero(2, 2);
  diag(0, 0) = 2.0;
  diag(1, 1) = 3.0;
  const ComplexMatrix fifth = matrix_power(diag, 5);
  CHECK(fifth(0, 0).real() == 32.0);
  CHECK(fifth(1, 1).real() == 243.0);

  ComplexMatrix jordan = ComplexMatrix::Zero(3, 3);
  jordan(0, 1) = 1.0;
  jordan(1, 2) = 1.0;
  CHECK(matrix_power(jordan, 3).norm() == 0.0);

  CHECK_THROWS_AS(matrix_power(m, -1), std::invalid_argument);
  CHECK_THROWS_AS(matrix_power(random_matrix(2, 3, 14), 2), std::invalid_argument);
}

TEST_CASE("hermitian_eig reproduces hand-computed spectra") {
  ComplexMatrix h(2, 2);
  h << 2, 1, 1, 2;
  const HermitianEig eig = hermitian_eig(h);
  CHECK(eig.eigenvalues[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(eig.eigenvalues[1] == doctest::Approx(3.0).epsilon(1e-12));

  ComplexMatrix pauli(2, 2);
  pauli << Complex(0, 0), Complex(0, -1), Complex(0, 1), Complex(0, 0);
  const HermitianEig pe = hermitian_eig(pauli);
  CHECK(pe.eigenvalues[0] == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(pe.eigenvalues[1] == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("hermitian_eig reconstructs random Hermitian matrices") {
  for (int dim : {2, 5, 12, 20}) {
    const ComplexMatrix h = random_hermitian(dim, 100 + dim);
    const HermitianEig eig = hermitian_eig(h);
    const ComplexMatrix back =
        eig.basis * eig.eigenvalues.asDiagonal() * eig.basis.adjoint();
    CHECK((back - h).norm() <= 1e-12 * (1.0 + h.norm()));
    const ComplexMatrix gram = eig.basis.adjoint() * eig.basis;
    CHECK((gram - ComplexMatrix::Identity(dim, dim)).norm() <= 1e-12);
    for (Eigen::Index i = 1; i < dim; ++i) CHECK(eig.eigenvalues[i - 1] <= eig.eigenvalues[i]);
  }
}

TEST_CASE("hermitian_eig rejects non-Hermitian input") {
  ComplexMatrix m(2, 2);
  m << 0, 1, 0, 0;
  CHECK_THROWS_AS(hermitian_eig(m), NotHermitianError);

  ComplexMatrix nearly = random_hermitian(3, 15);
  nearly(0, 1) += Complex(1e-3, 0.0);
  CHECK_THROWS_AS(hermitian_eig(nearly), NotHermitianError);
}

TEST_CASE("is_psd separates definite, semidefinite, and indefinite") {
  ComplexMatrix semi = ComplexMatrix::Zero(2, 2);
  semi(0, 0) = 1.0;
  const PsdVerdict ok = is_psd(semi);
  CHECK(ok.is_psd);
  CHECK(ok.min_eigenvalue == doctest::Approx(0.0).epsilon(1e-12));

  ComplexMatrix indef(2, 2);
  indef << 1, 2, 2, 1;
  const PsdVerdict bad = is_psd(indef);
  CHECK_FALSE(bad.is_psd);
  CHECK(bad.min_eigenvalue == doctest::Approx(-1.0).epsilon(1e-12));
  const Complex quad = (bad.witness.adjoint() * indef * bad.witness)(0);
  CHECK(quad.real() == doctest::Approx(bad.min_eigenvalue).epsilon(1e-10));
  CHECK(std::abs(bad.witness.norm() - 1.0) <= 1e-12);

  CHECK_FALSE(is_psd(ComplexMatrix(-ComplexMatrix::Identity(3, 3))).is_psd);

  ComplexMatrix barely = ComplexMatrix::Identity(2, 2);
  barely(1, 1) = -1e-12;
  CHECK(is_psd(barely).is_psd);
}

TEST_CASE("psd_power computes roots that power back") {
  ComplexMatrix d = ComplexMatrix::Zero(2, 2);
  d(0, 0) = 4.0;
  d(1, 1) = 9.0;
  ComplexMatrix root = psd_power(d, 0.5);
  CHECK(std::abs(root(0, 0).real() - 2.0) <= 1e-12);
  CHECK(std::abs(root(1, 1).real() - 3.0) <= 1e-12);

  const ComplexMatrix h = random_psd(5, 16);
  const ComplexMatrix half = psd_power(h, 0.5);
  CHECK((half * half - h).norm() <= 1e-10 * (1.0 + h.norm()));
  const ComplexMatrix quarter = psd_power(h, 0.25);
  CHECK((quarter * quarter * quarter * quarter - h).norm() <= 1e-9 * (1.0 + h.norm()));

  ComplexMatrix indef(2, 2);
  indef << 1, 2, 2, 1;
  CHECK_THROWS_AS(psd_power(indef, 0.5), NotPsdError);
  CHECK_THROWS_AS(psd_power(d, 0.0), std::invalid_argument);
  CHECK(psd_power(ComplexMatrix(ComplexMatrix::Zero(3, 3)), 0.5).norm() == 0.0);
}

TEST_CASE("square root quadratic forms obey the concavity bound") {
  // <Ax, x>^(1/2) >= <A^(1/2) x, x> on unit vectors, for PSD A.
  const ComplexMatrix h = random_psd(6, 17);
  const ComplexMatrix half = psd_power(h, 0.5);
  Rng rng(18, 0);
  for (int trial = 0; trial < 200; ++trial) {
    const ComplexVector x = rng.unit_vector(6);
    const double full = (x.adjoint() * h * x)(0).real();
    const double rooted = (x.adjoint() * half * x)(0).real();
    CHECK(std::sqrt(full) - rooted >= -1e-10);
  }
}

TEST_CASE("orthonormal_range and null_space_of_adjoint split the space") {
  const ComplexMatrix id = ComplexMatrix::Identity(3, 3);
  CHECK(orthonormal_range(id).cols() == 3);
  CHECK(null_space_of_adjoint(id).cols() == 0);

  ComplexMatrix nil(2, 2);
  nil << 0, 1, 0, 0;
  const ComplexMatrix range = orthonormal_range(nil);
  const ComplexMatrix conull = null_space_of_adjoint(nil);
  REQUIRE(range.cols() == 1);
  REQUIRE(conull.cols() == 1);
  CHECK(std::abs(std::abs(range(0, 0)) - 1.0) <= 1e-12);  // range(T) = span e0
  CHECK(std::abs(std::abs(conull(1, 0)) - 1.0) <= 1e-12);  // ker(T*) = span e1

  CHECK(orthonormal_range(ComplexMatrix(ComplexMatrix::Ones(3, 3))).cols() == 1);

  const ComplexMatrix m = random_matrix(5, 5, 19);
  const ComplexMatrix u = orthonormal_range(m);
  const ComplexMatrix v = null_space_of_adjoint(m);
  REQUIRE(u.cols() + v.cols() == 5);
  ComplexMatrix joined(5, 5);
  joined.leftCols(u.cols()) = u;
  joined.rightCols(v.cols()) = v;
  CHECK((joined.adjoint() * joined - ComplexMatrix::Identity(5, 5)).norm() <= 1e-12);
  CHECK((v.adjoint() * m).norm() <= 1e-12 * (1.0 + m.norm()));
}

TEST_CASE("solve_sylvester matches hand-computed solutions") {
  ComplexMatrix a(1, 1), c(1, 1), b(1, 1);
  a << 2;
  c << -1;
  b << 3;
  const ComplexMatrix s = solve_sylvester(a, c, b);
  CHECK(std::abs(s(0, 0) - Complex(1.0)) <= 1e-12);

  ComplexMatrix a2 = ComplexMatrix::Zero(2, 2);
  a2(0, 0) = 1.0;
  a2(1, 1) = 2.0;
  ComplexMatrix c2(1, 1);
  c2 << 0;
  ComplexMatrix b2(2, 1);
  b2 << 1, 1;
  const ComplexMatrix s2 = solve_sylvester(a2, c2, b2);
  CHECK(std::abs(s2(0, 0) - Complex(1.0)) <= 1e-12);
  CHECK(std::abs(s2(1, 0) - Complex(0.5)) <= 1e-12);
}

TEST_CASE("solve_sylvester agrees with the independent elimination oracle") {
  for (int trial = 0; trial < 10; ++trial) {
    const int p = 2 + trial % 5;  // up to 6
    const int q = 2 + (trial * 7) % 4;
    ComplexMatrix a = random_matrix(p, p, 300 + trial);
    ComplexMatrix c = random_matrix(q, q, 400 + trial);
    a += 4.0 * ComplexMatrix::Identity(p, p);  // push the spectra apart
    c -= 4.0 * ComplexMatrix::Identity(q, q);
    const ComplexMatrix b = random_matrix(p, q, 500 + trial);

    const ComplexMatrix s = solve_sylvester(a, c, b);
    const ComplexMatrix reference = sylvester_oracle(a, c, b);
    CHECK((s - reference).norm() <= 1e-9 * (1.0 + reference.norm()));
    CHECK((a * s - s * c - b).norm() <= 1e-10 * (1.0 + b.norm() + s.norm()));
  }
}

TEST_CASE("solve_sylvester rejects overlapping spectra") {
  ComplexMatrix one(1, 1);
  one << 1;
  CHECK_THROWS_AS(solve_sylvester(one, one, one), SpectraOverlapError);

  ComplexMatrix nil(2, 2);
  nil << 0, 1, 0, 0;
  ComplexMatrix zero1(1, 1);
  zero1 << 0;
  ComplexMatrix b(2, 1);
  b << 1, 1;
  CHECK_THROWS_AS(solve_sylvester(nil, zero1, b), SpectraOverlapError);

  CHECK_THROWS_AS(solve_sylvester(one, zero1, ComplexMatrix::Zero(2, 1)),
                  std::invalid_argument);
}

TEST_CASE("operator_norm and spectral_radius on pinned cases") {
  ComplexMatrix nil(2, 2);
  nil << 0, 1, 0, 0;
  CHECK(operator_norm(nil) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(spectral_radius(nil) <= 1e-12);

  const double theta = 0.7;
  ComplexMatrix rot(2, 2);
  rot << std::cos(theta), -std::sin(theta), std::sin(theta), std::cos(theta);
  CHECK(operator_norm(rot) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(spectral_radius(rot) == doctest::Approx(1.0).epsilon(1e-12));

  ComplexMatrix upper(2, 2);
  upper << 3, 4, 0, 3;
  CHECK(spectral_radius(upper) == doctest::Approx(3.0).epsilon(1e-12));

  CHECK_THROWS_AS(spectral_radius(random_matrix(2, 3, 20)), std::invalid_argument);
}

TEST_CASE("spectral radius never exceeds the operator norm") {
  for (int trial = 0; trial < 20; ++trial) {
    const ComplexMatrix m = random_matrix(4, 4, 600 + trial);
    CHECK(spectral_radius(m) <= operator_norm(m) + 1e-9);
  }
}

TEST_CASE("matrix JSON round-trips exactly") {
  const ComplexMatrix m = random_matrix(3, 4, 21);
  const ComplexMatrix back = matrix_from_json(matrix_to_json(m), "round-trip");
  CHECK((m - back).norm() == 0.0);
}

TEST_CASE("matrix JSON reports malformed input with context") {
  using nlohmann::json;
  CHECK_THROWS_AS(matrix_from_json(json{{"rows", 2}}, "ctx"), DataError);
  CHECK_THROWS_WITH_AS(
      matrix_from_json(json{{"rows", 2}, {"cols", 2}, {"data", json::array({1, 2})}}, "ctx"),
      doctest::Contains("ctx"), DataError);

  json wrong_len{{"rows", 2}, {"cols", 2}, {"data", json::array()}};
  for (int i = 0; i < 3; ++i) wrong_len["data"].push_back(json::array({0.0, 0.0}));
  CHECK_THROWS_AS(matrix_from_json(wrong_len, "ctx"), DataError);

  json bad_entry{{"rows", 1}, {"cols", 1}, {"data", json::array({json::array({1.0})})}};
  CHECK_THROWS_AS(matrix_from_json(bad_entry, "ctx"), DataError);
}

TEST_CASE("matrix file save and load round-trip") {
  const std::string path = "test_linalg_roundtrip.json";
  const ComplexMatrix m = random_matrix(4, 2, 22);
  save_matrix(path, m);
  const ComplexMatrix back = load_matrix(path);
  CHECK((m - back).norm() == 0.0);
  std::remove(path.c_str());

  CHECK_THROWS_AS(load_matrix("definitely-missing-file.json"), DataError);
}
