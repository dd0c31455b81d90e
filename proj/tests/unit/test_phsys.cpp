#include "doctest.h"

#include <algorithm>

#include "phgen/phsys.hpp"
#include "phgen/witness.hpp"
#include "test_support.hpp"

using namespace phgen;

namespace {

const TolerancePolicy kTol;

Matrix diag(std::initializer_list<double> d) {
  Matrix m = Matrix::Zero(static_cast<Eigen::Index>(d.size()), static_cast<Eigen::Index>(d.size()));
  Eigen::Index i = 0;
  for (double v : d) m(i, i) = v, ++i;
  return m;
}

PHSystem rotation_system() {
  PHSystem s;
  s.E = Matrix::Identity(2, 2);
  s.Q = Matrix::Identity(2, 2);
  s.J = Matrix::Zero(2, 2);
  s.J(0, 1) = -1.0;
  s.J(1, 0) = 1.0;
  s.R = Matrix::Zero(2, 2);
  s.B = Matrix::Identity(2, 2);
  return s;
}

bool has(const ValidationReport& r, const std::string& what) {
  return std::any_of(r.violations.begin(), r.violations.end(),
                     [&](const Violation& v) { return v.constraint == what; });
}

}  // namespace

TEST_CASE("validation") {
  PHSystem s = rotation_system();
  CHECK(validate(s, kTol).ok());

  SUBCASE("J not skew") {
    s.J = Matrix::Identity(2, 2);
    const ValidationReport r = validate(s, kTol);
    REQUIRE(has(r, "J not skew-Hermitian"));
    CHECK(r.violations[0].residual == doctest::Approx(2.0 * std::sqrt(2.0)));
  }
  SUBCASE("E*Q indefinite") {
    s.Q = diag({1, -1});
    CHECK(has(validate(s, kTol), "E*Q not PSD"));
  }
  SUBCASE("class constraints on R") {
    s.R = diag({1, -1});
    s.cls = SystemClass::sdH;
    CHECK(has(validate(s, kTol), "R not PSD"));
    s.R = diag({1, 0});
    CHECK(validate(s, kTol).ok());
    s.cls = SystemClass::dH;
    CHECK(has(validate(s, kTol), "R not PD"));
    s.cls = SystemClass::H;
    CHECK(has(validate(s, kTol), "R not zero"));
  }
  SUBCASE("imaginary entries in a real system") {
    s.B(0, 0) = Complex(1.0, 1.0);
    CHECK(has(validate(s, kTol), "imaginary entries in a real-field system"));
    s.field = Field::Complex;
    CHECK(validate(s, kTol).ok());
  }
  SUBCASE("shape mismatch is an exception") {
    s.B = Matrix::Zero(3, 1);
    CHECK_THROWS_AS(validate(s, kTol), std::invalid_argument);
  }
}

TEST_CASE("structured form of a column") {
  Matrix E = Matrix::Zero(2, 1);
  E(0, 0) = 1.0;
  Matrix Q(2, 1);
  Q << 3.0, 5.0;
  const StructuredForm f = structured_form(E, Q, kTol);
  REQUIRE(f.k() == 1);
  CHECK(f.sigma(0) == doctest::Approx(1.0));
  CHECK(std::abs(f.Qtilde(0, 0)) == doctest::Approx(3.0));
  CHECK(std::abs(f.R1(0, 0)) == doctest::Approx(5.0));
  CHECK(f.R2.size() == 0);
  CHECK((f.P * E * f.T).block(0, 0, 1, 1).norm() == doctest::Approx(1.0));
  CHECK((reassemble_Q(f) - Q).norm() < 1e-12);
}

TEST_CASE("structured form invariants on sampled pairs") {
  Rng rng(5);
  const std::vector<std::array<std::size_t, 3>> dims = {{3, 2, 1}, {2, 3, 1}, {4, 4, 2}, {5, 2, 2}};
  for (int t = 0; t < 100; ++t) {
    const auto [l, n, m] = dims[static_cast<std::size_t>(t) % dims.size()];
    const Field field = t % 2 ? Field::Complex : Field::Real;
    const PHSystem s = sample_system(l, n, m, SystemClass::sdH, field, rng);
    const StructuredForm f = structured_form(s.E, s.Q, kTol);
    const auto k = static_cast<Eigen::Index>(f.k());
    const Matrix pet = f.P * s.E * f.T;
    Matrix want = Matrix::Zero(pet.rows(), pet.cols());
    want.topLeftCorner(k, k) = f.sigma.cast<Complex>().asDiagonal();
    CHECK((pet - want).norm() < 1e-9 * s.E.norm());
    CHECK(f.offblock < 1e-9 * std::max(1.0, s.Q.norm()));
    const Matrix sq = f.sigma.cast<Complex>().asDiagonal() * f.Qtilde;
    CHECK(hermitian_defect(sq) < 1e-9);
    CHECK((reassemble_Q(f) - s.Q).norm() < 1e-9 * std::max(1.0, s.Q.norm()));
    CHECK((f.P * f.P.adjoint() - Matrix::Identity(f.P.rows(), f.P.rows())).norm() < 1e-10);
  }
}

TEST_CASE("structured form rejects a non-symmetric pair") {
  CHECK_THROWS_AS(structured_form(Matrix::Identity(2, 2), (Matrix(2, 2) << 1, 2, 0, 1).finished(), kTol),
                  std::invalid_argument);
}

TEST_CASE("sampler produces valid systems") {
  const std::vector<std::array<std::size_t, 3>> dims = {{3, 2, 2}, {4, 2, 2}, {2, 3, 1}, {6, 2, 2}, {1, 1, 1}};
  for (SystemClass cls : {SystemClass::H, SystemClass::sdH, SystemClass::dH}) {
    for (std::uint64_t seed = 0; seed < 500; ++seed) {
      Rng rng(seed);
      const auto [l, n, m] = dims[seed % dims.size()];
      const PHSystem s = sample_system(l, n, m, cls, seed % 3 == 0 ? Field::Complex : Field::Real, rng);
      const ValidationReport r = validate(s, kTol);
      CHECK_MESSAGE(r.ok(), r.summary());
      if (cls == SystemClass::dH) CHECK(psd_classify(s.R, kTol) == Definiteness::PositiveDefinite);
      if (cls == SystemClass::H) CHECK(s.R.isZero(0.0));
    }
  }
  for (std::uint64_t seed = 0; seed < 500; ++seed) {
    Rng rng(seed);
    CHECK(numeric_rank(sample_system(3, 2, 1, SystemClass::H, Field::Real, rng).E, kTol) == 2);
  }
}

TEST_CASE("definitization") {
  SUBCASE("closed form on diag(1, 0)") {
    const Matrix q = perturb_to_definite(Matrix::Identity(2, 2), diag({1, 0}), 0.1, kTol);
    CHECK((q - diag({1, 0.05})).norm() < 1e-14);
  }
  SUBCASE("already definite") {
    const Matrix q = perturb_to_definite(Matrix::Identity(2, 2), Matrix::Identity(2, 2), 0.3, kTol);
    CHECK(q == Matrix::Identity(2, 2));
  }
  SUBCASE("engineered semidefinite pairs") {
    Rng rng(8);
    for (int t = 0; t < 200; ++t) {
      const auto [E, Q] = testing::semidefinite_pair(rng, 4, 3, t % 2 ? Field::Complex : Field::Real);
      REQUIRE(psd_classify(E.adjoint() * Q, kTol) == Definiteness::PositiveSemidefinite);
      for (double eps : {1e-1, 1e-4}) {
        const Matrix q2 = perturb_to_definite(E, Q, eps, kTol);
        CHECK(psd_classify(E.adjoint() * q2, kTol) == Definiteness::PositiveDefinite);
        CHECK(spectral_norm(Q - q2) < eps);
      }
    }
  }
  SUBCASE("errors") {
    CHECK_THROWS_AS(perturb_to_definite(Matrix::Zero(2, 2), Matrix::Identity(2, 2), 0.1, kTol), std::invalid_argument);
    CHECK_THROWS_AS(perturb_to_definite(Matrix::Identity(2, 2), diag({1, -1}), 0.1, kTol), std::invalid_argument);
    CHECK_THROWS_AS(perturb_to_definite(Matrix::Identity(2, 2), Matrix::Identity(2, 2), -1.0, kTol),
                    std::invalid_argument);
  }
}

TEST_CASE("descriptor assembly") {
  PHSystem s = rotation_system();
  CHECK(to_dae(s).A == s.J * s.Q);
  s.J.setZero();
  s.R = Matrix::Identity(2, 2);
  s.cls = SystemClass::sdH;
  CHECK(to_dae(s).A == -s.Q);

  // The counterexample's JQ is zero except column n-1, which carries the
  // skew coupling of row n to its neighbours.
  const DAE d = to_dae(witness_stab_counterexample(2, 1));
  Matrix want = Matrix::Zero(3, 2);
  want(1, 1) = 1.0;
  CHECK(d.A == want);

  // With m >= 2 the row below also couples, giving the -1 under the zero.
  const DAE d2 = to_dae(witness_stab_counterexample(2, 2));
  Matrix want2 = Matrix::Zero(4, 2);
  want2(1, 1) = 1.0;
  want2(3, 1) = -1.0;
  CHECK(d2.A == want2);
}
