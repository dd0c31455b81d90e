#include "doctest.h"

#include <cmath>
#include <set>

#include <Eigen/Eigenvalues>

#include "phgen/numerics.hpp"

using namespace phgen;

namespace {

Matrix real(std::initializer_list<std::initializer_list<double>> rows) {
  Matrix m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.begin()->size()));
  Eigen::Index i = 0;
  for (auto r : rows) {
    Eigen::Index j = 0;
    for (double v : r) m(i, j++) = v;
    ++i;
  }
  return m;
}

}  // namespace

TEST_CASE("tolerance policy bounds") {
  TolerancePolicy tol;
  CHECK_NOTHROW(tol.validate());
  tol.rank_rel = 0.0;
  CHECK_THROWS_AS(tol.validate(), std::invalid_argument);
  tol = {};
  tol.psd_abs = 1.0;
  CHECK_THROWS_AS(tol.validate(), std::invalid_argument);
}

TEST_CASE("numeric rank of simple matrices") {
  const TolerancePolicy tol;
  CHECK(numeric_rank(Matrix::Identity(3, 3), tol) == 3);
  CHECK(numeric_rank(Matrix::Zero(2, 3), tol) == 0);
  CHECK(numeric_rank(Matrix(0, 4), tol) == 0);
}

TEST_CASE("numeric rank agrees with eigenvalues of the Gram matrix") {
  const TolerancePolicy tol;
  const Matrix d = real({{1.0, 0.0}, {0.0, 1e-14}});
  // Independent route: singular values are square roots of eig(M^* M).
  Eigen::SelfAdjointEigenSolver<Matrix> es(d.adjoint() * d);
  const auto ev = es.eigenvalues();
  const double smax = std::sqrt(ev.maxCoeff());
  const double cutoff = tol.rank_rel * 2.0 * smax;
  std::size_t above = 0;
  for (Eigen::Index i = 0; i < ev.size(); ++i) above += std::sqrt(std::max(0.0, ev(i))) > cutoff;
  CHECK(above == 1);
  CHECK(numeric_rank(d, tol) == 1);

  const RankInfo info = rank_info(d, tol);
  CHECK(info.singular_values(0) == doctest::Approx(1.0));
  CHECK_FALSE(info.ambiguous);
}

TEST_CASE("rank decision near the cutoff is flagged") {
  const TolerancePolicy tol;
  const Matrix d = real({{1.0, 0.0}, {0.0, 2e-10}});
  CHECK(rank_info(d, tol).ambiguous);
}

TEST_CASE("kernel basis") {
  const TolerancePolicy tol;
  SUBCASE("diag(1, 0) spans e2") {
    const Matrix z = kernel_basis(real({{1, 0}, {0, 0}}), tol);
    REQUIRE(z.cols() == 1);
    CHECK(std::abs(z(0, 0)) < 1e-12);
    CHECK(std::abs(z(1, 0)) == doctest::Approx(1.0));
  }
  SUBCASE("identity has a trivial kernel") { CHECK(kernel_basis(Matrix::Identity(3, 3), tol).cols() == 0); }
  SUBCASE("row [1 1]") {
    const Matrix m = real({{1, 1}});
    const Matrix z = kernel_basis(m, tol);
    REQUIRE(z.cols() == 1);
    CHECK((m * z).norm() < 1e-12);
    CHECK(z.norm() == doctest::Approx(1.0));
  }
  SUBCASE("random rank-deficient matrices") {
    Rng rng(11);
    for (int t = 0; t < 50; ++t) {
      const Matrix m = random_matrix(3, 2, Field::Complex, rng) * random_matrix(2, 5, Field::Complex, rng);
      const Matrix z = kernel_basis(m, tol);
      REQUIRE(z.cols() == 3);
      CHECK((m * z).norm() < 1e-10 * m.norm());
      CHECK((z.adjoint() * z - Matrix::Identity(3, 3)).norm() < 1e-10);
    }
  }
}

TEST_CASE("psd classification") {
  const TolerancePolicy tol;
  CHECK(psd_classify(Matrix::Identity(2, 2), tol) == Definiteness::PositiveDefinite);
  CHECK(psd_classify(real({{1, 0}, {0, 0}}), tol) == Definiteness::PositiveSemidefinite);
  CHECK(psd_classify(real({{0, 1}, {0, 0}}), tol) == Definiteness::NotHermitian);
  CHECK(psd_classify(real({{1, 0}, {0, -1}}), tol) == Definiteness::Indefinite);
  CHECK_THROWS_AS(psd_classify(Matrix::Zero(2, 3), tol), std::invalid_argument);
  CHECK(is_psd(Definiteness::PositiveDefinite));
  CHECK_FALSE(is_psd(Definiteness::Indefinite));
}

TEST_CASE("random matrices are deterministic per seed") {
  Rng a(42), b(42);
  CHECK(random_matrix(2, 2, Field::Real, a) == random_matrix(2, 2, Field::Real, b));
  Rng c(1);
  CHECK_FALSE(has_imaginary_part(random_matrix(4, 4, Field::Real, c)));
}

TEST_CASE("complex gaussian moments") {
  Rng rng(2024);
  const int draws = 1000;
  double sum = 0.0, sq = 0.0;
  bool all_imag = true;
  for (int t = 0; t < draws; ++t) {
    const Matrix m = random_matrix(3, 2, Field::Complex, rng);
    for (Eigen::Index i = 0; i < m.size(); ++i) {
      all_imag = all_imag && m(i).imag() != 0.0;
      sum += m(i).real() + m(i).imag();
      sq += m(i).real() * m(i).real() + m(i).imag() * m(i).imag();
    }
  }
  const double count = draws * 6 * 2;
  const double mean = sum / count;
  const double var = sq / count - mean * mean;
  CHECK(all_imag);
  CHECK(std::abs(mean) < 3.0 / std::sqrt(count));
  // The sample variance of N(0,1) has standard deviation sqrt(2 / count).
  CHECK(std::abs(var - 1.0) < 3.0 * std::sqrt(2.0 / count));
}

TEST_CASE("different seeds give different draws") {
  std::set<double> seen;
  for (std::uint64_t s = 0; s < 10000; ++s) {
    Rng rng(s);
    seen.insert(random_matrix(1, 1, Field::Real, rng)(0, 0).real());
  }
  CHECK(seen.size() == 10000);
}

TEST_CASE("defects and helpers") {
  const Matrix j = real({{0, -1}, {1, 0}});
  CHECK(skew_defect(j) == 0.0);
  CHECK(hermitian_defect(j) > 1.0);
  CHECK(spectral_norm(real({{3, 0}, {0, 4}})) == doctest::Approx(4.0));

  const Matrix a = Matrix::Identity(2, 2);
  const Matrix empty(2, 0);
  const Matrix h = hcat({&a, &empty, &a});
  CHECK(h.cols() == 4);

  const Matrix p = project_psd(real({{1, 0}, {0, -2}}));
  CHECK(p.isApprox(real({{1, 0}, {0, 0}})));

  CHECK(mix_seed(1, 2) != mix_seed(2, 1));
  CHECK(mix_seed(1, 2) == mix_seed(1, 2));
  CHECK(field_from_string("complex") == Field::Complex);
  CHECK_THROWS(field_from_string("quaternion"));
}
