#include "doctest.h"

#include <cmath>

#include "phgen/pencil.hpp"
#include "phgen/phsys.hpp"
#include "phgen/witness.hpp"

using namespace phgen;

namespace {

const TolerancePolicy kTol;

DAE counterexample(std::size_t n, std::size_t m) { return to_dae(witness_stab_counterexample(n, m)); }

}  // namespace

TEST_CASE("generic rank") {
  Rng rng(1);
  CHECK(generic_rank(Matrix::Identity(2, 2), Matrix::Zero(2, 2), Matrix::Zero(2, 1), kTol, rng) == 2);
  CHECK(generic_rank(Matrix::Zero(1, 1), Matrix::Zero(1, 1), Matrix::Zero(1, 1), kTol, rng) == 0);
  const DAE d = counterexample(2, 1);
  CHECK(generic_rank(d.E, d.A, d.B, kTol, rng) == 3);
}

TEST_CASE("minor enumeration order") {
  MinorEnumerator en(3, 3, 2);
  MinorIndex idx;
  std::vector<MinorIndex> all;
  while (en.next(idx)) all.push_back(idx);
  REQUIRE(all.size() == 9);
  CHECK(all[0].cols == std::vector<std::size_t>{0, 1});
  CHECK(all[0].rows == std::vector<std::size_t>{0, 1});
  CHECK(all[1].rows == std::vector<std::size_t>{0, 2});
  CHECK(all[2].rows == std::vector<std::size_t>{1, 2});
  CHECK(all[3].cols == std::vector<std::size_t>{0, 2});
}

TEST_CASE("rank drop locus") {
  Rng rng(3);
  SUBCASE("scalar pencil drops at 1") {
    const Matrix one = Matrix::Ones(1, 1);
    const PencilAnalysis a = rank_drop_locus(one, one, Matrix::Zero(1, 1), kTol, rng);
    CHECK(a.generic_rank == 1);
    REQUIRE(a.drop_points.size() == 1);
    CHECK(std::abs(a.drop_points[0].lambda - Complex(1.0)) < 1e-10);
    CHECK(a.drop_points[0].rank == 0);
  }
  SUBCASE("counterexample drops at 0 and 1") {
    for (auto [n, m] : {std::pair<std::size_t, std::size_t>{2, 1}, {2, 2}, {3, 1}}) {
      const DAE d = counterexample(n, m);
      const PencilAnalysis a = rank_drop_locus(d.E, d.A, d.B, kTol, rng);
      REQUIRE(a.drop_points.size() == 2);
      CHECK(std::abs(a.drop_points[0].lambda) < 1e-8);
      CHECK(std::abs(a.drop_points[1].lambda - Complex(1.0)) < 1e-8);
      CHECK(a.borderline.empty());
    }
  }
  SUBCASE("full row rank everywhere") {
    const PencilAnalysis a =
        rank_drop_locus(Matrix::Identity(2, 2), Matrix::Zero(2, 2), Matrix::Identity(2, 2), kTol, rng);
    CHECK(a.drop_points.empty());
    CHECK(a.generic_rank == 2);
  }
}

TEST_CASE("resultant certificates") {
  SUBCASE("step_i4 uses the two minors of the construction") {
    const DAE d = to_dae(witness_step_i4(3, 2, 2));
    const auto [m1, m2] = step_i4_minors(3, 2, 2);
    const auto c = pair_certificate(d.E, d.A, d.B, m1, m2);
    REQUIRE(c.has_value());
    CHECK(c->normalized > kCertificateMinResultant);
    CHECK(resultant_certificate(d.E, d.A, d.B).has_value());
  }
  SUBCASE("step_i5 second minor is (-1)^n") {
    for (std::size_t n : {2, 3}) {
      const DAE d = to_dae(witness_step_i5(n + 4, n, 2));
      const auto [m1, m2] = step_i5_minors(n + 4, n, 2);
      const Polynomial p2 = minor_of_pencil(d.E, d.A, d.B, m2.rows, m2.cols);
      CHECK(p2.degree() == 0);
      CHECK(p2.coeff(0).real() == doctest::Approx(n % 2 == 0 ? 1.0 : -1.0));
      CHECK(resultant_certificate(d.E, d.A, d.B).has_value());
    }
  }
  SUBCASE("no certificate when the rank drops") {
    const Matrix one = Matrix::Ones(1, 1);
    CHECK_FALSE(resultant_certificate(one, one, Matrix::Zero(1, 1)).has_value());
    const DAE d = counterexample(2, 2);
    CHECK_FALSE(resultant_certificate(d.E, d.A, d.B).has_value());
  }
}

TEST_CASE("conformability") {
  CHECK_THROWS_AS(check_conformable(Matrix::Zero(2, 2), Matrix::Zero(3, 2), Matrix::Zero(2, 1)),
                  std::invalid_argument);
  const Matrix p = pencil_at(Matrix::Identity(2, 2), Matrix::Identity(2, 2), Matrix::Ones(2, 1), 3.0);
  CHECK(p(0, 0) == Complex(2.0));
  CHECK(p(1, 2) == Complex(1.0));
}
