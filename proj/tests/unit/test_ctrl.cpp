#include "doctest.h"

#include "phgen/ctrl.hpp"
#include "phgen/witness.hpp"
#include "test_support.hpp"

using namespace phgen;

namespace {

const TolerancePolicy kTol;

Matrix scalar(double v) { return Matrix::Constant(1, 1, v); }

// Kalman rank of (A, B) for E = I: rank [B, AB, ..., A^{n-1} B].
std::size_t kalman_rank(const Matrix& A, const Matrix& B) {
  const Eigen::Index n = A.rows();
  Matrix k(n, n * B.cols());
  Matrix blk = B;
  for (Eigen::Index i = 0; i < n; ++i) {
    k.middleCols(i * B.cols(), B.cols()) = blk;
    blk = A * blk;
  }
  return numeric_rank(k, kTol);
}

}  // namespace

TEST_CASE("verdict logic") {
  CHECK(verdict_and(Verdict::True, Verdict::True) == Verdict::True);
  CHECK(verdict_and(Verdict::Borderline, Verdict::False) == Verdict::False);
  CHECK(verdict_and(Verdict::True, Verdict::Borderline) == Verdict::Borderline);
  CHECK(to_string(Verdict::Borderline) == "borderline");
  for (Concept c : kAllConcepts) CHECK(concept_from_string(concept_name(c)) == c);
}

TEST_CASE("freely initializable") {
  Rng rng(1);
  CHECK(is_freely_initializable(Matrix::Identity(2, 2), random_matrix(2, 2, Field::Real, rng),
                                random_matrix(2, 1, Field::Real, rng), kTol) == Verdict::True);
  CHECK(is_freely_initializable(scalar(0), scalar(1), scalar(0), kTol) == Verdict::False);
}

TEST_CASE("impulse controllable") {
  CHECK(is_impulse_controllable(scalar(0), scalar(1), scalar(0), kTol) == Verdict::True);
  Matrix E = Matrix::Zero(2, 2), A = Matrix::Zero(2, 2);
  E(0, 0) = 1.0;
  A(1, 0) = 1.0;
  CHECK(is_impulse_controllable(E, A, Matrix::Zero(2, 1), kTol) == Verdict::False);
  CHECK(is_impulse_controllable(Matrix::Identity(2, 2), A, Matrix::Ones(2, 1), kTol) == Verdict::True);
}

TEST_CASE("behavioural and stabilizability predicates") {
  Rng rng(2);
  const Matrix I = Matrix::Identity(2, 2), Z = Matrix::Zero(2, 2);
  CHECK(is_behaviourally_controllable(I, Z, I, kTol, rng) == Verdict::True);
  CHECK(is_completely_controllable(I, Z, I, kTol, rng) == Verdict::True);
  CHECK(is_strongly_controllable(I, Z, I, kTol, rng) == Verdict::True);

  CHECK(is_behaviourally_stabilizable(scalar(1), scalar(-1), scalar(0), kTol, rng) == Verdict::True);
  CHECK(is_behaviourally_controllable(scalar(1), scalar(-1), scalar(0), kTol, rng) == Verdict::False);
  CHECK(is_behaviourally_stabilizable(scalar(1), scalar(1), scalar(0), kTol, rng) == Verdict::False);
  // A drop on the imaginary axis belongs to the closed right half-plane.
  CHECK(is_behaviourally_stabilizable(scalar(1), scalar(0), scalar(0), kTol, rng) == Verdict::False);
}

TEST_CASE("counterexample verdict vector") {
  Rng rng(3);
  for (auto [n, m] : {std::pair<std::size_t, std::size_t>{2, 1}, {2, 2}, {3, 1}}) {
    const ControlReport r = analyze(witness_stab_counterexample(n, m), kTol, rng);
    for (Concept c : kAllConcepts) {
      const bool expect = c == Concept::FreelyInitializable || c == Concept::ImpulseControllable;
      CHECK(r[c] == (expect ? Verdict::True : Verdict::False));
    }
    CHECK(r.imaginary_axis_drop);
    // E has full column rank, so Z is empty and [E, AZ, B] = [E, B].
    CHECK(r.rank_EAZB == r.rank_EB);
    CHECK(r.rank_EB == n + m);
  }
}

TEST_CASE("conservative rotation is completely controllable") {
  PHSystem s;
  s.E = s.Q = Matrix::Identity(2, 2);
  s.J = Matrix::Zero(2, 2);
  s.J(0, 1) = -1.0;
  s.J(1, 0) = 1.0;
  s.R = Matrix::Zero(2, 2);
  s.B = Matrix::Zero(2, 1);
  s.B(0, 0) = 1.0;
  REQUIRE(kalman_rank(s.J * s.Q, s.B) == 2);
  Rng rng(4);
  CHECK(analyze(s, kTol, rng)[Concept::CompletelyControllable] == Verdict::True);
}

TEST_CASE("zero system") {
  PHSystem s;
  s.E = s.Q = s.B = Matrix::Zero(1, 1);
  s.J = s.R = Matrix::Zero(1, 1);
  Rng rng(5);
  const ControlReport r = analyze(s, kTol, rng);
  CHECK(r[Concept::BehaviourallyControllable] == Verdict::True);
  CHECK(r[Concept::FreelyInitializable] == Verdict::True);
}

TEST_CASE("invalid systems are rejected") {
  PHSystem s = witness_stab_counterexample(2, 1);
  s.J(0, 0) = 1.0;
  Rng rng(6);
  CHECK_THROWS_AS(analyze(s, kTol, rng), ValidationError);
}

TEST_CASE("concept implications on random systems") {
  Rng rng(7);
  const std::vector<std::array<std::size_t, 3>> dims = {{3, 2, 2}, {4, 2, 2}, {6, 2, 2}, {2, 3, 1}, {3, 3, 1}};
  for (int t = 0; t < 150; ++t) {
    const auto [l, n, m] = dims[static_cast<std::size_t>(t) % dims.size()];
    const ControlReport r = analyze(sample_system(l, n, m, SystemClass::sdH, Field::Real, rng), kTol, rng);
    REQUIRE_FALSE(r.any_borderline());
    auto T = [&](Concept c) { return r[c] == Verdict::True; };
    CHECK(T(Concept::CompletelyControllable) ==
          (T(Concept::FreelyInitializable) && T(Concept::BehaviourallyControllable)));
    CHECK(T(Concept::StronglyControllable) ==
          (T(Concept::ImpulseControllable) && T(Concept::BehaviourallyControllable)));
    if (T(Concept::CompletelyControllable)) CHECK(T(Concept::CompletelyStabilizable));
    if (T(Concept::StronglyControllable)) CHECK(T(Concept::StronglyStabilizable));
    if (T(Concept::BehaviourallyControllable)) CHECK(T(Concept::BehaviourallyStabilizable));
  }
}

TEST_CASE("integer systems against the exact oracle") {
  Rng rng(8);
  for (int t = 0; t < 60; ++t) {
    const auto d = testing::random_int_dae(rng, 3, 2, 1, -2, 2);
    const ControlReport r = analyze_dae(d.Ed, d.Ad, d.Bd, kTol, rng);
    const oracle::ExactVerdicts ex = oracle::exact_verdicts(d.E, d.A, d.B);
    for (std::size_t k = 0; k < kAllConcepts.size(); ++k) {
      CHECK(r.verdicts[k] == (ex.verdicts[k] ? Verdict::True : Verdict::False));
    }
  }
}
