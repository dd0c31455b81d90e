#include "phgen/phsys.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace phgen {

namespace {

// Smallest eigenvalue accepted for a sampled dH dissipation matrix.
constexpr double kDissipationFloor = 1e-6;

}  // namespace

std::string_view to_string(SystemClass c) {
  switch (c) {
    case SystemClass::H: return "H";
    case SystemClass::sdH: return "sdH";
    case SystemClass::dH: return "dH";
  }
  return "?";
}

SystemClass system_class_from_string(std::string_view name) {
  if (name == "H") return SystemClass::H;
  if (name == "sdH") return SystemClass::sdH;
  if (name == "dH") return SystemClass::dH;
  throw std::invalid_argument("unknown system class '" + std::string(name) + "' (expected H|sdH|dH)");
}

std::string ValidationReport::summary() const {
  std::ostringstream os;
  for (const Violation& v : violations) os << v.constraint << " (residual " << v.residual << ")\n";
  return os.str();
}

ValidationError::ValidationError(ValidationReport report)
    : std::runtime_error("system violates its class constraints:\n" + report.summary()),
      report_(std::move(report)) {}

Eigen::MatrixXd real_part(const Matrix& m) { return m.real(); }

void check_shapes(const PHSystem& s) {
  const Eigen::Index l = s.E.rows();
  const Eigen::Index n = s.E.cols();
  auto need = [](bool ok, const char* what) {
    if (!ok) throw std::invalid_argument(std::string("shape mismatch: ") + what);
  };
  need(l >= 1 && n >= 1, "E must be at least 1 x 1");
  need(s.J.rows() == l && s.J.cols() == l, "J must be l x l");
  need(s.R.rows() == l && s.R.cols() == l, "R must be l x l");
  need(s.Q.rows() == l && s.Q.cols() == n, "Q must have the shape of E");
  need(s.B.rows() == l && s.B.cols() >= 1, "B must be l x m with m >= 1");
}

ValidationReport validate(const PHSystem& s, const TolerancePolicy& tol) {
  check_shapes(s);
  ValidationReport rep;
  auto add = [&](std::string what, double residual) { rep.violations.push_back({std::move(what), residual}); };

  if (s.field == Field::Real) {
    for (const Matrix* m : {&s.E, &s.J, &s.R, &s.Q, &s.B}) {
      if (has_imaginary_part(*m)) {
        add("imaginary entries in a real-field system", m->imag().norm());
        break;
      }
    }
  }

  if (skew_defect(s.J) > tol.match_rel) add("J not skew-Hermitian", (s.J + s.J.adjoint()).norm());

  switch (s.cls) {
    case SystemClass::H:
      if (!(s.R.array() == Complex(0.0)).all()) add("R not zero", s.R.norm());
      break;
    case SystemClass::sdH:
    case SystemClass::dH: {
      const Definiteness d = psd_classify(s.R, tol);
      if (d == Definiteness::NotHermitian) {
        add("R not Hermitian", (s.R - s.R.adjoint()).norm());
        break;
      }
      Eigen::SelfAdjointEigenSolver<Matrix> eig((s.R + s.R.adjoint()) / 2.0, Eigen::EigenvaluesOnly);
      const double lmin = eig.eigenvalues().minCoeff();
      if (s.cls == SystemClass::sdH && !is_psd(d)) add("R not PSD", -lmin);
      if (s.cls == SystemClass::dH && d != Definiteness::PositiveDefinite) add("R not PD", tol.psd_abs - lmin);
      break;
    }
  }

  const Matrix EQ = s.E.adjoint() * s.Q;
  const Definiteness d = psd_classify(EQ, tol);
  if (d == Definiteness::NotHermitian) {
    add("E*Q not Hermitian", (EQ - EQ.adjoint()).norm());
  } else if (!is_psd(d)) {
    Eigen::SelfAdjointEigenSolver<Matrix> eig((EQ + EQ.adjoint()) / 2.0, Eigen::EigenvaluesOnly);
    add("E*Q not PSD", -eig.eigenvalues().minCoeff());
  }
  return rep;
}

namespace {

struct Svd {
  Matrix U;
  Matrix V;
  RealVector s;
};

// Full SVD; a real input stays real.
Svd full_svd(const Matrix& m) {
  Svd out;
  if (!has_imaginary_part(m)) {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(real_part(m), Eigen::ComputeFullU | Eigen::ComputeFullV);
    out.U = svd.matrixU().cast<Complex>();
    out.V = svd.matrixV().cast<Complex>();
    out.s = svd.singularValues();
  } else {
    Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
    out.U = svd.matrixU();
    out.V = svd.matrixV();
    out.s = svd.singularValues();
  }
  return out;
}

}  // namespace

StructuredForm structured_form(const Matrix& E, const Matrix& Q, const TolerancePolicy& tol) {
  if (E.rows() != Q.rows() || E.cols() != Q.cols()) {
    throw std::invalid_argument("structured_form: E and Q must have the same shape");
  }
  const Matrix EQ = E.adjoint() * Q;
  if (hermitian_defect(EQ) > tol.match_rel) {
    throw std::invalid_argument("structured_form: E^*Q is not Hermitian");
  }
  const Svd svd = full_svd(E);
  const auto k = static_cast<Eigen::Index>(numeric_rank(E, tol));
  const Eigen::Index l = E.rows();
  const Eigen::Index n = E.cols();

  StructuredForm f;
  f.P = svd.U.adjoint();
  f.T = svd.V;
  f.sigma = svd.s.head(k);
  const Matrix PQT = f.P * Q * f.T;
  f.Qtilde = PQT.topLeftCorner(k, k);
  f.R1 = PQT.bottomLeftCorner(l - k, k);
  f.R2 = PQT.bottomRightCorner(l - k, n - k);
  f.offblock = PQT.topRightCorner(k, n - k).norm();
  return f;
}

Matrix reassemble_Q(const StructuredForm& f) {
  const Eigen::Index k = f.sigma.size();
  const Eigen::Index l = f.P.rows();
  const Eigen::Index n = f.T.rows();
  Matrix blocks = Matrix::Zero(l, n);
  blocks.topLeftCorner(k, k) = f.Qtilde;
  blocks.bottomLeftCorner(l - k, k) = f.R1;
  blocks.bottomRightCorner(l - k, n - k) = f.R2;
  return f.P.adjoint() * blocks * f.T.adjoint();
}

PHSystem sample_system(std::size_t l, std::size_t n, std::size_t m, SystemClass cls, Field field, Rng& rng) {
  if (l == 0 || n == 0 || m == 0) throw std::invalid_argument("sample_system: dimensions must be >= 1");
  const std::size_t k = std::min(l, n);
  const auto K = static_cast<Eigen::Index>(k);
  const auto L = static_cast<Eigen::Index>(l);
  const auto N = static_cast<Eigen::Index>(n);

  PHSystem s;
  s.cls = cls;
  s.field = field;
  s.E = random_matrix(l, n, field, rng);
  const Svd svd = full_svd(s.E);

  // Sigma * Qtilde = G^* G is Hermitian PSD by construction.
  const Matrix G = random_matrix(k, k, field, rng);
  const Matrix M = G.adjoint() * G;
  const Matrix Qtilde = svd.s.head(K).cwiseInverse().cast<Complex>().asDiagonal() * M;
  const Matrix R1 = random_matrix(l - k, k, field, rng);
  const Matrix R2 = random_matrix(l - k, n - k, field, rng);
  Matrix blocks = Matrix::Zero(L, N);
  blocks.topLeftCorner(K, K) = Qtilde;
  blocks.bottomLeftCorner(L - K, K) = R1;
  blocks.bottomRightCorner(L - K, N - K) = R2;
  s.Q = svd.U * blocks * svd.V.adjoint();

  const Matrix GJ = random_matrix(l, l, field, rng);
  s.J = (GJ - GJ.adjoint()) / 2.0;

  switch (cls) {
    case SystemClass::H:
      s.R = Matrix::Zero(L, L);
      break;
    case SystemClass::sdH: {
      // Random row count so that rank-deficient dissipation is sampled too.
      std::uniform_int_distribution<std::size_t> rows(0, l);
      const Matrix GR = random_matrix(rows(rng), l, field, rng);
      s.R = GR.adjoint() * GR;
      if (GR.rows() == 0) s.R = Matrix::Zero(L, L);
      break;
    }
    case SystemClass::dH: {
      // G^* G is PD almost surely, but a nearly singular draw would fail the
      // PD check at its tolerance, so such draws are redone.
      for (int attempt = 0;; ++attempt) {
        const Matrix GR = random_matrix(l, l, field, rng);
        s.R = GR.adjoint() * GR;
        Eigen::SelfAdjointEigenSolver<Matrix> eig(s.R, Eigen::EigenvaluesOnly);
        if (eig.eigenvalues().minCoeff() > kDissipationFloor) break;
        if (attempt == 1000) throw std::logic_error("sample_system: no positive definite dissipation drawn");
      }
      break;
    }
  }
  s.B = random_matrix(l, m, field, rng);
  return s;
}

Matrix perturb_to_definite(const Matrix& E, const Matrix& Q, double eps, const TolerancePolicy& tol) {
  if (!(eps > 0.0)) throw std::invalid_argument("perturb_to_definite: eps must be positive");
  if (E.rows() != Q.rows() || E.cols() != Q.cols()) {
    throw std::invalid_argument("perturb_to_definite: E and Q must have the same shape");
  }
  if (E.rows() < E.cols() || numeric_rank(E, tol) != static_cast<std::size_t>(E.cols())) {
    throw std::invalid_argument("perturb_to_definite: E must have full column rank");
  }
  const Matrix EQ = E.adjoint() * Q;
  const Definiteness d = psd_classify(EQ, tol);
  if (d == Definiteness::NotHermitian) throw std::invalid_argument("perturb_to_definite: E^*Q is not Hermitian");
  if (d == Definiteness::Indefinite) throw std::invalid_argument("perturb_to_definite: E^*Q is not PSD");
  if (d == Definiteness::PositiveDefinite) return Q;

  Eigen::SelfAdjointEigenSolver<Matrix> eig((EQ + EQ.adjoint()) / 2.0);
  RealVector mask = RealVector::Zero(eig.eigenvalues().size());
  for (Eigen::Index i = 0; i < mask.size(); ++i) {
    if (eig.eigenvalues()(i) <= tol.psd_abs) mask(i) = 1.0;
  }
  const Matrix& O = eig.eigenvectors();
  const Matrix D = O * mask.cast<Complex>().asDiagonal() * O.adjoint();

  // Minimum-norm solution of E^* Delta = D.
  const Matrix gram = E.adjoint() * E;
  const Matrix delta = E * gram.ldlt().solve(D);
  return Q + (eps / (2.0 * spectral_norm(delta))) * delta;
}

DAE to_dae(const PHSystem& s) {
  check_shapes(s);
  if (s.cls == SystemClass::H) return {s.E, s.J * s.Q, s.B};
  return {s.E, (s.J - s.R) * s.Q, s.B};
}

}  // namespace phgen
