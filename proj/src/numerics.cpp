#include "phgen/numerics.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include <Eigen/SVD>

namespace phgen {

std::string_view to_string(Field field) {
  return field == Field::Real ? "real" : "complex";
}

Field field_from_string(std::string_view name) {
  if (name == "real") return Field::Real;
  if (name == "complex") return Field::Complex;
  throw std::invalid_argument("unknown field '" + std::string(name) + "' (expected real|complex)");
}

void TolerancePolicy::validate() const {
  auto check = [](double v, const char* name) {
    if (!(v > 0.0 && v < 1.0)) {
      throw std::invalid_argument(std::string("tolerance ") + name + " must lie in (0, 1)");
    }
  };
  check(rank_rel, "rank_rel");
  check(psd_abs, "psd_abs");
  check(boundary_re, "boundary_re");
  check(match_rel, "match_rel");
}

RankInfo rank_info(const Matrix& m, const TolerancePolicy& tol) { return rank_info(m, tol, 0.0); }

RankInfo rank_info(const Matrix& m, const TolerancePolicy& tol, double reference) {
  RankInfo info;
  if (m.rows() == 0 || m.cols() == 0) return info;

  Eigen::JacobiSVD<Matrix> svd(m);
  info.singular_values = svd.singularValues();
  const double smax = std::max(info.singular_values.size() > 0 ? info.singular_values(0) : 0.0, reference);
  if (smax == 0.0) return info;

  const auto dim = static_cast<double>(std::max(m.rows(), m.cols()));
  info.cutoff = tol.rank_rel * dim * smax;
  for (Eigen::Index i = 0; i < info.singular_values.size(); ++i) {
    const double s = info.singular_values(i);
    if (s > info.cutoff) ++info.rank;
    if (s > info.cutoff / 10.0 && s < info.cutoff * 10.0) info.ambiguous = true;
  }
  return info;
}

std::size_t numeric_rank(const Matrix& m, const TolerancePolicy& tol) {
  return rank_info(m, tol).rank;
}

Matrix kernel_basis(const Matrix& m, const TolerancePolicy& tol) {
  const Eigen::Index n = m.cols();
  if (m.rows() == 0) return Matrix::Identity(n, n);
  Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeFullV);
  const auto r = static_cast<Eigen::Index>(rank_info(m, tol).rank);
  return svd.matrixV().rightCols(n - r);
}

std::string_view to_string(Definiteness d) {
  switch (d) {
    case Definiteness::PositiveDefinite: return "PositiveDefinite";
    case Definiteness::PositiveSemidefinite: return "PositiveSemidefinite";
    case Definiteness::Indefinite: return "Indefinite";
    case Definiteness::NotHermitian: return "NotHermitian";
  }
  return "?";
}

double hermitian_defect(const Matrix& m) {
  return (m - m.adjoint()).norm() / std::max(1.0, m.norm());
}

double skew_defect(const Matrix& m) {
  return (m + m.adjoint()).norm() / std::max(1.0, m.norm());
}

Definiteness psd_classify(const Matrix& m, const TolerancePolicy& tol) {
  if (m.rows() != m.cols()) throw std::invalid_argument("psd_classify: matrix is not square");
  if (m.rows() == 0) return Definiteness::PositiveDefinite;
  if (hermitian_defect(m) > tol.match_rel) return Definiteness::NotHermitian;

  const Matrix h = (m + m.adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<Matrix> eig(h, Eigen::EigenvaluesOnly);
  const double lmin = eig.eigenvalues().minCoeff();
  if (lmin > tol.psd_abs) return Definiteness::PositiveDefinite;
  if (lmin >= -tol.psd_abs) return Definiteness::PositiveSemidefinite;
  return Definiteness::Indefinite;
}

bool is_psd(Definiteness d) {
  return d == Definiteness::PositiveDefinite || d == Definiteness::PositiveSemidefinite;
}

Matrix random_matrix(std::size_t rows, std::size_t cols, Field field, Rng& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Matrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  // Column-major fill order is part of the determinism contract.
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      const double re = gauss(rng);
      const double im = field == Field::Complex ? gauss(rng) : 0.0;
      m(i, j) = Complex(re, im);
    }
  }
  return m;
}

bool has_imaginary_part(const Matrix& m) {
  return (m.imag().array() != 0.0).any();
}

double spectral_norm(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<Matrix> svd(m);
  return svd.singularValues()(0);
}

Matrix hcat(std::initializer_list<const Matrix*> blocks) {
  Eigen::Index rows = -1;
  Eigen::Index cols = 0;
  for (const Matrix* b : blocks) {
    if (rows < 0) rows = b->rows();
    if (b->rows() != rows) throw std::invalid_argument("hcat: row counts differ");
    cols += b->cols();
  }
  Matrix out(std::max<Eigen::Index>(rows, 0), cols);
  Eigen::Index at = 0;
  for (const Matrix* b : blocks) {
    out.middleCols(at, b->cols()) = *b;
    at += b->cols();
  }
  return out;
}

Matrix project_psd(const Matrix& m) {
  const Matrix h = (m + m.adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<Matrix> eig(h);
  const RealVector clipped = eig.eigenvalues().cwiseMax(0.0);
  return eig.eigenvectors() * clipped.cast<Complex>().asDiagonal() * eig.eigenvectors().adjoint();
}

std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b) {
  std::uint64_t z = a + 0x9E3779B97F4A7C15ULL * (b + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace phgen
