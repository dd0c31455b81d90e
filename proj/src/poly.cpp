#include "phgen/poly.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/LU>

namespace phgen {

namespace {

void drop_trailing(std::vector<Complex>& c, double threshold) {
  while (c.size() > 1 && std::abs(c.back()) <= threshold) c.pop_back();
  if (c.empty()) c.push_back(0.0);
  if (c.size() == 1 && std::abs(c[0]) <= threshold) c[0] = 0.0;
}

Complex lu_det(const Matrix& m) {
  if (m.rows() == 0) return 1.0;
  return Eigen::PartialPivLU<Matrix>(m).determinant();
}

}  // namespace

Polynomial::Polynomial() : c_{Complex(0.0)} {}

Polynomial::Polynomial(Raw, std::vector<Complex> coeffs) : c_(std::move(coeffs)) {
  if (c_.empty()) c_.push_back(0.0);
}

Polynomial::Polynomial(std::vector<Complex> coeffs, double trim_rel) : c_(std::move(coeffs)) {
  double big = 0.0;
  for (const Complex& v : c_) big = std::max(big, std::abs(v));
  drop_trailing(c_, trim_rel * big);
}

Polynomial Polynomial::with_abs_threshold(std::vector<Complex> coeffs, double abs_threshold) {
  for (Complex& v : coeffs) {
    if (std::abs(v) <= abs_threshold) v = 0.0;
  }
  drop_trailing(coeffs, 0.0);
  return Polynomial(Raw{}, std::move(coeffs));
}

Polynomial Polynomial::from_roots(const std::vector<Complex>& roots, Complex lead) {
  std::vector<Complex> c{lead};
  for (const Complex& r : roots) {
    std::vector<Complex> next(c.size() + 1, 0.0);
    for (std::size_t i = 0; i < c.size(); ++i) {
      next[i + 1] += c[i];
      next[i] -= r * c[i];
    }
    c = std::move(next);
  }
  return Polynomial(Raw{}, std::move(c));
}

double Polynomial::norm() const {
  double s = 0.0;
  for (const Complex& v : c_) s += std::norm(v);
  return std::sqrt(s);
}

Complex Polynomial::operator()(Complex x) const {
  Complex acc = 0.0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero() || b.is_zero()) return Polynomial();
  std::vector<Complex> c(a.c_.size() + b.c_.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
  }
  return Polynomial(Polynomial::Raw{}, std::move(c));
}

Matrix sylvester_matrix(const Polynomial& p, const Polynomial& q) {
  const auto dp = static_cast<Eigen::Index>(p.degree());
  const auto dq = static_cast<Eigen::Index>(q.degree());
  Matrix s = Matrix::Zero(dp + dq, dp + dq);
  for (Eigen::Index j = 0; j < dq; ++j) {
    for (Eigen::Index i = 0; i <= dp; ++i) s(i + j, j) = p.coeff(static_cast<std::size_t>(i));
  }
  for (Eigen::Index j = 0; j < dp; ++j) {
    for (Eigen::Index i = 0; i <= dq; ++i) s(i + j, dq + j) = q.coeff(static_cast<std::size_t>(i));
  }
  return s;
}

Complex sylvester_resultant(const Polynomial& p, const Polynomial& q) {
  if (p.is_zero() || q.is_zero()) {
    throw std::invalid_argument("sylvester_resultant: zero polynomial");
  }
  if (p.degree() + q.degree() == 0) {
    throw std::invalid_argument("sylvester_resultant: both polynomials are constant");
  }
  return lu_det(sylvester_matrix(p, q));
}

double normalized_resultant(const Polynomial& p, const Polynomial& q) {
  const Complex res = sylvester_resultant(p, q);
  const double scale = std::pow(p.norm(), static_cast<double>(q.degree())) *
                       std::pow(q.norm(), static_cast<double>(p.degree()));
  return std::abs(res) / scale;
}

bool resultant_vanishes(const Polynomial& p, const Polynomial& q, double zero_rel) {
  return normalized_resultant(p, q) <= zero_rel;
}

std::vector<Complex> poly_roots(const Polynomial& p) {
  if (p.degree() == 0) throw std::invalid_argument("poly_roots: constant polynomial");
  const auto& c = p.coeffs();

  // Exact zero roots are split off so they do not scatter.
  std::size_t zeros = 0;
  while (c[zeros] == Complex(0.0)) ++zeros;
  std::vector<Complex> roots(zeros, Complex(0.0));

  const auto deg = static_cast<Eigen::Index>(c.size() - 1 - zeros);
  if (deg == 0) return roots;

  Matrix companion = Matrix::Zero(deg, deg);
  const Complex lead = c.back();
  for (Eigen::Index j = 0; j < deg; ++j) {
    companion(0, j) = -c[c.size() - 2 - static_cast<std::size_t>(j)] / lead;
  }
  for (Eigen::Index i = 1; i < deg; ++i) companion(i, i - 1) = 1.0;

  Eigen::ComplexEigenSolver<Matrix> eig(companion, false);
  if (eig.info() != Eigen::Success) throw std::runtime_error("poly_roots: eigensolver failed");
  for (Eigen::Index i = 0; i < deg; ++i) roots.push_back(eig.eigenvalues()(i));
  return roots;
}

Polynomial interp_det(const MatrixFunction& evaluate, std::size_t size, std::size_t degree_bound,
                      double abs_threshold) {
  return interp_det(evaluate, size, degree_bound, 1.0, 0.0, abs_threshold);
}

Polynomial interp_det(const MatrixFunction& evaluate, std::size_t size, std::size_t degree_bound,
                      double radius, double phase, double abs_threshold) {
  if (!(radius > 0.0)) throw std::invalid_argument("interp_det: radius must be positive");
  const std::size_t count = degree_bound + 1;
  const double step = 2.0 * std::numbers::pi / static_cast<double>(count);

  std::vector<Complex> nodes(count);
  std::vector<Complex> values(count);
  for (std::size_t k = 0; k < count; ++k) {
    nodes[k] = std::polar(radius, step * static_cast<double>(k) + phase);
    const Matrix m = evaluate(nodes[k]);
    if (static_cast<std::size_t>(m.rows()) != size || static_cast<std::size_t>(m.cols()) != size) {
      throw std::invalid_argument("interp_det: evaluate returned a matrix of the wrong size");
    }
    values[k] = lu_det(m);
  }

  // Inverse DFT on the scaled, rotated circle.
  std::vector<Complex> coeffs(count, 0.0);
  for (std::size_t j = 0; j < count; ++j) {
    Complex acc = 0.0;
    for (std::size_t k = 0; k < count; ++k) {
      acc += values[k] * std::pow(nodes[k], -static_cast<double>(j));
    }
    coeffs[j] = acc / static_cast<double>(count);
  }
  if (abs_threshold > 0.0) return Polynomial::with_abs_threshold(std::move(coeffs), abs_threshold);
  return Polynomial(std::move(coeffs));
}

namespace {

void check_indices(const std::vector<std::size_t>& idx, std::size_t limit, const char* what) {
  for (std::size_t i = 0; i < idx.size(); ++i) {
    if (idx[i] >= limit) throw std::out_of_range(std::string("minor_of_pencil: ") + what + " index out of range");
    if (i > 0 && idx[i] <= idx[i - 1]) {
      throw std::invalid_argument(std::string("minor_of_pencil: ") + what + " indices not strictly increasing");
    }
  }
}

}  // namespace

Polynomial minor_of_pencil(const Matrix& E, const Matrix& A, const Matrix& B,
                           const std::vector<std::size_t>& rows,
                           const std::vector<std::size_t>& cols) {
  if (E.rows() != A.rows() || E.cols() != A.cols() || B.rows() != E.rows()) {
    throw std::invalid_argument("minor_of_pencil: E, A, B are not conformable");
  }
  if (rows.size() != cols.size() || rows.empty()) {
    throw std::invalid_argument("minor_of_pencil: index lists must have equal nonzero length");
  }
  const auto l = static_cast<std::size_t>(E.rows());
  const auto n = static_cast<std::size_t>(E.cols());
  const auto m = static_cast<std::size_t>(B.cols());
  check_indices(rows, l, "row");
  check_indices(cols, n + m, "column");

  const auto d = static_cast<Eigen::Index>(rows.size());
  Matrix Es = Matrix::Zero(d, d);
  Matrix Ns = Matrix::Zero(d, d);  // the x^0 part of [xE - A, B]
  std::size_t e_cols = 0;
  for (Eigen::Index j = 0; j < d; ++j) {
    const auto c = static_cast<Eigen::Index>(cols[static_cast<std::size_t>(j)]);
    const bool in_e = static_cast<std::size_t>(c) < n;
    if (in_e) ++e_cols;
    for (Eigen::Index i = 0; i < d; ++i) {
      const auto r = static_cast<Eigen::Index>(rows[static_cast<std::size_t>(i)]);
      if (in_e) {
        Es(i, j) = E(r, c);
        Ns(i, j) = -A(r, c);
      } else {
        Ns(i, j) = B(r, c - static_cast<Eigen::Index>(n));
      }
    }
  }

  // Hadamard bound for |det| on the unit circle; roundoff in the
  // interpolated coefficients sits far below it.
  double scale = 1.0;
  for (Eigen::Index i = 0; i < d; ++i) scale *= Es.row(i).norm() + Ns.row(i).norm();
  if (scale == 0.0) return Polynomial();

  const double threshold = 1e-11 * scale;
  auto eval = [&](Complex x) -> Matrix { return x * Es + Ns; };
  Polynomial p = interp_det(eval, rows.size(), rows.size(), threshold);
  std::vector<Complex> c = p.coeffs();
  if (c.size() > e_cols + 1) c.resize(e_cols + 1);
  return Polynomial::with_abs_threshold(std::move(c), threshold);
}

}  // namespace phgen
