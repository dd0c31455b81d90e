#pragma once

// Univariate complex polynomials and determinants of polynomial matrices.

#include <cstddef>
#include <functional>
#include <vector>

#include "phgen/numerics.hpp"

namespace phgen {

/// Default relative trimming threshold for trailing coefficients.
inline constexpr double kPolyTrimRel = 1e-12;

/// Normalized resultants at or below this value count as zero.
inline constexpr double kResultantZeroRel = 1e-12;

class Polynomial {
 public:
  /// The zero polynomial.
  Polynomial();

  /// Trailing coefficients with |c| <= trim_rel * max|c| are dropped.
  explicit Polynomial(std::vector<Complex> coeffs, double trim_rel = kPolyTrimRel);

  /// Every coefficient with |c| <= abs_threshold is set to zero, then
  /// trailing zeros are dropped.
  static Polynomial with_abs_threshold(std::vector<Complex> coeffs, double abs_threshold);

  static Polynomial from_roots(const std::vector<Complex>& roots, Complex lead = 1.0);

  /// Coefficient i multiplies x^i. The zero polynomial is {0}.
  const std::vector<Complex>& coeffs() const { return c_; }
  Complex coeff(std::size_t i) const { return i < c_.size() ? c_[i] : Complex(0.0); }

  bool is_zero() const { return c_.size() == 1 && c_[0] == Complex(0.0); }
  /// Degree; 0 for constants including the zero polynomial.
  std::size_t degree() const { return c_.size() - 1; }
  Complex leading() const { return c_.back(); }
  /// Euclidean norm of the coefficient vector.
  double norm() const;

  Complex operator()(Complex x) const;

  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);

 private:
  struct Raw {};
  Polynomial(Raw, std::vector<Complex> coeffs);
  std::vector<Complex> c_;
};

/// Sylvester matrix of size deg p + deg q: deg q shifted columns of p
/// coefficients followed by deg p shifted columns of q coefficients.
Matrix sylvester_matrix(const Polynomial& p, const Polynomial& q);

/// Throws std::invalid_argument for a zero input or two constants.
Complex sylvester_resultant(const Polynomial& p, const Polynomial& q);

/// |res(p, q)| / (|p|^deg q * |q|^deg p). Lies in [0, 1] by Hadamard.
double normalized_resultant(const Polynomial& p, const Polynomial& q);

bool resultant_vanishes(const Polynomial& p, const Polynomial& q,
                        double zero_rel = kResultantZeroRel);

/// All deg p roots with multiplicity, from the companion matrix.
/// Throws std::invalid_argument for constants.
std::vector<Complex> poly_roots(const Polynomial& p);

using MatrixFunction = std::function<Matrix(Complex)>;

/// Interpolates det(evaluate(x)) from degree_bound + 1 roots of unity.
/// abs_threshold > 0 selects absolute coefficient cleaning instead of the
/// default relative trim.
Polynomial interp_det(const MatrixFunction& evaluate, std::size_t size,
                      std::size_t degree_bound, double abs_threshold = 0.0);

/// Same with nodes radius * exp(i (2 pi k / N + phase)).
Polynomial interp_det(const MatrixFunction& evaluate, std::size_t size,
                      std::size_t degree_bound, double radius, double phase,
                      double abs_threshold);

/// Order-d minor of [xE - A, B] on 0-based row and column index lists.
/// Coefficients above the number of selected E columns are structurally zero
/// and are cleared.
Polynomial minor_of_pencil(const Matrix& E, const Matrix& A, const Matrix& B,
                           const std::vector<std::size_t>& rows,
                           const std::vector<std::size_t>& cols);

}  // namespace phgen
