#pragma once

// Exact reference computations over Q and Q(i) for small instances.

#include <array>
#include <cstddef>
#include <string_view>
#include <vector>

#include <gmpxx.h>

#include "phgen/numerics.hpp"
#include "phgen/pencil.hpp"

namespace phgen::oracle {

using Rational = mpq_class;

/// Gaussian rational re + i im.
struct QI {
  Rational re;
  Rational im;

  QI() = default;
  QI(long v) : re(v), im(0) {}  // NOLINT: implicit on purpose
  QI(Rational r, Rational i = 0) : re(std::move(r)), im(std::move(i)) {}

  bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }
  bool is_real() const { return sgn(im) == 0; }
  QI conj() const { return {re, -im}; }
  Complex to_complex() const { return {re.get_d(), im.get_d()}; }
};

QI operator+(const QI& a, const QI& b);
QI operator-(const QI& a, const QI& b);
QI operator-(const QI& a);
QI operator*(const QI& a, const QI& b);
QI operator/(const QI& a, const QI& b);
bool operator==(const QI& a, const QI& b);

class RationalMatrix {
 public:
  RationalMatrix() = default;
  RationalMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static RationalMatrix from_integers(const std::vector<std::vector<long>>& rows, std::size_t cols = 0);
  /// Exact: every double is a dyadic rational.
  static RationalMatrix from_matrix(const Matrix& m);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  QI& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const QI& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  Matrix to_matrix() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<QI> data_;
};

RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b);
RationalMatrix hcat(const std::vector<const RationalMatrix*>& blocks);

class RationalPoly {
 public:
  RationalPoly() = default;  // zero
  explicit RationalPoly(std::vector<QI> coeffs);
  static RationalPoly constant(QI c);
  static RationalPoly x();

  bool is_zero() const { return c_.empty(); }
  /// -1 for the zero polynomial.
  long degree() const { return static_cast<long>(c_.size()) - 1; }
  const std::vector<QI>& coeffs() const { return c_; }
  QI coeff(std::size_t i) const { return i < c_.size() ? c_[i] : QI(0); }
  QI leading() const { return c_.back(); }
  bool is_real() const;
  RationalPoly conj() const;
  RationalPoly monic() const;
  std::vector<Complex> to_complex() const;

  friend RationalPoly operator+(const RationalPoly& a, const RationalPoly& b);
  friend RationalPoly operator-(const RationalPoly& a, const RationalPoly& b);
  friend RationalPoly operator*(const RationalPoly& a, const RationalPoly& b);
  friend bool operator==(const RationalPoly& a, const RationalPoly& b) { return a.c_ == b.c_; }

 private:
  void normalize();
  std::vector<QI> c_;
};

/// Quotient and remainder; throws std::domain_error on a zero divisor.
std::pair<RationalPoly, RationalPoly> divmod(const RationalPoly& a, const RationalPoly& b);

/// Monic gcd; gcd(0, 0) = 0.
RationalPoly exact_gcd(const RationalPoly& a, const RationalPoly& b);

std::size_t exact_rank(const RationalMatrix& m);

/// Basis of ker M as columns (from the reduced row echelon form).
RationalMatrix exact_kernel(const RationalMatrix& m);

QI exact_det(const RationalMatrix& m);

/// Fraction-free determinant of the polynomial submatrix of [xE - A, B].
RationalPoly exact_minor(const RationalMatrix& E, const RationalMatrix& A, const RationalMatrix& B,
                         const MinorIndex& idx);

/// Maximum exact rank of [xE - A, B] over the points x = 0, 1, ..., n.
std::size_t exact_generic_rank(const RationalMatrix& E, const RationalMatrix& A, const RationalMatrix& B);

inline constexpr std::size_t kMaxMinors = 10000;

/// Monic gcd of all order-r minors. Throws std::length_error above
/// kMaxMinors minors. r = 0 gives the constant 1.
RationalPoly exact_pencil_gcd(const RationalMatrix& E, const RationalMatrix& A, const RationalMatrix& B,
                              std::size_t r);
std::size_t exact_pencil_gcd_degree(const RationalMatrix& E, const RationalMatrix& A, const RationalMatrix& B,
                                    std::size_t r);

/// Throws std::invalid_argument for a zero input or two constants.
QI exact_resultant(const RationalPoly& p, const RationalPoly& q);

enum class HalfPlane { AllLeft, HasClosedRightRoot, Boundary };
std::string_view to_string(HalfPlane h);

/// Routh-Hurwitz tabulation. Complex coefficients are handled through
/// g * conj(g), which has the same root real parts.
HalfPlane exact_half_plane_free(const RationalPoly& g);

struct ExactVerdicts {
  /// Indexed like phgen::kAllConcepts.
  std::array<bool, 8> verdicts{};
  std::size_t rank_EB = 0;
  std::size_t rank_EAB = 0;
  std::size_t rank_EAZB = 0;
  std::size_t generic_rank = 0;
  RationalPoly gcd;
  /// The Routh table degenerated; counted as not stabilizable.
  bool boundary = false;
};

/// Literal recoding of the rank and root characterizations.
ExactVerdicts exact_verdicts(const RationalMatrix& E, const RationalMatrix& A, const RationalMatrix& B);

}  // namespace phgen::oracle
