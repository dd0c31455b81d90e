#include "phgen/oracle.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

namespace phgen::oracle {

QI operator+(const QI& a, const QI& b) { return {a.re + b.re, a.im + b.im}; }
QI operator-(const QI& a, const QI& b) { return {a.re - b.re, a.im - b.im}; }
QI operator-(const QI& a) { return {-a.re, -a.im}; }

QI operator*(const QI& a, const QI& b) {
  if (a.is_real() && b.is_real()) return {a.re * b.re, 0};
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

QI operator/(const QI& a, const QI& b) {
  if (b.is_zero()) throw std::domain_error("division by zero");
  if (b.is_real()) return {a.re / b.re, a.im / b.re};
  const Rational den = b.re * b.re + b.im * b.im;
  return {(a.re * b.re + a.im * b.im) / den, (a.im * b.re - a.re * b.im) / den};
}

bool operator==(const QI& a, const QI& b) { return a.re == b.re && a.im == b.im; }

// ---------------------------------------------------------------------------

RationalMatrix RationalMatrix::from_integers(const std::vector<std::vector<long>>& rows, std::size_t cols) {
  if (!rows.empty()) cols = rows.front().size();
  RationalMatrix m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw std::invalid_argument("from_integers: ragged rows");
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = QI(rows[i][j]);
  }
  return m;
}

RationalMatrix RationalMatrix::from_matrix(const Matrix& src) {
  RationalMatrix m(static_cast<std::size_t>(src.rows()), static_cast<std::size_t>(src.cols()));
  for (Eigen::Index i = 0; i < src.rows(); ++i) {
    for (Eigen::Index j = 0; j < src.cols(); ++j) {
      const Complex v = src(i, j);
      m(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = QI(Rational(v.real()), Rational(v.imag()));
    }
  }
  return m;
}

Matrix RationalMatrix::to_matrix() const {
  Matrix m(static_cast<Eigen::Index>(rows_), static_cast<Eigen::Index>(cols_));
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) {
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = (*this)(i, j).to_complex();
    }
  }
  return m;
}

RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("RationalMatrix product: shape mismatch");
  RationalMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < b.cols(); ++j) {
      QI acc(0);
      for (std::size_t k = 0; k < a.cols(); ++k) acc = acc + a(i, k) * b(k, j);
      c(i, j) = acc;
    }
  }
  return c;
}

RationalMatrix hcat(const std::vector<const RationalMatrix*>& blocks) {
  if (blocks.empty()) return {};
  const std::size_t rows = blocks.front()->rows();
  std::size_t cols = 0;
  for (const RationalMatrix* b : blocks) {
    if (b->rows() != rows) throw std::invalid_argument("hcat: row counts differ");
    cols += b->cols();
  }
  RationalMatrix out(rows, cols);
  std::size_t at = 0;
  for (const RationalMatrix* b : blocks) {
    for (std::size_t i = 0; i < rows; ++i) {
      for (std::size_t j = 0; j < b->cols(); ++j) out(i, at + j) = (*b)(i, j);
    }
    at += b->cols();
  }
  return out;
}

// ---------------------------------------------------------------------------

RationalPoly::RationalPoly(std::vector<QI> coeffs) : c_(std::move(coeffs)) { normalize(); }

RationalPoly RationalPoly::constant(QI c) { return RationalPoly(std::vector<QI>{std::move(c)}); }

RationalPoly RationalPoly::x() { return RationalPoly(std::vector<QI>{QI(0), QI(1)}); }

void RationalPoly::normalize() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

bool RationalPoly::is_real() const {
  return std::all_of(c_.begin(), c_.end(), [](const QI& v) { return v.is_real(); });
}

RationalPoly RationalPoly::conj() const {
  std::vector<QI> c;
  c.reserve(c_.size());
  for (const QI& v : c_) c.push_back(v.conj());
  return RationalPoly(std::move(c));
}

RationalPoly RationalPoly::monic() const {
  if (is_zero()) return *this;
  const QI lead = leading();
  std::vector<QI> c;
  c.reserve(c_.size());
  for (const QI& v : c_) c.push_back(v / lead);
  return RationalPoly(std::move(c));
}

std::vector<Complex> RationalPoly::to_complex() const {
  std::vector<Complex> out;
  for (const QI& v : c_) out.push_back(v.to_complex());
  if (out.empty()) out.push_back(0.0);
  return out;
}

RationalPoly operator+(const RationalPoly& a, const RationalPoly& b) {
  std::vector<QI> c(std::max(a.c_.size(), b.c_.size()), QI(0));
  for (std::size_t i = 0; i < a.c_.size(); ++i) c[i] = c[i] + a.c_[i];
  for (std::size_t i = 0; i < b.c_.size(); ++i) c[i] = c[i] + b.c_[i];
  return RationalPoly(std::move(c));
}

RationalPoly operator-(const RationalPoly& a, const RationalPoly& b) {
  std::vector<QI> c(std::max(a.c_.size(), b.c_.size()), QI(0));
  for (std::size_t i = 0; i < a.c_.size(); ++i) c[i] = c[i] + a.c_[i];
  for (std::size_t i = 0; i < b.c_.size(); ++i) c[i] = c[i] - b.c_[i];
  return RationalPoly(std::move(c));
}

RationalPoly operator*(const RationalPoly& a, const RationalPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<QI> c(a.c_.size() + b.c_.size() - 1, QI(0));
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] = c[i + j] + a.c_[i] * b.c_[j];
  }
  return RationalPoly(std::move(c));
}

std::pair<RationalPoly, RationalPoly> divmod(const RationalPoly& a, const RationalPoly& b) {
  if (b.is_zero()) throw std::domain_error("polynomial division by zero");
  if (a.degree() < b.degree()) return {RationalPoly(), a};
  std::vector<QI> rem = a.coeffs();
  const auto db = static_cast<std::size_t>(b.degree());
  std::vector<QI> quot(rem.size() - db, QI(0));
  const QI lead = b.leading();
  for (std::size_t k = quot.size(); k-- > 0;) {
    const QI f = rem[k + db] / lead;
    quot[k] = f;
    if (f.is_zero()) continue;
    for (std::size_t j = 0; j <= db; ++j) rem[k + j] = rem[k + j] - f * b.coeffs()[j];
  }
  rem.resize(db);
  return {RationalPoly(std::move(quot)), RationalPoly(std::move(rem))};
}

RationalPoly exact_gcd(const RationalPoly& a, const RationalPoly& b) {
  RationalPoly u = a.monic();
  RationalPoly v = b.monic();
  while (!v.is_zero()) {
    RationalPoly r = divmod(u, v).second;
    u = std::move(v);
    v = r.monic();
  }
  return u.monic();
}

// ---------------------------------------------------------------------------

namespace {

// Fraction-free row reduction to echelon form; returns the rank.
std::size_t bareiss_echelon(std::vector<std::vector<QI>>& a, std::size_t cols, int* sign = nullptr) {
  const std::size_t rows = a.size();
  std::size_t rank = 0;
  QI prev(1);
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t p = rank;
    while (p < rows && a[p][c].is_zero()) ++p;
    if (p == rows) continue;
    if (p != rank) {
      std::swap(a[p], a[rank]);
      if (sign) *sign = -*sign;
    }
    const QI piv = a[rank][c];
    for (std::size_t i = rank + 1; i < rows; ++i) {
      for (std::size_t j = c + 1; j < cols; ++j) {
        a[i][j] = (piv * a[i][j] - a[i][c] * a[rank][j]) / prev;
      }
      a[i][c] = QI(0);
    }
    prev = piv;
    ++rank;
  }
  return rank;
}

std::vector<std::vector<QI>> rows_of(const RationalMatrix& m) {
  std::vector<std::vector<QI>> a(m.rows(), std::vector<QI>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) a[i][j] = m(i, j);
  }
  return a;
}

}  // namespace

std::size_t exact_rank(const RationalMatrix& m) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  auto a = rows_of(m);
  return bareiss_echelon(a, m.cols());
}

QI exact_det(const RationalMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("exact_det: matrix is not square");
  const std::size_t n = m.rows();
  if (n == 0) return QI(1);
  auto a = rows_of(m);
  int sign = 1;
  if (bareiss_echelon(a, n, &sign) < n) return QI(0);
  // In Bareiss form the last pivot is the determinant up to row swaps.
  return sign > 0 ? a[n - 1][n - 1] : -a[n - 1][n - 1];
}

RationalMatrix exact_kernel(const RationalMatrix& m) {
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  auto a = rows_of(m);
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && a[p][c].is_zero()) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[r]);
    const QI piv = a[r][c];
    for (std::size_t j = c; j < cols; ++j) a[r][j] = a[r][j] / piv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || a[i][c].is_zero()) continue;
      const QI f = a[i][c];
      for (std::size_t j = c; j < cols; ++j) a[i][j] = a[i][j] - f * a[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  std::vector<std::size_t> free;
  for (std::size_t c = 0, k = 0; c < cols; ++c) {
    if (k < pivots.size() && pivots[k] == c) {
      ++k;
    } else {
      free.push_back(c);
    }
  }
  RationalMatrix z(cols, free.size());
  for (std::size_t f = 0; f < free.size(); ++f) {
    z(free[f], f) = QI(1);
    for (std::size_t k = 0; k < pivots.size(); ++k) z(pivots[k], f) = -a[k][free[f]];
  }
  return z;
}

// ---------------------------------------------------------------------------

RationalPoly exact_minor(const RationalMatrix& E, const RationalMatrix& A, const RationalMatrix& B,
                         const MinorIndex& idx) {
  const std::size_t n = E.cols();
  const std::size_t d = idx.rows.size();
  if (idx.cols.size() != d || d == 0) throw std::invalid_argument("exact_minor: bad index sets");

  std::vector<std::vector<RationalPoly>> a(d, std::vector<RationalPoly>(d));
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      const std::size_t r = idx.rows[i];
      const std::size_t c = idx.cols[j];
      if (c < n) {
        a[i][j] = RationalPoly(std::vector<QI>{-A(r, c), E(r, c)});
      } else {
        a[i][j] = RationalPoly::constant(B(r, c - n));
      }
    }
  }

  // Bareiss over Q(i)[x]; every division below is exact.
  int sign = 1;
  RationalPoly prev = RationalPoly::constant(QI(1));
  for (std::size_t k = 0; k + 1 < d; ++k) {
    std::size_t p = k;
    while (p < d && a[p][k].is_zero()) ++p;
    if (p == d) return {};
    if (p != k) {
      std::swap(a[p], a[k]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < d; ++i) {
      for (std::size_t j = k + 1; j < d; ++j) {
        const RationalPoly num = a[k][k] * a[i][j] - a[i][k] * a[k][j];
        auto [q, rem] = divmod(num, prev);
        if (!rem.is_zero()) throw std::logic_error("exact_minor: inexact Bareiss division");
        a[i][j] = std::move(q);
      }
      a[i][k] = RationalPoly();
    }
    prev = a[k][k];
  }
  RationalPoly det = a[d - 1][d - 1];
  if (sign < 0) det = RationalPoly() - det;
  return det;
}

std::size_t exact_generic_rank(const RationalMatrix& E, const RationalMatrix& A, const RationalMatrix& B) {
  const std::size_t l = E.rows();
  const std::size_t n = E.cols();
  const std::size_t m = B.cols();
  std::size_t best = 0;
  for (std::size_t x = 0; x <= n; ++x) {
    RationalMatrix p(l, n + m);
    for (std::size_t i = 0; i < l; ++i) {
      for (std::size_t j = 0; j < n; ++j) p(i, j) = QI(static_cast<long>(x)) * E(i, j) - A(i, j);
      for (std::size_t j = 0; j < m; ++j) p(i, n + j) = B(i, j);
    }
    best = std::max(best, exact_rank(p));
  }
  return best;
}

namespace {

double binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0.0;
  double r = 1.0;
  for (std::size_t i = 1; i <= k; ++i) r = r * static_cast<double>(n - k + i) / static_cast<double>(i);
  return r;
}

}  // namespace

RationalPoly exact_pencil_gcd(const RationalMatrix& E, const RationalMatrix& A, const RationalMatrix& B,
                              std::size_t r) {
  if (r == 0) return RationalPoly::constant(QI(1));
  const std::size_t l = E.rows();
  const std::size_t w = E.cols() + B.cols();
  if (binomial(l, r) * binomial(w, r) > static_cast<double>(kMaxMinors)) {
    throw std::length_error("exact_pencil_gcd: more than 10^4 minors");
  }
  RationalPoly g;
  MinorEnumerator minors(l, w, r);
  MinorIndex idx;
  while (minors.next(idx)) {
    g = exact_gcd(g, exact_minor(E, A, B, idx));
    if (g.degree() == 0) break;
  }
  return g;
}

std::size_t exact_pencil_gcd_degree(const RationalMatrix& E, const RationalMatrix& A, const RationalMatrix& B,
                                    std::size_t r) {
  const RationalPoly g = exact_pencil_gcd(E, A, B, r);
  if (g.is_zero()) throw std::logic_error("exact_pencil_gcd_degree: all minors vanish; r exceeds the generic rank");
  return static_cast<std::size_t>(g.degree());
}

QI exact_resultant(const RationalPoly& p, const RationalPoly& q) {
  if (p.is_zero() || q.is_zero()) throw std::invalid_argument("exact_resultant: zero polynomial");
  const auto dp = static_cast<std::size_t>(p.degree());
  const auto dq = static_cast<std::size_t>(q.degree());
  if (dp + dq == 0) throw std::invalid_argument("exact_resultant: both polynomials are constant");
  RationalMatrix s(dp + dq, dp + dq);
  for (std::size_t j = 0; j < dq; ++j) {
    for (std::size_t i = 0; i <= dp; ++i) s(i + j, j) = p.coeff(i);
  }
  for (std::size_t j = 0; j < dp; ++j) {
    for (std::size_t i = 0; i <= dq; ++i) s(i + j, dq + j) = q.coeff(i);
  }
  return exact_det(s);
}

// ---------------------------------------------------------------------------

std::string_view to_string(HalfPlane h) {
  switch (h) {
    case HalfPlane::AllLeft: return "AllLeft";
    case HalfPlane::HasClosedRightRoot: return "HasClosedRightRoot";
    case HalfPlane::Boundary: return "Boundary";
  }
  return "?";
}

HalfPlane exact_half_plane_free(const RationalPoly& g) {
  if (g.is_zero()) throw std::invalid_argument("exact_half_plane_free: zero polynomial");
  const RationalPoly h = g.is_real() ? g : g * g.conj();
  const auto n = static_cast<std::size_t>(h.degree());
  if (n == 0) return HalfPlane::AllLeft;

  std::vector<Rational> a(n + 1);
  for (std::size_t i = 0; i <= n; ++i) a[i] = h.coeff(i).re;
  if (sgn(a[n]) < 0) {
    for (Rational& v : a) v = -v;
  }

  const std::size_t width = n / 2 + 1;
  std::vector<Rational> prev(width, 0);
  std::vector<Rational> cur(width, 0);
  for (std::size_t j = 0; j < width; ++j) {
    if (2 * j <= n) prev[j] = a[n - 2 * j];
    if (2 * j + 1 <= n) cur[j] = a[n - 2 * j - 1];
  }

  bool sign_change = false;
  for (std::size_t row = 1; row <= n; ++row) {
    if (sgn(cur[0]) == 0) return sign_change ? HalfPlane::HasClosedRightRoot : HalfPlane::Boundary;
    if (sgn(cur[0]) != sgn(prev[0])) sign_change = true;
    std::vector<Rational> next(width, 0);
    for (std::size_t j = 0; j + 1 < width; ++j) {
      next[j] = (cur[0] * prev[j + 1] - prev[0] * cur[j + 1]) / cur[0];
    }
    prev = std::move(cur);
    cur = std::move(next);
  }
  return sign_change ? HalfPlane::HasClosedRightRoot : HalfPlane::AllLeft;
}

// ---------------------------------------------------------------------------

ExactVerdicts exact_verdicts(const RationalMatrix& E, const RationalMatrix& A, const RationalMatrix& B) {
  if (A.rows() != E.rows() || A.cols() != E.cols() || B.rows() != E.rows()) {
    throw std::invalid_argument("exact_verdicts: E, A, B are not conformable");
  }
  ExactVerdicts out;
  const RationalMatrix EB = hcat({&E, &B});
  const RationalMatrix EAB = hcat({&E, &A, &B});
  const RationalMatrix Z = exact_kernel(E);
  const RationalMatrix AZ = A * Z;
  const RationalMatrix EAZB = hcat({&E, &AZ, &B});
  out.rank_EB = exact_rank(EB);
  out.rank_EAB = exact_rank(EAB);
  out.rank_EAZB = exact_rank(EAZB);
  out.generic_rank = exact_generic_rank(E, A, B);
  out.gcd = exact_pencil_gcd(E, A, B, out.generic_rank);

  // Pointwise rank equals the generic rank everywhere iff the gcd of the
  // order-r minors has no root.
  const bool no_drop = out.gcd.degree() == 0;
  bool no_right_drop = no_drop;
  if (!no_drop) {
    const HalfPlane hp = exact_half_plane_free(out.gcd);
    out.boundary = hp == HalfPlane::Boundary;
    no_right_drop = hp == HalfPlane::AllLeft;
  }
  const bool ranks_eab_eb = out.rank_EAB == out.rank_EB;
  const bool ranks_eab_eazb = out.rank_EAB == out.rank_EAZB;
  // Pointwise rank equal to rk[E, A, B] at every point of the region.
  const bool full_everywhere = no_drop && out.generic_rank == out.rank_EAB;
  const bool full_right = no_right_drop && out.generic_rank == out.rank_EAB;

  out.verdicts = {
      ranks_eab_eb,                       // freely initializable
      ranks_eab_eazb,                     // impulse controllable
      no_drop,                            // behaviourally controllable
      ranks_eab_eb && full_everywhere,    // completely controllable
      ranks_eab_eazb && full_everywhere,  // strongly controllable
      ranks_eab_eb && full_right,         // completely stabilizable
      ranks_eab_eazb && full_right,       // strongly stabilizable
      no_right_drop,                      // behaviourally stabilizable
  };
  return out;
}

}  // namespace phgen::oracle
