#include "phgen/witness.hpp"

#include <algorithm>
#include <numeric>

namespace phgen {

namespace {

using Index = Eigen::Index;

Index ix(std::size_t v) { return static_cast<Index>(v); }

void require(bool ok, std::string_view name) {
  if (!ok) throw RegimeError("witness " + std::string(name) + " requires " + witness_regime(name));
}

void require_nonzero(const std::vector<double>& v, std::size_t size, const char* what) {
  if (v.size() != size) {
    throw RegimeError(std::string("parameter ") + what + " must have " + std::to_string(size) + " entries");
  }
  if (std::any_of(v.begin(), v.end(), [](double x) { return x == 0.0; })) {
    throw RegimeError(std::string("parameter ") + what + " must have nonzero entries");
  }
}

// [I_n; 0] of size l x n.
Matrix stacked_identity(std::size_t l, std::size_t n) {
  Matrix e = Matrix::Zero(ix(l), ix(n));
  const Index k = ix(std::min(l, n));
  e.topLeftCorner(k, k).setIdentity();
  return e;
}

PHSystem make_h(Matrix E, Matrix J, Matrix Q, Matrix B) {
  PHSystem s;
  s.R = Matrix::Zero(E.rows(), E.rows());
  s.E = std::move(E);
  s.J = std::move(J);
  s.Q = std::move(Q);
  s.B = std::move(B);
  s.cls = SystemClass::H;
  s.field = Field::Real;
  return s;
}

std::vector<std::size_t> range(std::size_t from, std::size_t to) {
  std::vector<std::size_t> v(to - from);
  std::iota(v.begin(), v.end(), from);
  return v;
}

}  // namespace

std::string witness_regime(std::string_view name) {
  if (name == "full_rank_pair") return "l, n, m >= 1";
  if (name == "s_b") return "l > n + m >= 2";
  if (name == "step_i4") return "n <= l < n + m";
  if (name == "step_i5") return "l > n + m";
  if (name == "wide") return "l < n";
  if (name == "stab_counterexample") return "n, m >= 1 (l = n + m)";
  return "a catalog name (full_rank_pair, s_b, step_i4, step_i5, wide, stab_counterexample)";
}

Matrix tridiagonal_skew(std::size_t size) {
  Matrix j = Matrix::Zero(ix(size), ix(size));
  for (Index i = 0; i + 1 < ix(size); ++i) {
    j(i, i + 1) = -1.0;
    j(i + 1, i) = 1.0;
  }
  return j;
}

std::pair<Matrix, Matrix> witness_full_rank_pair(std::size_t l, std::size_t n) {
  require(l >= 1 && n >= 1, "full_rank_pair");
  Matrix e = stacked_identity(l, n);
  return {e, e};
}

PHSystem witness_S_b(std::size_t l, std::size_t n, std::size_t m) {
  require(n >= 1 && m >= 1 && n + m >= 2 && l > n + m, "s_b");
  const std::size_t s = n + m;
  Matrix J = Matrix::Zero(ix(l), ix(l));
  for (std::size_t j = 0; j + s < l; ++j) {
    J(ix(j + s), ix(j)) = 1.0;
    J(ix(j), ix(j + s)) = -1.0;
  }
  Matrix E = stacked_identity(l, n);
  Matrix B = Matrix::Zero(ix(l), ix(m));
  B.block(ix(n), 0, ix(m), ix(m)).setIdentity();
  Matrix Q = E;
  return make_h(std::move(E), std::move(J), std::move(Q), std::move(B));
}

PHSystem witness_step_i4(std::size_t l, std::size_t n, std::size_t m, const std::vector<double>& beta,
                         const std::vector<double>& delta, const std::vector<double>& xi) {
  require(n >= 1 && m >= 1 && n <= l && l < n + m, "step_i4");
  require_nonzero(beta, n, "beta");
  require_nonzero(delta, l - n, "delta");
  require_nonzero(xi, l - n + 1, "xi");

  Matrix E = stacked_identity(l, n);
  Matrix Q = Matrix::Zero(ix(l), ix(n));
  for (std::size_t i = 0; i < n; ++i) Q(ix(i), ix(i)) = beta[i];

  // Lower bidiagonal block in the last l - n + 1 rows.
  Matrix B = Matrix::Zero(ix(l), ix(m));
  const std::size_t top = n - 1;
  for (std::size_t j = 0; j < l - n + 1; ++j) {
    B(ix(top + j), ix(j)) = xi[j];
    if (j < l - n) B(ix(top + j + 1), ix(j)) = delta[j];
  }
  return make_h(std::move(E), tridiagonal_skew(l), std::move(Q), std::move(B));
}

PHSystem witness_step_i4(std::size_t l, std::size_t n, std::size_t m) {
  require(n >= 1 && m >= 1 && n <= l && l < n + m, "step_i4");
  return witness_step_i4(l, n, m, std::vector<double>(n, 1.0), std::vector<double>(l - n, 1.0),
                         std::vector<double>(l - n + 1, 1.0));
}

PHSystem witness_step_i5(std::size_t l, std::size_t n, std::size_t m) {
  require(n >= 1 && m >= 1 && l > n + m, "step_i5");
  Matrix E = stacked_identity(l, n);
  Matrix Q = E;
  Matrix B = Matrix::Zero(ix(l), ix(m));
  for (std::size_t j = 0; j < m; ++j) {
    B(ix(n + j), ix(j)) = 1.0;
    B(ix(n + j + 1), ix(j)) = 1.0;
  }
  return make_h(std::move(E), tridiagonal_skew(l), std::move(Q), std::move(B));
}

PHSystem witness_wide(std::size_t l, std::size_t n, std::size_t m) {
  require(l >= 1 && m >= 1 && l < n, "wide");
  Matrix E = stacked_identity(l, n);
  Matrix Q = E;
  Matrix B = Matrix::Zero(ix(l), ix(m));
  B(ix(l - 1), 0) = 1.0;
  return make_h(std::move(E), tridiagonal_skew(l), std::move(Q), std::move(B));
}

PHSystem witness_stab_counterexample(std::size_t n, std::size_t m) {
  if (n < 1 || m < 1) throw RegimeError("witness stab_counterexample requires " + witness_regime("stab_counterexample"));
  const std::size_t l = n + m;
  Matrix E = stacked_identity(l, n);
  Matrix Q = Matrix::Zero(ix(l), ix(n));
  Q(ix(n), ix(n - 1)) = -1.0;
  Matrix B = Matrix::Zero(ix(l), ix(m));
  B.bottomRows(ix(m)).setIdentity();
  return make_h(std::move(E), tridiagonal_skew(l), std::move(Q), std::move(B));
}

std::pair<MinorIndex, MinorIndex> step_i4_minors(std::size_t l, std::size_t, std::size_t) {
  // Leading l x l block, and the same rows with columns shifted by one.
  return {{range(0, l), range(0, l)}, {range(0, l), range(1, l + 1)}};
}

std::pair<MinorIndex, MinorIndex> step_i5_minors(std::size_t, std::size_t n, std::size_t m) {
  const std::size_t d = n + m;
  return {{range(0, d), range(0, d)}, {range(1, d + 1), range(0, d)}};
}

std::pair<MinorIndex, MinorIndex> wide_minors(std::size_t l, std::size_t n, std::size_t) {
  std::vector<std::size_t> cols = range(1, l);
  cols.push_back(n);
  return {{range(0, l), range(0, l)}, {range(0, l), cols}};
}

PHSystem make_witness(std::string_view name, std::size_t l, std::size_t n, std::size_t m,
                      const WitnessParams& params) {
  if (name == "full_rank_pair") {
    require(l >= 1 && n >= 1 && m >= 1, name);
    auto [E, Q] = witness_full_rank_pair(l, n);
    Matrix B = stacked_identity(l, m);
    return make_h(std::move(E), Matrix::Zero(ix(l), ix(l)), std::move(Q), std::move(B));
  }
  if (name == "s_b") return witness_S_b(l, n, m);
  if (name == "step_i4") {
    require(n >= 1 && m >= 1 && n <= l && l < n + m, name);
    auto pick = [](const std::vector<double>& given, std::size_t size) {
      return given.empty() ? std::vector<double>(size, 1.0) : given;
    };
    return witness_step_i4(l, n, m, pick(params.beta, n), pick(params.delta, l - n), pick(params.xi, l - n + 1));
  }
  if (name == "step_i5") return witness_step_i5(l, n, m);
  if (name == "wide") return witness_wide(l, n, m);
  if (name == "stab_counterexample") {
    if (l != 0 && l != n + m) throw RegimeError("witness stab_counterexample requires l = n + m");
    return witness_stab_counterexample(n, m);
  }
  throw RegimeError("unknown witness '" + std::string(name) + "'; expected " + witness_regime(""));
}

}  // namespace phgen
