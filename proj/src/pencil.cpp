#include "phgen/pencil.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace phgen {

namespace {

constexpr std::size_t kGenericPoints = 3;
constexpr std::size_t kGenericPointsEscalated = 9;

// Root clusters are merged at these radii, relative to max(1, |lambda|).
// Simple roots come out of the companion matrix to ~1e-14, double roots
// scatter by ~1e-8 and triple roots by ~1e-5.
constexpr double kClusterRadii[] = {1e-7, 1e-5, 1e-3};
constexpr double kDropMergeRel = 1e-6;
constexpr double kExplainedRel = 1e-3;

Complex random_point(Rng& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  const double re = gauss(rng);
  const double im = gauss(rng);
  return {re, im};
}

double scale_of(Complex z) { return std::max(1.0, std::abs(z)); }

// Rank of [lambda E - A, B] with the E, A block scaled down for large |lambda|.
RankInfo balanced_rank(const Matrix& E, const Matrix& A, const Matrix& B, Complex lambda,
                       const TolerancePolicy& tol, double reference) {
  const double s = scale_of(lambda);
  Matrix m(E.rows(), E.cols() + B.cols());
  m.leftCols(E.cols()) = (lambda * E - A) / s;
  m.rightCols(B.cols()) = B;
  return rank_info(m, tol, reference);
}

double sigma_at(const RankInfo& info, std::size_t r) {
  if (r == 0 || static_cast<Eigen::Index>(r) > info.singular_values.size()) return 0.0;
  return info.singular_values(static_cast<Eigen::Index>(r) - 1);
}

struct Candidate {
  Complex lambda;
  bool drop = false;
  bool borderline = false;
  std::size_t rank = 0;
  double sigma = 0.0;
};

std::vector<Complex> cluster_centroids(const std::vector<Complex>& roots, double radius) {
  const std::size_t k = roots.size();
  std::vector<std::size_t> parent(k);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 1; j < k; ++j) {
      const double lim = radius * std::max(scale_of(roots[i]), scale_of(roots[j]));
      if (std::abs(roots[i] - roots[j]) <= lim) parent[find(i)] = find(j);
    }
  }
  std::vector<Complex> out;
  for (std::size_t root = 0; root < k; ++root) {
    if (find(root) != root) continue;
    Complex sum = 0.0;
    std::size_t count = 0;
    for (std::size_t i = 0; i < k; ++i) {
      if (find(i) == root) {
        sum += roots[i];
        ++count;
      }
    }
    if (count > 1) out.push_back(sum / static_cast<double>(count));
  }
  return out;
}

bool lambda_less(Complex a, Complex b) {
  if (a.real() != b.real()) return a.real() < b.real();
  return a.imag() < b.imag();
}

std::size_t e_columns(const MinorIndex& idx, std::size_t n) {
  return static_cast<std::size_t>(
      std::count_if(idx.cols.begin(), idx.cols.end(), [n](std::size_t c) { return c < n; }));
}

}  // namespace

void check_conformable(const Matrix& E, const Matrix& A, const Matrix& B) {
  if (E.rows() != A.rows() || E.cols() != A.cols()) {
    throw std::invalid_argument("E and A must have the same shape");
  }
  if (B.rows() != E.rows()) throw std::invalid_argument("B must have as many rows as E");
}

Matrix pencil_at(const Matrix& E, const Matrix& A, const Matrix& B, Complex lambda) {
  check_conformable(E, A, B);
  Matrix m(E.rows(), E.cols() + B.cols());
  m.leftCols(E.cols()) = lambda * E - A;
  m.rightCols(B.cols()) = B;
  return m;
}

GenericRank generic_rank_info(const Matrix& E, const Matrix& A, const Matrix& B,
                              const TolerancePolicy& tol, Rng& rng) {
  check_conformable(E, A, B);
  GenericRank best;
  double best_margin = -1.0;
  std::size_t min_rank = std::numeric_limits<std::size_t>::max();
  bool best_ambiguous = true;

  auto probe = [&](Complex x) {
    const RankInfo info = rank_info(pencil_at(E, A, B, x), tol);
    min_rank = std::min(min_rank, info.rank);
    const double margin = info.rank == 0 ? 1.0 : sigma_at(info, info.rank) / std::max(info.cutoff, 1e-300);
    if (info.rank > best.rank || (info.rank == best.rank && margin > best_margin)) {
      best.rank = info.rank;
      best.point = x;
      best_margin = margin;
      best_ambiguous = info.ambiguous;
    }
  };

  for (std::size_t i = 0; i < kGenericPoints; ++i) probe(random_point(rng));
  if (min_rank != best.rank) {
    for (std::size_t i = kGenericPoints; i < kGenericPointsEscalated; ++i) probe(random_point(rng));
  }
  best.ambiguous = best_ambiguous;
  return best;
}

std::size_t generic_rank(const Matrix& E, const Matrix& A, const Matrix& B,
                         const TolerancePolicy& tol, Rng& rng) {
  return generic_rank_info(E, A, B, tol, rng).rank;
}

// ---------------------------------------------------------------------------

namespace {

bool next_colex(std::vector<std::size_t>& c, std::size_t limit) {
  const std::size_t k = c.size();
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t cap = i + 1 < k ? c[i + 1] : limit;
    if (c[i] + 1 < cap) {
      ++c[i];
      for (std::size_t j = 0; j < i; ++j) c[j] = j;
      return true;
    }
  }
  return false;
}

std::vector<std::size_t> first_combination(std::size_t k) {
  std::vector<std::size_t> c(k);
  std::iota(c.begin(), c.end(), 0);
  return c;
}

}  // namespace

MinorEnumerator::MinorEnumerator(std::size_t rows, std::size_t cols, std::size_t order)
    : nrows_(rows), ncols_(cols), order_(order) {
  if (order == 0 || order > rows || order > cols) done_ = true;
}

bool MinorEnumerator::next(MinorIndex& out) {
  if (done_) return false;
  if (!started_) {
    cur_.rows = first_combination(order_);
    cur_.cols = first_combination(order_);
    started_ = true;
  } else if (!next_colex(cur_.rows, nrows_)) {
    if (!next_colex(cur_.cols, ncols_)) {
      done_ = true;
      return false;
    }
    cur_.rows = first_combination(order_);
  }
  out = cur_;
  return true;
}

// ---------------------------------------------------------------------------

PencilAnalysis rank_drop_locus(const Matrix& E, const Matrix& A, const Matrix& B,
                               const TolerancePolicy& tol, Rng& rng) {
  const GenericRank gr = generic_rank_info(E, A, B, tol, rng);
  PencilAnalysis out;
  out.generic_rank = gr.rank;
  out.generic_ambiguous = gr.ambiguous;
  const std::size_t r = gr.rank;
  if (r == 0) return out;

  const auto l = static_cast<std::size_t>(E.rows());
  const auto n = static_cast<std::size_t>(E.cols());
  const auto m = static_cast<std::size_t>(B.cols());
  const Matrix at_point = pencil_at(E, A, B, gr.point);

  // First minor that is clearly nonsingular at the generic point, falling
  // back to the first one that is nonsingular at all.
  bool found = false;
  std::optional<MinorIndex> fallback;
  MinorEnumerator minors(l, n + m, r);
  MinorIndex idx;
  while (!found && minors.next(idx)) {
    Matrix sub(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(r));
    for (std::size_t i = 0; i < r; ++i) {
      for (std::size_t j = 0; j < r; ++j) {
        sub(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
            at_point(static_cast<Eigen::Index>(idx.rows[i]), static_cast<Eigen::Index>(idx.cols[j]));
      }
    }
    const RankInfo info = rank_info(sub, tol);
    if (info.rank != r) continue;
    if (info.ambiguous) {
      if (!fallback) fallback = idx;
      continue;
    }
    Polynomial p = minor_of_pencil(E, A, B, idx.rows, idx.cols);
    if (p.is_zero()) continue;
    out.minor = idx;
    out.minor_poly = std::move(p);
    found = true;
  }
  if (!found && fallback) {
    Polynomial p = minor_of_pencil(E, A, B, fallback->rows, fallback->cols);
    if (!p.is_zero()) {
      out.minor = *fallback;
      out.minor_poly = std::move(p);
      found = true;
    }
  }
  if (!found) {
    throw std::logic_error("rank_drop_locus: no nonzero minor of the generic order");
  }
  if (out.minor_poly.degree() == 0) return out;

  const std::vector<Complex> roots = poly_roots(out.minor_poly);
  std::vector<Complex> lambdas = roots;
  for (double radius : kClusterRadii) {
    const auto centroids = cluster_centroids(roots, radius);
    lambdas.insert(lambdas.end(), centroids.begin(), centroids.end());
  }

  // The pencil can be tiny at a drop point; judge it against the data scale.
  const double reference = spectral_norm(hcat({&E, &A, &B}));
  std::vector<Candidate> cands;
  cands.reserve(lambdas.size());
  for (const Complex& lambda : lambdas) {
    const RankInfo info = balanced_rank(E, A, B, lambda, tol, reference);
    Candidate c;
    c.lambda = lambda;
    c.rank = info.rank;
    c.sigma = sigma_at(info, r);
    c.drop = info.rank < r;
    c.borderline = c.sigma > info.cutoff / 10.0 && c.sigma < info.cutoff * 10.0;
    cands.push_back(c);
  }

  // Confirmed drops, best representative first within each merge radius.
  std::vector<Candidate> drops;
  for (const Candidate& c : cands) {
    if (c.drop) drops.push_back(c);
  }
  std::sort(drops.begin(), drops.end(),
            [](const Candidate& a, const Candidate& b) { return a.sigma < b.sigma; });
  for (const Candidate& c : drops) {
    const bool dup = std::any_of(out.drop_points.begin(), out.drop_points.end(), [&](const DropPoint& d) {
      return std::abs(d.lambda - c.lambda) <= kDropMergeRel * scale_of(c.lambda);
    });
    if (!dup) out.drop_points.push_back({c.lambda, c.rank, c.sigma});
  }
  std::sort(out.drop_points.begin(), out.drop_points.end(),
            [](const DropPoint& a, const DropPoint& b) { return lambda_less(a.lambda, b.lambda); });

  // Near-cutoff candidates that a confirmed drop already explains are not
  // reported: they are scattered copies of a multiple root.
  for (const Candidate& c : cands) {
    if (!c.borderline || c.drop) continue;
    const bool explained = std::any_of(out.drop_points.begin(), out.drop_points.end(), [&](const DropPoint& d) {
      return std::abs(d.lambda - c.lambda) <= kExplainedRel * scale_of(c.lambda);
    });
    const bool dup = std::any_of(out.borderline.begin(), out.borderline.end(), [&](Complex b) {
      return std::abs(b - c.lambda) <= kDropMergeRel * scale_of(c.lambda);
    });
    if (!explained && !dup) out.borderline.push_back(c.lambda);
  }
  std::sort(out.borderline.begin(), out.borderline.end(), lambda_less);
  return out;
}

// ---------------------------------------------------------------------------

std::optional<Certificate> pair_certificate(const Matrix& E, const Matrix& A, const Matrix& B,
                                            const MinorIndex& first, const MinorIndex& second) {
  const auto n = static_cast<std::size_t>(E.cols());
  Polynomial p = minor_of_pencil(E, A, B, first.rows, first.cols);
  Polynomial q = minor_of_pencil(E, A, B, second.rows, second.cols);
  if (p.is_zero() || q.is_zero()) return std::nullopt;

  Certificate cert{first, second, p, q, 0.0, 0.0};
  if (p.degree() == 0 && q.degree() == 0) {
    cert.resultant = p.leading() * q.leading();
    cert.normalized = 1.0;
    return cert;
  }
  const bool full_degree = p.degree() == e_columns(first, n) || q.degree() == e_columns(second, n);
  // A nonzero constant minor alone rules out any rank drop.
  const bool has_constant = p.degree() == 0 || q.degree() == 0;
  if (!full_degree && !has_constant) return std::nullopt;

  cert.resultant = sylvester_resultant(p, q);
  cert.normalized = normalized_resultant(p, q);
  if (cert.normalized <= kCertificateMinResultant) return std::nullopt;
  return cert;
}

std::optional<Certificate> resultant_certificate(const Matrix& E, const Matrix& A, const Matrix& B,
                                                 std::size_t pair_cap) {
  check_conformable(E, A, B);
  const auto l = static_cast<std::size_t>(E.rows());
  const auto n = static_cast<std::size_t>(E.cols());
  const auto m = static_cast<std::size_t>(B.cols());
  const std::size_t d = std::min(l, n + m);
  if (d == 0) return std::nullopt;

  MinorEnumerator minors(l, n + m, d);
  std::vector<MinorIndex> seen;
  std::size_t tried = 0;
  MinorIndex idx;
  // Pairs are visited as (0,1), (0,2), (1,2), (0,3), ...
  for (std::size_t j = 1; tried < pair_cap; ++j) {
    while (seen.size() <= j) {
      if (!minors.next(idx)) {
        // A square pencil has a single minor of full order; only a nonzero
        // constant certifies it.
        if (seen.size() == 1) return pair_certificate(E, A, B, seen[0], seen[0]);
        return std::nullopt;
      }
      seen.push_back(idx);
    }
    for (std::size_t i = 0; i < j && tried < pair_cap; ++i, ++tried) {
      if (auto cert = pair_certificate(E, A, B, seen[i], seen[j])) return cert;
    }
  }
  return std::nullopt;
}

}  // namespace phgen
