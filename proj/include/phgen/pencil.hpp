#pragma once

// Rank analysis of the augmented pencil [xE - A, B].

#include <cstddef>
#include <optional>
#include <vector>

#include "phgen/numerics.hpp"
#include "phgen/poly.hpp"

namespace phgen {

/// Default number of minor pairs tried by resultant_certificate.
inline constexpr std::size_t kCertificatePairCap = 40;

/// A certificate needs a normalized resultant above this value.
inline constexpr double kCertificateMinResultant = 1e-8;

/// [lambda E - A, B].
Matrix pencil_at(const Matrix& E, const Matrix& A, const Matrix& B, Complex lambda);

/// Throws std::invalid_argument unless E, A are l x n and B is l x m.
void check_conformable(const Matrix& E, const Matrix& A, const Matrix& B);

struct GenericRank {
  std::size_t rank = 0;
  /// The rank decision at the best evaluation point was near the cutoff.
  bool ambiguous = false;
  /// Evaluation point attaining the rank with the widest margin.
  Complex point{0.0, 0.0};
};

/// Rank over the rational function field, estimated at random complex
/// points: 3 points, escalating to 9 when they disagree.
GenericRank generic_rank_info(const Matrix& E, const Matrix& A, const Matrix& B,
                              const TolerancePolicy& tol, Rng& rng);

std::size_t generic_rank(const Matrix& E, const Matrix& A, const Matrix& B,
                         const TolerancePolicy& tol, Rng& rng);

/// Row and column index sets (0-based) of a minor of [xE - A, B].
struct MinorIndex {
  std::vector<std::size_t> rows;
  std::vector<std::size_t> cols;
};

/// Enumerates order-d minors of an l x (n + m) matrix: column sets in
/// colexicographic order outermost, row sets colexicographic inside.
class MinorEnumerator {
 public:
  MinorEnumerator(std::size_t rows, std::size_t cols, std::size_t order);
  /// False once all minors have been produced.
  bool next(MinorIndex& out);

 private:
  std::size_t nrows_;
  std::size_t ncols_;
  std::size_t order_;
  MinorIndex cur_;
  bool started_ = false;
  bool done_ = false;
};

struct DropPoint {
  Complex lambda;
  std::size_t rank = 0;
  /// The r-th singular value of the balanced pencil at lambda.
  double sigma = 0.0;
};

struct PencilAnalysis {
  std::size_t generic_rank = 0;
  bool generic_ambiguous = false;
  /// Sorted by real part, then imaginary part.
  std::vector<DropPoint> drop_points;
  /// Candidates whose rank decision sat within a factor 10 of the cutoff.
  std::vector<Complex> borderline;
  /// The nonzero order-r minor whose roots were screened.
  MinorIndex minor;
  Polynomial minor_poly;
};

PencilAnalysis rank_drop_locus(const Matrix& E, const Matrix& A, const Matrix& B,
                               const TolerancePolicy& tol, Rng& rng);

struct Certificate {
  MinorIndex first;
  MinorIndex second;
  Polynomial first_poly;
  Polynomial second_poly;
  /// Sylvester resultant of the pair. When one member is a nonzero
  /// constant c and the other is too, this holds their product instead.
  Complex resultant{0.0, 0.0};
  double normalized = 0.0;
};

/// Tests one pair of order-d minors. Returns the certificate when both are
/// nonzero, one of them reaches its structural degree, and the pair is
/// coprime by a normalized resultant above kCertificateMinResultant.
std::optional<Certificate> pair_certificate(const Matrix& E, const Matrix& A, const Matrix& B,
                                            const MinorIndex& first, const MinorIndex& second);

/// Searches pairs (0,1), (0,2), (1,2), (0,3), ... of order min(l, n+m)
/// minors. A result proves the pencil has full rank at every complex point;
/// absence proves nothing.
std::optional<Certificate> resultant_certificate(const Matrix& E, const Matrix& A, const Matrix& B,
                                                 std::size_t pair_cap = kCertificatePairCap);

}  // namespace phgen
