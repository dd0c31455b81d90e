#pragma once

// Tolerance-aware dense linear algebra shared by every other module.
//
// All matrices are stored as complex doubles. A real-field matrix is an
// ordinary Matrix whose imaginary parts are exactly zero; the Field tag is
// carried alongside the data wherever it matters (samplers, file I/O).

#include <complex>
#include <cstddef>
#include <cstdint>
#include <random>
#include <string_view>

#include <Eigen/Dense>

namespace phgen {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// Seeded generator passed explicitly to every sampling routine.
using Rng = std::mt19937_64;

enum class Field { Real, Complex };

std::string_view to_string(Field field);
Field field_from_string(std::string_view name);

/// Numerical thresholds that replace exact comparisons.
struct TolerancePolicy {
  /// Relative singular-value cutoff, scaled by max(rows, cols) * sigma_max.
  double rank_rel = 1e-10;
  /// Absolute eigenvalue slack for (semi)definiteness.
  double psd_abs = 1e-9;
  /// Real-part slack for closed right half-plane membership.
  double boundary_re = 1e-8;
  /// Relative slack for matrix identities such as J = -J^*.
  double match_rel = 1e-9;

  /// Throws std::invalid_argument unless every threshold lies in (0, 1).
  void validate() const;
};

/// Singular-value based rank decision with its margin.
struct RankInfo {
  std::size_t rank = 0;
  double cutoff = 0.0;
  /// Some singular value lies within a factor 10 of the cutoff.
  bool ambiguous = false;
  RealVector singular_values;  // descending
};

RankInfo rank_info(const Matrix& m, const TolerancePolicy& tol);
/// Same with the cutoff scaled by max(sigma_max, reference), for matrices
/// that are small only because they are evaluated near a singular point.
RankInfo rank_info(const Matrix& m, const TolerancePolicy& tol, double reference);
std::size_t numeric_rank(const Matrix& m, const TolerancePolicy& tol);

/// Orthonormal basis of ker M (columns). Zero columns when the kernel is trivial.
Matrix kernel_basis(const Matrix& m, const TolerancePolicy& tol);

enum class Definiteness { PositiveDefinite, PositiveSemidefinite, Indefinite, NotHermitian };

std::string_view to_string(Definiteness d);

/// Classifies a square matrix via the smallest eigenvalue of its Hermitian part.
/// Throws std::invalid_argument for non-square input.
Definiteness psd_classify(const Matrix& m, const TolerancePolicy& tol);

bool is_psd(Definiteness d);

/// i.i.d. standard Gaussian entries; for Complex the real and imaginary parts
/// are drawn independently.
Matrix random_matrix(std::size_t rows, std::size_t cols, Field field, Rng& rng);

/// ||M - M^*|| relative to max(1, ||M||) in the Frobenius norm.
double hermitian_defect(const Matrix& m);
/// ||M + M^*|| relative to max(1, ||M||) in the Frobenius norm.
double skew_defect(const Matrix& m);

bool has_imaginary_part(const Matrix& m);

/// Spectral norm (largest singular value).
double spectral_norm(const Matrix& m);

/// Horizontal concatenation that tolerates zero-column blocks.
Matrix hcat(std::initializer_list<const Matrix*> blocks);

/// Projection onto the Hermitian PSD cone (negative eigenvalues clipped).
Matrix project_psd(const Matrix& m);

/// splitmix64 finaliser, used to derive independent per-trial seeds.
std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b);

}  // namespace phgen
