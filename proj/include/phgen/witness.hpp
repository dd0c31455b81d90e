#pragma once

// Deterministic fixture systems with known rank and controllability
// properties. Unitary dressing factors are fixed to the identity.

#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "phgen/pencil.hpp"
#include "phgen/phsys.hpp"

namespace phgen {

/// Stable catalog names.
inline constexpr std::string_view kWitnessNames[] = {
    "full_rank_pair", "s_b", "step_i4", "step_i5", "wide", "stab_counterexample",
};

/// Thrown when dimensions or parameters fall outside a construction's regime.
class RegimeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Tridiagonal skew matrix: -1 above the diagonal, +1 below.
Matrix tridiagonal_skew(std::size_t size);

/// E = Q = [I_k 0; 0 0] with k = min(l, n).
std::pair<Matrix, Matrix> witness_full_rank_pair(std::size_t l, std::size_t n);

/// Requires l > n + m >= 2. rank [E, JQ, B] = min(l, 2n + m).
PHSystem witness_S_b(std::size_t l, std::size_t n, std::size_t m);

/// Requires n <= l < n + m and nonzero beta (n), delta (l - n), xi (l - n + 1).
/// Negative beta entries are accepted but make E^*Q indefinite.
PHSystem witness_step_i4(std::size_t l, std::size_t n, std::size_t m, const std::vector<double>& beta,
                         const std::vector<double>& delta, const std::vector<double>& xi);
PHSystem witness_step_i4(std::size_t l, std::size_t n, std::size_t m);

/// Requires l > n + m.
PHSystem witness_step_i5(std::size_t l, std::size_t n, std::size_t m);

/// Requires l < n.
PHSystem witness_wide(std::size_t l, std::size_t n, std::size_t m);

/// l = n + m. det [xE - JQ, B] = x^(n-1) (x - 1).
PHSystem witness_stab_counterexample(std::size_t n, std::size_t m);

/// The two minors whose coprimality the constructions rely on (0-based).
std::pair<MinorIndex, MinorIndex> step_i4_minors(std::size_t l, std::size_t n, std::size_t m);
std::pair<MinorIndex, MinorIndex> step_i5_minors(std::size_t l, std::size_t n, std::size_t m);
std::pair<MinorIndex, MinorIndex> wide_minors(std::size_t l, std::size_t n, std::size_t m);

struct WitnessParams {
  std::vector<double> beta;
  std::vector<double> delta;
  std::vector<double> xi;
};

/// Catalog dispatch. full_rank_pair is completed with J = R = 0 and
/// B = [I; 0]. Throws RegimeError for unknown names or bad dimensions.
PHSystem make_witness(std::string_view name, std::size_t l, std::size_t n, std::size_t m,
                      const WitnessParams& params = {});

/// Human-readable regime requirement of a catalog entry.
std::string witness_regime(std::string_view name);

}  // namespace phgen
