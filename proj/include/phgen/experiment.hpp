#pragma once

// Monte Carlo frequencies of the controllability and stabilizability
// verdicts, compared against the predicted genericity status.

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "phgen/ctrl.hpp"
#include "phgen/phsys.hpp"

namespace phgen {

enum class ExperimentClass { H, sdH, dH, UnstructuredDAE };

std::string_view to_string(ExperimentClass c);
ExperimentClass experiment_class_from_string(std::string_view name);

enum class Predicted { Generic, ComplementGeneric, NotGeneric };

std::string_view to_string(Predicted p);

Predicted predicted_status(Concept c, std::size_t l, std::size_t n, std::size_t m);

struct Dims {
  std::size_t l = 0;
  std::size_t n = 0;
  std::size_t m = 0;

  friend bool operator==(const Dims&, const Dims&) = default;
  friend auto operator<=>(const Dims&, const Dims&) = default;
};

/// Parses "l,n,m;l,n,m;...". Throws std::invalid_argument.
std::vector<Dims> parse_grid(std::string_view spec);

struct ExperimentConfig {
  std::vector<Dims> grid;
  std::vector<ExperimentClass> classes;
  std::size_t samples_per_cell = 1000;
  std::uint64_t seed = 0;
  TolerancePolicy tolerance;
  std::vector<Concept> concepts{kAllConcepts.begin(), kAllConcepts.end()};
  Field field = Field::Real;
  /// Worker threads; results do not depend on it.
  std::size_t jobs = 1;

  /// Throws std::invalid_argument on an empty grid, empty class or concept
  /// list, zero samples or a zero dimension.
  void validate() const;
};

struct CellResult {
  Dims dims;
  ExperimentClass cls = ExperimentClass::H;
  Concept concept_ = Concept::FreelyInitializable;
  std::size_t true_count = 0;
  std::size_t false_count = 0;
  std::size_t borderline_count = 0;
  Predicted predicted = Predicted::Generic;

  std::size_t decided() const { return true_count + false_count; }
  /// True fraction among non-borderline trials; 0 when none were decided.
  double true_fraction() const;
  double borderline_fraction() const;
};

struct ExperimentResult {
  /// Sorted by (l, n, m, class, concept).
  std::vector<CellResult> cells;
  /// One line per trial that threw; such trials count as borderline.
  std::vector<std::string> diagnostics;

  const CellResult* find(Dims d, ExperimentClass c, Concept k) const;
};

/// Trial t of cell (dims, class) index i draws from Rng(trial_seed(seed, i, t)).
std::uint64_t trial_seed(std::uint64_t seed, std::size_t cell, std::size_t trial);

ExperimentResult run_experiment(const ExperimentConfig& cfg);

struct ProbeResult {
  std::size_t trials = 0;
  /// Perturbed systems whose behavioural stabilizability verdict is False.
  std::size_t still_failing = 0;
  std::size_t borderline = 0;
  /// Perturbed systems that failed validation (expected 0).
  std::size_t invalid = 0;

  double fraction() const {
    return trials == 0 ? 1.0 : static_cast<double>(still_failing) / static_cast<double>(trials);
  }
};

/// Perturbs base inside its class through the structured parametrization
/// (singular values, Sigma Qtilde, R1, R2, J, B, R and both unitary factors)
/// with a joint increment of norm at most rho, then re-analyzes.
ProbeResult interior_probe(const PHSystem& base, double rho, std::size_t trials, Rng& rng,
                           const TolerancePolicy& tol = {});

}  // namespace phgen
