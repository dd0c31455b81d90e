#pragma once

// Controllability and stabilizability decisions for descriptor systems.

#include <array>
#include <cstddef>
#include <optional>
#include <string_view>

#include "phgen/numerics.hpp"
#include "phgen/pencil.hpp"
#include "phgen/phsys.hpp"

namespace phgen {

enum class Verdict { True, False, Borderline };

std::string_view to_string(Verdict v);

/// Kleene conjunction: False dominates, then Borderline.
Verdict verdict_and(Verdict a, Verdict b);

enum class Concept {
  FreelyInitializable,
  ImpulseControllable,
  BehaviourallyControllable,
  CompletelyControllable,
  StronglyControllable,
  CompletelyStabilizable,
  StronglyStabilizable,
  BehaviourallyStabilizable,
};

inline constexpr std::array<Concept, 8> kAllConcepts = {
    Concept::FreelyInitializable,    Concept::ImpulseControllable,
    Concept::BehaviourallyControllable, Concept::CompletelyControllable,
    Concept::StronglyControllable,   Concept::CompletelyStabilizable,
    Concept::StronglyStabilizable,   Concept::BehaviourallyStabilizable,
};

inline constexpr std::array<Concept, 5> kControllabilityConcepts = {
    Concept::FreelyInitializable, Concept::ImpulseControllable, Concept::BehaviourallyControllable,
    Concept::CompletelyControllable, Concept::StronglyControllable,
};

/// snake_case name, e.g. "behaviourally_stabilizable".
std::string_view concept_name(Concept c);
Concept concept_from_string(std::string_view name);

Verdict is_freely_initializable(const Matrix& E, const Matrix& A, const Matrix& B, const TolerancePolicy& tol);
Verdict is_impulse_controllable(const Matrix& E, const Matrix& A, const Matrix& B, const TolerancePolicy& tol);
Verdict is_behaviourally_controllable(const Matrix& E, const Matrix& A, const Matrix& B,
                                      const TolerancePolicy& tol, Rng& rng);
Verdict is_completely_controllable(const Matrix& E, const Matrix& A, const Matrix& B,
                                   const TolerancePolicy& tol, Rng& rng);
Verdict is_strongly_controllable(const Matrix& E, const Matrix& A, const Matrix& B,
                                 const TolerancePolicy& tol, Rng& rng);
Verdict is_behaviourally_stabilizable(const Matrix& E, const Matrix& A, const Matrix& B,
                                      const TolerancePolicy& tol, Rng& rng);
Verdict is_completely_stabilizable(const Matrix& E, const Matrix& A, const Matrix& B,
                                   const TolerancePolicy& tol, Rng& rng);
Verdict is_strongly_stabilizable(const Matrix& E, const Matrix& A, const Matrix& B,
                                 const TolerancePolicy& tol, Rng& rng);

/// Behavioural verdicts from a locus alone, without the certificate path.
Verdict behavioural_from_locus(const PencilAnalysis& locus);
Verdict stabilizable_from_locus(const PencilAnalysis& locus, const TolerancePolicy& tol);

struct ControlReport {
  std::array<Verdict, 8> verdicts{};
  std::size_t rank_EB = 0;
  std::size_t rank_EAB = 0;
  std::size_t rank_EAZB = 0;
  std::size_t generic_rank = 0;
  PencilAnalysis locus;
  std::optional<Certificate> certificate;
  /// Some drop point lies within boundary_re of the imaginary axis. Such
  /// points belong to the closed right half-plane and are not Borderline.
  bool imaginary_axis_drop = false;

  Verdict operator[](Concept c) const { return verdicts[static_cast<std::size_t>(c)]; }
  bool any_borderline() const;
};

ControlReport analyze_dae(const Matrix& E, const Matrix& A, const Matrix& B, const TolerancePolicy& tol,
                          Rng& rng);

/// Validates first; throws ValidationError on a violation.
ControlReport analyze(const PHSystem& sys, const TolerancePolicy& tol, Rng& rng);

}  // namespace phgen
