#include "phgen/ctrl.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace phgen {

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::True: return "true";
    case Verdict::False: return "false";
    case Verdict::Borderline: return "borderline";
  }
  return "?";
}

Verdict verdict_and(Verdict a, Verdict b) {
  if (a == Verdict::False || b == Verdict::False) return Verdict::False;
  if (a == Verdict::Borderline || b == Verdict::Borderline) return Verdict::Borderline;
  return Verdict::True;
}

namespace {

constexpr std::array<std::string_view, 8> kConceptNames = {
    "freely_initializable",     "impulse_controllable",    "behaviourally_controllable",
    "completely_controllable",  "strongly_controllable",   "completely_stabilizable",
    "strongly_stabilizable",    "behaviourally_stabilizable",
};

struct RankPair {
  std::size_t lhs = 0;
  std::size_t rhs = 0;
  bool ambiguous = false;

  Verdict verdict() const {
    if (ambiguous) return Verdict::Borderline;
    return lhs == rhs ? Verdict::True : Verdict::False;
  }
};

// rk[E, B] against rk[E, A, B].
RankPair freely_ranks(const Matrix& E, const Matrix& A, const Matrix& B, const TolerancePolicy& tol) {
  check_conformable(E, A, B);
  const RankInfo eb = rank_info(hcat({&E, &B}), tol);
  const RankInfo eab = rank_info(hcat({&E, &A, &B}), tol);
  return {eb.rank, eab.rank, eb.ambiguous || eab.ambiguous};
}

// rk[E, AZ, B] against rk[E, A, B], with Z spanning ker E.
RankPair impulse_ranks(const Matrix& E, const Matrix& A, const Matrix& B, const TolerancePolicy& tol) {
  check_conformable(E, A, B);
  const RankInfo e = rank_info(E, tol);
  const Matrix Z = kernel_basis(E, tol);
  const Matrix AZ = A * Z;
  const RankInfo eazb = rank_info(hcat({&E, &AZ, &B}), tol);
  const RankInfo eab = rank_info(hcat({&E, &A, &B}), tol);
  return {eazb.rank, eab.rank, e.ambiguous || eazb.ambiguous || eab.ambiguous};
}

bool in_closed_right(Complex z, const TolerancePolicy& tol) { return z.real() >= -tol.boundary_re; }

}  // namespace

std::string_view concept_name(Concept c) { return kConceptNames[static_cast<std::size_t>(c)]; }

Concept concept_from_string(std::string_view name) {
  for (Concept c : kAllConcepts) {
    if (concept_name(c) == name) return c;
  }
  throw std::invalid_argument("unknown concept '" + std::string(name) + "'");
}

Verdict is_freely_initializable(const Matrix& E, const Matrix& A, const Matrix& B, const TolerancePolicy& tol) {
  return freely_ranks(E, A, B, tol).verdict();
}

Verdict is_impulse_controllable(const Matrix& E, const Matrix& A, const Matrix& B, const TolerancePolicy& tol) {
  return impulse_ranks(E, A, B, tol).verdict();
}

Verdict behavioural_from_locus(const PencilAnalysis& locus) {
  if (locus.generic_ambiguous) return Verdict::Borderline;
  if (!locus.drop_points.empty()) return Verdict::False;
  if (!locus.borderline.empty()) return Verdict::Borderline;
  return Verdict::True;
}

Verdict stabilizable_from_locus(const PencilAnalysis& locus, const TolerancePolicy& tol) {
  if (locus.generic_ambiguous) return Verdict::Borderline;
  for (const DropPoint& d : locus.drop_points) {
    if (in_closed_right(d.lambda, tol)) return Verdict::False;
  }
  for (const Complex& b : locus.borderline) {
    if (in_closed_right(b, tol)) return Verdict::Borderline;
  }
  return Verdict::True;
}

Verdict is_behaviourally_controllable(const Matrix& E, const Matrix& A, const Matrix& B,
                                      const TolerancePolicy& tol, Rng& rng) {
  check_conformable(E, A, B);
  if (resultant_certificate(E, A, B)) return Verdict::True;
  return behavioural_from_locus(rank_drop_locus(E, A, B, tol, rng));
}

Verdict is_behaviourally_stabilizable(const Matrix& E, const Matrix& A, const Matrix& B,
                                      const TolerancePolicy& tol, Rng& rng) {
  check_conformable(E, A, B);
  if (resultant_certificate(E, A, B)) return Verdict::True;
  return stabilizable_from_locus(rank_drop_locus(E, A, B, tol, rng), tol);
}

Verdict is_completely_controllable(const Matrix& E, const Matrix& A, const Matrix& B,
                                   const TolerancePolicy& tol, Rng& rng) {
  return verdict_and(is_freely_initializable(E, A, B, tol), is_behaviourally_controllable(E, A, B, tol, rng));
}

Verdict is_strongly_controllable(const Matrix& E, const Matrix& A, const Matrix& B,
                                 const TolerancePolicy& tol, Rng& rng) {
  return verdict_and(is_impulse_controllable(E, A, B, tol), is_behaviourally_controllable(E, A, B, tol, rng));
}

Verdict is_completely_stabilizable(const Matrix& E, const Matrix& A, const Matrix& B,
                                   const TolerancePolicy& tol, Rng& rng) {
  return verdict_and(is_freely_initializable(E, A, B, tol), is_behaviourally_stabilizable(E, A, B, tol, rng));
}

Verdict is_strongly_stabilizable(const Matrix& E, const Matrix& A, const Matrix& B,
                                 const TolerancePolicy& tol, Rng& rng) {
  return verdict_and(is_impulse_controllable(E, A, B, tol), is_behaviourally_stabilizable(E, A, B, tol, rng));
}

bool ControlReport::any_borderline() const {
  return std::any_of(verdicts.begin(), verdicts.end(), [](Verdict v) { return v == Verdict::Borderline; });
}

ControlReport analyze_dae(const Matrix& E, const Matrix& A, const Matrix& B, const TolerancePolicy& tol,
                          Rng& rng) {
  check_conformable(E, A, B);
  ControlReport rep;
  const RankPair freely = freely_ranks(E, A, B, tol);
  const RankPair impulse = impulse_ranks(E, A, B, tol);
  rep.rank_EB = freely.lhs;
  rep.rank_EAB = freely.rhs;
  rep.rank_EAZB = impulse.lhs;

  rep.locus = rank_drop_locus(E, A, B, tol, rng);
  rep.generic_rank = rep.locus.generic_rank;
  rep.certificate = resultant_certificate(E, A, B);
  for (const DropPoint& d : rep.locus.drop_points) {
    if (std::abs(d.lambda.real()) <= tol.boundary_re) rep.imaginary_axis_drop = true;
  }

  const Verdict fi = freely.verdict();
  const Verdict ic = impulse.verdict();
  const Verdict bc = rep.certificate ? Verdict::True : behavioural_from_locus(rep.locus);
  const Verdict bs = rep.certificate ? Verdict::True : stabilizable_from_locus(rep.locus, tol);

  auto set = [&](Concept c, Verdict v) { rep.verdicts[static_cast<std::size_t>(c)] = v; };
  set(Concept::FreelyInitializable, fi);
  set(Concept::ImpulseControllable, ic);
  set(Concept::BehaviourallyControllable, bc);
  set(Concept::CompletelyControllable, verdict_and(fi, bc));
  set(Concept::StronglyControllable, verdict_and(ic, bc));
  set(Concept::CompletelyStabilizable, verdict_and(fi, bs));
  set(Concept::StronglyStabilizable, verdict_and(ic, bs));
  set(Concept::BehaviourallyStabilizable, bs);
  return rep;
}

ControlReport analyze(const PHSystem& sys, const TolerancePolicy& tol, Rng& rng) {
  ValidationReport v = validate(sys, tol);
  if (!v.ok()) throw ValidationError(std::move(v));
  const DAE dae = to_dae(sys);
  return analyze_dae(dae.E, dae.A, dae.B, tol, rng);
}

}  // namespace phgen
