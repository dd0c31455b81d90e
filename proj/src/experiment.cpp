#include "phgen/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <mutex>
#include <stdexcept>
#include <thread>

namespace phgen {

std::string_view to_string(ExperimentClass c) {
  switch (c) {
    case ExperimentClass::H: return "H";
    case ExperimentClass::sdH: return "sdH";
    case ExperimentClass::dH: return "dH";
    case ExperimentClass::UnstructuredDAE: return "unstructuredDAE";
  }
  return "?";
}

ExperimentClass experiment_class_from_string(std::string_view name) {
  if (name == "H") return ExperimentClass::H;
  if (name == "sdH") return ExperimentClass::sdH;
  if (name == "dH") return ExperimentClass::dH;
  if (name == "unstructuredDAE" || name == "dae") return ExperimentClass::UnstructuredDAE;
  throw std::invalid_argument("unknown experiment class '" + std::string(name) +
                              "' (expected H|sdH|dH|unstructuredDAE)");
}

std::string_view to_string(Predicted p) {
  switch (p) {
    case Predicted::Generic: return "Generic";
    case Predicted::ComplementGeneric: return "ComplementGeneric";
    case Predicted::NotGeneric: return "NotGeneric";
  }
  return "?";
}

Predicted predicted_status(Concept c, std::size_t l, std::size_t n, std::size_t m) {
  const std::size_t s = n + m;
  auto pick = [](bool generic) { return generic ? Predicted::Generic : Predicted::ComplementGeneric; };
  switch (c) {
    case Concept::FreelyInitializable:
    case Concept::ImpulseControllable:
      return pick(l <= s);
    case Concept::BehaviourallyControllable:
      return pick(l != s);
    case Concept::CompletelyControllable:
    case Concept::StronglyControllable:
      return pick(l < s);
    case Concept::BehaviourallyStabilizable:
      return l == s ? Predicted::NotGeneric : Predicted::Generic;
    case Concept::CompletelyStabilizable:
    case Concept::StronglyStabilizable:
      if (l == s) return Predicted::NotGeneric;
      return pick(l < s);
  }
  return Predicted::NotGeneric;
}

std::vector<Dims> parse_grid(std::string_view spec) {
  std::vector<Dims> out;
  auto fail = [&]() {
    throw std::invalid_argument("invalid grid '" + std::string(spec) + "' (expected l,n,m;l,n,m;...)");
  };
  std::size_t pos = 0;
  while (pos <= spec.size()) {
    const std::size_t end = std::min(spec.find(';', pos), spec.size());
    const std::string_view cell = spec.substr(pos, end - pos);
    if (!cell.empty()) {
      std::size_t vals[3];
      std::size_t at = 0;
      for (int k = 0; k < 3; ++k) {
        const std::size_t stop = k < 2 ? cell.find(',', at) : cell.size();
        if (stop == std::string_view::npos) fail();
        const std::string_view tok = cell.substr(at, stop - at);
        auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), vals[k]);
        if (ec != std::errc() || ptr != tok.data() + tok.size() || tok.empty() || vals[k] == 0) fail();
        at = stop + 1;
      }
      out.push_back({vals[0], vals[1], vals[2]});
    }
    pos = end + 1;
  }
  if (out.empty()) fail();
  return out;
}

void ExperimentConfig::validate() const {
  if (grid.empty()) throw std::invalid_argument("experiment: empty dimension grid");
  if (classes.empty()) throw std::invalid_argument("experiment: no classes selected");
  if (concepts.empty()) throw std::invalid_argument("experiment: no concepts selected");
  if (samples_per_cell == 0) throw std::invalid_argument("experiment: samples per cell must be >= 1");
  for (const Dims& d : grid) {
    if (d.l == 0 || d.n == 0 || d.m == 0) throw std::invalid_argument("experiment: dimensions must be >= 1");
  }
  tolerance.validate();
}

double CellResult::true_fraction() const {
  return decided() == 0 ? 0.0 : static_cast<double>(true_count) / static_cast<double>(decided());
}

double CellResult::borderline_fraction() const {
  const std::size_t total = decided() + borderline_count;
  return total == 0 ? 0.0 : static_cast<double>(borderline_count) / static_cast<double>(total);
}

const CellResult* ExperimentResult::find(Dims d, ExperimentClass c, Concept k) const {
  for (const CellResult& cell : cells) {
    if (cell.dims == d && cell.cls == c && cell.concept_ == k) return &cell;
  }
  return nullptr;
}

std::uint64_t trial_seed(std::uint64_t seed, std::size_t cell, std::size_t trial) {
  return mix_seed(mix_seed(seed, cell), trial);
}

namespace {

struct TrialOutcome {
  std::array<Verdict, 8> verdicts{};
  std::string error;
};

TrialOutcome run_trial(Dims d, ExperimentClass cls, Field field, const TolerancePolicy& tol, std::uint64_t seed) {
  TrialOutcome out;
  Rng rng(seed);
  try {
    ControlReport rep;
    if (cls == ExperimentClass::UnstructuredDAE) {
      const Matrix E = random_matrix(d.l, d.n, field, rng);
      const Matrix A = random_matrix(d.l, d.n, field, rng);
      const Matrix B = random_matrix(d.l, d.m, field, rng);
      rep = analyze_dae(E, A, B, tol, rng);
    } else {
      const SystemClass sc = cls == ExperimentClass::H     ? SystemClass::H
                             : cls == ExperimentClass::sdH ? SystemClass::sdH
                                                           : SystemClass::dH;
      const PHSystem sys = sample_system(d.l, d.n, d.m, sc, field, rng);
      rep = analyze(sys, tol, rng);
    }
    out.verdicts = rep.verdicts;
  } catch (const std::exception& e) {
    out.verdicts.fill(Verdict::Borderline);
    out.error = e.what();
  }
  return out;
}

// Runs fn(0..count-1) on `jobs` threads; fn must only write to its own slot.
template <class Fn>
void parallel_for(std::size_t count, std::size_t jobs, Fn&& fn) {
  jobs = std::max<std::size_t>(1, std::min(jobs, count));
  if (jobs == 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(jobs);
  for (std::size_t w = 0; w < jobs; ++w) {
    pool.emplace_back([&]() {
      for (std::size_t i = next++; i < count; i = next++) fn(i);
    });
  }
  for (std::thread& t : pool) t.join();
}

}  // namespace

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  ExperimentResult res;

  struct Cell {
    Dims dims;
    ExperimentClass cls;
  };
  std::vector<Cell> cells;
  for (const Dims& d : cfg.grid) {
    for (ExperimentClass c : cfg.classes) cells.push_back({d, c});
  }

  const std::size_t per = cfg.samples_per_cell;
  std::vector<TrialOutcome> outcomes(cells.size() * per);
  parallel_for(outcomes.size(), cfg.jobs, [&](std::size_t k) {
    const std::size_t ci = k / per;
    const std::size_t t = k % per;
    outcomes[k] = run_trial(cells[ci].dims, cells[ci].cls, cfg.field, cfg.tolerance, trial_seed(cfg.seed, ci, t));
  });

  for (std::size_t ci = 0; ci < cells.size(); ++ci) {
    for (Concept c : cfg.concepts) {
      CellResult r;
      r.dims = cells[ci].dims;
      r.cls = cells[ci].cls;
      r.concept_ = c;
      r.predicted = predicted_status(c, r.dims.l, r.dims.n, r.dims.m);
      for (std::size_t t = 0; t < per; ++t) {
        switch (outcomes[ci * per + t].verdicts[static_cast<std::size_t>(c)]) {
          case Verdict::True: ++r.true_count; break;
          case Verdict::False: ++r.false_count; break;
          case Verdict::Borderline: ++r.borderline_count; break;
        }
      }
      res.cells.push_back(r);
    }
    for (std::size_t t = 0; t < per; ++t) {
      const std::string& err = outcomes[ci * per + t].error;
      if (!err.empty()) {
        res.diagnostics.push_back("cell " + std::to_string(ci) + " trial " + std::to_string(t) + ": " + err);
      }
    }
  }

  std::stable_sort(res.cells.begin(), res.cells.end(), [](const CellResult& a, const CellResult& b) {
    if (a.dims != b.dims) return a.dims < b.dims;
    if (a.cls != b.cls) return a.cls < b.cls;
    return a.concept_ < b.concept_;
  });
  return res;
}

// ---------------------------------------------------------------------------

namespace {

// Unitary Cayley transform of a skew-Hermitian S.
Matrix cayley(const Matrix& S) {
  const Matrix I = Matrix::Identity(S.rows(), S.cols());
  return (I - S).partialPivLu().solve(I + S);
}

Matrix skew_part(const Matrix& G) { return (G - G.adjoint()) / 2.0; }
Matrix herm_part(const Matrix& G) { return (G + G.adjoint()) / 2.0; }

}  // namespace

ProbeResult interior_probe(const PHSystem& base, double rho, std::size_t trials, Rng& rng,
                           const TolerancePolicy& tol) {
  if (rho < 0.0) throw std::invalid_argument("interior_probe: rho must be nonnegative");
  const ValidationReport rep = validate(base, tol);
  if (!rep.ok()) throw ValidationError(rep);

  const StructuredForm f = structured_form(base.E, base.Q, tol);
  const Eigen::Index l = base.E.rows();
  const Eigen::Index n = base.E.cols();
  const Eigen::Index k = f.sigma.size();
  const Matrix U = f.P.adjoint();
  const Matrix V = f.T;
  const Matrix M = f.sigma.cast<Complex>().asDiagonal() * f.Qtilde;
  const Field field = base.field;

  ProbeResult out;
  out.trials = trials;
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (std::size_t t = 0; t < trials; ++t) {
    // Raw Gaussian directions for every free parameter block.
    RealVector dsigma = random_matrix(static_cast<std::size_t>(k), 1, Field::Real, rng).real();
    Matrix dM = herm_part(random_matrix(k, k, field, rng));
    Matrix dR1 = random_matrix(l - k, k, field, rng);
    Matrix dR2 = random_matrix(l - k, n - k, field, rng);
    Matrix dJ = skew_part(random_matrix(l, l, field, rng));
    Matrix dR = base.cls == SystemClass::H ? Matrix::Zero(l, l) : herm_part(random_matrix(l, l, field, rng));
    Matrix dB = random_matrix(l, base.B.cols(), field, rng);
    Matrix dU = skew_part(random_matrix(l, l, field, rng));
    Matrix dV = skew_part(random_matrix(n, n, field, rng));

    const double norm = std::sqrt(dsigma.squaredNorm() + dM.squaredNorm() + dR1.squaredNorm() +
                                  dR2.squaredNorm() + dJ.squaredNorm() + dR.squaredNorm() +
                                  dB.squaredNorm() + dU.squaredNorm() + dV.squaredNorm());
    const double scale = norm > 0.0 ? rho * unit(rng) / norm : 0.0;

    const RealVector sigma = f.sigma + scale * dsigma;
    // Projection onto the PSD cone is non-expansive, so the step stays within scale * |dM|.
    const Matrix Mp = project_psd(M + scale * dM);
    const Matrix Up = U * cayley(scale * dU);
    const Matrix Vp = V * cayley(scale * dV);

    Matrix eblk = Matrix::Zero(l, n);
    Matrix qblk = Matrix::Zero(l, n);
    eblk.topLeftCorner(k, k) = sigma.cast<Complex>().asDiagonal();
    qblk.topLeftCorner(k, k) = sigma.cwiseInverse().cast<Complex>().asDiagonal() * Mp;
    qblk.bottomLeftCorner(l - k, k) = f.R1 + scale * dR1;
    qblk.bottomRightCorner(l - k, n - k) = f.R2 + scale * dR2;

    PHSystem sys = base;
    sys.E = Up * eblk * Vp.adjoint();
    sys.Q = Up * qblk * Vp.adjoint();
    sys.J = base.J + scale * dJ;
    if (base.cls != SystemClass::H) sys.R = project_psd(base.R + scale * dR);
    sys.B = base.B + scale * dB;

    if (!validate(sys, tol).ok()) {
      ++out.invalid;
      continue;
    }
    const ControlReport r = analyze(sys, tol, rng);
    switch (r[Concept::BehaviourallyStabilizable]) {
      case Verdict::False: ++out.still_failing; break;
      case Verdict::Borderline: ++out.borderline; break;
      case Verdict::True: break;
    }
  }
  return out;
}

}  // namespace phgen
