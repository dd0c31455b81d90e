#include "doctest.h"

#include "phgen/experiment.hpp"
#include "phgen/witness.hpp"

using namespace phgen;

TEST_CASE("predicted status table") {
  using C = Concept;
  CHECK(predicted_status(C::CompletelyControllable, 3, 2, 2) == Predicted::Generic);
  CHECK(predicted_status(C::BehaviourallyControllable, 4, 2, 2) == Predicted::ComplementGeneric);
  CHECK(predicted_status(C::BehaviourallyStabilizable, 4, 2, 2) == Predicted::NotGeneric);
  CHECK(predicted_status(C::FreelyInitializable, 4, 2, 2) == Predicted::Generic);
  CHECK(predicted_status(C::ImpulseControllable, 5, 2, 2) == Predicted::ComplementGeneric);
  CHECK(predicted_status(C::BehaviourallyControllable, 6, 2, 2) == Predicted::Generic);
  CHECK(predicted_status(C::StronglyControllable, 4, 2, 2) == Predicted::ComplementGeneric);
  CHECK(predicted_status(C::CompletelyStabilizable, 6, 2, 2) == Predicted::ComplementGeneric);
  CHECK(predicted_status(C::StronglyStabilizable, 3, 2, 2) == Predicted::Generic);
  CHECK(predicted_status(C::StronglyStabilizable, 4, 2, 2) == Predicted::NotGeneric);
  CHECK(predicted_status(C::BehaviourallyStabilizable, 7, 2, 2) == Predicted::Generic);
}

TEST_CASE("grid parsing") {
  const auto g = parse_grid("3,2,2;4,2,2");
  REQUIRE(g.size() == 2);
  CHECK(g[1] == Dims{4, 2, 2});
  CHECK(parse_grid("3,2,2;").size() == 1);
  for (const char* bad : {"", "3,2", "3,2,x", "3,2,2,1", "0,1,1", "a;b"}) {
    CHECK_THROWS_AS(parse_grid(bad), std::invalid_argument);
  }
}

TEST_CASE("small experiment") {
  ExperimentConfig cfg;
  cfg.grid = {{3, 2, 2}, {4, 2, 2}};
  cfg.classes = {ExperimentClass::sdH, ExperimentClass::UnstructuredDAE};
  cfg.samples_per_cell = 60;
  cfg.seed = 9;
  const ExperimentResult a = run_experiment(cfg);
  CHECK(a.cells.size() == 2 * 2 * 8);
  for (const CellResult& c : a.cells) {
    CHECK(c.true_count + c.false_count + c.borderline_count == 60);
    if (c.predicted == Predicted::Generic) CHECK(c.true_fraction() >= 0.99);
    if (c.predicted == Predicted::ComplementGeneric) CHECK(c.true_fraction() <= 0.01);
  }
  const CellResult* cell = a.find({3, 2, 2}, ExperimentClass::sdH, Concept::CompletelyControllable);
  REQUIRE(cell != nullptr);
  CHECK(cell->true_count == 60);

  cfg.jobs = 4;
  const ExperimentResult b = run_experiment(cfg);
  REQUIRE(b.cells.size() == a.cells.size());
  for (std::size_t i = 0; i < a.cells.size(); ++i) {
    CHECK(a.cells[i].true_count == b.cells[i].true_count);
    CHECK(a.cells[i].false_count == b.cells[i].false_count);
  }
}

TEST_CASE("config validation") {
  ExperimentConfig cfg;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg.grid = {{1, 1, 1}};
  cfg.classes = {ExperimentClass::H};
  CHECK_NOTHROW(cfg.validate());
  cfg.samples_per_cell = 0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
}

TEST_CASE("interior probe") {
  const PHSystem base = witness_stab_counterexample(2, 2);
  Rng rng(10);
  const ProbeResult small = interior_probe(base, 1e-3, 40, rng);
  CHECK(small.invalid == 0);
  CHECK(small.fraction() == 1.0);
  const ProbeResult none = interior_probe(base, 0.0, 5, rng);
  CHECK(none.fraction() == 1.0);
  // Large steps are exploratory; only the bookkeeping is checked.
  const ProbeResult big = interior_probe(base, 10.0, 20, rng);
  CHECK(big.still_failing + big.borderline + big.invalid <= big.trials);
  MESSAGE("rho = 10 still-failing fraction: " << big.fraction());
}
