#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <sstream>

#include "phgen/cli.hpp"
#include "phgen/io.hpp"

using namespace phgen;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "phgen_cli_test";
  fs::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST_CASE("witness then analyze") {
  const fs::path f = scratch("sc.json");
  REQUIRE(run({"witness", "--name", "stab_counterexample", "--n", "2", "--m", "1", "--out", f.string()}).code == 0);
  const Run r = run({"analyze", f.string()});
  CHECK(r.code == 0);
  CHECK(r.out.find("\"behaviourally_stabilizable\": \"false\"") != std::string::npos);
  CHECK(r.out.find("\"generic_rank\": 3") != std::string::npos);

  const fs::path g = scratch("i4.json");
  REQUIRE(run({"witness", "--name", "step_i4", "--l", "3", "--n", "2", "--m", "2", "--params",
               "beta=1,2;delta=3;xi=1,1", "--out", g.string()})
              .code == 0);
  CHECK(run({"analyze", g.string()}).out.find("\"behaviourally_controllable\": \"true\"") != std::string::npos);
}

TEST_CASE("witness regime errors") {
  const Run r = run({"witness", "--name", "step_i4", "--l", "5", "--n", "2", "--m", "2"});
  CHECK(r.code == 1);
  CHECK(r.err.find("n <= l < n + m") != std::string::npos);
  CHECK(run({"witness", "--name", "bogus"}).code == 1);
  CHECK(run({"witness", "--name", "step_i4", "--l", "3", "--n", "2", "--m", "2", "--params", "gamma=1"}).code == 1);
}

TEST_CASE("sample is deterministic and round-trips") {
  const Run a = run({"sample", "--l", "3", "--n", "2", "--m", "2", "--class", "sdH", "--seed", "7"});
  const Run b = run({"sample", "--l", "3", "--n", "2", "--m", "2", "--class", "sdH", "--seed", "7"});
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  for (const char* cls : {"H", "sdH", "dH"}) {
    for (const char* field : {"real", "complex"}) {
      for (int seed = 0; seed < 5; ++seed) {
        const fs::path f = scratch("s.json");
        REQUIRE(run({"sample", "--l", "4", "--n", "2", "--m", "1", "--class", cls, "--field", field, "--seed",
                     std::to_string(seed), "--out", f.string()})
                    .code == 0);
        CHECK(run({"analyze", f.string()}).code == 0);
        const SystemFile sf = read_system_file(f);
        if (std::string(cls) == "dH") CHECK(psd_classify(sf.system.R, {}) == Definiteness::PositiveDefinite);
      }
    }
  }
  CHECK(run({"sample", "--l", "0", "--n", "2", "--m", "1"}).code == 1);
  CHECK(run({"sample", "--l", "3", "--n", "2", "--m", "1", "--class", "XX"}).code == 1);
}

TEST_CASE("seed falls back to PHGEN_SEED") {
  ::setenv("PHGEN_SEED", "7", 1);
  const Run a = run({"sample", "--l", "2", "--n", "2", "--m", "1"});
  ::unsetenv("PHGEN_SEED");
  const Run b = run({"sample", "--l", "2", "--n", "2", "--m", "1", "--seed", "7"});
  CHECK(a.out == b.out);
  ::setenv("PHGEN_SEED", "abc", 1);
  CHECK(run({"sample", "--l", "2", "--n", "2", "--m", "1"}).code == 1);
  ::unsetenv("PHGEN_SEED");
}

TEST_CASE("analyze error paths") {
  const fs::path bad = scratch("bad.json");
  write_text(bad, "{ nope");
  CHECK(run({"analyze", bad.string()}).code == 1);
  CHECK(run({"analyze", scratch("missing.json").string()}).code == 1);

  const fs::path ind = scratch("indef.json");
  write_text(ind, R"({"field": "real", "class": "sdH", "E": [[1, 0], [0, 1]], "J": [[0, 0], [0, 0]],
      "R": [[1, 0], [0, -1]], "Q": [[1, 0], [0, 1]], "B": [[1], [0]]})");
  const Run r = run({"analyze", ind.string()});
  CHECK(r.code == 2);
  CHECK(r.out.find("R not PSD") != std::string::npos);

  CHECK(run({"analyze", ind.string(), "--rank-rel", "2"}).code == 1);
  CHECK(run({}).code == 1);
  CHECK(run({"frobnicate"}).code == 1);
}

TEST_CASE("experiment command") {
  const fs::path csv = scratch("e.csv"), js = scratch("e.json");
  const Run r = run({"experiment", "--grid", "4,2,2", "--classes", "sdH", "--samples", "20", "--seed", "1",
                     "--out-csv", csv.string(), "--out-json", js.string()});
  REQUIRE(r.code == 0);
  const std::string text = read_text(csv);
  CHECK(text.rfind("l,n,m,class,concept,true,false,borderline,predicted\n", 0) == 0);
  CHECK(text.find("4,2,2,sdH,behaviourally_controllable,0,20,0,ComplementGeneric") != std::string::npos);
  CHECK(text.find("behaviourally_stabilizable") != std::string::npos);
  CHECK(text.find(",NotGeneric\n") != std::string::npos);
  CHECK(read_text(js).find("\"cells\"") != std::string::npos);

  const Run j8 = run({"experiment", "--grid", "4,2,2", "--classes", "sdH", "--samples", "20", "--seed", "1",
                      "--jobs", "8"});
  CHECK(j8.out == text);

  CHECK(run({"experiment", "--grid", "4,2"}).code == 1);
  CHECK(run({"experiment", "--grid", "4,2,2", "--classes", "XYZ"}).code == 1);
}
