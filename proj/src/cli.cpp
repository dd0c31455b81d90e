#include "phgen/cli.hpp"

#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "phgen/ctrl.hpp"
#include "phgen/experiment.hpp"
#include "phgen/io.hpp"
#include "phgen/phsys.hpp"
#include "phgen/witness.hpp"

namespace phgen {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void add_tolerance_flags(CLI::App* cmd, TolerancePolicy& tol) {
  cmd->add_option("--rank-rel", tol.rank_rel, "Relative numerical-rank cutoff")->capture_default_str();
  cmd->add_option("--psd-abs", tol.psd_abs, "Absolute PSD eigenvalue tolerance")->capture_default_str();
  cmd->add_option("--boundary-re", tol.boundary_re, "Imaginary-axis band for stabilizability")
      ->capture_default_str();
}

// --seed wins, then PHGEN_SEED, then 0.
std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag) {
  if (flag) return *flag;
  const char* env = std::getenv("PHGEN_SEED");
  if (env == nullptr || *env == '\0') return 0;
  try {
    std::size_t used = 0;
    const unsigned long long v = std::stoull(env, &used);
    if (used != std::string(env).size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw UsageError(std::string("PHGEN_SEED is not an unsigned integer: '") + env + "'");
  }
}

std::vector<double> parse_list(const std::string& key, const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(tok, &used));
      if (used != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      throw UsageError("--params: bad number '" + tok + "' for " + key);
    }
  }
  return out;
}

// "beta=1,2;delta=1;xi=1,1"
WitnessParams parse_params(const std::string& text) {
  WitnessParams p;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ';')) {
    if (item.empty()) continue;
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw UsageError("--params: expected key=values, got '" + item + "'");
    const std::string key = item.substr(0, eq);
    const std::vector<double> vals = parse_list(key, item.substr(eq + 1));
    if (key == "beta") {
      p.beta = vals;
    } else if (key == "delta") {
      p.delta = vals;
    } else if (key == "xi") {
      p.xi = vals;
    } else {
      throw UsageError("--params: unknown key '" + key + "' (expected beta, delta, xi)");
    }
  }
  return p;
}

template <class T, class Parse>
std::vector<T> parse_csv_names(const std::string& text, Parse parse) {
  std::vector<T> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (!tok.empty()) out.push_back(parse(tok));
  }
  return out;
}

void emit(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
  } else {
    write_text(path, text);
  }
}

int cmd_analyze(const std::string& path, const TolerancePolicy& tol, std::uint64_t seed, std::ostream& out,
                std::ostream& err) {
  tol.validate();
  const SystemFile file = read_system_file(path);
  Rng rng(seed);
  if (file.is_dae) {
    out << report_to_json(analyze_dae(file.dae.E, file.dae.A, file.dae.B, tol, rng));
    return kExitOk;
  }
  const ValidationReport rep = validate(file.system, tol);
  if (!rep.ok()) {
    out << violations_to_json(rep);
    err << "validation failed: " << rep.summary() << "\n";
    return kExitInvalid;
  }
  out << report_to_json(analyze(file.system, tol, rng));
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Controllability and stabilizability of port-Hamiltonian descriptor systems", "phgen"};
  app.require_subcommand(1);

  TolerancePolicy tol;
  std::optional<std::uint64_t> seed;

  // analyze
  std::string analyze_path;
  CLI::App* analyze_cmd = app.add_subcommand("analyze", "Analyze a system file and print a JSON report");
  analyze_cmd->add_option("path", analyze_path, "System JSON file")->required();
  analyze_cmd->add_option("--seed", seed, "Seed for the random evaluation points");
  add_tolerance_flags(analyze_cmd, tol);

  // sample
  std::size_t l = 0, n = 0, m = 0;
  std::string cls_name = "H";
  std::string field_name = "real";
  std::string out_path;
  CLI::App* sample_cmd = app.add_subcommand("sample", "Draw a random system from a structured class");
  sample_cmd->add_option("--l", l, "Rows")->required()->check(CLI::PositiveNumber);
  sample_cmd->add_option("--n", n, "State dimension")->required()->check(CLI::PositiveNumber);
  sample_cmd->add_option("--m", m, "Inputs")->required()->check(CLI::PositiveNumber);
  sample_cmd->add_option("--class", cls_name, "H, sdH or dH")->capture_default_str();
  sample_cmd->add_option("--field", field_name, "real or complex")->capture_default_str();
  sample_cmd->add_option("--seed", seed, "Sampler seed (falls back to PHGEN_SEED)");
  sample_cmd->add_option("--out", out_path, "Output file (default: stdout)");

  // witness
  std::string witness_name;
  std::string params_text;
  CLI::App* witness_cmd = app.add_subcommand("witness", "Emit a fixed witness system");
  witness_cmd->add_option("--name", witness_name, "Catalog name")->required();
  witness_cmd->add_option("--l", l, "Rows (0 lets stab_counterexample use n + m)");
  witness_cmd->add_option("--n", n, "State dimension");
  witness_cmd->add_option("--m", m, "Inputs");
  witness_cmd->add_option("--params", params_text, "e.g. \"beta=1,2;delta=1;xi=1,1\" (step_i4)");
  witness_cmd->add_option("--out", out_path, "Output file (default: stdout)");

  // experiment
  std::string grid_text;
  std::string classes_text = "sdH";
  std::string concepts_text;
  std::size_t samples = 1000;
  std::size_t jobs = 1;
  std::string csv_path, json_path;
  CLI::App* exp_cmd = app.add_subcommand("experiment", "Monte Carlo genericity experiment");
  exp_cmd->add_option("--grid", grid_text, "Cells as \"l,n,m;l,n,m;...\"")->required();
  exp_cmd->add_option("--classes", classes_text, "Comma list of H, sdH, dH, unstructuredDAE")
      ->capture_default_str();
  exp_cmd->add_option("--concepts", concepts_text, "Comma list of concept names (default: all)");
  exp_cmd->add_option("--samples", samples, "Samples per cell")->capture_default_str()->check(CLI::PositiveNumber);
  exp_cmd->add_option("--seed", seed, "Base seed (falls back to PHGEN_SEED)");
  exp_cmd->add_option("--field", field_name, "real or complex")->capture_default_str();
  exp_cmd->add_option("--jobs", jobs, "Worker threads")->capture_default_str()->check(CLI::PositiveNumber);
  exp_cmd->add_option("--out-csv", csv_path, "CSV output (default: stdout)");
  exp_cmd->add_option("--out-json", json_path, "JSON output");
  add_tolerance_flags(exp_cmd, tol);

  std::vector<std::string> argv_store;
  argv_store.reserve(args.size() + 1);
  argv_store.push_back("phgen");
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (std::string& s : argv_store) argv.push_back(s.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitError;
  }

  try {
    if (*analyze_cmd) return cmd_analyze(analyze_path, tol, resolve_seed(seed), out, err);

    if (*sample_cmd) {
      Rng rng(resolve_seed(seed));
      const PHSystem sys = sample_system(l, n, m, system_class_from_string(cls_name), field_from_string(field_name), rng);
      emit(out_path, system_to_json(sys), out);
      return kExitOk;
    }

    if (*witness_cmd) {
      PHSystem sys;
      try {
        sys = make_witness(witness_name, l, n, m, parse_params(params_text));
      } catch (const RegimeError& e) {
        err << "error: " << e.what() << "\n";
        return kExitError;
      }
      emit(out_path, system_to_json(sys), out);
      return kExitOk;
    }

    if (*exp_cmd) {
      ExperimentConfig cfg;
      cfg.grid = parse_grid(grid_text);
      cfg.classes = parse_csv_names<ExperimentClass>(
          classes_text, [](const std::string& s) { return experiment_class_from_string(s); });
      if (!concepts_text.empty()) {
        cfg.concepts = parse_csv_names<Concept>(concepts_text, [](const std::string& s) { return concept_from_string(s); });
      }
      cfg.samples_per_cell = samples;
      cfg.seed = resolve_seed(seed);
      cfg.tolerance = tol;
      cfg.field = field_from_string(field_name);
      cfg.jobs = jobs;
      const ExperimentResult res = run_experiment(cfg);
      for (const std::string& d : res.diagnostics) err << "trial failure: " << d << "\n";
      emit(csv_path, result_to_csv(res), out);
      if (!json_path.empty()) write_text(json_path, result_to_json(res));
      return kExitOk;
    }
  } catch (const ValidationError& e) {
    out << violations_to_json(e.report());
    err << "validation failed: " << e.report().summary() << "\n";
    return kExitInvalid;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}

int run_cli(int argc, char** argv) {
  std::vector<std::string> args(argv + (argc > 0 ? 1 : 0), argv + argc);
  return run_cli(args, std::cout, std::cerr);
}

}  // namespace phgen
