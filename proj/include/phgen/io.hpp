#pragma once

// JSON system files, JSON analysis reports and CSV/JSON experiment tables.

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>

#include "phgen/ctrl.hpp"
#include "phgen/experiment.hpp"
#include "phgen/phsys.hpp"

namespace phgen {

/// Malformed JSON, missing keys or inconsistent shapes.
class SchemaError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Either a port-Hamiltonian system or, for class "dae", a plain triple.
struct SystemFile {
  bool is_dae = false;
  Field field = Field::Real;
  PHSystem system;
  DAE dae;

  /// The triple (E, A, B) in both cases.
  DAE triple() const { return is_dae ? dae : to_dae(system); }
};

/// Throws SchemaError. Shape checks only; structural constraints are left to validate().
SystemFile parse_system_file(std::string_view text);
SystemFile read_system_file(const std::filesystem::path& path);

std::string system_to_json(const PHSystem& sys);
std::string dae_to_json(const DAE& dae, Field field);

std::string report_to_json(const ControlReport& report);
std::string violations_to_json(const ValidationReport& report);

/// Header l,n,m,class,concept,true,false,borderline,predicted; rows in
/// result order.
std::string result_to_csv(const ExperimentResult& result);
std::string result_to_json(const ExperimentResult& result);

std::string read_text(const std::filesystem::path& path);
void write_text(const std::filesystem::path& path, std::string_view text);

}  // namespace phgen
