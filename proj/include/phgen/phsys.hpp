#pragma once

// Port-Hamiltonian descriptor systems: validation, structured normal form,
// samplers and the definitization step.

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "phgen/numerics.hpp"

namespace phgen {

/// H: R = 0. sdH: R >= 0. dH: R > 0.
enum class SystemClass { H, sdH, dH };

std::string_view to_string(SystemClass c);
SystemClass system_class_from_string(std::string_view name);

struct PHSystem {
  Matrix E;  // l x n
  Matrix J;  // l x l
  Matrix R;  // l x l
  Matrix Q;  // l x n
  Matrix B;  // l x m
  SystemClass cls = SystemClass::H;
  Field field = Field::Real;

  std::size_t l() const { return static_cast<std::size_t>(E.rows()); }
  std::size_t n() const { return static_cast<std::size_t>(E.cols()); }
  std::size_t m() const { return static_cast<std::size_t>(B.cols()); }
};

/// A plain descriptor triple d/dt(Ex) = Ax + Bu.
struct DAE {
  Matrix E;
  Matrix A;
  Matrix B;
};

struct Violation {
  std::string constraint;
  double residual = 0.0;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
  std::string summary() const;
};

class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(ValidationReport report);
  const ValidationReport& report() const { return report_; }

 private:
  ValidationReport report_;
};

/// Throws std::invalid_argument on a shape mismatch.
void check_shapes(const PHSystem& sys);

/// Empty report iff every class constraint holds.
ValidationReport validate(const PHSystem& sys, const TolerancePolicy& tol);

struct StructuredForm {
  Matrix P;  // l x l unitary
  Matrix T;  // n x n unitary
  RealVector sigma;
  Matrix Qtilde;  // k x k
  Matrix R1;      // (l-k) x k
  Matrix R2;      // (l-k) x (n-k)
  /// Norm of the upper right k x (n-k) block of P Q T.
  double offblock = 0.0;

  std::size_t k() const { return static_cast<std::size_t>(sigma.size()); }
};

/// P E T = [diag(sigma) 0; 0 0] and P Q T = [Qtilde 0; R1 R2]. Throws
/// std::invalid_argument when E^* Q is not Hermitian.
StructuredForm structured_form(const Matrix& E, const Matrix& Q, const TolerancePolicy& tol);

/// P^* [Qtilde 0; R1 R2] T^*.
Matrix reassemble_Q(const StructuredForm& f);

/// Draws a system of the given class. E has full rank min(l, n) almost
/// surely and E^* Q is PSD by construction.
PHSystem sample_system(std::size_t l, std::size_t n, std::size_t m, SystemClass cls, Field field,
                       Rng& rng);

/// Returns Q' with E^* Q' positive definite and ||Q - Q'||_2 = eps / 2, or Q
/// itself when E^* Q is already positive definite. Requires l >= n and E of
/// full column rank; throws std::invalid_argument otherwise or when E^* Q is
/// not Hermitian PSD.
Matrix perturb_to_definite(const Matrix& E, const Matrix& Q, double eps, const TolerancePolicy& tol);

/// A = (J - R) Q.
DAE to_dae(const PHSystem& sys);

/// Real-valued view used for real-field SVDs.
Eigen::MatrixXd real_part(const Matrix& m);

}  // namespace phgen
