#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace epstein {

/// Thrown when an argument violates a precondition (bad form, bad range,
/// non-coprime Gauss-sum arguments, unknown suite name, ...).
class argument_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Thrown when an input is syntactically fine but outside the domain of
/// the operation (evaluation at a pole, sigma below the series floor,
/// height above the configured reliable range, ...).
class domain_error : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Thrown when a computation would exceed its configured budget
/// (representation table too large, series not converging within
/// max_terms, quadrature refinement exhausted).
class resource_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Precision { f64, extended };

/// Accuracy targets and truncation policies shared by the analytic
/// evaluation routines.
struct EvalConfig {
  double target_rel_err = 1e-12;
  std::int64_t max_terms = 20'000'000;
  double incomplete_gamma_tol = 1e-14;
  double series_sigma_floor = 1.25;

  /// Heights |Im s| above this raise domain_error from the evaluators.
  double reliable_height = 3000.0;

  /// Crossover height between the symmetric incomplete-gamma
  /// representation (below) and the Fourier-Bessel expansion (above).
  double crossover_height = 8.0;

  /// Internal arithmetic width for the series/quadrature kernels.
  Precision precision = Precision::f64;

  /// Memory budget for representation-count tables.
  std::size_t max_table_bytes = std::size_t{1} << 28;

  void validate() const {
    if (!(target_rel_err > 0)) throw argument_error("target_rel_err must be > 0");
    if (max_terms < 1) throw argument_error("max_terms must be >= 1");
  }
};

}  // namespace epstein
