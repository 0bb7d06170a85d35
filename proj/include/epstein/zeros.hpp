#pragma once

#include <optional>
#include <string>
#include <vector>

#include "epstein/config.hpp"
#include "epstein/qform.hpp"
#include "epstein/zeta.hpp"

namespace epstein {

/// Refined critical-line zero ordinate: sign_left * sign_right < 0 and
/// bracket (half-width of the final bisection interval) is at most the
/// configured refinement tolerance.
struct ZeroRecord {
  double t = 0.0;
  double bracket = 0.0;
  int sign_left = 0;
  int sign_right = 0;
};

struct ScanOptions {
  double step_base = 0.2;
  double refine_tol = 1e-9;
  int workers = 1;
  /// Re-scan suspiciously long gaps at a fifth of the step (one extra
  /// pass) to reduce missed-pair risk.
  bool second_pass = true;
  /// Accuracy target used for the W evaluations of the scan. Sign
  /// scanning is noise-limited near the zeros themselves, so this is
  /// deliberately looser than point-evaluation defaults; tighten it when
  /// zero ordinates are needed beyond ~1e-6.
  double eval_target_rel_err = 1e-5;
};

struct ScanResult {
  std::vector<ZeroRecord> zeros;
  /// Set when the count deviates from the density main term beyond the
  /// diagnostic band; scanning itself still succeeds.
  std::optional<std::string> warning;
  double stark_main_delta = 0.0;  // predicted count increment over the range
  long evaluations = 0;
};

/// Sign-change scan of W over [t0, t1] on the grid
/// step(t) = step_base / max(1, log(stark_k * t)), with bisection
/// refinement of every change. Chunks are processed independently (and in
/// parallel when options.workers > 1) and merged deterministically.
ScanResult scan_zeros(const QuadraticForm& form, double t0, double t1,
                      const ScanOptions& options = {},
                      const EvalConfig& config = {});

/// Density main term (T/pi) log(k T / (pi e)) with k = sqrt(disc)/(2a),
/// plus the error weight h(T+3) = (log)^{1/3} (log log)^{1/6} for banding.
struct StarkPrediction {
  double main_term = 0.0;
  double error_scale = 0.0;
};
StarkPrediction stark_prediction(const QuadraticForm& form, double T);

/// Sign-change search for a real zero of zeta_Q on (1/2, 1), bisected to
/// 1e-12 bracket; returns the first zero found or nullopt.
std::optional<double> real_zero_in_unit_interval(const QuadraticForm& form,
                                                 const EvalConfig& config = {});

/// Sorted zero ordinates up to T with their consecutive gaps.
class GapTable {
 public:
  GapTable(QuadraticForm form, double T, std::vector<ZeroRecord> zeros);

  const QuadraticForm& form() const { return form_; }
  double range_bound() const { return T_; }
  const std::vector<ZeroRecord>& zeros() const { return zeros_; }
  const std::vector<double>& gaps() const { return gaps_; }
  double max_gap() const;

 private:
  QuadraticForm form_;
  double T_;
  std::vector<ZeroRecord> zeros_;
  std::vector<double> gaps_;
};

/// R(V): number of consecutive-zero gaps of length at least V.
std::int64_t gap_stats(const GapTable& table, double V);

/// Union of two refined zero lists; zeros closer than the pairing
/// tolerance are treated as one (the tighter bracket wins).
std::vector<ZeroRecord> merge_zero_records(std::vector<ZeroRecord> a,
                                           const std::vector<ZeroRecord>& b,
                                           double pair_tol = 1e-7);

}  // namespace epstein
