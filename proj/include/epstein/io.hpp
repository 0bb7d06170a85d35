#pragma once

#include <string>
#include <utility>
#include <vector>

#include "epstein/qform.hpp"
#include "epstein/zeros.hpp"
#include "epstein/zeta.hpp"

namespace epstein {

inline constexpr int kSchemaVersion = 1;

/// JSON evaluation record {schema, form, s_re, s_im, zeta_re, zeta_im,
/// est_err} as a serialized string (ordered keys, stable formatting).
std::string eval_record_json(const QuadraticForm& form,
                             const CompletedZetaValue& value,
                             const std::string& timestamp = {});

/// Zero tables persist as CSV "t,bracket" next to a JSON sidecar holding
/// the form, covered ranges, step, count and density prediction.
struct ZeroTableMeta {
  QuadraticForm form;
  std::vector<std::pair<double, double>> ranges;
  double step_base = 0.2;
  std::int64_t count = 0;
  double stark_main = 0.0;
  double stark_error_scale = 0.0;
};

void write_zero_table(const std::string& csv_path,
                      const std::vector<ZeroRecord>& zeros);
std::vector<ZeroRecord> read_zero_table(const std::string& csv_path);

void write_zero_sidecar(const std::string& json_path, const ZeroTableMeta& meta,
                        const std::string& timestamp = {});
ZeroTableMeta read_zero_sidecar(const std::string& json_path);

/// Merges [t0, t1] into a covered-range union.
std::vector<std::pair<double, double>> merge_ranges(
    std::vector<std::pair<double, double>> ranges, double t0, double t1);

/// Subranges of [t0, t1] not yet covered.
std::vector<std::pair<double, double>> uncovered_ranges(
    const std::vector<std::pair<double, double>>& ranges, double t0, double t1);

/// RepCountTable CSV with header "n,r".
void write_rep_counts_csv(const RepCountTable& table, const std::string& path);

}  // namespace epstein
