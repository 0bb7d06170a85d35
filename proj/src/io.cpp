#include "epstein/io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace epstein {

namespace {

std::string fmt_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.15g", x);
  return buf;
}

}  // namespace

std::string eval_record_json(const QuadraticForm& form,
                             const CompletedZetaValue& value,
                             const std::string& timestamp) {
  nlohmann::ordered_json j;
  j["schema"] = kSchemaVersion;
  j["form"] = form.str();
  j["s_re"] = value.s.real();
  j["s_im"] = value.s.imag();
  j["zeta_re"] = value.zeta.real();
  j["zeta_im"] = value.zeta.imag();
  j["lambda_re"] = value.lambda.real();
  j["lambda_im"] = value.lambda.imag();
  j["est_err"] = value.est_err;
  if (!timestamp.empty()) j["timestamp"] = timestamp;
  return j.dump();
}

void write_zero_table(const std::string& csv_path,
                      const std::vector<ZeroRecord>& zeros) {
  std::ofstream out(csv_path);
  if (!out) throw resource_error("cannot open " + csv_path + " for writing");
  out << "t,bracket\n";
  for (const auto& z : zeros)
    out << fmt_double(z.t) << ',' << fmt_double(z.bracket) << '\n';
  if (!out) throw resource_error("write failed for " + csv_path);
}

std::vector<ZeroRecord> read_zero_table(const std::string& csv_path) {
  std::ifstream in(csv_path);
  if (!in) throw resource_error("cannot open " + csv_path);
  std::string line;
  std::getline(in, line);  // header
  std::vector<ZeroRecord> zeros;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw argument_error("malformed zero CSV line: " + line);
    ZeroRecord z;
    z.t = std::stod(line.substr(0, comma));
    z.bracket = std::stod(line.substr(comma + 1));
    z.sign_left = -1;
    z.sign_right = 1;
    zeros.push_back(z);
  }
  std::sort(zeros.begin(), zeros.end(),
            [](const ZeroRecord& a, const ZeroRecord& b) { return a.t < b.t; });
  return zeros;
}

void write_zero_sidecar(const std::string& json_path, const ZeroTableMeta& meta,
                        const std::string& timestamp) {
  nlohmann::ordered_json j;
  j["schema"] = kSchemaVersion;
  j["form"] = meta.form.str();
  auto ranges = nlohmann::ordered_json::array();
  for (const auto& [a, b] : meta.ranges) ranges.push_back({a, b});
  j["ranges"] = ranges;
  j["step_base"] = meta.step_base;
  j["count"] = meta.count;
  j["stark_prediction"] = {{"main_term", meta.stark_main},
                           {"error_scale", meta.stark_error_scale}};
  if (!timestamp.empty()) j["timestamp"] = timestamp;
  std::ofstream out(json_path);
  if (!out) throw resource_error("cannot open " + json_path + " for writing");
  out << j.dump(2) << '\n';
}

ZeroTableMeta read_zero_sidecar(const std::string& json_path) {
  std::ifstream in(json_path);
  if (!in) throw resource_error("cannot open " + json_path);
  nlohmann::json j;
  in >> j;
  ZeroTableMeta meta;
  meta.form = QuadraticForm::parse(j.at("form").get<std::string>());
  for (const auto& r : j.at("ranges"))
    meta.ranges.emplace_back(r.at(0).get<double>(), r.at(1).get<double>());
  meta.step_base = j.value("step_base", 0.2);
  meta.count = j.value("count", std::int64_t{0});
  if (j.contains("stark_prediction")) {
    meta.stark_main = j["stark_prediction"].value("main_term", 0.0);
    meta.stark_error_scale = j["stark_prediction"].value("error_scale", 0.0);
  }
  return meta;
}

std::vector<std::pair<double, double>> merge_ranges(
    std::vector<std::pair<double, double>> ranges, double t0, double t1) {
  ranges.emplace_back(t0, t1);
  std::sort(ranges.begin(), ranges.end());
  std::vector<std::pair<double, double>> out;
  for (const auto& r : ranges) {
    if (!out.empty() && r.first <= out.back().second + 1e-12) {
      out.back().second = std::max(out.back().second, r.second);
    } else {
      out.push_back(r);
    }
  }
  return out;
}

std::vector<std::pair<double, double>> uncovered_ranges(
    const std::vector<std::pair<double, double>>& ranges, double t0, double t1) {
  std::vector<std::pair<double, double>> out;
  double cursor = t0;
  auto sorted = ranges;
  std::sort(sorted.begin(), sorted.end());
  for (const auto& [a, b] : sorted) {
    if (b <= cursor) continue;
    if (a > t1) break;
    if (a > cursor) out.emplace_back(cursor, std::min(a, t1));
    cursor = std::max(cursor, b);
    if (cursor >= t1) break;
  }
  if (cursor < t1) out.emplace_back(cursor, t1);
  return out;
}

void write_rep_counts_csv(const RepCountTable& table, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw resource_error("cannot open " + path + " for writing");
  out << "n,r\n";
  for (std::int64_t n = 1; n <= table.limit(); ++n)
    out << n << ',' << table.r(n) << '\n';
}

}  // namespace epstein
