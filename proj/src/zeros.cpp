#include "epstein/zeros.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>
#include <sstream>

#include "epstein/parallel.hpp"

namespace epstein {

namespace {

int sign_of(double x) { return x > 0.0 ? 1 : (x < 0.0 ? -1 : 0); }

double grid_step(double step_base, double k, double t) {
  const double g = (t > 0.0) ? std::log(k * t) : 0.0;
  return step_base / std::max(1.0, g);
}

/// Bisects a sign change of W inside [lo, hi] down to half-width tol.
ZeroRecord refine_zero(const QuadraticForm& form, double lo, double hi, int slo,
                       int shi, double tol, const EvalConfig& config,
                       long* evals) {
  while (0.5 * (hi - lo) > tol) {
    double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    double wm = hardy_w(form, mid, config).w;
    ++*evals;
    int sm = sign_of(wm);
    if (sm == 0) {
      // Exact numerical zero: nudge off it; the bracket still shrinks.
      mid += 1e-3 * (hi - lo);
      wm = hardy_w(form, mid, config).w;
      ++*evals;
      sm = sign_of(wm);
      if (sm == 0) sm = slo;
    }
    if (sm == slo) {
      lo = mid;
    } else {
      hi = mid;
      shi = sm;
    }
  }
  ZeroRecord rec;
  rec.t = 0.5 * (lo + hi);
  rec.bracket = 0.5 * (hi - lo);
  rec.sign_left = slo;
  rec.sign_right = shi;
  return rec;
}

struct ChunkScan {
  std::vector<ZeroRecord> zeros;
  long evals = 0;
};

struct GridSample {
  double t;
  double w;
  bool change_right = false;  // sign change between this node and the next
};

void scan_grid(const QuadraticForm& form, double a, double b, double step_base,
               const ScanOptions& options, const EvalConfig& config,
               ChunkScan& out, std::vector<GridSample>* samples) {
  const double k = form.stark_k();
  double t_prev = a;
  double w_prev = hardy_w(form, t_prev, config).w;
  ++out.evals;
  int s_prev = sign_of(w_prev);
  if (samples) samples->push_back({t_prev, w_prev, false});

  while (t_prev < b) {
    double t_next = t_prev + grid_step(step_base, k, std::max(t_prev, 1e-6));
    if (t_next > b) t_next = b;
    if (t_next <= t_prev) break;
    double w_next = hardy_w(form, t_next, config).w;
    ++out.evals;
    int s_next = sign_of(w_next);

    if (s_next == 0) {
      // Grid point landing on a numerical zero: perturb by half a step.
      const double t_shift = std::min(b, t_next + 0.5 * (t_next - t_prev));
      if (t_shift > t_next) {
        t_next = t_shift;
        w_next = hardy_w(form, t_next, config).w;
        ++out.evals;
        s_next = sign_of(w_next);
      } else {
        s_next = -s_prev;  // treat the endpoint zero as a change
      }
    }
    const bool change = s_prev != 0 && s_next != 0 && s_prev != s_next;
    if (change) {
      out.zeros.push_back(refine_zero(form, t_prev, t_next, s_prev, s_next,
                                      options.refine_tol, config, &out.evals));
      if (samples && !samples->empty()) samples->back().change_right = true;
    }
    if (samples) samples->push_back({t_next, w_next, false});
    t_prev = t_next;
    w_prev = w_next;
    if (s_next != 0) s_prev = s_next;
  }
}

/// A pair of zeros inside one grid cell leaves no sign change but pulls
/// |W| down near the adjacent nodes. Flag local minima that fall well
/// below the local |W| scale away from any detected crossing, and rescan
/// those windows on a finer grid, recursing while the dip keeps
/// sharpening without yielding a crossing.
void hunt_dips(const QuadraticForm& form, const std::vector<GridSample>& samples,
               const ScanOptions& options, const EvalConfig& config, int depth,
               ChunkScan& out) {
  if (depth > 3 || samples.size() < 3) return;
  std::vector<std::pair<double, double>> windows;
  const auto n = samples.size();
  for (std::size_t i = 1; i + 1 < n; ++i) {
    bool near_change = false;
    for (std::size_t j = (i >= 2 ? i - 2 : 0); j <= std::min(i + 1, n - 1); ++j)
      near_change = near_change || samples[j].change_right;
    if (near_change) continue;
    const double mag = std::abs(samples[i].w);
    if (mag > std::abs(samples[i - 1].w) || mag > std::abs(samples[i + 1].w)) continue;
    double local = 0.0;
    for (std::size_t j = (i >= 3 ? i - 3 : 0); j <= std::min(i + 3, n - 1); ++j)
      local = std::max(local, std::abs(samples[j].w));
    if (mag >= 0.15 * local) continue;
    const double a = samples[i - 1].t;
    const double b = samples[i + 1].t;
    if (!windows.empty() && a <= windows.back().second) {
      windows.back().second = b;
    } else {
      windows.emplace_back(a, b);
    }
  }
  for (const auto& [a, b] : windows) {
    ChunkScan sub;
    std::vector<GridSample> fine;
    const double fine_step =
        (b - a) / 32.0 * std::max(1.0, std::log(form.stark_k() * b));
    scan_grid(form, a, b, fine_step, options, config, sub, &fine);
    out.evals += sub.evals;
    if (!sub.zeros.empty()) {
      out.zeros.insert(out.zeros.end(), sub.zeros.begin(), sub.zeros.end());
    } else {
      hunt_dips(form, fine, options, config, depth + 1, out);
    }
  }
}

ChunkScan scan_chunk(const QuadraticForm& form, double a, double b,
                     const ScanOptions& options, const EvalConfig& base_config,
                     double step_base) {
  ChunkScan out;
  EvalConfig config = base_config;
  config.target_rel_err = std::max(config.target_rel_err, options.eval_target_rel_err);
  std::vector<GridSample> samples;
  scan_grid(form, a, b, step_base, options, config, out,
            options.second_pass ? &samples : nullptr);
  if (options.second_pass) hunt_dips(form, samples, options, config, 0, out);
  std::sort(out.zeros.begin(), out.zeros.end(),
            [](const ZeroRecord& x, const ZeroRecord& y) { return x.t < y.t; });
  return out;
}

}  // namespace

ScanResult scan_zeros(const QuadraticForm& form, double t0, double t1,
                      const ScanOptions& options, const EvalConfig& config) {
  if (!(t0 >= 0.0) || !(t1 >= t0)) throw argument_error("scan range must satisfy 0 <= t0 <= t1");
  if (t1 > config.reliable_height)
    throw domain_error("scan range exceeds reliable height");
  ScanResult result;
  if (t1 == t0) return result;

  // Fixed chunking (independent of worker count) keeps merged output
  // deterministic regardless of scheduling.
  const double chunk_len = 10.0;
  const auto n_chunks =
      static_cast<std::int64_t>(std::ceil((t1 - t0) / chunk_len));
  std::vector<ChunkScan> chunks(static_cast<std::size_t>(n_chunks));

  parallel_for(n_chunks, options.workers, [&](std::int64_t i) {
    const double a = t0 + chunk_len * static_cast<double>(i);
    const double b = std::min(t1, a + chunk_len);
    chunks[static_cast<std::size_t>(i)] =
        scan_chunk(form, a, b, options, config, options.step_base);
  });

  for (auto& ch : chunks) {
    result.evaluations += ch.evals;
    result.zeros.insert(result.zeros.end(), ch.zeros.begin(), ch.zeros.end());
  }
  std::sort(result.zeros.begin(), result.zeros.end(),
            [](const ZeroRecord& x, const ZeroRecord& y) { return x.t < y.t; });

  if (options.second_pass && result.zeros.size() >= 2) {
    // Re-scan gaps much longer than the local mean spacing at step/5;
    // a close pair straddled by the coarse grid shows up here.
    const double k = form.stark_k();
    std::vector<std::pair<double, double>> suspects;
    for (std::size_t i = 0; i + 1 < result.zeros.size(); ++i) {
      const double lo = result.zeros[i].t;
      const double hi = result.zeros[i + 1].t;
      const double mean =
          std::numbers::pi / std::max(1.0, std::log(k * hi / (std::numbers::pi * std::numbers::e)) + 1.0);
      if (hi - lo > 2.5 * mean) suspects.emplace_back(lo + options.refine_tol, hi - options.refine_tol);
    }
    std::mutex mu;
    std::vector<ZeroRecord> extra;
    parallel_for(static_cast<std::int64_t>(suspects.size()), options.workers,
                 [&](std::int64_t i) {
                   ScanOptions finer = options;
                   finer.step_base = options.step_base / 5.0;
                   finer.second_pass = false;
                   finer.workers = 1;
                   auto sub = scan_chunk(form, suspects[static_cast<std::size_t>(i)].first,
                                         suspects[static_cast<std::size_t>(i)].second,
                                         finer, config, finer.step_base);
                   std::lock_guard<std::mutex> lock(mu);
                   result.evaluations += sub.evals;
                   extra.insert(extra.end(), sub.zeros.begin(), sub.zeros.end());
                 });
    if (!extra.empty()) result.zeros = merge_zero_records(std::move(result.zeros), extra);
  }

  const auto pred_hi = (t1 >= 3.0) ? stark_prediction(form, t1).main_term : 0.0;
  const auto pred_lo = (t0 >= 3.0) ? stark_prediction(form, t0).main_term : 0.0;
  result.stark_main_delta = std::max(0.0, pred_hi - pred_lo);
  const double band = 25.0 * stark_prediction(form, std::max(t1, 3.0)).error_scale + 10.0;
  const double dev = std::abs(static_cast<double>(result.zeros.size()) - result.stark_main_delta);
  if (dev > band) {
    std::ostringstream msg;
    msg << "zero count " << result.zeros.size() << " deviates from density main term "
        << result.stark_main_delta << " by " << dev << " (band " << band << ")";
    result.warning = msg.str();
  }
  return result;
}

StarkPrediction stark_prediction(const QuadraticForm& form, double T) {
  if (!(T >= 3.0)) throw argument_error("stark_prediction requires T >= 3");
  const double k = form.stark_k();
  StarkPrediction out;
  out.main_term = T / std::numbers::pi *
                  std::log(k * T / (std::numbers::pi * std::numbers::e));
  const double lx = std::log(T + 3.0);
  out.error_scale = std::cbrt(lx) * std::pow(std::log(lx), 1.0 / 6.0);
  return out;
}

std::optional<double> real_zero_in_unit_interval(const QuadraticForm& form,
                                                 const EvalConfig& config) {
  const double lo_edge = 0.5 + 1e-4;
  const double hi_edge = 1.0 - 1e-4;
  const int n_grid = 160;

  auto value_at = [&](double sigma) {
    return zeta_q(form, std::complex<double>(sigma, 0.0), config).zeta.real();
  };

  double prev_s = lo_edge;
  double prev_v = value_at(prev_s);
  for (int i = 1; i <= n_grid; ++i) {
    const double sig = lo_edge + (hi_edge - lo_edge) * i / n_grid;
    const double val = value_at(sig);
    if (sign_of(prev_v) != 0 && sign_of(val) != 0 && sign_of(prev_v) != sign_of(val)) {
      double a = prev_s, b = sig, fa = prev_v;
      while (0.5 * (b - a) > 1e-12) {
        const double mid = 0.5 * (a + b);
        if (mid <= a || mid >= b) break;
        const double fm = value_at(mid);
        if (sign_of(fm) == sign_of(fa)) {
          a = mid;
          fa = fm;
        } else {
          b = mid;
        }
      }
      return 0.5 * (a + b);
    }
    prev_s = sig;
    prev_v = val;
  }
  return std::nullopt;
}

GapTable::GapTable(QuadraticForm form, double T, std::vector<ZeroRecord> zeros)
    : form_(form), T_(T) {
  std::sort(zeros.begin(), zeros.end(),
            [](const ZeroRecord& x, const ZeroRecord& y) { return x.t < y.t; });
  for (const auto& z : zeros)
    if (z.t <= T) zeros_.push_back(z);
  for (std::size_t i = 0; i + 1 < zeros_.size(); ++i) {
    const double g = zeros_[i + 1].t - zeros_[i].t;
    if (!(g > 0)) throw argument_error("gap table requires strictly increasing zeros");
    gaps_.push_back(g);
  }
}

double GapTable::max_gap() const {
  double m = 0.0;
  for (double g : gaps_) m = std::max(m, g);
  return m;
}

std::int64_t gap_stats(const GapTable& table, double V) {
  if (!(V > 0)) throw argument_error("gap_stats requires V > 0");
  std::int64_t count = 0;
  for (double g : table.gaps())
    if (g >= V) ++count;
  return count;
}

std::vector<ZeroRecord> merge_zero_records(std::vector<ZeroRecord> a,
                                           const std::vector<ZeroRecord>& b,
                                           double pair_tol) {
  a.insert(a.end(), b.begin(), b.end());
  std::sort(a.begin(), a.end(),
            [](const ZeroRecord& x, const ZeroRecord& y) { return x.t < y.t; });
  std::vector<ZeroRecord> out;
  for (const auto& z : a) {
    if (!out.empty() && std::abs(z.t - out.back().t) <=
                            std::max(pair_tol, 2.0 * (z.bracket + out.back().bracket))) {
      if (z.bracket < out.back().bracket) out.back() = z;
      continue;
    }
    out.push_back(z);
  }
  return out;
}

}  // namespace epstein
