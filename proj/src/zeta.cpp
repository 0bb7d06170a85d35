#include "epstein/zeta.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "epstein/special.hpp"

namespace epstein {

namespace detail {

CoreValue zeta_core(const QuadraticForm& form, std::complex<double> s,
                    const EvalConfig& config) {
  if (std::abs(s.imag()) > config.reliable_height)
    throw domain_error("height exceeds configured reliable range");
  if (std::abs(s.imag()) <= config.crossover_height)
    return zeta_core_theta(form, s, config);
  return zeta_core_eisenstein(form, s, config);
}

}  // namespace detail

std::complex<double> gamma_weight(const QuadraticForm& form,
                                  std::complex<double> s) {
  const double disc = static_cast<double>(form.discriminant());
  const double logw = std::log(std::sqrt(disc) / (2.0 * std::numbers::pi));
  return std::exp(s * logw + log_gamma(s));
}

CompletedZetaValue zeta_q(const QuadraticForm& form, std::complex<double> s,
                          const EvalConfig& config) {
  config.validate();
  if (std::abs(s) < 1e-9 || std::abs(s - std::complex<double>(1.0, 0.0)) < 1e-9)
    throw domain_error("zeta_q pole at s in {0, 1}");

  const auto core = detail::zeta_core(form, s, config);
  CompletedZetaValue out;
  out.s = s;
  out.zeta = core.zeta;
  if (std::abs(s.imag()) <= config.crossover_height) {
    out.lambda = core.zeta * gamma_weight(form, s);
    out.est_err = core.abs_est_on_lambda;
  } else {
    out.lambda = core.zeta * gamma_weight(form, s);
    out.est_err = core.rel_est * std::max(std::abs(out.lambda), 1e-300);
  }
  return out;
}

HardyValue hardy_w(const QuadraticForm& form, double t, const EvalConfig& config) {
  config.validate();
  if (std::abs(t) > config.reliable_height)
    throw domain_error("height exceeds configured reliable range");

  const std::complex<double> s(0.5, t);
  const auto core = detail::zeta_core(form, s, config);

  const double disc = static_cast<double>(form.discriminant());
  const double logw = std::log(std::sqrt(disc) / (2.0 * std::numbers::pi));
  const std::complex<double> rotation(0.0, 0.5 * std::numbers::pi);
  const std::complex<double> exponent =
      rotation * (0.5 - s) + s * logw + log_gamma(s);
  // Re(exponent) stays O(log(1+|t|)); the e^{pi t/2} growth of the phase
  // factor cancels against the Gamma decay inside the combined exponent.
  const std::complex<double> f = std::exp(exponent) * core.zeta;

  HardyValue out;
  out.w = f.real();
  out.im_residual = std::abs(f.imag());
  out.est_err = std::abs(std::exp(exponent)) * core.rel_est *
                std::max(std::abs(core.zeta), 1e-300);
  return out;
}

std::complex<double> dirichlet_series(const QuadraticForm& form,
                                      std::complex<double> s,
                                      const EvalConfig& config) {
  config.validate();
  const double sigma = s.real();
  if (sigma < config.series_sigma_floor)
    throw domain_error("dirichlet_series requires Re s >= series_sigma_floor");

  const double disc = static_cast<double>(form.discriminant());
  const double density = 2.0 * std::numbers::pi / std::sqrt(disc);

  // Tail of sum r_Q(n) n^{-sigma} beyond N by summation by parts against
  // the lattice-point count: ~ density N^{1-sigma} sigma/(sigma-1), with a
  // 1.5 margin for the O(sqrt N) remainder. A coarse pass sizes |sum|,
  // then N is solved from the bound.
  auto partial = [&](std::int64_t n_terms) {
    auto table = rep_counts_cached(form, n_terms, config.max_table_bytes);
    std::complex<double> sum = 0.0;
    for (std::int64_t n = 1; n <= n_terms; ++n) {
      const std::uint32_t rn = table->r(n);
      if (rn) sum += static_cast<double>(rn) * std::exp(-s * std::log(static_cast<double>(n)));
    }
    return sum;
  };
  const double tail_coeff = 1.5 * density * sigma / (sigma - 1.0);
  const double scale = std::max(std::abs(partial(512)), 1e-3);
  const double n_needed =
      std::pow(tail_coeff / (config.target_rel_err * scale), 1.0 / (sigma - 1.0));
  if (!(n_needed < static_cast<double>(config.max_terms)))
    throw resource_error("dirichlet_series did not converge within max_terms");
  return partial(std::max<std::int64_t>(512, static_cast<std::int64_t>(n_needed) + 1));
}

CriticalLineApprox approx_critical_line(const QuadraticForm& form, double t,
                                        double X, const EvalConfig& config) {
  config.validate();
  if (!(t >= 2.0)) throw domain_error("approx_critical_line requires t >= 2");
  if (!(X >= t * t)) throw domain_error("approx_critical_line requires X >= t^2");

  const auto n_hi = static_cast<std::int64_t>(std::floor(2.0 * X));
  if (n_hi < 1 || static_cast<std::size_t>(n_hi) * sizeof(std::uint32_t) >
                      config.max_table_bytes)
    throw resource_error("approx_critical_line rep-count budget exceeded");
  auto table = rep_counts_cached(form, n_hi, config.max_table_bytes);

  const std::complex<double> s(0.5, t);
  const double inv_log2 = 1.0 / std::numbers::ln2;
  std::complex<double> sum = 0.0;
  for (std::int64_t n = 1; n <= n_hi; ++n) {
    const std::uint32_t rn = table->r(n);
    if (!rn) continue;
    const double nd = static_cast<double>(n);
    std::complex<double> term =
        static_cast<double>(rn) * std::exp(-s * std::log(nd));
    if (nd > X) term *= inv_log2 * std::log(2.0 * X / nd);
    sum += term;
  }

  // Analytic continuation of the smoothed tail's density main term:
  // -(log 2)^{-1} (2 pi / sqrt(disc)) ((2X)^a - X^a) / a^2 with a = 1/2 - it.
  // (Summation by parts fixes the overall sign; the opposite sign makes
  // the residual grow like sqrt(X).)
  const std::complex<double> one_minus_s(0.5, -t);
  const double disc = static_cast<double>(form.discriminant());
  const std::complex<double> boundary =
      -inv_log2 * 2.0 * std::numbers::pi / std::sqrt(disc) /
      (one_minus_s * one_minus_s) *
      (std::exp(one_minus_s * std::log(2.0 * X)) - std::exp(one_minus_s * std::log(X)));

  CriticalLineApprox out;
  out.value = sum + boundary;
  out.err_scale = t / std::sqrt(X);
  return out;
}

}  // namespace epstein
