#include <algorithm>
#include <cmath>
#include <numbers>

#include "epstein/quadrature.hpp"
#include "epstein/special.hpp"
#include "epstein/zeta.hpp"

namespace epstein::detail {

namespace {

using cplx = std::complex<double>;

// Rigorous modulus bound for E(sigma + it, x), uniform in t:
// |E| <= Integral_1^inf e^{-xu} u^{sigma-1} du.
double e_bound(double sigma, double x) {
  if (sigma <= 1.0) return std::exp(-x) / x;
  if (x > 2.0 * (sigma - 1.0)) return std::exp(-x) / (x - sigma + 1.0);
  // Crude fallback for small x, large sigma: peak value times decay scale.
  return std::exp(-x) * (1.0 + std::pow(2.0 * sigma / x, sigma));
}

}  // namespace

IncompleteE incomplete_e(cplx s, double x, double rel_tol) {
  if (!(x > 0)) throw domain_error("incomplete_e requires x > 0");

  // Steepest-descent direction at u = 1 for exponent -xu + (s-1) log u.
  // When the slope points into the right half-plane with little phase the
  // integrand just has an interior peak; rotating cannot help there.
  const cplx slope = s - 1.0 - x;
  const double slope_arg = std::arg(slope);
  double phi = 0.0;
  if (std::abs(slope_arg) > 0.35) {
    phi = (slope_arg >= 0.0) ? std::numbers::pi - slope_arg
                             : -std::numbers::pi - slope_arg;
    phi = std::clamp(phi, -1.3, 1.3);
  }
  const cplx dir(std::cos(phi), std::sin(phi));

  // E = e^{-x} e^{i phi} Integral_0^inf exp(h(rho)) drho with
  // h = -x rho e^{i phi} + (s-1) log(1 + rho e^{i phi}); h(0) = 0.
  auto h_exp = [&](double rho) -> cplx {
    const cplx u = 1.0 + rho * dir;
    return std::exp(-x * rho * dir + (s - 1.0) * std::log(u));
  };
  auto h_real = [&](double rho) {
    const cplx u = 1.0 + rho * dir;
    return (-x * rho * dir + (s - 1.0) * std::log(u)).real();
  };

  const double lam = std::max({std::abs(slope), 0.2 * x, 1e-3});
  double hi = 3.0 / lam;
  cplx total = 0.0;
  double err = 0.0;
  auto first = integrate_gk(h_exp, 0.0, hi, 0.0, 0.2 * rel_tol, 2);
  total = first.value;
  err = first.est_err;
  for (int block = 0; block < 200; ++block) {
    if (h_real(hi) < -46.0) break;
    const double step = hi;
    auto piece = integrate_gk(h_exp, hi, hi + step, 1e-20, 0.2 * rel_tol, 2);
    total += piece.value;
    err += piece.est_err;
    hi += step;
  }

  const double damp = std::exp(-x);
  IncompleteE out;
  out.value = damp * dir * total;
  out.est_err = damp * (err + 4e-16 * std::abs(total));
  return out;
}

CoreValue zeta_core_theta(const QuadraticForm& form, cplx s,
                          const EvalConfig& config) {
  const double disc = static_cast<double>(form.discriminant());
  const double alpha = 2.0 * std::numbers::pi / std::sqrt(disc);
  const double sig1 = s.real();
  const double sig2 = 1.0 - s.real();
  const cplx s2 = 1.0 - s;
  const double e_tol = config.incomplete_gamma_tol;

  cplx lambda = 1.0 / (s - 1.0) - 1.0 / s;
  double sum_abs = std::abs(1.0 / (s - 1.0)) + std::abs(1.0 / s);
  double quad_err = 0.0;

  const bool extended = config.precision == Precision::extended;
  long double acc_re = lambda.real(), acc_im = lambda.imag();

  // Terms are summed until the rigorous per-term bound with a generous
  // coefficient envelope stays below the target for several indices.
  const double coef_base = 2.0 * std::numbers::pi / std::sqrt(disc);
  auto coef_envelope = [coef_base](double n) {
    return 8.0 * (coef_base * (n + 1.0) + 6.0 * std::sqrt(n) + 6.0);
  };

  std::int64_t block = 512;
  auto table = rep_counts_cached(form, block, config.max_table_bytes);
  double tol_abs = config.target_rel_err * 0.1;
  int quiet = 0;
  std::int64_t n = 0;
  double tail_bound = 0.0;
  while (true) {
    ++n;
    if (n > config.max_terms)
      throw resource_error("theta-series truncation exceeded max_terms");
    if (n > table->limit())
      table = rep_counts_cached(form, 2 * table->limit(), config.max_table_bytes);
    const double x = alpha * static_cast<double>(n);
    const double bound =
        coef_envelope(static_cast<double>(n)) * (e_bound(sig1, x) + e_bound(sig2, x));
    const std::uint32_t rn = table->r(n);
    if (rn != 0) {
      const auto e1 = incomplete_e(s, x, e_tol);
      const auto e2 = incomplete_e(s2, x, e_tol);
      const cplx term = static_cast<double>(rn) * (e1.value + e2.value);
      if (extended) {
        acc_re += static_cast<long double>(term.real());
        acc_im += static_cast<long double>(term.imag());
      } else {
        lambda += term;
      }
      sum_abs += static_cast<double>(rn) * (std::abs(e1.value) + std::abs(e2.value));
      quad_err += static_cast<double>(rn) * (e1.est_err + e2.est_err);
    }
    tol_abs = std::max(tol_abs, config.target_rel_err *
                                    (extended ? static_cast<double>(std::abs(acc_re)) +
                                                    static_cast<double>(std::abs(acc_im))
                                              : std::abs(lambda)) *
                                    0.1);
    if (bound < tol_abs) {
      if (++quiet >= 8) {
        tail_bound = bound * 2.0 * std::exp(-alpha) / std::max(1.0 - std::exp(-alpha), 1e-3);
        break;
      }
    } else {
      quiet = 0;
    }
  }
  if (extended) lambda = cplx(static_cast<double>(acc_re), static_cast<double>(acc_im));

  const cplx gw = gamma_weight(form, s);
  CoreValue out;
  out.zeta = lambda / gw;
  out.abs_est_on_lambda =
      3.0 * (quad_err + tail_bound +
             (extended ? 5.4e-20 : 2.2e-16) * sum_abs * std::sqrt(static_cast<double>(n)) +
             2.2e-16 * sum_abs);
  out.rel_est = out.abs_est_on_lambda / std::max(std::abs(lambda), 1e-300);
  return out;
}

}  // namespace epstein::detail
