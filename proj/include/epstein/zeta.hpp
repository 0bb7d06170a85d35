#pragma once

#include <complex>

#include "epstein/config.hpp"
#include "epstein/qform.hpp"

namespace epstein {

/// Completed value Lambda(s) = (sqrt(disc)/2pi)^s Gamma(s) zeta_Q(s)
/// together with zeta_Q(s) itself and an absolute error estimate on
/// Lambda. Note Lambda underflows double range for |Im s| beyond ~440;
/// zeta stays well-scaled at all supported heights.
struct CompletedZetaValue {
  std::complex<double> s;
  std::complex<double> lambda;
  std::complex<double> zeta;
  double est_err = 0.0;
};

/// Gamma weight (sqrt(disc)/2pi)^s Gamma(s) of the completed zeta.
std::complex<double> gamma_weight(const QuadraticForm& form, std::complex<double> s);

/// Truncated Dirichlet series sum_{n<=N} r_Q(n) n^{-s} with N chosen so the
/// tail bound (2pi/sqrt(disc)) N^{1-sigma} / (sigma-1) falls below
/// target_rel_err of the partial sum. Requires Re s >= series_sigma_floor.
std::complex<double> dirichlet_series(const QuadraticForm& form,
                                      std::complex<double> s,
                                      const EvalConfig& config = {});

/// Analytic continuation of zeta_Q. Below config.crossover_height this is
/// the symmetric incomplete-gamma representation
///   Lambda(s) = 1/(s-1) - 1/s + sum_n r_Q(n) [E(s, a n) + E(1-s, a n)],
/// a = 2pi/sqrt(disc), E(s,x) = Integral_1^inf e^{-xu} u^{s-1} du;
/// above it, the Fourier-Bessel expansion of the associated lattice sum,
/// which stays fully conditioned at height. Throws domain_error at the
/// poles s = 0, 1 and above reliable_height.
CompletedZetaValue zeta_q(const QuadraticForm& form, std::complex<double> s,
                          const EvalConfig& config = {});

/// Hardy-type real rotation of the critical line:
///   f(s) = e^{(pi i/2)(1/2 - s)} (sqrt(disc)/2pi)^s Gamma(s) zeta_Q(s),
///   W(t) = Re f(1/2 + it).
/// im_residual = |Im f(1/2+it)| is exposed for realness checking; the
/// rotation is computed from complex log-Gamma so no factor overflows.
struct HardyValue {
  double w = 0.0;
  double im_residual = 0.0;
  double est_err = 0.0;
};

HardyValue hardy_w(const QuadraticForm& form, double t,
                   const EvalConfig& config = {});

/// Dirichlet-polynomial approximation to zeta_Q(1/2 + it): plain sum to X,
/// log-weighted sum over (X, 2X], and the explicit boundary term; valid
/// for t >= 2, X >= t^2. err_scale carries the theoretical error size
/// t X^{-1/2} alongside the value.
struct CriticalLineApprox {
  std::complex<double> value;
  double err_scale = 0.0;
};

CriticalLineApprox approx_critical_line(const QuadraticForm& form, double t,
                                        double X, const EvalConfig& config = {});

namespace detail {

/// E(s, x) = Integral_1^inf e^{-xu} u^{s-1} du by adaptive quadrature
/// along a rotated ray through the steepest-descent direction at u = 1.
struct IncompleteE {
  std::complex<double> value;
  double est_err;
};
IncompleteE incomplete_e(std::complex<double> s, double x, double rel_tol);

struct CoreValue {
  std::complex<double> zeta;
  double abs_est_on_lambda;  // absolute error estimate scaled to Lambda
  double rel_est;            // relative estimate on zeta
};

CoreValue zeta_core_theta(const QuadraticForm& form, std::complex<double> s,
                          const EvalConfig& config);
CoreValue zeta_core_eisenstein(const QuadraticForm& form, std::complex<double> s,
                               const EvalConfig& config);
CoreValue zeta_core(const QuadraticForm& form, std::complex<double> s,
                    const EvalConfig& config);

}  // namespace detail

}  // namespace epstein
