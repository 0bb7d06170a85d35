#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "epstein/config.hpp"
#include "epstein/qform.hpp"
#include "epstein/zeta.hpp"

namespace epstein {

/// Smoothing parameter bundle with its defining relations as invariants:
/// L = 8 sqrt(log T), G = V / L, V Y = T^{1+eps}, and the admissible
/// window T^eps <= V <= T^{1/2-eps} enforced by make_smoothing.
struct SmoothingParams {
  double T = 0.0;
  double V = 0.0;
  double eps = 0.0;
  double L = 0.0;
  double G = 0.0;
  double Y = 0.0;
};

SmoothingParams make_smoothing(double T, double V, double eps);

/// Gaussian-windowed integrals over [t - V/4, t + V/4]:
///   I1 = Integral |W(u)| e^{-(t-u)^2/G^2} du,
///   I2 = Integral  W(u)  e^{-(t-u)^2/G^2} du.
/// I1 >= |I2| always, with equality when W keeps one sign on the window.
struct SmoothedIntegrals {
  double i1 = 0.0;
  std::complex<double> i2;
};
SmoothedIntegrals smoothed_integrals(const QuadraticForm& form, double t,
                                     const SmoothingParams& p,
                                     const EvalConfig& config = {});

/// C^{J-1} plateau weight: 1 on [center-Y, center+Y], 0 outside
/// [center-2Y, center+2Y], polynomial smoothstep of order 2J-1 on each
/// transition band. Requires Y > 0 and J >= 2.
double eta_weight(double x, double center, double Y, int J);

/// Oscillatory integral with caller-attested first-derivative-test
/// hypotheses: amplitude/phase' monotonic and |phase'/amplitude| >= m.
struct OscillatoryProblem {
  std::function<double(double)> phase;      // F
  std::function<double(double)> amplitude;  // G
  double m = 0.0;
  double a = 0.0;
  double b = 0.0;
  bool hypotheses_attested = false;
};

struct OscillatoryBound {
  double integral_mod = 0.0;
  double bound = 0.0;
  bool pass = false;
};

/// |Integral_a^b G(x) e^{iF(x)} dx| by oscillation-aware quadrature
/// (panel phase increment capped at a quarter period), compared against
/// the certified bound 4/m.
OscillatoryBound oscillatory_bound_check(const OscillatoryProblem& problem,
                                         const EvalConfig& config = {});

/// Integral_T^{T+H} |zeta_Q(1/2 + it)| dt. H = 0 returns 0; otherwise
/// requires H >= (log T)^{0.1}.
double first_power_mean(const QuadraticForm& form, double T, double H,
                        const EvalConfig& config = {});

/// Continued-fraction convergent k/h of sqrt(disc) (exact integer surd
/// recurrence) whose denominator h is closest to h_target.
///
/// err_h2 carries err * h^2 computed exactly through the surd identity
/// k^2 - disc h^2 = (-1)^(i+1) d_{i+1}; beyond the ~15th convergent the
/// raw err underflows double resolution while err_h2 stays exact.
/// fits_int64 marks entries whose h, k are exactly representable; beyond
/// that the integer fields saturate and only err_h2 remains meaningful.
struct RationalApprox {
  std::int64_t h = 1;   // denominator
  std::int64_t k = 1;   // numerator
  double err = 0.0;     // |sqrt(disc) - k/h|
  double err_h2 = 0.0;  // err * h^2, exact-recurrence value
  bool fits_int64 = true;
};

RationalApprox cf_approx(std::int64_t disc, double h_target);
std::vector<RationalApprox> cf_convergents(std::int64_t disc, int count);

/// phi(x) = arcsinh(sqrt(x)) + sqrt(x + x^2) and its derivative
/// sqrt(1 + 1/x).
double phi(double x);
double phi_deriv(double x);

/// n_j = disc0 h^2 m_j^2 / M_j for j = 1, 2.
std::pair<double, double> n_j_values(double disc0, std::int64_t h, double m1,
                                     double m2, double M1, double M2);

/// Phase F(x) = 2x (phi(C2 m / x) - phi(C2 n / x)) of the off-diagonal
/// oscillatory integrals, its closed-form derivative
/// 2 arcsinh(sqrt(C2 m / x)) - 2 arcsinh(sqrt(C2 n / x)), and the matching
/// amplitude ((1 + C2 m / x)(1 + C2 n / x))^{-1/4}.
double phase_F(double C2, double m, double n, double x);
double phase_deriv_F(double C2, double m, double n, double x);
double phase_amplitude(double C2, double m, double n, double x);

/// sum_{n <= x} r_Q(n)^2.
double mean_square_coeffs(const QuadraticForm& form, double x,
                          const EvalConfig& config = {});

/// Modular inverse of a mod k (extended Euclid); requires gcd(a, k) = 1.
std::int64_t mod_inverse(std::int64_t a, std::int64_t k);

/// Documented scaffolding for the transformation-formula constants:
/// C1 = hbar * disc0bar / k - 1/(2 h k disc0) and C2 = pi / (2 h k disc0).
/// These are carried for exploratory use only and take part in no
/// asserted identity (the full transformed sum is out of scope).
double c1_constant(std::int64_t h, std::int64_t k, std::int64_t disc0);
double c2_constant(std::int64_t h, std::int64_t k, std::int64_t disc0);

}  // namespace epstein
