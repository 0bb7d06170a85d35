#include "epstein/kbessel.hpp"

#include <algorithm>
#include <cmath>

#include "epstein/quadrature.hpp"

namespace epstein {

namespace {

using cplx = std::complex<double>;

constexpr double kPi = 3.14159265358979323846;

struct SaddleFrame {
  cplx saddle;        // asinh(mu / w)
  double log_peak;    // Re g at the saddle
  double width;       // 1 / sqrt(|g''(saddle)|)
  double scale_beta;  // pi |Im mu| / 2
};

// g(v) = -w cosh v + mu v
inline cplx g_of(cplx mu, double w, cplx v) { return -w * std::cosh(v) + mu * v; }

SaddleFrame make_frame(cplx mu, double w) {
  SaddleFrame fr;
  fr.saddle = std::asinh(mu / w);
  fr.log_peak = g_of(mu, w, fr.saddle).real();
  const double g2 = std::abs(w * std::cosh(fr.saddle));
  fr.width = 1.0 / std::sqrt(std::max(g2, 1e-12));
  fr.scale_beta = 0.5 * kPi * std::abs(mu.imag());
  return fr;
}

// Integrates weight(v) exp(g(v) - log_peak) along Im v = Im saddle,
// extending symmetric blocks outward until the integrand is dead.
cplx contour_integral(cplx mu, double w, const SaddleFrame& fr, bool derivative,
                      double rel_tol, double* est) {
  const double theta = fr.saddle.imag();
  const double x0 = fr.saddle.real();
  auto f = [&](double x) -> cplx {
    const cplx v(x, theta);
    const cplx e = std::exp(g_of(mu, w, v) - fr.log_peak);
    return derivative ? e * std::cosh(v) : e;
  };

  double span = 5.0 * fr.width;
  cplx total = 0.0;
  double err = 0.0;
  const double tol = std::max(0.5 * rel_tol, 3e-14);
  auto piece = integrate_gk(f, x0 - span, x0 + span, 0.0, tol, 4);
  total = piece.value;
  err = piece.est_err;
  // Extend outward until both flanks contribute nothing.
  double lo = x0 - span, hi = x0 + span;
  for (int block = 0; block < 60; ++block) {
    const double step = span * (1 << std::min(block, 4));
    bool active = false;
    if (std::abs(f(hi)) > 1e-18 || g_of(mu, w, {hi + step, theta}).real() - fr.log_peak > -45.0) {
      auto right = integrate_gk(f, hi, hi + step, 1e-18, tol, 2);
      total += right.value;
      err += right.est_err;
      hi += step;
      active = true;
    }
    if (std::abs(f(lo)) > 1e-18 || g_of(mu, w, {lo - step, theta}).real() - fr.log_peak > -45.0) {
      auto left = integrate_gk(f, lo - step, lo, 1e-18, tol, 2);
      total += left.value;
      err += left.est_err;
      lo -= step;
      active = true;
    }
    if (!active) break;
  }
  if (est) *est = err;
  return total;
}

struct AnchorValues {
  cplx k;       // scaled K at the anchor
  cplx kprime;  // scaled K' at the anchor
  double est;
};

AnchorValues anchored_values(cplx mu, double w, double rel_tol) {
  const SaddleFrame fr = make_frame(mu, w);
  double e1 = 0.0, e2 = 0.0;
  const cplx base = contour_integral(mu, w, fr, false, rel_tol, &e1);
  const cplx dbas = contour_integral(mu, w, fr, true, rel_tol, &e2);
  const double log_scale = fr.log_peak + fr.scale_beta;
  const double amp = 0.5 * std::exp(log_scale);
  AnchorValues out;
  out.k = amp * base;
  out.kprime = -amp * dbas;
  out.est = amp * (e1 + e2) + 1e-16 * std::abs(out.k);
  return out;
}

double anchor_point(double tau) {
  return 1.02 * tau + 9.0 * std::cbrt(tau + 1.0) + 25.0;
}

// Dormand-Prince 5(4) coefficients.
constexpr double kA21 = 1.0 / 5;
constexpr double kA31 = 3.0 / 40, kA32 = 9.0 / 40;
constexpr double kA41 = 44.0 / 45, kA42 = -56.0 / 15, kA43 = 32.0 / 9;
constexpr double kA51 = 19372.0 / 6561, kA52 = -25360.0 / 2187,
                 kA53 = 64448.0 / 6561, kA54 = -212.0 / 729;
constexpr double kA61 = 9017.0 / 3168, kA62 = -355.0 / 33, kA63 = 46732.0 / 5247,
                 kA64 = 49.0 / 176, kA65 = -5103.0 / 18656;
constexpr double kB1 = 35.0 / 384, kB3 = 500.0 / 1113, kB4 = 125.0 / 192,
                 kB5 = -2187.0 / 6784, kB6 = 11.0 / 84;
constexpr double kE1 = 71.0 / 57600, kE3 = -71.0 / 16695, kE4 = 71.0 / 1920,
                 kE5 = -17253.0 / 339200, kE6 = 22.0 / 525, kE7 = -1.0 / 40;

}  // namespace

ScaledBesselK scaled_bessel_k(std::complex<double> mu, double w, double rel_tol) {
  if (!(w > 0)) throw domain_error("scaled_bessel_k requires w > 0");
  const double tau = std::abs(mu.imag());
  if (tau / w > 0.985)
    throw domain_error("scaled_bessel_k single-point mode requires w above the turning point");
  const SaddleFrame fr = make_frame(mu, w);
  double est = 0.0;
  const cplx base = contour_integral(mu, w, fr, false, rel_tol, &est);
  const double amp = 0.5 * std::exp(fr.log_peak + fr.scale_beta);
  return ScaledBesselK{amp * base, amp * est + 1e-16 * amp * std::abs(base)};
}

std::vector<std::complex<double>> scaled_bessel_k_ladder(std::complex<double> mu,
                                                         double spacing,
                                                         std::int64_t count,
                                                         double rel_tol,
                                                         std::vector<double>* abs_errs) {
  if (!(spacing > 0) || count < 1)
    throw argument_error("scaled_bessel_k_ladder needs positive spacing and count");

  std::vector<cplx> out(static_cast<std::size_t>(count));
  if (abs_errs) abs_errs->assign(static_cast<std::size_t>(count), 0.0);
  const double tau = std::abs(mu.imag());
  const double wa = anchor_point(tau);

  // Points at or above the anchor: direct saddle quadrature.
  std::int64_t first_direct = static_cast<std::int64_t>(std::ceil(wa / spacing));
  first_direct = std::min(first_direct, count + 1);
  for (std::int64_t j = first_direct; j <= count; ++j) {
    const double w = spacing * static_cast<double>(j);
    auto kv = scaled_bessel_k(mu, w, rel_tol);
    out[static_cast<std::size_t>(j - 1)] = kv.value;
    if (abs_errs) (*abs_errs)[static_cast<std::size_t>(j - 1)] = kv.est_err;
  }

  if (first_direct > 1) {
    // Backward ODE sweep from the anchor through the oscillatory range.
    const AnchorValues anchor = anchored_values(mu, wa, rel_tol);

    const cplx mu2 = mu * mu;
    auto rhs = [&mu2](double w, cplx y, cplx yp, cplx& dy, cplx& dyp) {
      const double iw = 1.0 / w;
      dy = yp;
      dyp = (1.0 + mu2 * (iw * iw)) * y - yp * iw;
    };
    auto freq = [&mu2](double w) {
      const cplx q = mu2 / (w * w);
      const double r = std::abs(1.0 + q.real()) + std::abs(q.imag());
      return std::sqrt(std::max(r, 1e-4));
    };

    cplx y = anchor.k, yp = anchor.kprime;
    double w = wa;
    std::int64_t next = first_direct - 1;  // next ladder index to record
    double h = -std::min(1.0, 0.35 / freq(w));
    cplx k1y, k1p;
    rhs(w, y, yp, k1y, k1p);
    long steps = 0;
    double acc_err = 0.0;

    while (next >= 1) {
      const double target = spacing * static_cast<double>(next);
      if (w + h < target) h = target - w;

      cplx k2y, k2p, k3y, k3p, k4y, k4p, k5y, k5p, k6y, k6p, k7y, k7p;
      rhs(w + kA21 * h, y + h * (kA21 * k1y), yp + h * (kA21 * k1p), k2y, k2p);
      rhs(w + 0.3 * h, y + h * (kA31 * k1y + kA32 * k2y),
          yp + h * (kA31 * k1p + kA32 * k2p), k3y, k3p);
      rhs(w + 0.8 * h, y + h * (kA41 * k1y + kA42 * k2y + kA43 * k3y),
          yp + h * (kA41 * k1p + kA42 * k2p + kA43 * k3p), k4y, k4p);
      rhs(w + 8.0 / 9.0 * h, y + h * (kA51 * k1y + kA52 * k2y + kA53 * k3y + kA54 * k4y),
          yp + h * (kA51 * k1p + kA52 * k2p + kA53 * k3p + kA54 * k4p), k5y, k5p);
      rhs(w + h,
          y + h * (kA61 * k1y + kA62 * k2y + kA63 * k3y + kA64 * k4y + kA65 * k5y),
          yp + h * (kA61 * k1p + kA62 * k2p + kA63 * k3p + kA64 * k4p + kA65 * k5p),
          k6y, k6p);
      const cplx y5 = y + h * (kB1 * k1y + kB3 * k3y + kB4 * k4y + kB5 * k5y + kB6 * k6y);
      const cplx y5p =
          yp + h * (kB1 * k1p + kB3 * k3p + kB4 * k4p + kB5 * k5p + kB6 * k6p);
      rhs(w + h, y5, y5p, k7y, k7p);
      const cplx err_y =
          h * (kE1 * k1y + kE3 * k3y + kE4 * k4y + kE5 * k5y + kE6 * k6y + kE7 * k7y);
      const cplx err_yp =
          h * (kE1 * k1p + kE3 * k3p + kE4 * k4p + kE5 * k5p + kE6 * k6p + kE7 * k7p);

      const double om = freq(w + h);
      const double inv_om2 = 1.0 / (om * om);
      const double env = std::sqrt(std::norm(y5) + std::norm(y5p) * inv_om2) + 1e-300;
      const double err = std::sqrt(0.5 * (std::norm(err_y) + std::norm(err_yp) * inv_om2));
      const double ratio = err / (rel_tol * env + 1e-300);

      if (ratio <= 1.0) {
        w += h;
        y = y5;
        yp = y5p;
        k1y = k7y;  // FSAL
        k1p = k7p;
        acc_err += err;
        if (std::abs(w - spacing * static_cast<double>(next)) < 1e-9 * std::max(1.0, w)) {
          out[static_cast<std::size_t>(next - 1)] = y;
          if (abs_errs) (*abs_errs)[static_cast<std::size_t>(next - 1)] = anchor.est + acc_err;
          --next;
        }
        if (++steps > 50'000'000) throw resource_error("bessel sweep exceeded step budget");
      }
      // Step update kept within [0.2, 5] of the previous step.
      double fac = 0.9 * std::pow(std::max(ratio, 1e-10), -0.2);
      fac = std::clamp(fac, 0.2, 5.0);
      h *= fac;
      const double hmax = std::max(0.05, 0.35 / freq(std::max(w + h, spacing)));
      if (-h > hmax) h = -hmax;
      if (-h < 1e-12 * w) h = -1e-12 * w;
    }
  }

  return out;
}

}  // namespace epstein
