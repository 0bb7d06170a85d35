#pragma once

#include <complex>
#include <vector>

#include "epstein/config.hpp"

namespace epstein {

/// Modified Bessel K of complex order, scaled against the uniform
/// exponential smallness of imaginary-order Bessel functions:
///
///   scaled_bessel_k(mu, w) = exp(pi |Im mu| / 2) * K_mu(w).
///
/// The scaled function is O(1) throughout the oscillatory range w < |Im mu|
/// and decays like exp(pi|Im mu|/2 - w) beyond it, so it stays inside
/// double range wherever it matters.
struct ScaledBesselK {
  std::complex<double> value;
  double est_err = 0.0;
};

/// Single-point evaluation by saddle-point quadrature of
/// (1/2) Integral exp(-w cosh v + mu v) dv along the horizontal contour
/// through the saddle. Valid in the monotone regime |Im mu| / w <= ~0.98;
/// throws domain_error outside it.
ScaledBesselK scaled_bessel_k(std::complex<double> mu, double w, double rel_tol);

/// Scaled K values on the ladder w = spacing, 2*spacing, ..., count*spacing.
/// Points in the oscillatory regime are produced by one backward
/// integration of the Bessel ODE from a quadrature anchor above the
/// turning point; points beyond the anchor are evaluated directly.
/// When abs_errs is non-null it receives a per-point absolute error
/// estimate (accumulated drift at the moment each point was recorded).
std::vector<std::complex<double>> scaled_bessel_k_ladder(
    std::complex<double> mu, double spacing, std::int64_t count, double rel_tol,
    std::vector<double>* abs_errs = nullptr);

}  // namespace epstein
