#pragma once

#include <complex>

#include "epstein/config.hpp"

namespace epstein {

/// Principal-branch log Gamma for complex s, via the Stirling series with
/// argument shifting until Re s is large enough for uniform accuracy.
/// Throws domain_error within 1e-12 of the poles s = 0, -1, -2, ...
std::complex<double> log_gamma(std::complex<double> s);

/// Riemann functional-equation factor
///   chi(s) = 2^s pi^(s-1) sin(pi s / 2) Gamma(1 - s),
/// evaluated through the equivalent pole-cancelling form
///   pi^(s-1/2) Gamma((1-s)/2) / Gamma(s/2),
/// which stays finite across even integers where sin and Gamma poles
/// cancel. Throws domain_error within 1e-6 of the genuine poles at odd
/// positive integers.
std::complex<double> chi(std::complex<double> s);

}  // namespace epstein
