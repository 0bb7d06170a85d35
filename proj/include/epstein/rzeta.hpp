#pragma once

#include <complex>

#include "epstein/config.hpp"

namespace epstein {

/// Riemann zeta by Euler-Maclaurin summation; usable over the whole plane
/// at moderate heights (cost grows linearly with |Im s|). If est_err is
/// non-null it receives an absolute error estimate.
std::complex<double> riemann_zeta(std::complex<double> s, double* est_err = nullptr);

}  // namespace epstein
