#pragma once

#include <complex>
#include <functional>

#include "epstein/config.hpp"

namespace epstein {

struct QuadResult {
  std::complex<double> value;
  double est_err = 0.0;
  long evaluations = 0;
};

/// Adaptive Gauss-Kronrod 15(7) panel integration of f over [a, b].
/// Splits panels whose embedded error estimate exceeds the local share of
/// the tolerance; throws resource_error when max_panels is exhausted.
QuadResult integrate_gk(const std::function<std::complex<double>(double)>& f,
                        double a, double b, double abs_tol, double rel_tol,
                        int initial_panels = 1, long max_panels = 200000);

QuadResult integrate_gk_real(const std::function<double(double)>& f, double a,
                             double b, double abs_tol, double rel_tol,
                             int initial_panels = 1, long max_panels = 200000);

/// One non-adaptive GK15 application to f over [a, b]; returns the
/// Kronrod value and the |K15 - G7| error estimate.
QuadResult gk15_panel(const std::function<std::complex<double>(double)>& f,
                      double a, double b);

}  // namespace epstein
