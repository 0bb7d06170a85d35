#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "epstein/qform.hpp"

namespace oracle {

/// Riemann zeta via the Chebyshev-accelerated alternating series, carried
/// in long double so the acceleration weights stay in range up to heights
/// of a few thousand. Independent of the library's evaluation paths.
std::complex<double> riemann_zeta(std::complex<double> s);

/// Dirichlet beta (the L-series mod 4) by the same acceleration.
std::complex<double> dirichlet_beta(std::complex<double> s);

/// Factorization oracle for discriminant 4: zeta_{x^2+y^2}(s) = 4 zeta(s) beta(s).
std::complex<double> zeta_q_disc4(std::complex<double> s);

/// Brute-force lattice sum sum'_{|x|,|y| <= box} Q(x,y)^{-s}.
std::complex<double> lattice_sum(const epstein::QuadraticForm& form,
                                 std::complex<double> s, long box);

/// Brute-force representation count of n by full enumeration.
long rep_count_brute(const epstein::QuadraticForm& form, long n);

/// Real rotations whose sign changes mark the critical zeros of zeta and
/// beta respectively.
double hardy_z_riemann(double t);
double hardy_z_beta(double t);

/// All sign-change zeros of f on [a, b] scanned at the given step and
/// bisected to 1e-9.
std::vector<double> scan_function_zeros(const std::function<double(double)>& f,
                                        double a, double b, double step);

}  // namespace oracle
