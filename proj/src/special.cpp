#include "epstein/special.hpp"

#include <cmath>
#include <numbers>

namespace epstein {

namespace {

using cplx = std::complex<double>;

// B_{2j} / (2j (2j-1)) for the Stirling series, j = 1..9.
const double kStirling[] = {
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360360.0,
    1.0 / 156.0,
    -3617.0 / 122400.0,
    43867.0 / 244188.0,
};

constexpr double kHalfLog2Pi = 0.91893853320467274178;  // log(2 pi) / 2

cplx stirling_log_gamma(cplx s) {
  const cplx ls = std::log(s);
  cplx acc = (s - 0.5) * ls - s + kHalfLog2Pi;
  const cplx inv2 = 1.0 / (s * s);
  cplx p = 1.0 / s;
  for (double coeff : kStirling) {
    acc += coeff * p;
    p *= inv2;
  }
  return acc;
}

}  // namespace

std::complex<double> log_gamma(std::complex<double> s) {
  if (s.imag() == 0.0 && s.real() <= 0.0 &&
      std::abs(s.real() - std::round(s.real())) < 1e-12)
    throw domain_error("log_gamma pole at non-positive integer");

  cplx shift_sum = 0.0;
  // Shift until Stirling is uniformly ~1e-14; |s| >= 16 suffices once the
  // argument is away from the negative real axis, and Re s >= 12 covers
  // the rest of the strip we use.
  while (s.real() < 12.0 && std::abs(s) < 40.0) {
    shift_sum += std::log(s);
    s += 1.0;
  }
  return stirling_log_gamma(s) - shift_sum;
}

std::complex<double> chi(std::complex<double> s) {
  // Genuine poles: odd positive integers (Gamma((1-s)/2) poles that the
  // other factor does not cancel).
  const double re = s.real();
  if (std::abs(s.imag()) < 1e-6) {
    const double odd = 2.0 * std::floor((re - 1.0) / 2.0 + 0.5) + 1.0;
    if (odd >= 1.0 && std::abs(re - odd) < 1e-6)
      throw domain_error("chi pole near odd positive integer");
  }
  // Trivial zeros: s/2 at a non-positive integer.
  const cplx half_s = 0.5 * s;
  if (half_s.imag() == 0.0 && half_s.real() <= 0.0 &&
      std::abs(half_s.real() - std::round(half_s.real())) < 1e-12)
    return 0.0;

  const cplx exponent = (s - 0.5) * std::log(std::numbers::pi) +
                        log_gamma(0.5 * (1.0 - s)) - log_gamma(half_s);
  return std::exp(exponent);
}

}  // namespace epstein
