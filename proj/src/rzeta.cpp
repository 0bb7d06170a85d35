#include "epstein/rzeta.hpp"

#include <cmath>
#include <vector>

namespace epstein {

namespace {

using cplx = std::complex<double>;

// B_{2j} / (2j)! for the Euler-Maclaurin tail, j = 1..16.
const std::vector<double>& bernoulli_over_factorial() {
  static const std::vector<double> table = [] {
    const double b2j[] = {1.0 / 6, -1.0 / 30, 1.0 / 42, -1.0 / 30, 5.0 / 66,
                          -691.0 / 2730, 7.0 / 6, -3617.0 / 510, 43867.0 / 798,
                          -174611.0 / 330, 854513.0 / 138, -236364091.0 / 2730,
                          8553103.0 / 6, -23749461029.0 / 870,
                          8615841276005.0 / 14322, -7709321041217.0 / 510};
    std::vector<double> out;
    double fact = 1.0;
    for (int j = 1; j <= 16; ++j) {
      fact *= (2.0 * j - 1.0) * (2.0 * j);
      out.push_back(b2j[j - 1] / fact);
    }
    return out;
  }();
  return table;
}

}  // namespace

std::complex<double> riemann_zeta(std::complex<double> s, double* est_err) {
  if (std::abs(s - cplx(1.0, 0.0)) < 1e-13)
    throw domain_error("riemann_zeta pole at s = 1");

  const double height = std::abs(s.imag());
  const long n_cut = std::lround(std::max(18.0, 0.62 * height + 12.0));

  cplx sum = 0.0;
  for (long n = 1; n < n_cut; ++n) {
    sum += std::exp(-s * std::log(static_cast<double>(n)));
  }
  const double logN = std::log(static_cast<double>(n_cut));
  const cplx n_pow = std::exp(-s * logN);  // N^{-s}
  sum += n_pow * static_cast<double>(n_cut) / (s - 1.0) + 0.5 * n_pow;

  // Tail: sum_j B_{2j}/(2j)! * s(s+1)...(s+2j-2) * N^{-s-2j+1}.
  const auto& coeff = bernoulli_over_factorial();
  cplx rising = s;                       // s(s+1)...(s+2j-2)
  cplx scale = n_pow / static_cast<double>(n_cut);  // N^{-s-2j+1} at j=1
  const double inv_n2 = 1.0 / (static_cast<double>(n_cut) * n_cut);
  double last = 1e300;
  double est = 0.0;
  for (std::size_t j = 0; j < coeff.size(); ++j) {
    const cplx term = coeff[j] * rising * scale;
    const double mag = std::abs(term);
    if (mag > last) {  // divergent tail reached; previous term bounds the error
      est = last;
      break;
    }
    sum += term;
    est = mag;
    last = mag;
    if (mag < 1e-18 * std::abs(sum)) break;
    rising *= (s + cplx(2.0 * j + 1.0)) * (s + cplx(2.0 * j + 2.0));
    scale *= inv_n2;
  }

  if (est_err) *est_err = 2.0 * est + 4e-16 * n_cut * std::abs(sum);
  return sum;
}

}  // namespace epstein
