#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>
#include <vector>

#include "epstein/kbessel.hpp"
#include "epstein/rzeta.hpp"
#include "epstein/special.hpp"
#include "epstein/zeta.hpp"

namespace epstein::detail {

namespace {

using cplx = std::complex<double>;

const std::vector<std::uint32_t>& divisors_of(std::uint32_t n) {
  static std::mutex mu;
  static std::vector<std::vector<std::uint32_t>> cache;  // cache[n-1]
  std::lock_guard<std::mutex> lock(mu);
  if (cache.size() < n) cache.resize(n);
  auto& slot = cache[n - 1];
  if (slot.empty()) {
    for (std::uint32_t d = 1; d * d <= n; ++d) {
      if (n % d == 0) {
        slot.push_back(d);
        if (d != n / d) slot.push_back(n / d);
      }
    }
    std::sort(slot.begin(), slot.end());
  }
  return slot;
}

cplx sigma_power(std::uint32_t n, cplx nu) {
  cplx acc = 0.0;
  for (std::uint32_t d : divisors_of(n))
    acc += std::exp(nu * std::log(static_cast<double>(d)));
  return acc;
}

}  // namespace

// Fourier expansion of the associated lattice sum: with z = (b + i sqrt(disc)) / 2a,
// y = Im z, x = Re z,
//   zeta_Q(s) = (sqrt(disc)/2)^{-s} [ 2 zeta(2s) y^s
//     + 2 sqrt(pi) (Gamma(s-1/2)/Gamma(s)) zeta(2s-1) y^{1-s}
//     + (8 pi^s sqrt(y) / Gamma(s)) sum_n n^{s-1/2} sigma_{1-2s}(n)
//         cos(2 pi n x) K_{s-1/2}(2 pi n y) ].
// Every piece stays polynomially scaled at height: the 1/Gamma(s) prefactor
// carries e^{+pi t/2} which is cancelled analytically against the scaled
// Bessel values.
CoreValue zeta_core_eisenstein(const QuadraticForm& form, cplx s,
                               const EvalConfig& config) {
  const double disc = static_cast<double>(form.discriminant());
  const double y = std::sqrt(disc) / (2.0 * static_cast<double>(form.a));
  const double x0 = static_cast<double>(form.b) / (2.0 * static_cast<double>(form.a));
  const double logy = std::log(y);

  double ez1 = 0.0, ez2 = 0.0;
  const cplx z2s = riemann_zeta(2.0 * s, &ez1);
  const cplx z2s1 = riemann_zeta(2.0 * s - 1.0, &ez2);

  const cplx lg_s = log_gamma(s);
  const cplx term1 = 2.0 * z2s * std::exp(s * logy);
  const cplx term2 = 2.0 * std::sqrt(std::numbers::pi) *
                     std::exp(log_gamma(s - 0.5) - lg_s + (1.0 - s) * logy) * z2s1;

  // Bessel sum, assembled against the scaled K values.
  const cplx mu = s - 0.5;
  const double tau = std::abs(mu.imag());
  const double beta = 0.5 * std::numbers::pi * tau;
  const double spacing = 2.0 * std::numbers::pi * y;
  const double w_top = 1.02 * tau + 9.0 * std::cbrt(tau + 1.0) + 25.0 + 90.0 +
                       20.0 * std::max(0.0, 1.0 - 2.0 * s.real());
  const auto count = static_cast<std::int64_t>(std::ceil(w_top / spacing)) + 1;

  const double k_rtol = std::max(0.05 * config.target_rel_err, 1e-14);
  std::vector<double> k_errs;
  const auto kvals = scaled_bessel_k_ladder(mu, spacing, count, k_rtol, &k_errs);

  // Prefactor 8 pi^s sqrt(y) / Gamma(s), with e^{-beta} folded in so that
  // prefac * (scaled K) = true term.
  const cplx prefac = 8.0 * std::exp(s * std::log(std::numbers::pi) + 0.5 * logy - lg_s - beta);

  cplx ksum = 0.0;
  double ksum_abs = 0.0;
  double ksum_err = 0.0;
  for (std::int64_t n = 1; n <= count; ++n) {
    const cplx coef = std::exp(mu * std::log(static_cast<double>(n))) *
                      sigma_power(static_cast<std::uint32_t>(n), 1.0 - 2.0 * s) *
                      std::cos(2.0 * std::numbers::pi * static_cast<double>(n) * x0);
    const cplx term = coef * kvals[static_cast<std::size_t>(n - 1)];
    ksum += term;
    ksum_abs += std::abs(term);
    ksum_err += std::abs(coef) * k_errs[static_cast<std::size_t>(n - 1)];
  }
  const cplx term3 = prefac * ksum;

  const cplx bracket = term1 + term2 + term3;
  const cplx value = std::exp(-s * std::log(0.5 * std::sqrt(disc))) * bracket;

  CoreValue out;
  out.zeta = value;
  const double bracket_abs = std::max(std::abs(bracket), 1e-300);
  double rel = 0.0;
  rel += (2.0 * ez1 * std::exp(s.real() * logy)) / bracket_abs;
  rel += (std::abs(term2) / std::max(std::abs(z2s1), 1e-300)) * ez2 / bracket_abs;
  rel += std::abs(prefac) * (ksum_err + 2e-16 * ksum_abs) / bracket_abs;
  rel += 1e-15 * (1.0 + 0.05 * std::abs(lg_s));
  out.rel_est = 3.0 * rel;
  out.rel_est = std::max(out.rel_est, 1e-15);
  out.abs_est_on_lambda = out.rel_est;  // rescaled by |Lambda| in the wrapper
  return out;
}

}  // namespace epstein::detail
