#include "epstein/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>

#include "epstein/quadrature.hpp"

namespace epstein {

SmoothingParams make_smoothing(double T, double V, double eps) {
  if (!(T >= 100.0)) throw argument_error("make_smoothing requires T >= 100");
  if (!(eps > 0.0)) throw domain_error("make_smoothing requires eps > 0");
  const double v_lo = std::pow(T, eps);
  const double v_hi = std::pow(T, 0.5 - eps);
  if (!(V >= v_lo && V <= v_hi))
    throw domain_error("V outside the admissible window [T^eps, T^(1/2-eps)]");
  SmoothingParams p;
  p.T = T;
  p.V = V;
  p.eps = eps;
  p.L = 8.0 * std::sqrt(std::log(T));
  p.G = V / p.L;
  p.Y = std::pow(T, 1.0 + eps) / V;
  return p;
}

SmoothedIntegrals smoothed_integrals(const QuadraticForm& form, double t,
                                     const SmoothingParams& p,
                                     const EvalConfig& config) {
  if (!(p.V > 0.0 && p.G > 0.0)) throw argument_error("smoothing params not initialized");
  const double a = t - p.V / 4.0;
  const double b = t + p.V / 4.0;
  if (a < 0.0 || b > config.reliable_height)
    throw domain_error("smoothing window outside reliable range");

  // One W evaluation per node, shared between both integrals.
  std::map<double, double> memo;
  auto w_at = [&](double u) {
    auto it = memo.find(u);
    if (it != memo.end()) return it->second;
    const double w = hardy_w(form, u, config).w;
    memo.emplace(u, w);
    return w;
  };
  auto weight = [&](double u) {
    const double d = (t - u) / p.G;
    return std::exp(-d * d);
  };

  // >= 15 nodes per unit length and per Gaussian width.
  const int panels = static_cast<int>(std::ceil((b - a) / std::min(1.0, p.G))) + 1;
  auto i1 = integrate_gk_real([&](double u) { return std::abs(w_at(u)) * weight(u); },
                              a, b, 0.0, 1e-8, panels);
  auto i2 = integrate_gk_real([&](double u) { return w_at(u) * weight(u); }, a, b,
                              0.0, 1e-8, panels);
  SmoothedIntegrals out;
  out.i1 = i1.value.real();
  out.i2 = i2.value;
  return out;
}

namespace {

double binomial(int n, int k) {
  double acc = 1.0;
  for (int i = 1; i <= k; ++i) acc = acc * (n - k + i) / i;
  return acc;
}

// Generalized smoothstep S_N on [0,1]: first N derivatives vanish at both
// endpoints; polynomial degree 2N+1.
double smoothstep(int N, double u) {
  if (u <= 0.0) return 0.0;
  if (u >= 1.0) return 1.0;
  double acc = 0.0;
  for (int k = 0; k <= N; ++k) {
    acc += binomial(N + k, k) * binomial(2 * N + 1, N - k) *
           ((k % 2) ? -1.0 : 1.0) * std::pow(u, k);
  }
  return acc * std::pow(u, N + 1);
}

}  // namespace

double eta_weight(double x, double center, double Y, int J) {
  if (!(Y > 0.0)) throw argument_error("eta_weight requires Y > 0");
  if (J < 2) throw argument_error("eta_weight requires J >= 2");
  const double d = std::abs(x - center);
  if (d <= Y) return 1.0;
  if (d >= 2.0 * Y) return 0.0;
  return smoothstep(J - 1, (2.0 * Y - d) / Y);
}

OscillatoryBound oscillatory_bound_check(const OscillatoryProblem& problem,
                                         const EvalConfig& config) {
  (void)config;
  if (!problem.hypotheses_attested)
    throw argument_error("oscillatory_bound_check requires attested hypotheses");
  if (!(problem.m > 0.0)) throw argument_error("derivative-ratio bound m must be > 0");
  if (!(problem.a < problem.b)) throw argument_error("interval must satisfy a < b");

  // Split until each panel spans at most a quarter period of the phase,
  // then integrate each panel adaptively.
  struct Seg {
    double a, b;
  };
  std::vector<Seg> stack{{problem.a, problem.b}};
  std::vector<Seg> panels;
  const double min_len = (problem.b - problem.a) * 1e-10;
  while (!stack.empty()) {
    Seg s = stack.back();
    stack.pop_back();
    const double df = std::abs(problem.phase(s.b) - problem.phase(s.a));
    const double mid_f = problem.phase(0.5 * (s.a + s.b));
    const double df_half = std::abs(mid_f - problem.phase(s.a)) +
                           std::abs(problem.phase(s.b) - mid_f);
    if ((df <= 0.5 * std::numbers::pi && df_half <= 0.5 * std::numbers::pi &&
         s.b - s.a <= 0.25 * (problem.b - problem.a)) ||
        s.b - s.a < min_len) {
      panels.push_back(s);
    } else {
      const double mid = 0.5 * (s.a + s.b);
      stack.push_back({s.a, mid});
      stack.push_back({mid, s.b});
    }
  }

  std::complex<double> total = 0.0;
  for (const auto& seg : panels) {
    auto piece = integrate_gk(
        [&](double x) {
          return problem.amplitude(x) *
                 std::exp(std::complex<double>(0.0, problem.phase(x)));
        },
        seg.a, seg.b, 1e-12, 1e-9, 1);
    total += piece.value;
  }

  OscillatoryBound out;
  out.integral_mod = std::abs(total);
  out.bound = 4.0 / problem.m;
  out.pass = out.integral_mod <= out.bound * (1.0 + 1e-9);
  return out;
}

double first_power_mean(const QuadraticForm& form, double T, double H,
                        const EvalConfig& config) {
  if (H == 0.0) return 0.0;
  if (!(H > 0.0)) throw argument_error("first_power_mean requires H >= 0");
  if (H < std::pow(std::log(T), 0.1))
    throw domain_error("first_power_mean requires H >= (log T)^0.1");
  if (T + H > config.reliable_height)
    throw domain_error("first_power_mean range exceeds reliable height");

  auto f = [&](double t) {
    return std::abs(zeta_q(form, std::complex<double>(0.5, t), config).zeta);
  };
  const int panels = static_cast<int>(std::ceil(H)) + 1;
  const double rel = std::clamp(200.0 * config.target_rel_err, 1e-8, 1e-4);
  auto res = integrate_gk_real(f, T, T + H, 0.0, rel, panels);
  return res.value.real();
}

namespace {

std::int64_t isqrt_ll(std::int64_t n) {
  auto r = static_cast<std::int64_t>(std::sqrt(static_cast<double>(n)));
  while (r > 0 && r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

}  // namespace

std::vector<RationalApprox> cf_convergents(std::int64_t disc, int count) {
  if (disc < 2) throw argument_error("cf_convergents requires disc >= 2");
  const std::int64_t a0 = isqrt_ll(disc);
  if (a0 * a0 == disc) throw domain_error("cf_convergents requires a non-square disc");

  const double root = std::sqrt(static_cast<double>(disc));
  std::vector<RationalApprox> out;
  // Surd recurrence (m, d, a) in exact integers; convergents p/q carried
  // in 128-bit so deep convergents of large discriminants stay exact.
  std::int64_t m = 0, d = 1, a = a0;
  __int128 p_prev = 1, p_cur = a0, q_prev = 0, q_cur = 1;
  constexpr std::int64_t kMaxI64 = std::numeric_limits<std::int64_t>::max();
  constexpr __int128 kGuard = static_cast<__int128>(1) << 120;

  auto emit = [&](std::int64_t d_next) {
    RationalApprox row;
    row.fits_int64 = p_cur <= static_cast<__int128>(kMaxI64) &&
                     q_cur <= static_cast<__int128>(kMaxI64);
    row.h = row.fits_int64 ? static_cast<std::int64_t>(q_cur) : kMaxI64;
    row.k = row.fits_int64 ? static_cast<std::int64_t>(p_cur) : kMaxI64;
    const double ratio = static_cast<double>(p_cur) / static_cast<double>(q_cur);
    // |sqrt(disc) - p/q| * q^2 = d_{i+1} / (sqrt(disc) + p/q), exactly.
    row.err_h2 = static_cast<double>(d_next) / (root + ratio);
    const double hd = static_cast<double>(q_cur);
    row.err = row.err_h2 / (hd * hd);
    out.push_back(row);
  };

  // d of the NEXT step is needed for the identity, so advance the surd
  // state before emitting each convergent.
  std::int64_t m_next = d * a - m;
  std::int64_t d_next = (disc - m_next * m_next) / d;
  emit(d_next);
  while (static_cast<int>(out.size()) < count) {
    m = m_next;
    d = d_next;
    a = (a0 + m) / d;
    const __int128 p_new = static_cast<__int128>(a) * p_cur + p_prev;
    const __int128 q_new = static_cast<__int128>(a) * q_cur + q_prev;
    if (p_new > kGuard || q_new > kGuard) break;
    p_prev = p_cur;
    p_cur = p_new;
    q_prev = q_cur;
    q_cur = q_new;
    m_next = d * a - m;
    d_next = (disc - m_next * m_next) / d;
    emit(d_next);
  }
  return out;
}

RationalApprox cf_approx(std::int64_t disc, double h_target) {
  if (!(h_target >= 1.0)) throw argument_error("cf_approx requires h_target >= 1");
  auto all = cf_convergents(disc, 64);
  const RationalApprox* best = nullptr;
  for (const auto& cand : all) {
    if (!cand.fits_int64) break;
    if (!best) {
      best = &cand;
      continue;
    }
    const double d_new = std::abs(std::log(static_cast<double>(cand.h) / h_target));
    const double d_old = std::abs(std::log(static_cast<double>(best->h) / h_target));
    if (d_new < d_old || (d_new == d_old && cand.err < best->err)) best = &cand;
  }
  return *best;
}

double phi(double x) {
  if (x < 0.0) throw domain_error("phi requires x >= 0");
  return std::asinh(std::sqrt(x)) + std::sqrt(x + x * x);
}

double phi_deriv(double x) {
  if (x < 0.0) throw domain_error("phi_deriv requires x >= 0");
  return std::sqrt(1.0 + 1.0 / x);
}

std::pair<double, double> n_j_values(double disc0, std::int64_t h, double m1,
                                     double m2, double M1, double M2) {
  if (!(disc0 > 0) || h < 1 || !(m1 > 0) || !(m2 > 0) || !(M1 > 0) || !(M2 > 0))
    throw argument_error("n_j_values requires positive arguments");
  const double h2 = static_cast<double>(h) * static_cast<double>(h);
  return {disc0 * h2 * m1 * m1 / M1, disc0 * h2 * m2 * m2 / M2};
}

double phase_F(double C2, double m, double n, double x) {
  if (!(C2 > 0) || !(m > 0) || !(n > 0) || !(x > 0))
    throw domain_error("phase_F requires positive arguments");
  return 2.0 * x * (phi(C2 * m / x) - phi(C2 * n / x));
}

double phase_deriv_F(double C2, double m, double n, double x) {
  if (!(C2 > 0) || !(m > 0) || !(n > 0) || !(x > 0))
    throw domain_error("phase_deriv_F requires positive arguments");
  return 2.0 * std::asinh(std::sqrt(C2 * m / x)) -
         2.0 * std::asinh(std::sqrt(C2 * n / x));
}

double phase_amplitude(double C2, double m, double n, double x) {
  if (!(C2 > 0) || !(m > 0) || !(n > 0) || !(x > 0))
    throw domain_error("phase_amplitude requires positive arguments");
  return std::pow((1.0 + C2 * m / x) * (1.0 + C2 * n / x), -0.25);
}

double mean_square_coeffs(const QuadraticForm& form, double x,
                          const EvalConfig& config) {
  if (!(x >= 1.0)) throw argument_error("mean_square_coeffs requires x >= 1");
  const auto limit = static_cast<std::int64_t>(std::floor(x));
  if (static_cast<std::size_t>(limit) * sizeof(std::uint32_t) > config.max_table_bytes)
    throw resource_error("mean_square_coeffs exceeds rep-count budget");
  auto table = rep_counts_cached(form, limit, config.max_table_bytes);
  double acc = 0.0;
  for (std::int64_t n = 1; n <= limit; ++n) {
    const double r = table->r(n);
    acc += r * r;
  }
  return acc;
}

std::int64_t mod_inverse(std::int64_t a, std::int64_t k) {
  if (k < 1) throw argument_error("mod_inverse requires k >= 1");
  std::int64_t r0 = k, r1 = ((a % k) + k) % k;
  std::int64_t s0 = 0, s1 = 1;
  while (r1 != 0) {
    const std::int64_t q = r0 / r1;
    r0 -= q * r1;
    std::swap(r0, r1);
    s0 -= q * s1;
    std::swap(s0, s1);
  }
  if (r0 != 1) throw argument_error("mod_inverse requires gcd(a, k) = 1");
  return ((s0 % k) + k) % k;
}

double c1_constant(std::int64_t h, std::int64_t k, std::int64_t disc0) {
  const double hbar = static_cast<double>(mod_inverse(h, k));
  const double d0bar = static_cast<double>(mod_inverse(disc0, k));
  return hbar * d0bar / static_cast<double>(k) -
         1.0 / (2.0 * static_cast<double>(h) * static_cast<double>(k) *
                static_cast<double>(disc0));
}

double c2_constant(std::int64_t h, std::int64_t k, std::int64_t disc0) {
  if (h < 1 || k < 1 || disc0 < 1) throw argument_error("c2_constant requires positive arguments");
  return std::numbers::pi / (2.0 * static_cast<double>(h) * static_cast<double>(k) *
                             static_cast<double>(disc0));
}

}  // namespace epstein
