#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "epstein/kbessel.hpp"
#include "epstein/rzeta.hpp"
#include "epstein/special.hpp"
#include "epstein/zeta.hpp"
#include "oracles.hpp"

using epstein::EvalConfig;
using epstein::QuadraticForm;
using cplx = std::complex<double>;

namespace {
double rel_diff(cplx a, cplx b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }
}  // namespace

TEST_CASE("complex log gamma against classical values") {
  CHECK(std::abs(std::exp(epstein::log_gamma({5.0, 0.0})) - 24.0) < 1e-12);
  CHECK(std::abs(std::exp(epstein::log_gamma({0.5, 0.0})) -
                 std::sqrt(std::numbers::pi)) < 1e-13);
  // |Gamma(it)|^2 = pi / (t sinh(pi t))
  const double t = 3.7;
  const double lhs = 2.0 * epstein::log_gamma({0.0, t}).real();
  const double rhs = std::log(std::numbers::pi / (t * std::sinh(std::numbers::pi * t)));
  CHECK(std::abs(lhs - rhs) < 1e-12);
  // Recurrence Gamma(s+1) = s Gamma(s) at a complex point.
  const cplx s(0.3, -2.2);
  CHECK(std::abs(epstein::log_gamma(s + 1.0) - epstein::log_gamma(s) - std::log(s)) < 1e-12);
  CHECK_THROWS_AS(epstein::log_gamma({-2.0, 0.0}), epstein::domain_error);
}

TEST_CASE("euler-maclaurin zeta against the alternating-series oracle") {
  std::mt19937_64 rng(0x5eed);
  std::uniform_real_distribution<double> sig(-2.0, 3.0), height(-80.0, 80.0);
  for (int i = 0; i < 40; ++i) {
    cplx s(sig(rng), height(rng));
    if (std::abs(s - cplx(1.0, 0.0)) < 0.1) continue;
    double est = 0.0;
    const cplx mine = epstein::riemann_zeta(s, &est);
    const cplx ref = oracle::riemann_zeta(s);
    CHECK(rel_diff(mine, ref) < 1e-11);
  }
  CHECK(std::abs(epstein::riemann_zeta({2.0, 0.0}) -
                 cplx(std::numbers::pi * std::numbers::pi / 6.0, 0.0)) < 1e-13);
  CHECK(std::abs(epstein::riemann_zeta({0.0, 0.0}) - cplx(-0.5, 0.0)) < 1e-13);
  CHECK_THROWS_AS(epstein::riemann_zeta({1.0, 0.0}), epstein::domain_error);
}

TEST_CASE("chi at the pinned points and the reflection identity") {
  CHECK(std::abs(epstein::chi({0.5, 0.0}) - cplx(1.0, 0.0)) < 1e-12);
  CHECK(std::abs(epstein::chi({-1.0, 0.0}) -
                 cplx(-1.0 / (2.0 * std::numbers::pi * std::numbers::pi), 0.0)) < 1e-13);

  // Cross-check zeta(-1) = chi(-1) zeta(2) = -1/12 with oracle zeta values.
  const cplx lhs = oracle::riemann_zeta({-1.0, 0.0});
  const cplx rhs = epstein::chi({-1.0, 0.0}) * oracle::riemann_zeta({2.0, 0.0});
  CHECK(std::abs(lhs - rhs) < 1e-13);
  CHECK(std::abs(lhs - cplx(-1.0 / 12.0, 0.0)) < 1e-13);

  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> re(0.05, 0.95), im(-60.0, 60.0);
  for (int i = 0; i < 60; ++i) {
    const cplx s(re(rng), im(rng));
    CHECK(std::abs(epstein::chi(s) * epstein::chi(1.0 - s) - 1.0) < 1e-10);
  }
  CHECK_THROWS_AS(epstein::chi({3.0, 0.0}), epstein::domain_error);
  CHECK_THROWS_AS(epstein::chi({1.0, 0.0}), epstein::domain_error);
  // Functional-equation consistency at a generic complex point.
  const cplx s(0.3, 7.0);
  CHECK(rel_diff(oracle::riemann_zeta(s),
                 epstein::chi(s) * oracle::riemann_zeta(1.0 - s)) < 1e-11);
}

TEST_CASE("scaled bessel k: half-integer closed form and regime consistency") {
  // K_{1/2}(x) = sqrt(pi/(2x)) e^{-x}; order 1/2 means s = 1 on the ladder.
  for (double x : {6.0, 11.5, 30.0}) {
    const auto got = epstein::scaled_bessel_k({0.5, 0.0}, x, 1e-12);
    const double want = std::sqrt(std::numbers::pi / (2.0 * x)) * std::exp(-x);
    CHECK(rel_diff(got.value, want) < 1e-11);
  }
  // K_0(1) and K_0(5) classical values.
  CHECK(rel_diff(epstein::scaled_bessel_k({0.0, 0.0}, 1.0, 1e-12).value,
                 0.42102443824070833333) < 1e-10);
  CHECK(rel_diff(epstein::scaled_bessel_k({0.0, 0.0}, 5.0, 1e-12).value,
                 3.6910983340425942763e-3) < 1e-10);

  // Ladder sweep matches single-point quadrature where both apply.
  for (double tau : {12.0, 40.0, 130.0}) {
    const cplx mu(0.25, tau);
    const double spacing = 2.0 * std::numbers::pi;
    const auto count = static_cast<std::int64_t>(
        std::ceil((1.02 * tau + 9.0 * std::cbrt(tau + 1.0) + 60.0) / spacing));
    std::vector<double> errs;
    const auto ladder = epstein::scaled_bessel_k_ladder(mu, spacing, count, 1e-12, &errs);
    int compared = 0;
    for (std::int64_t j = count; j >= 1; --j) {
      const double w = spacing * static_cast<double>(j);
      if (tau / w > 0.9) break;
      const auto single = epstein::scaled_bessel_k(mu, w, 1e-13);
      if (std::abs(single.value) < 1e-280) continue;
      CHECK(rel_diff(ladder[static_cast<std::size_t>(j - 1)], single.value) < 1e-8);
      ++compared;
    }
    CHECK(compared >= 1);
  }
}

TEST_CASE("dirichlet series: factorization oracle, dominance, lattice sum") {
  EvalConfig cfg;
  const QuadraticForm id(1, 0, 1);

  const cplx at3 = epstein::dirichlet_series(id, {3.0, 0.0}, cfg);
  CHECK(rel_diff(at3, oracle::zeta_q_disc4({3.0, 0.0})) < 1e-10);

  const cplx big = epstein::dirichlet_series(id, {30.0, 0.0}, cfg);
  CHECK(std::abs(big - 4.0) < 1e-8);  // r(1) = 4 dominates

  const QuadraticForm hex(1, 1, 1);
  EvalConfig loose = cfg;
  loose.target_rel_err = 2e-6;  // sigma = 2 tail decays like 1/N
  const cplx at2 = epstein::dirichlet_series(hex, {2.0, 0.0}, loose);
  CHECK(std::abs(at2 - oracle::lattice_sum(hex, {2.0, 0.0}, 200)) < 1e-4);

  CHECK_THROWS_AS(epstein::dirichlet_series(id, {1.1, 0.0}, cfg),
                  epstein::domain_error);
}

TEST_CASE("continuation agrees with the series in the half-plane") {
  EvalConfig cfg;
  for (const auto& form : {QuadraticForm(1, 0, 1), QuadraticForm(1, 1, 1),
                           QuadraticForm(1, 0, 57)}) {
    const cplx s(3.0, 0.0);
    const auto cont = epstein::zeta_q(form, s, cfg);
    const cplx series = epstein::dirichlet_series(form, s, cfg);
    CHECK(rel_diff(cont.zeta, series) < 1e-10);
  }
}

TEST_CASE("continuation matches the factorization oracle on and off the line") {
  EvalConfig cfg;
  const QuadraticForm id(1, 0, 1);
  // Spec desk point (Bessel-expansion route at t = 10).
  {
    const cplx s(0.75, 10.0);
    const auto got = epstein::zeta_q(id, s, cfg);
    CHECK(rel_diff(got.zeta, oracle::zeta_q_disc4(s)) < 1e-9);
  }
  // Incomplete-gamma route below the crossover.
  for (const cplx s : {cplx(0.5, 3.0), cplx(0.25, 6.5), cplx(1.6, 4.0), cplx(0.8, 0.0)}) {
    const auto got = epstein::zeta_q(id, s, cfg);
    CHECK(rel_diff(got.zeta, oracle::zeta_q_disc4(s)) < 1e-9);
  }
  // Bessel route at assorted heights.
  for (const cplx s : {cplx(0.5, 12.0), cplx(0.3, 35.0), cplx(1.4, 61.0),
                       cplx(0.9, 118.0), cplx(-0.5, 24.0)}) {
    const auto got = epstein::zeta_q(id, s, cfg);
    CHECK(rel_diff(got.zeta, oracle::zeta_q_disc4(s)) < 1e-9);
  }
}

TEST_CASE("crossover band: the two continuation routes agree") {
  EvalConfig low = EvalConfig{};
  low.crossover_height = 100.0;  // force incomplete-gamma route
  EvalConfig high = EvalConfig{};
  high.crossover_height = 0.5;  // force Bessel route
  for (const auto& form : {QuadraticForm(1, 0, 1), QuadraticForm(1, 1, 1),
                           QuadraticForm(1, 0, 57), QuadraticForm(2, 1, 3)}) {
    for (double t : {2.0, 5.0, 7.5}) {
      for (double sig : {0.5, 1.2, -0.3}) {
        const cplx s(sig, t);
        const auto a = epstein::zeta_q(form, s, low);
        const auto b = epstein::zeta_q(form, s, high);
        CHECK(rel_diff(a.zeta, b.zeta) < 1e-8);
      }
    }
  }
}

TEST_CASE("simple pole: residue recovered by richardson extrapolation") {
  EvalConfig cfg;
  for (const auto& form : {QuadraticForm(1, 0, 1), QuadraticForm(1, 1, 1),
                           QuadraticForm(1, 0, 57)}) {
    const double target = 2.0 * std::numbers::pi /
                          std::sqrt(static_cast<double>(form.discriminant()));
    const double d1 = 1e-3, d2 = 1e-4;
    const double r1 = (d1 * epstein::zeta_q(form, {1.0 + d1, 0.0}, cfg).zeta).real();
    const double r2 = (d2 * epstein::zeta_q(form, {1.0 + d2, 0.0}, cfg).zeta).real();
    CHECK(std::abs(r2 - target) / target < 5.0 * d2 * 10.0);
    const double extrap = (d1 * r2 - d2 * r1) / (d1 - d2);
    CHECK(std::abs(extrap - target) < 1e-6);
  }
}

TEST_CASE("functional equation residual within the reported estimate") {
  EvalConfig cfg;
  std::mt19937_64 rng(0xfeed);
  std::uniform_real_distribution<double> re(-1.0, 2.0), im(-200.0, 200.0);
  const QuadraticForm form(1, 1, 1);
  for (int i = 0; i < 25; ++i) {
    cplx s(re(rng), im(rng));
    if (std::abs(s) < 0.2 || std::abs(s - 1.0) < 0.2) continue;
    const auto a = epstein::zeta_q(form, s, cfg);
    const auto b = epstein::zeta_q(form, 1.0 - s, cfg);
    CHECK(std::abs(a.lambda - b.lambda) <= 10.0 * (a.est_err + b.est_err));
  }
}

TEST_CASE("hardy function: symmetry point, realness, first zeros bracketed") {
  EvalConfig cfg;
  const QuadraticForm id(1, 0, 1);

  const auto at0 = epstein::hardy_w(id, 0.0, cfg);
  CHECK(at0.im_residual <= 1e-10 * std::max(1.0, std::abs(at0.w)));

  // First beta zero near 6.0209 and first zeta zero near 14.1347 flip W.
  const auto beta_zero = oracle::scan_function_zeros(oracle::hardy_z_beta, 5.0, 7.0, 0.05);
  REQUIRE(beta_zero.size() == 1);
  CHECK(beta_zero[0] == doctest::Approx(6.0209).epsilon(1e-3));
  CHECK(epstein::hardy_w(id, beta_zero[0] - 0.05, cfg).w *
            epstein::hardy_w(id, beta_zero[0] + 0.05, cfg).w < 0.0);

  const auto zeta_zero =
      oracle::scan_function_zeros(oracle::hardy_z_riemann, 13.0, 15.0, 0.05);
  REQUIRE(zeta_zero.size() == 1);
  CHECK(zeta_zero[0] == doctest::Approx(14.1347).epsilon(1e-3));
  CHECK(epstein::hardy_w(id, zeta_zero[0] - 0.05, cfg).w *
            epstein::hardy_w(id, zeta_zero[0] + 0.05, cfg).w < 0.0);

  // W tracks the rotated oracle product, not just its sign.
  for (double t : {2.0, 9.0, 33.0, 77.0}) {
    const cplx s(0.5, t);
    const cplx f = std::exp(cplx(0.0, 0.5 * std::numbers::pi) * (0.5 - s) +
                            s * std::log(1.0 / std::numbers::pi) +
                            epstein::log_gamma(s)) *
                   oracle::zeta_q_disc4(s);
    const auto got = epstein::hardy_w(id, t, cfg);
    CHECK(std::abs(got.w - f.real()) < 1e-8 * std::max(1.0, std::abs(f.real())));
  }
}

TEST_CASE("hardy realness across sampled heights for each stock form") {
  EvalConfig cfg;
  std::mt19937_64 rng(0xabcd);
  std::uniform_real_distribution<double> heights(1.0, 500.0);
  for (const auto& form : {QuadraticForm(1, 0, 1), QuadraticForm(1, 1, 1),
                           QuadraticForm(1, 0, 57)}) {
    for (int i = 0; i < 12; ++i) {
      const double t = heights(rng);
      const auto val = epstein::hardy_w(form, t, cfg);
      CHECK(val.im_residual <= 1e-8 * std::max(1.0, std::abs(val.w)));
    }
  }
}

TEST_CASE("pole guards and height guard") {
  EvalConfig cfg;
  const QuadraticForm id(1, 0, 1);
  CHECK_THROWS_AS(epstein::zeta_q(id, {1.0, 0.0}, cfg), epstein::domain_error);
  CHECK_THROWS_AS(epstein::zeta_q(id, {0.0, 0.0}, cfg), epstein::domain_error);
  CHECK_THROWS_AS(epstein::zeta_q(id, {0.5, 4000.0}, cfg), epstein::domain_error);
  CHECK_THROWS_AS(epstein::hardy_w(id, 5000.0, cfg), epstein::domain_error);
}

TEST_CASE("critical-line approximation: precondition, oracle window, scaling") {
  EvalConfig cfg;
  const QuadraticForm id(1, 0, 1);
  CHECK_THROWS_AS(epstein::approx_critical_line(id, 50.0, 100.0, cfg),
                  epstein::domain_error);
  CHECK_THROWS_AS(epstein::approx_critical_line(id, 1.0, 100.0, cfg),
                  epstein::domain_error);

  // Boundary of the precondition: finite value, no error.
  const auto edge = epstein::approx_critical_line(QuadraticForm(1, 1, 1), 2.0, 4.0, cfg);
  CHECK(std::isfinite(edge.value.real()));
  CHECK(std::isfinite(edge.value.imag()));

  const double t = 50.0;
  double previous = 1e300;
  for (double X : {4.0 * t * t, 16.0 * t * t}) {
    const auto approx = epstein::approx_critical_line(id, t, X, cfg);
    const auto exact = epstein::zeta_q(id, {0.5, t}, cfg).zeta;
    const double resid = std::abs(approx.value - exact);
    CHECK(resid <= 10.0 * approx.err_scale);
    CHECK(resid < previous);
    previous = resid;
  }
}

TEST_CASE("extended accumulation mode matches and slightly beats double") {
  EvalConfig wide;
  wide.precision = epstein::Precision::extended;
  EvalConfig plain;
  const QuadraticForm hex(1, 1, 1);
  for (const cplx s : {cplx(0.6, 4.0), cplx(1.2, 7.5), cplx(0.8, 0.0)}) {
    const auto a = epstein::zeta_q(hex, s, plain);
    const auto b = epstein::zeta_q(hex, s, wide);
    CHECK(rel_diff(a.zeta, b.zeta) < 1e-10);
    CHECK(b.est_err <= a.est_err * 1.01);
  }
}
