#include <doctest.h>

#include <cmath>
#include <numbers>

#include "epstein/qform.hpp"
#include "oracles.hpp"

using epstein::QuadraticForm;

TEST_CASE("discriminant of the stock forms") {
  CHECK(QuadraticForm(1, 0, 1).discriminant() == 4);
  CHECK(QuadraticForm(1, 1, 1).discriminant() == 3);
  CHECK(QuadraticForm(1, 0, 57).discriminant() == 228);
}

TEST_CASE("positive definiteness is enforced") {
  CHECK_THROWS_AS(QuadraticForm(0, 0, 1), epstein::argument_error);
  CHECK_THROWS_AS(QuadraticForm(1, 0, -1), epstein::argument_error);
  CHECK_THROWS_AS(QuadraticForm(1, 2, 1), epstein::argument_error);  // disc 0
  CHECK_THROWS_AS(QuadraticForm(-1, 0, -1), epstein::argument_error);
}

TEST_CASE("square discriminants are admitted but flagged") {
  CHECK(QuadraticForm(1, 0, 1).square_disc());      // disc 4
  CHECK_FALSE(QuadraticForm(1, 1, 1).square_disc());
  CHECK_FALSE(QuadraticForm(1, 0, 57).square_disc());
  CHECK(QuadraticForm(2, 0, 2).square_disc());      // disc 16
}

TEST_CASE("form parsing round-trips and rejects junk") {
  const auto f = QuadraticForm::parse("1,0,57");
  CHECK(f == QuadraticForm(1, 0, 57));
  CHECK(f.str() == "1,0,57");
  CHECK(QuadraticForm::parse(" 2 , -1 , 3 ") == QuadraticForm(2, -1, 3));
  CHECK_THROWS_AS(QuadraticForm::parse("1,0"), epstein::argument_error);
  CHECK_THROWS_AS(QuadraticForm::parse("a,b,c"), epstein::argument_error);
  CHECK_THROWS_AS(QuadraticForm::parse("1,0,1,9"), epstein::argument_error);
}

TEST_CASE("rep counts match known small values and the brute oracle") {
  const QuadraticForm id(1, 0, 1);
  const auto table = epstein::rep_counts(id, 5);
  CHECK(table.r(1) == 4);
  CHECK(table.r(2) == 4);
  CHECK(table.r(3) == 0);
  CHECK(table.r(4) == 4);
  CHECK(table.r(5) == 8);

  CHECK(epstein::rep_counts(QuadraticForm(1, 1, 1), 1).r(1) == 6);

  for (const auto& form : {QuadraticForm(1, 0, 1), QuadraticForm(1, 1, 1),
                           QuadraticForm(2, 1, 3), QuadraticForm(1, 0, 57)}) {
    const auto t = epstein::rep_counts(form, 60);
    for (long n = 1; n <= 60; ++n)
      CHECK(static_cast<long>(t.r(n)) == oracle::rep_count_brute(form, n));
  }
}

TEST_CASE("rep count table budget is enforced") {
  CHECK_THROWS_AS(epstein::rep_counts(QuadraticForm(1, 0, 1), 1 << 20, 1024),
                  epstein::resource_error);
  CHECK_THROWS_AS(epstein::rep_counts(QuadraticForm(1, 0, 1), 0),
                  epstein::argument_error);
}

TEST_CASE("adjoint form represents the same integers") {
  for (const auto& form : {QuadraticForm(1, 1, 1), QuadraticForm(2, 1, 3),
                           QuadraticForm(3, 2, 5)}) {
    const auto t1 = epstein::rep_counts(form, 200);
    const auto t2 = epstein::rep_counts(form.adjoint(), 200);
    for (long n = 1; n <= 200; ++n) CHECK(t1.r(n) == t2.r(n));
  }
}

TEST_CASE("lattice point totals track the ellipse area term") {
  for (const auto& form : {QuadraticForm(1, 0, 1), QuadraticForm(1, 1, 1),
                           QuadraticForm(1, 0, 57)}) {
    const long N = 20000;
    const auto t = epstein::rep_counts(form, N);
    double total = 0.0;
    for (long n = 1; n <= N; ++n) total += t.r(n);
    const double main = 2.0 * std::numbers::pi * N /
                        std::sqrt(static_cast<double>(form.discriminant()));
    CHECK(std::abs(total - main) / std::sqrt(static_cast<double>(N)) < 100.0);
  }
}

TEST_CASE("individual rep counts grow slower than n^0.2 with margin") {
  for (const auto& form : {QuadraticForm(1, 0, 1), QuadraticForm(1, 1, 1),
                           QuadraticForm(1, 0, 57)}) {
    const long N = 1000000;
    const auto t = epstein::rep_counts(form, N);
    double worst = 0.0;
    for (long n = 1; n <= N; ++n)
      worst = std::max(worst, t.r(n) / std::pow(static_cast<double>(n), 0.2));
    CHECK(worst < 100.0);
  }
}

TEST_CASE("gauss sums: trivial modulus, brute-force cases, uniform bound") {
  const QuadraticForm id(1, 0, 1);
  CHECK(epstein::gauss_sum(id, 1, 1) == std::complex<double>(1.0, 0.0));
  CHECK(std::abs(epstein::gauss_sum(id, 2, 1)) < 1e-12);

  // k = 3 by hand: 9 residue pairs of x^2 + y^2 mod 3.
  std::complex<double> brute = 0.0;
  for (int x = 0; x < 3; ++x)
    for (int y = 0; y < 3; ++y)
      brute += std::exp(std::complex<double>(
          0.0, 2.0 * std::numbers::pi * ((x * x + y * y) % 3) / 3.0));
  CHECK(std::abs(epstein::gauss_sum(id, 3, 1) - brute) < 1e-12);
  CHECK(std::abs(epstein::gauss_sum(id, 3, 1)) <=
        epstein::gcd64(4, 3) * 3.0 + 1e-9);

  CHECK_THROWS_AS(epstein::gauss_sum(id, 4, 2), epstein::argument_error);
  CHECK_THROWS_AS(epstein::gauss_sum(id, 0, 1), epstein::argument_error);

  for (const auto& form : {QuadraticForm(1, 0, 1), QuadraticForm(1, 1, 1),
                           QuadraticForm(1, 0, 57)}) {
    const double disc = static_cast<double>(form.discriminant());
    for (std::int64_t k = 1; k <= 50; ++k) {
      for (std::int64_t h = 1; h <= k; ++h) {
        if (epstein::gcd64(h, k) != 1) continue;
        const double bound = static_cast<double>(epstein::gcd64(
                                 static_cast<std::int64_t>(disc), k)) *
                             static_cast<double>(k);
        CHECK(std::abs(epstein::gauss_sum(form, k, h)) <= bound + 1e-7);
      }
    }
  }
}

TEST_CASE("class counts by reduced-form enumeration") {
  CHECK(epstein::count_classes(4) == 1);
  CHECK(epstein::count_classes(3) == 1);
  CHECK(epstein::count_classes(23) == 3);
  CHECK(epstein::count_classes(228) == 4);
  CHECK_THROWS_AS(epstein::count_classes(5), epstein::argument_error);
  CHECK_THROWS_AS(epstein::count_classes(2), epstein::argument_error);
}

TEST_CASE("stark aspect parameter") {
  CHECK(epstein::stark_k(QuadraticForm(1, 0, 1)) == doctest::Approx(1.0));
  CHECK(epstein::stark_k(QuadraticForm(1, 0, 57)) ==
        doctest::Approx(std::sqrt(228.0) / 2.0));
  CHECK(epstein::stark_k(QuadraticForm(1, 0, 57)) > 7.0556);
  // Scaling Q by an integer leaves k invariant: (2,0,2) has disc 16.
  CHECK(epstein::stark_k(QuadraticForm(2, 0, 2)) == doctest::Approx(1.0));
}
