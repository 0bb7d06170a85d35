#pragma once

#include <complex>
#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "epstein/config.hpp"

namespace epstein {

/// Positive-definite integral binary quadratic form a x^2 + b xy + c y^2.
///
/// Invariants enforced at construction: a >= 1 and 4ac - b^2 >= 1.
/// Square discriminants are admitted but flagged via square_disc() so
/// callers that need an irrational sqrt(disc) can restrict.
struct QuadraticForm {
  std::int64_t a = 1;
  std::int64_t b = 0;
  std::int64_t c = 1;

  QuadraticForm() = default;
  QuadraticForm(std::int64_t a_, std::int64_t b_, std::int64_t c_);

  std::int64_t discriminant() const { return 4 * a * c - b * b; }
  bool square_disc() const;

  /// Stark's aspect parameter sqrt(disc) / (2a).
  double stark_k() const;

  /// Q(x, y) without overflow checking; inputs are expected to satisfy
  /// |x|, |y| <= ~2^30 for int64 safety.
  std::int64_t eval(std::int64_t x, std::int64_t y) const {
    return a * x * x + b * x * y + c * y * y;
  }

  /// Adjoint-equivalent form (c, -b, a), i.e. Q'(x,y) = Q(y,-x).
  QuadraticForm adjoint() const { return QuadraticForm(c, -b, a); }

  /// Parses the textual triple "a,b,c".
  static QuadraticForm parse(std::string_view text);
  std::string str() const;

  friend bool operator==(const QuadraticForm&, const QuadraticForm&) = default;
};

std::int64_t discriminant(const QuadraticForm& form);
double stark_k(const QuadraticForm& form);

/// Dense table of representation counts r_Q(n) for 1 <= n <= limit.
/// Immutable after construction and safe to share across threads.
class RepCountTable {
 public:
  RepCountTable(QuadraticForm form, std::int64_t limit,
                std::vector<std::uint32_t> counts)
      : form_(form), limit_(limit), counts_(std::move(counts)) {}

  const QuadraticForm& form() const { return form_; }
  std::int64_t limit() const { return limit_; }

  std::uint32_t r(std::int64_t n) const {
    if (n < 1 || n > limit_) throw argument_error("rep count index out of range");
    return counts_[static_cast<std::size_t>(n - 1)];
  }

  const std::vector<std::uint32_t>& counts() const { return counts_; }

 private:
  QuadraticForm form_;
  std::int64_t limit_;
  std::vector<std::uint32_t> counts_;
};

/// Exact representation counts by bounded lattice enumeration.
/// The enumeration region |y| <= sqrt(4aN/disc) provably contains all
/// solutions; per y the x range is solved by integer discriminant tests,
/// so no floating-point classification is involved.
RepCountTable rep_counts(const QuadraticForm& form, std::int64_t limit,
                         std::size_t max_table_bytes = std::size_t{1} << 28);

/// Shared, lazily grown rep-count table for a form. Thread-safe; the
/// returned table is immutable.
std::shared_ptr<const RepCountTable> rep_counts_cached(
    const QuadraticForm& form, std::int64_t limit,
    std::size_t max_table_bytes = std::size_t{1} << 28);

/// Gauss sum G_Q(k, h) = sum_{x,y mod k} e^{2 pi i h Q(x,y) / k}.
/// Requires k >= 1 and gcd(h, k) = 1. Exponents are reduced mod k in
/// exact integer arithmetic before the complex exponential is applied.
std::complex<double> gauss_sum(const QuadraticForm& form, std::int64_t k,
                               std::int64_t h);

/// Number of reduced positive-definite forms of discriminant disc
/// (|b| <= a <= c, with b >= 0 when |b| = a or a = c).
/// Requires disc >= 3 and disc = 0 or 3 mod 4.
int count_classes(std::int64_t disc);

std::int64_t gcd64(std::int64_t a, std::int64_t b);

}  // namespace epstein
