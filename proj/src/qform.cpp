#include "epstein/qform.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <sstream>

namespace epstein {

std::int64_t gcd64(std::int64_t a, std::int64_t b) {
  a = std::abs(a);
  b = std::abs(b);
  while (b) {
    a %= b;
    std::swap(a, b);
  }
  return a;
}

namespace {

std::int64_t isqrt64(std::int64_t n) {
  if (n < 0) return -1;
  auto r = static_cast<std::int64_t>(std::sqrt(static_cast<double>(n)));
  while (r > 0 && r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

}  // namespace

QuadraticForm::QuadraticForm(std::int64_t a_, std::int64_t b_, std::int64_t c_)
    : a(a_), b(b_), c(c_) {
  if (a < 1) throw argument_error("form is not positive definite: a must be >= 1");
  if (discriminant() < 1)
    throw argument_error("form is not positive definite: 4ac - b^2 must be >= 1");
}

bool QuadraticForm::square_disc() const {
  const std::int64_t d = discriminant();
  const std::int64_t r = isqrt64(d);
  return r * r == d;
}

double QuadraticForm::stark_k() const {
  return std::sqrt(static_cast<double>(discriminant())) / (2.0 * static_cast<double>(a));
}

QuadraticForm QuadraticForm::parse(std::string_view text) {
  std::string buf(text);
  for (char& ch : buf)
    if (ch == ',') ch = ' ';
  std::istringstream in(buf);
  std::int64_t a = 0, b = 0, c = 0;
  if (!(in >> a >> b >> c)) throw argument_error("expected form triple \"a,b,c\"");
  std::string rest;
  if (in >> rest) throw argument_error("trailing characters in form triple");
  return QuadraticForm(a, b, c);
}

std::string QuadraticForm::str() const {
  std::ostringstream out;
  out << a << ',' << b << ',' << c;
  return out.str();
}

std::int64_t discriminant(const QuadraticForm& form) { return form.discriminant(); }

double stark_k(const QuadraticForm& form) { return form.stark_k(); }

RepCountTable rep_counts(const QuadraticForm& form, std::int64_t limit,
                         std::size_t max_table_bytes) {
  if (limit < 1) throw argument_error("rep_counts requires N >= 1");
  const auto bytes = static_cast<std::size_t>(limit) * sizeof(std::uint32_t);
  if (bytes > max_table_bytes)
    throw resource_error("rep_counts table of " + std::to_string(bytes) +
                         " bytes exceeds budget");

  std::vector<std::uint32_t> counts(static_cast<std::size_t>(limit), 0);
  const std::int64_t disc = form.discriminant();

  // Q(x,y) = n implies disc * y^2 <= 4 a n, and symmetrically for x.
  const std::int64_t ymax = isqrt64(4 * form.a * limit / disc);
  for (std::int64_t y = -ymax; y <= ymax; ++y) {
    // For fixed y, Q <= N means a(x + by/(2a))^2 <= N - disc y^2/(4a),
    // so walking |x - xc| <= sqrt(N/a) + 1 covers every solution.
    const double xc = -static_cast<double>(form.b) * y / (2.0 * form.a);
    const double w = std::sqrt(static_cast<double>(limit) / form.a) + 1.0;
    const auto x0 = static_cast<std::int64_t>(std::floor(xc - w));
    const auto x1 = static_cast<std::int64_t>(std::ceil(xc + w));
    for (std::int64_t x = x0; x <= x1; ++x) {
      if (x == 0 && y == 0) continue;
      const std::int64_t n = form.eval(x, y);
      if (n >= 1 && n <= limit) ++counts[static_cast<std::size_t>(n - 1)];
    }
  }
  return RepCountTable(form, limit, std::move(counts));
}

std::shared_ptr<const RepCountTable> rep_counts_cached(const QuadraticForm& form,
                                                       std::int64_t limit,
                                                       std::size_t max_table_bytes) {
  struct Key {
    std::int64_t a, b, c;
    auto operator<=>(const Key&) const = default;
  };
  static std::mutex mu;
  static std::map<Key, std::shared_ptr<const RepCountTable>> cache;

  const Key key{form.a, form.b, form.c};
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(key);
  if (it != cache.end() && it->second->limit() >= limit) return it->second;
  // Grow geometrically so repeated callers share one table.
  std::int64_t grown = std::max<std::int64_t>(limit, 1024);
  if (it != cache.end()) grown = std::max(grown, 2 * it->second->limit());
  auto table = std::make_shared<const RepCountTable>(rep_counts(form, grown, max_table_bytes));
  cache[key] = table;
  return table;
}

std::complex<double> gauss_sum(const QuadraticForm& form, std::int64_t k,
                               std::int64_t h) {
  if (k < 1) throw argument_error("gauss_sum requires k >= 1");
  if (gcd64(h, k) != 1) throw argument_error("gauss_sum requires gcd(h, k) = 1");
  if (k > 20000) throw resource_error("gauss_sum modulus too large");

  // Precompute e^{2 pi i j / k}; all exponents reduced mod k exactly.
  std::vector<std::complex<double>> root(static_cast<std::size_t>(k));
  for (std::int64_t j = 0; j < k; ++j) {
    const double ang = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(k);
    root[static_cast<std::size_t>(j)] = {std::cos(ang), std::sin(ang)};
  }

  const std::int64_t hm = ((h % k) + k) % k;
  std::complex<double> sum = 0.0;
  for (std::int64_t x = 0; x < k; ++x) {
    for (std::int64_t y = 0; y < k; ++y) {
      std::int64_t q = form.eval(x, y) % k;
      std::int64_t e = (q * hm) % k;
      if (e < 0) e += k;
      sum += root[static_cast<std::size_t>(e)];
    }
  }
  return sum;
}

int count_classes(std::int64_t disc) {
  if (disc < 3) throw argument_error("count_classes requires disc >= 3");
  const std::int64_t mod = disc % 4;
  if (mod != 0 && mod != 3)
    throw argument_error("count_classes requires disc = 0 or 3 mod 4");

  int count = 0;
  for (std::int64_t a = 1; 3 * a * a <= disc; ++a) {
    for (std::int64_t b = -a; b <= a; ++b) {
      const std::int64_t num = disc + b * b;
      if (num % (4 * a) != 0) continue;
      const std::int64_t c = num / (4 * a);
      if (c < a) continue;
      if ((std::abs(b) == a || a == c) && b < 0) continue;
      ++count;
    }
  }
  return count;
}

}  // namespace epstein
