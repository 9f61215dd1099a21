#include "rlo/binom.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace rlo {

BigInt binomial(std::int64_t n, std::int64_t k) {
  if (n < 0 || k < 0 || k > n) return 0;
  BigInt r;
  mpz_bin_uiui(r.backend().data(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return r;
}

double log2_binomial(std::int64_t n, std::int64_t k) {
  if (n < 0 || k < 0 || k > n) return -INFINITY;
  return (std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0)) /
         std::numbers::ln2;
}

double entropy(double p) {
  if (!(p >= 0 && p <= 1)) throw DomainError("entropy argument outside [0, 1]");
  auto term = [](double t) { return t > 0 ? -t * std::log2(t) : 0.0; };
  return term(p) + term(1 - p);
}

double entropy3(double p, double q, double r) {
  if (!(p >= 0 && q >= 0 && r >= 0) || std::abs(p + q + r - 1) > 1e-12)
    throw DomainError("entropy3 needs a probability vector");
  auto term = [](double t) { return t > 0 ? -t * std::log2(t) : 0.0; };
  return term(p) + term(q) + term(r);
}

BigInt franel_sum_exact(unsigned m, unsigned q) {
  BigInt c = 1, total = 0, power;
  for (unsigned k = 0; k <= m; ++k) {
    mpz_pow_ui(power.backend().data(), c.backend().data(), q);
    total += power;
    c = c * (m - k) / (k + 1);
  }
  return total;
}

double franel_asymptotic_log2(unsigned m, unsigned q) {
  if (m == 0 || q == 0) throw DomainError("franel asymptotic needs m, q >= 1");
  const double md = m, qd = q;
  return md * qd - 0.5 * std::log2(qd) +
         0.5 * (qd - 1) * std::log2(2.0 / (std::numbers::pi * md));
}

double franel_ratio(unsigned m, unsigned q) {
  return std::exp2(log2_big(franel_sum_exact(m, q)) - franel_asymptotic_log2(m, q));
}

ShiftedSumSpec::ShiftedSumSpec(std::vector<std::int64_t> m_, std::vector<std::int64_t> x_)
    : m(std::move(m_)), x(std::move(x_)) {
  if (m.empty()) throw DimensionError("shifted sum needs q >= 1");
  if (m.size() != x.size()) throw DimensionError("m and x differ in length");
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m[i] < 0) throw DomainError("m_i must be non-negative");
    if (((m[i] - x[i]) % 2 + 2) % 2 != 0) throw ParityError("m_i and x_i differ in parity");
    if (m[i] < std::abs(x[i])) throw ParityError("m_i must be at least |x_i|");
  }
}

std::int64_t ShiftedSumSpec::n() const {
  std::int64_t s = 0;
  for (auto v : m) s += v;
  return s;
}

BigInt shifted_product_sum_unchecked(const std::vector<std::int64_t>& m,
                                     const std::vector<std::int64_t>& x) {
  if (m.size() != x.size()) throw DimensionError("m and x differ in length");
  // (m_i + x_i)/2 + k must lie in [0, m_i] for every i.
  std::int64_t lo = std::numeric_limits<std::int64_t>::min();
  std::int64_t hi = std::numeric_limits<std::int64_t>::max();
  std::vector<std::int64_t> base(m.size());
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (((m[i] - x[i]) % 2 + 2) % 2 != 0) throw ParityError("m_i and x_i differ in parity");
    base[i] = (m[i] + x[i]) / 2;
    lo = std::max(lo, -base[i]);
    hi = std::min(hi, m[i] - base[i]);
  }
  BigInt total = 0;
  for (std::int64_t k = lo; k <= hi; ++k) {
    BigInt term = 1;
    for (std::size_t i = 0; i < m.size(); ++i) term *= binomial(m[i], base[i] + k);
    total += term;
  }
  return total;
}

BigInt shifted_product_sum_exact(const ShiftedSumSpec& spec) {
  return shifted_product_sum_unchecked(spec.m, spec.x);
}

double shifted_product_sum_asymptotic_log2(const ShiftedSumSpec& spec) {
  double sum_m = 0, log_prod = 0, inv_sum = 0;
  for (auto mi : spec.m) {
    if (mi < 1) throw DomainError("asymptotic needs every m_i >= 1");
    sum_m += static_cast<double>(mi);
    log_prod += std::log2(static_cast<double>(mi));
    inv_sum += 1.0 / static_cast<double>(mi);
  }
  const double q = static_cast<double>(spec.q());
  return sum_m + 0.5 * ((q - 1) * std::log2(2.0 / std::numbers::pi) - log_prod -
                        std::log2(inv_sum));
}

ShiftedLowerBoundReport check_shifted_lower_bound(const ShiftedSumSpec& spec,
                                                  std::int64_t small_cap) {
  ShiftedLowerBoundReport r;
  const double n = static_cast<double>(spec.n());
  const double q = static_cast<double>(spec.q());
  if (n <= 0) throw DomainError("lower bound needs n >= 1");
  r.exact_log2 = log2_big(shifted_product_sum_exact(spec));
  r.bound_log2 = (n - 1) + 0.5 * (q - 1) * std::log2(2.0 / (std::numbers::pi * n)) +
                 0.5 * (q - 2) * std::log2(q);
  r.holds = r.exact_log2 >= r.bound_log2;
  r.ratio = std::exp2(r.exact_log2 - r.bound_log2);
  std::size_t small = 0;
  for (auto mi : spec.m) small += mi <= small_cap;
  r.strengthened_applies = small >= 2;
  r.strengthened_bound_log2 = r.bound_log2 + std::log2(n) / 8.0;
  r.strengthened_holds = r.exact_log2 >= r.strengthened_bound_log2;
  return r;
}

ProductBinomReport check_product_binom_lower(const std::vector<std::int64_t>& m,
                                             const std::vector<std::int64_t>& x, double slack) {
  ShiftedSumSpec spec(m, x);
  if (!(slack >= 0 && slack < 1)) throw DomainError("slack must lie in [0, 1)");
  const double n = static_cast<double>(spec.n());
  const double q = static_cast<double>(spec.q());
  if (n <= 0) throw DomainError("product bound needs n >= 1");
  ProductBinomReport r;
  BigInt prod = 1;
  for (std::size_t i = 0; i < m.size(); ++i) prod *= binomial(m[i], (m[i] + x[i]) / 2);
  r.lhs_log2 = log2_big(prod) - n;
  r.rhs_log2 = 0.5 * q * std::log2(2.0 * q / (std::numbers::pi * n));
  r.ratio = std::exp2(r.lhs_log2 - r.rhs_log2);
  r.slack = slack;
  r.holds = r.ratio >= 1 - slack;
  return r;
}

ProductSumReport check_product_sum_inequality(const std::vector<double>& y) {
  if (y.empty()) throw DimensionError("product-sum inequality needs q >= 1");
  double n = 0, prod = 1, inv = 0;
  for (double v : y) {
    if (!(v > 0) || !std::isfinite(v)) throw DomainError("y_i must be positive");
    n += v;
    prod *= v;
    inv += 1.0 / v;
  }
  const double q = static_cast<double>(y.size());
  ProductSumReport r;
  r.value = prod * inv;
  r.bound = std::pow(n, q - 1) / std::pow(q, q - 2);
  const double tol = 1e-9 * std::max(1.0, r.bound);
  r.holds = r.value <= r.bound + tol;
  r.equality = std::abs(r.value - r.bound) <= tol;
  return r;
}

}  // namespace rlo
