#ifndef RLO_BINOM_HPP
#define RLO_BINOM_HPP

#include <cstdint>
#include <vector>

#include "rlo/core.hpp"

namespace rlo {

// C(n, k), zero outside 0 <= k <= n.
BigInt binomial(std::int64_t n, std::int64_t k);
double log2_binomial(std::int64_t n, std::int64_t k);

// Base-2 entropies with 0 log 0 = 0.
double entropy(double p);
double entropy3(double p, double q, double r);

// sum_k C(m, k)^q
BigInt franel_sum_exact(unsigned m, unsigned q);
double franel_asymptotic_log2(unsigned m, unsigned q);
double franel_ratio(unsigned m, unsigned q);  // exact / asymptotic

struct ShiftedSumSpec {
  std::vector<std::int64_t> m;
  std::vector<std::int64_t> x;

  ShiftedSumSpec() = default;
  ShiftedSumSpec(std::vector<std::int64_t> m_, std::vector<std::int64_t> x_);

  std::size_t q() const { return m.size(); }
  std::int64_t n() const;
};

// sum over integer k of prod_i C(m_i, (m_i + x_i)/2 + k)
BigInt shifted_product_sum_exact(const ShiftedSumSpec& spec);
// Same sum, only parity is required (used for representatives whose shift
// brings them back into range).
BigInt shifted_product_sum_unchecked(const std::vector<std::int64_t>& m,
                                     const std::vector<std::int64_t>& x);
double shifted_product_sum_asymptotic_log2(const ShiftedSumSpec& spec);

struct ShiftedLowerBoundReport {
  double exact_log2 = 0;
  double bound_log2 = 0;
  bool holds = false;
  bool strengthened_applies = false;  // two m_i at most small_cap
  double strengthened_bound_log2 = 0;
  bool strengthened_holds = false;
  double ratio = 0;  // exact / bound
};

ShiftedLowerBoundReport check_shifted_lower_bound(const ShiftedSumSpec& spec,
                                                  std::int64_t small_cap = 10);

struct ProductBinomReport {
  double lhs_log2 = 0;
  double rhs_log2 = 0;
  double ratio = 0;  // lhs / rhs
  double slack = 0;
  bool holds = false;
};

ProductBinomReport check_product_binom_lower(const std::vector<std::int64_t>& m,
                                             const std::vector<std::int64_t>& x,
                                             double slack = 0.05);

struct ProductSumReport {
  double value = 0;
  double bound = 0;
  bool holds = false;
  bool equality = false;
};

// (prod y)(sum 1/y) against n^{q-1}/q^{q-2}, n = sum y.
ProductSumReport check_product_sum_inequality(const std::vector<double>& y);

}  // namespace rlo

#endif
