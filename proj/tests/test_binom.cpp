#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "rlo/binom.hpp"

using namespace rlo;

TEST_CASE("binomial coefficients") {
  CHECK(binomial(4, 2) == 6);
  CHECK(binomial(3, -1) == 0);
  CHECK(binomial(3, 4) == 0);
  for (int n = 0; n <= 40; ++n)
    for (int k = -1; k <= n + 1; ++k) CHECK(binomial(n, k) == oracle::pascal(n, k));
  // Stirling with the first correction term.
  const double n = 2000, k = 1000;
  const double stirling = (n + 0.5) * std::log(n) - 2 * (k + 0.5) * std::log(k) -
                          0.5 * std::log(2 * M_PI) + 1 / (12 * n) - 2 / (12 * k);
  const double ln_exact = log2_big(binomial(2000, 1000)) * std::log(2.0);
  CHECK(std::abs(std::exp(ln_exact - stirling) - 1) <= 1e-3);
  CHECK(log2_binomial(2000, 1000) == doctest::Approx(ln_exact / std::log(2.0)).epsilon(1e-12));
}

TEST_CASE("entropy") {
  CHECK(entropy(0.5) == doctest::Approx(1.0));
  CHECK(entropy(0) == 0);
  CHECK(entropy(1) == 0);
  CHECK_THROWS_AS(entropy(-0.1), DomainError);
  CHECK_THROWS_AS(entropy(1.5), DomainError);
  const double h3 = entropy3(0.02, 0.68, 0.3);
  CHECK(h3 > 1.012);
  CHECK(h3 == doctest::Approx(1.01231).epsilon(1e-5));
  CHECK(entropy3(1, 0, 0) == 0);
  CHECK_THROWS_AS(entropy3(0.5, 0.5, 0.1), DomainError);
}

TEST_CASE("franel sums") {
  CHECK(franel_sum_exact(3, 3) == 56);
  CHECK(franel_sum_exact(4, 1) == 16);
  CHECK(franel_sum_exact(2, 2) == 6);
  for (unsigned m = 0; m <= 100; ++m) {
    CHECK(franel_sum_exact(m, 1) == pow2(m));
    CHECK(franel_sum_exact(m, 2) == binomial(2 * m, m));
  }
  for (unsigned m = 1; m <= 50; ++m) CHECK(franel_asymptotic_log2(m, 1) == doctest::Approx(m));
  CHECK(std::abs(franel_ratio(1000, 3) - 1) <= 0.02);
  CHECK(std::abs(std::exp2(franel_asymptotic_log2(200, 2) - log2_big(binomial(400, 200))) - 1) <=
        0.02);
  for (unsigned q : {2u, 3u, 4u}) {
    const double small = std::abs(franel_ratio(100, q) - 1);
    const double large = std::abs(franel_ratio(1000, q) - 1);
    CHECK(large < small);
    CHECK(large <= 0.02);
  }
}

TEST_CASE("shifted product sums") {
  CHECK(shifted_product_sum_exact({{3, 3, 3}, {1, 1, 1}}) == 56);
  CHECK(shifted_product_sum_exact({{2}, {0}}) == 4);
  CHECK(shifted_product_sum_exact({{2, 2}, {0, 0}}) == 6);
  CHECK_THROWS_AS(ShiftedSumSpec({3}, {0}), ParityError);
  CHECK_THROWS_AS(ShiftedSumSpec({2}, {4}), ParityError);
  CHECK_THROWS_AS(ShiftedSumSpec({2, 2}, {0}), DimensionError);
  CHECK_THROWS_AS(ShiftedSumSpec({-2}, {0}), DomainError);
  for (std::int64_t m = 0; m <= 200; ++m)
    for (std::int64_t x : {-m, m % 2, m}) CHECK(shifted_product_sum_exact({{m}, {x}}) == pow2(m));
}

TEST_CASE("shifted sums agree with direct summation") {
  rlo::CounterRng rng(31);
  for (int trial = 0; trial < 150; ++trial) {
    const std::size_t q = 1 + rng.below(4);
    std::vector<std::int64_t> m(q), x(q);
    for (std::size_t i = 0; i < q; ++i) {
      m[i] = static_cast<std::int64_t>(rng.below(14));
      x[i] = static_cast<std::int64_t>(rng.below(m[i] + 1));
      if ((x[i] - m[i]) % 2) --x[i];
      if (rng.below(2)) x[i] = -x[i];
    }
    CHECK(shifted_product_sum_exact({m, x}) == oracle::direct_shifted(m, x));
  }
}

TEST_CASE("shifted sum asymptotics") {
  for (std::int64_t m = 1; m <= 30; ++m)
    CHECK(shifted_product_sum_asymptotic_log2({{m}, {m % 2}}) == doctest::Approx(m));
  ShiftedSumSpec a({1000, 1000, 1000}, {0, 0, 0});
  CHECK(std::abs(std::exp2(shifted_product_sum_asymptotic_log2(a) -
                           log2_big(shifted_product_sum_exact(a))) - 1) <= 0.02);
  ShiftedSumSpec b({500, 1500}, {0, 0});
  CHECK(std::abs(std::exp2(shifted_product_sum_asymptotic_log2(b) -
                           log2_big(shifted_product_sum_exact(b))) - 1) <= 0.02);
}

TEST_CASE("shifted lower bound") {
  auto a = check_shifted_lower_bound({{400, 400, 400}, {0, 0, 0}});
  CHECK(a.holds);
  CHECK(a.ratio >= 1);
  auto b = check_shifted_lower_bound({{1, 1, 998}, {1, 1, 0}});
  CHECK(b.holds);
  CHECK(b.strengthened_applies);
  CHECK(b.strengthened_holds);
  CHECK(b.strengthened_bound_log2 == doctest::Approx(b.bound_log2 + std::log2(1000.0) / 8));
  auto c = check_shifted_lower_bound({{10}, {0}});
  CHECK(c.holds);
  CHECK(c.bound_log2 == doctest::Approx(9));
  CHECK(c.exact_log2 == doctest::Approx(10));
  CHECK_FALSE(c.strengthened_applies);
}

TEST_CASE("product of binomials lower bound") {
  CHECK(check_product_binom_lower({500, 500}, {0, 0}).holds);
  auto single = check_product_binom_lower({1000}, {0});
  CHECK(single.holds);
  CHECK(single.rhs_log2 == doctest::Approx(0.5 * std::log2(2 / (1000 * M_PI))));
  CHECK(check_product_binom_lower({333, 333, 334}, {1, 1, 0}).holds);
  CHECK(single.slack == 0.05);
}

TEST_CASE("product-sum inequality") {
  auto eq = check_product_sum_inequality({1, 1, 1});
  CHECK(eq.holds);
  CHECK(eq.equality);
  CHECK(eq.value == doctest::Approx(3));
  CHECK(eq.bound == doctest::Approx(3));
  auto two = check_product_sum_inequality({1, 2});
  CHECK(two.holds);
  CHECK(two.value == doctest::Approx(3));
  CHECK(two.bound == doctest::Approx(3));
  CHECK_THROWS_AS(check_product_sum_inequality({1, 0}), DomainError);

  rlo::CounterRng rng(99);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t q = 1 + rng.below(8);
    std::vector<double> y(q);
    for (auto& v : y) v = 0.01 + 10 * rng.uniform();
    auto r = check_product_sum_inequality(y);
    CHECK(r.holds);
    // For q <= 2 the two sides coincide identically.
    if (q <= 2) CHECK(r.equality);
    else CHECK_FALSE(r.equality);
    const double c = 0.1 + rng.uniform();
    CHECK(check_product_sum_inequality(std::vector<double>(q, c)).equality);
  }
}
