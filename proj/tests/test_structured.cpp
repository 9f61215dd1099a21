#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "oracles.hpp"
#include "rlo/binom.hpp"
#include "rlo/enumerate.hpp"
#include "rlo/structured.hpp"

using namespace rlo;

namespace {

std::vector<int> zeros_first(std::size_t t, std::size_t d) {
  std::vector<int> h(d, 1);
  std::fill(h.begin(), h.begin() + static_cast<std::ptrdiff_t>(t), 0);
  return h;
}

BigInt times_pow2(std::int64_t c, std::int64_t e) {
  BigInt r = c;
  if (e >= 0) return r << static_cast<unsigned>(e);
  return r >> static_cast<unsigned>(-e);
}

// Direct transcription of the piecewise table.
BigInt table_f0(std::int64_t d) {
  if (d == 1) return 2;
  if (d <= 5) return times_pow2(1, d - 2);
  if (d <= 9 || d >= 17) return times_pow2(13, d - 6);
  return times_pow2(191 + d, d - 10);
}

BigInt table_f1(std::int64_t d) {
  if (d <= 2) return times_pow2(1, d - 1);
  if (d <= 6) return times_pow2(1, d - 3);
  return times_pow2(15, d - 7);
}

std::int64_t odd_or_even(CounterRng& rng, std::int64_t hi, int parity) {
  std::int64_t v = static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(hi) + 1));
  if (oracle::par(v) != parity) v = v == 0 ? 1 : v - 1;
  if (oracle::par(v) != parity) ++v;
  return v;
}

}  // namespace

TEST_CASE("lattice counts") {
  CHECK(count_S(2, 2, {1, 1}) == 4);
  CHECK(count_S(2, 2, {0, 0}) == 1);
  CHECK(count_S(2, 2, {0, 1}) == 2);
  for (std::size_t d = 1; d <= 4; ++d)
    for (std::int64_t R = 0; R <= 9; ++R)
      for (unsigned mask = 0; mask < (1u << d); ++mask) {
        std::vector<int> h(d);
        for (std::size_t i = 0; i < d; ++i) h[i] = (mask >> i) & 1;
        const auto want = oracle::brute_S(d, R, h);
        CHECK(count_S(d, R, h) == want);
        auto listed = list_S(d, R, h);
        CHECK(listed.size() == want);
        auto sorted = h;
        std::sort(sorted.begin(), sorted.end());
        CHECK(count_S(d, R, sorted) == want);
      }
}

TEST_CASE("f(t, d) values") {
  const std::int64_t small[] = {1, 1, 1, 1, 9, 11, 13, 15};
  for (std::size_t t = 0; t < 8; ++t)
    for (std::size_t d = std::max<std::size_t>(t, 1); d <= 20; ++d)
      CHECK(f_td(t, d) == times_pow2(small[t], static_cast<std::int64_t>(d - t)));
  for (std::size_t d = 10; d <= 17; ++d) CHECK(f_td(10, d) == times_pow2(191 + d, d - 10));
  for (std::size_t d = 14; d <= 24; ++d) CHECK(f_td(14, d) == times_pow2(2899 + 29 * d, d - 14));
  // Which coordinates are zero does not matter.
  for (std::size_t d = 3; d <= 8; ++d) {
    std::vector<int> h = zeros_first(2, d);
    std::reverse(h.begin(), h.end());
    CHECK(count_S(d, static_cast<std::int64_t>(d), h) == f_td(2, d));
  }
}

TEST_CASE("f0 and f1") {
  CHECK(f0(6) == 13);
  CHECK(f1(7) == 15);
  CHECK(f0(12) == 812);
  for (std::int64_t d = 1; d <= 30; ++d) {
    CHECK(f0(d) == table_f0(d));
    CHECK(f1(d) == table_f1(d));
    CHECK(f0_closed_form(d) == table_f0(d));
    CHECK(f1_closed_form(d) == table_f1(d));
  }
  // -> small brute check of the minimisation itself
  for (std::size_t d = 1; d <= 4; ++d) {
    BigInt best0 = -1, best1 = -1;
    for (std::size_t t = 0; t <= d; ++t) {
      BigInt v = oracle::brute_S(d, static_cast<std::int64_t>(d), zeros_first(t, d));
      BigInt& slot = t % 2 ? best1 : best0;
      if (slot < 0 || v < slot) slot = v;
    }
    CHECK(f0(d) == best0);
    CHECK(f1(d) == best1);
  }
}

TEST_CASE("f(t, d) / 2^d is nondecreasing in d") {
  for (std::size_t t = 0; t <= 30; ++t)
    for (std::size_t d = std::max<std::size_t>(t, 1); d < 30; ++d)
      CHECK(f_td(t, d + 1) >= 2 * f_td(t, d));
}

TEST_CASE("F range") {
  CHECK(F_count(8) == 129);
  CHECK(F_count(9) == 163);
  auto report = check_F_range();
  CHECK(report.all_hold);
  bool saw10 = false, saw14 = false;
  for (const auto& row : report.rows) {
    saw10 = saw10 || row.t == 10;
    saw14 = saw14 || row.t == 14;
    if (row.t == 8) CHECK(row.f == 52);
    if (row.t == 9) CHECK(row.f == 60);
    CHECK(row.holds);
  }
  CHECK_FALSE(saw10);
  CHECK_FALSE(saw14);
  CHECK(report.rows.size() == 161 - 2);
}

TEST_CASE("orthogonal examples") {
  CHECK(prob_orthogonal_exact(OrthogonalConfig({1}), 1).fraction() == "2/2");
  CHECK(prob_orthogonal_exact(OrthogonalConfig({3, 3}), 2).fraction() == "36/64");
  CHECK(prob_orthogonal_exact(OrthogonalConfig({2, 2}), 2).fraction() == "4/16");
  OrthogonalConfig c({2, 2});
  CHECK(prob_orthogonal_exact(c, 4).count == oracle::brute_count(materialize(c), 4));
  CHECK(prob_orthogonal_exact(c, 4).count == oracle::brute_orthogonal({2, 2}, 4));
}

TEST_CASE("simplicial examples") {
  CHECK(prob_simplicial_exact(SimplicialConfig({3, 3, 3}), 2).fraction() == "56/512");
  CHECK(prob_simplicial_exact(SimplicialConfig({1, 1, 1}), 2).fraction() == "2/8");
  SimplicialConfig tet({2, 2, 2, 2});
  CHECK(prob_simplicial_exact(tet, 3).count == oracle::brute_count(materialize(tet), 3));
  CHECK(prob_simplicial_dp(tet, 3) == prob_simplicial_exact(tet, 3));
}

TEST_CASE("mixed examples") {
  CHECK(prob_mixed_exact(MixedConfig({1, 1, 1}, {0})).fraction() == "2/8");
  MixedConfig a({2, 2, 2}, {2});
  CHECK(prob_mixed_exact(a).count == oracle::brute_count(materialize(a), 3));
  MixedConfig b({1, 1, 1}, {2, 1});
  CHECK(prob_mixed_exact(b).count == oracle::brute_count(materialize(b), 4));
  CHECK_THROWS_AS(MixedConfig({1, 2, 1}, {0}), ParityError);
  CHECK_THROWS_AS(MixedConfig({1, 1, 1}, {1}), ParityError);
  CHECK_THROWS_AS(MixedConfig({1, 1, 1}, {0, 2}), ParityError);
}

TEST_CASE("perturbed examples") {
  PerturbedConfig seven(2, 3, {2});
  CHECK(prob_perturbed_exact(seven).fraction() == "24/128");
  CHECK(oracle::brute_count(materialize(seven), 1) == 24);
  CHECK(prob_perturbed_exact(PerturbedConfig(0, 1, {0})).fraction() == "2/2");
  PerturbedConfig six(2, 1, {2, 1});
  CHECK(prob_perturbed_exact(six).fraction() == "16/64");
  CHECK(oracle::brute_count(materialize(six), 2) == 16);
  CHECK(seven.beta == doctest::Approx(std::asin(1.0 / 14)));
  CHECK_THROWS_AS(PerturbedConfig(1, 3, {2}), ParityError);
  CHECK_THROWS_AS(PerturbedConfig(2, 2, {2}), ParityError);
  CHECK_THROWS_AS(PerturbedConfig(2, 3, {2}, 0.2), DomainError);
  CHECK_THROWS_AS(PerturbedConfig(2, 3, {2}, -0.01), DomainError);
}

TEST_CASE("structured counts equal enumeration on random small instances") {
  CounterRng rng(606);
  int done = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t d = 1 + rng.below(4);
    IntVec m(d);
    std::int64_t n = 0;
    for (auto& v : m) n += v = static_cast<std::int64_t>(rng.below(5));
    if (n == 0) m[0] = n = 1;
    const auto R = static_cast<std::int64_t>(rng.below(2 * d + 2));
    OrthogonalConfig c(m);
    CHECK(prob_orthogonal_exact(c, R) == prob_ball_naive(materialize(c), BallQuery(R)));
    ++done;
  }
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t d = 1 + rng.below(3);
    IntVec m(d + 1);
    std::int64_t n = 0;
    for (auto& v : m) n += v = static_cast<std::int64_t>(rng.below(18 / (d + 1) + 1));
    if (n == 0) m[0] = n = 1;
    const auto R = static_cast<std::int64_t>(rng.below(2 * d + 2));
    SimplicialConfig c(m);
    auto want = prob_ball_naive(materialize(c), BallQuery(R));
    CHECK(prob_simplicial_exact(c, R) == want);
    CHECK(prob_simplicial_dp(c, R) == want);
    CHECK(prob_simplicial_exact(c, R).count == oracle::brute_simplicial(m, R));
    ++done;
  }
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t d = 3 + rng.below(2);
    const int p = static_cast<int>(rng.below(2));
    std::array<std::int64_t, 3> a{};
    for (auto& v : a) v = odd_or_even(rng, 4, p);
    IntVec b(d - 2);
    b[0] = odd_or_even(rng, 4, 0);
    for (std::size_t i = 1; i < b.size(); ++i) b[i] = odd_or_even(rng, 3, 1);
    MixedConfig c(a, b);
    if (c.n() > 18) continue;
    CHECK(prob_mixed_exact(c) ==
          prob_ball_naive(materialize(c), BallQuery(static_cast<double>(d))));
    ++done;
  }
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t d = 2 + rng.below(3);
    IntVec k(d - 1);
    k[0] = odd_or_even(rng, 4, 0);
    for (std::size_t i = 1; i < k.size(); ++i) k[i] = odd_or_even(rng, 3, 1);
    PerturbedConfig c(odd_or_even(rng, 4, 0), odd_or_even(rng, 5, 1), k);
    if (c.n() > 18) continue;
    CHECK(prob_perturbed_exact(c) ==
          prob_ball_naive(materialize(c), BallQuery(static_cast<double>(d - 1))));
    ++done;
  }
  CHECK(done >= 300);
}

TEST_CASE("simplicial dynamic program matches the representative sum") {
  for (std::int64_t n = 3; n <= 90; n += 3) {
    auto c = make_triangle(n);
    CHECK(prob_simplicial_dp(c, 2) == prob_simplicial_exact(c, 2));
  }
  CounterRng rng(12);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t d = 2 + rng.below(3);
    IntVec m(d + 1);
    for (auto& v : m) v = 1 + static_cast<std::int64_t>(rng.below(25));
    const auto R = static_cast<std::int64_t>(rng.below(3 * d));
    SimplicialConfig c(m);
    auto exact = prob_simplicial_exact(c, R);
    CHECK(prob_simplicial_dp(c, R) == exact);
    CHECK(prob_simplicial_dp_approx(c, R) == doctest::Approx(exact.value()).epsilon(1e-9));
  }
}

TEST_CASE("constructions") {
  auto a = make_counterexample(2, 7);
  CHECK(a.k1_plus == 2);
  CHECK(a.k1_minus == 3);
  CHECK(a.k == IntVec{2});
  CHECK(a.beta == doctest::Approx(std::asin(1.0 / 14)));
  auto b = make_counterexample(2, 3);
  CHECK(b.k1_plus == 2);
  CHECK(b.k1_minus == 1);
  CHECK(b.k == IntVec{0});
  auto c = make_counterexample(3, 6);
  CHECK(c.n() == 6);
  CHECK(c.k1_plus % 2 == 0);
  CHECK(c.k1_minus % 2 == 1);
  CHECK(c.k[0] % 2 == 0);
  CHECK(c.k[1] % 2 == 1);
  CHECK_THROWS_AS(make_counterexample(2, 8), ConstructionError);
  CHECK_THROWS_AS(make_counterexample(2, 1), ConstructionError);

  for (std::size_t d = 2; d <= 6; ++d)
    for (std::int64_t n = static_cast<std::int64_t>(d) + 1; n <= 200; n += 2) {
      const std::int64_t nn = (n - static_cast<std::int64_t>(d)) % 2 ? n : n + 1;
      auto e = make_counterexample(d, nn);
      CHECK(e.n() == nn);
      const double target = static_cast<double>(nn) / static_cast<double>(d + 1);
      CHECK(std::abs(e.k1_plus - target) <= 2);
      CHECK(std::abs(e.k1_minus - target) <= 2);
      for (auto v : e.k) CHECK(std::abs(v - target) <= 2);
    }

  auto o = make_orthogonal(2, 10, 2);
  CHECK(o.m[0] + o.m[1] == 10);
  CHECK(o.m[0] % 2 == 0);
  CHECK(o.m[1] % 2 == 0);
  CHECK(std::abs(o.m[0] - o.m[1]) <= 2);
  CHECK_THROWS_AS(make_orthogonal(2, 10, 1), ConstructionError);

  auto tri = make_triangle(9);
  CHECK(tri.m == IntVec{3, 3, 3});

  auto mx = make_mixed(3, 12);
  CHECK(mx.n() == 12);
  CHECK(mx.a[0] + mx.a[1] + mx.a[2] >= 6);
  CHECK(mx.a[0] + mx.a[1] + mx.a[2] <= 10);
  CHECK(mx.b[0] % 2 == 0);
  CHECK(std::abs(mx.b[0] - 4) <= 2);
}

TEST_CASE("default orthogonal parity class is the cheapest one") {
  for (std::size_t d = 1; d <= 20; ++d)
    for (std::int64_t n : {static_cast<std::int64_t>(20 * d), static_cast<std::int64_t>(20 * d + 1)}) {
      const auto t = best_orthogonal_t(d, n);
      CHECK(f_td(t, d) == ((n - static_cast<std::int64_t>(d) - static_cast<std::int64_t>(t)) % 2
                               ? BigInt(-1)
                               : ((static_cast<std::int64_t>(t) % 2) ? f1(d) : f0(d))));
      auto c = make_orthogonal(d, n);
      std::size_t zeros = 0;
      for (auto v : c.m) zeros += v % 2 == 0;
      CHECK(zeros == t);
    }
}

TEST_CASE("json descriptors") {
  auto j = to_json(make_counterexample(2, 7));
  CHECK(j["type"] == "perturbed");
  CHECK(j["params"]["k1_plus"] == 2);
  CHECK(to_json(make_triangle(6))["type"] == "simplicial");
  CHECK(to_json(make_orthogonal(2, 6))["type"] == "orthogonal");
  CHECK(to_json(make_mixed(3, 12))["type"] == "mixed");
}

TEST_CASE("atom ingredients") {
  CHECK(entropy3(0.02, 0.68, 0.3) > 1.012);
  CHECK(atom_internal_weight() == doctest::Approx(0.9664));
  CHECK(atom_cross_weight() == doctest::Approx(1.9472));
  // The rounded counts grow linearly with slope close to the ternary entropy.
  const double slope = (atom_count_log2(400, 400) - atom_count_log2(200, 200)) / 200;
  CHECK(slope > 0);
}
