#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <sstream>

#include "oracles.hpp"
#include "rlo/core.hpp"

using namespace rlo;

TEST_CASE("unit vector validation") {
  CHECK_NOTHROW(UnitVectorConfig(2, Rows{{1, 0}, {0, 1}}));
  CHECK_THROWS_AS(UnitVectorConfig(2, Rows{{1, 0, 0}}), DimensionError);
  CHECK_THROWS_AS(UnitVectorConfig(2, Rows{{1.1, 0}}), DomainError);
  CHECK_THROWS_AS(UnitVectorConfig(2, Rows{{NAN, 0}}), DomainError);
  UnitVectorConfig empty(3, std::vector<double>{});
  CHECK(empty.size() == 0);
}

TEST_CASE("signing and ball query") {
  CHECK_THROWS_AS(Signing({1, 0}), DomainError);
  CHECK_THROWS_AS(BallQuery(-1), DomainError);
  BallQuery q(1.0);
  CHECK(q.contains(1.0 + 5e-10));
  CHECK_FALSE(q.contains(1.0 + 2e-9));
}

TEST_CASE("norm_sq") {
  UnitVectorConfig c(2, Rows{{1, 0}, {0, 1}});
  CHECK(norm_sq(c, Signing({1, 1})) == doctest::Approx(2.0));
  CHECK(norm_sq(c, Signing({1, -1})) == doctest::Approx(2.0));
  UnitVectorConfig twice(2, Rows{{1, 0}, {1, 0}});
  CHECK(norm_sq(twice, Signing({1, -1})) == 0.0);
  CHECK_THROWS_AS(norm_sq(c, Signing({1})), DimensionError);
}

TEST_CASE("exact probability helpers") {
  ExactProbability p(56, 9);
  CHECK(p.fraction() == "56/512");
  CHECK(p.value() == 56.0 / 512.0);
  CHECK(p.log2_value() == doctest::Approx(std::log2(56.0 / 512.0)));
  CHECK_THROWS_AS(ExactProbability(513, 9), InternalError);
  ExactProbability huge(pow2(4000) / 3, 4000);
  CHECK(huge.value() == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("simplex vertices") {
  for (std::size_t d = 1; d <= 12; ++d) {
    auto s = materialize_simplex_vertices(d);
    REQUIRE(s.size() == d + 1);
    std::vector<double> centroid(d, 0.0);
    for (std::size_t i = 0; i <= d; ++i) {
      double nrm = 0;
      for (std::size_t k = 0; k < d; ++k) {
        nrm += s.vector(i)[k] * s.vector(i)[k];
        centroid[k] += s.vector(i)[k];
      }
      CHECK(std::abs(std::sqrt(nrm) - 1) <= 1e-12);
      for (std::size_t j = i + 1; j <= d; ++j) {
        double dot = 0;
        for (std::size_t k = 0; k < d; ++k) dot += s.vector(i)[k] * s.vector(j)[k];
        CHECK(std::abs(dot + 1.0 / static_cast<double>(d)) <= 1e-10);
      }
    }
    for (double c : centroid) CHECK(std::abs(c) <= 1e-12);
  }
  auto tri = materialize_simplex_vertices(2);
  CHECK(tri.vector(0)[0] == doctest::Approx(1.0));
  CHECK(tri.vector(1)[1] == doctest::Approx(std::sqrt(3.0) / 2));
  CHECK_THROWS_AS(materialize_simplex_vertices(0), DimensionError);
}

TEST_CASE("csv round trip is exact") {
  CounterRng rng(5);
  auto c = oracle::random_config(rng, 17, 3);
  std::stringstream ss;
  write_csv(ss, c);
  auto back = read_csv(ss);
  REQUIRE(back.size() == c.size());
  for (std::size_t i = 0; i < c.coords().size(); ++i)
    CHECK(back.coords()[i] == c.coords()[i]);
}

TEST_CASE("csv parsing errors") {
  std::stringstream ragged("1,0\n0,1,0\n");
  CHECK_THROWS_AS(read_csv(ragged), ParseError);
  std::stringstream junk("1,x\n");
  CHECK_THROWS_AS(read_csv(junk), ParseError);
  std::stringstream off("1.5,0\n");
  CHECK_THROWS_AS(read_csv(off), DomainError);
  std::stringstream empty("\n\n");
  CHECK_THROWS_AS(read_csv(empty), ParseError);
  std::stringstream almost("0.70710678118654757,0.70710678118654757\n");
  auto c = read_csv(almost);
  CHECK(std::abs(std::hypot(c.vector(0)[0], c.vector(0)[1]) - 1) <= 1e-15);
}
