#ifndef RLO_STRUCTURED_HPP
#define RLO_STRUCTURED_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "rlo/core.hpp"

namespace rlo {

using IntVec = std::vector<std::int64_t>;

// m_i copies of e_i in R^d.
struct OrthogonalConfig {
  IntVec m;

  OrthogonalConfig() = default;
  explicit OrthogonalConfig(IntVec m_);
  std::size_t d() const { return m.size(); }
  std::int64_t n() const;
};

// m_i copies of simplex vertex u_i, i = 1..d+1, in R^d.
struct SimplicialConfig {
  IntVec m;

  SimplicialConfig() = default;
  explicit SimplicialConfig(IntVec m_);
  std::size_t d() const { return m.size() - 1; }
  std::int64_t n() const;
};

// a_j copies of the triangle vertices in span(e_1, e_2) and b_i copies of
// e_i for i = 3..d. b holds b_3..b_d.
struct MixedConfig {
  std::array<std::int64_t, 3> a{};
  IntVec b;

  MixedConfig() = default;
  MixedConfig(std::array<std::int64_t, 3> a_, IntVec b_);
  std::size_t d() const { return b.size() + 2; }
  std::int64_t n() const;
};

// k1_plus copies of (cos beta, sin beta, 0, ...), k1_minus copies of
// (cos beta, -sin beta, 0, ...), k[i] copies of e_{i+2}. k holds k_2..k_d.
struct PerturbedConfig {
  std::int64_t k1_plus = 0;
  std::int64_t k1_minus = 0;
  IntVec k;
  double beta = 0;

  PerturbedConfig() = default;
  PerturbedConfig(std::int64_t kp, std::int64_t km, IntVec k_, std::optional<double> beta_ = {});
  std::size_t d() const { return k.size() + 1; }
  std::int64_t n() const;
  static double default_beta(std::int64_t n);
};

// Lattice points x in Z^d with |x|^2 <= R and x_i = h_i (mod 2).
BigInt count_S(std::size_t d, std::int64_t R, const std::vector<int>& h);
std::vector<IntVec> list_S(std::size_t d, std::int64_t R, const std::vector<int>& h,
                           std::size_t limit = 1u << 20);

// count_S(d, d, h) for h with t zero coordinates.
BigInt f_td(std::size_t t, std::size_t d);
BigInt f0(std::size_t d);  // min over even t
BigInt f1(std::size_t d);  // min over odd t
BigInt f0_closed_form(std::size_t d);
BigInt f1_closed_form(std::size_t d);

// sum_{i <= t/4} 2^i C(t, i)
BigInt F_count(std::size_t t);

struct FRangeRow {
  std::size_t t = 0;
  BigInt F;
  BigInt f;  // f(6, t) for even t, f(7, t) for odd t
  bool holds = false;
};

struct FRangeReport {
  std::vector<FRangeRow> rows;
  bool all_hold = false;
};

FRangeReport check_F_range(std::size_t t_lo = 8, std::size_t t_hi = 168);

ExactProbability prob_orthogonal_exact(const OrthogonalConfig& config, std::int64_t R);
// Representative enumeration; practical for small d.
ExactProbability prob_simplicial_exact(const SimplicialConfig& config, std::int64_t R);
// Anchor-offset dynamic programme; same value, scales to larger d.
ExactProbability prob_simplicial_dp(const SimplicialConfig& config, std::int64_t R);
double prob_simplicial_dp_approx(const SimplicialConfig& config, std::int64_t R);
// Ball of radius^2 = d.
ExactProbability prob_mixed_exact(const MixedConfig& config);
// Ball of radius^2 = d - 1.
ExactProbability prob_perturbed_exact(const PerturbedConfig& config);

PerturbedConfig make_counterexample(std::size_t d, std::int64_t n,
                                    std::optional<double> beta = {});
OrthogonalConfig make_orthogonal(std::size_t d, std::int64_t n,
                                 std::optional<std::size_t> t = {});
SimplicialConfig make_triangle(std::int64_t n);
MixedConfig make_mixed(std::size_t d, std::int64_t n);

// Default number of even coordinates for make_orthogonal(d, n).
std::size_t best_orthogonal_t(std::size_t d, std::int64_t n);

UnitVectorConfig materialize(const OrthogonalConfig& c);
UnitVectorConfig materialize(const SimplicialConfig& c);
UnitVectorConfig materialize(const MixedConfig& c);
UnitVectorConfig materialize(const PerturbedConfig& c);

nlohmann::json to_json(const OrthogonalConfig& c);
nlohmann::json to_json(const SimplicialConfig& c);
nlohmann::json to_json(const MixedConfig& c);
nlohmann::json to_json(const PerturbedConfig& c);

// Pairwise weight sums of the atom distribution on the even and odd
// coordinates: even values -2, 0, 2 and odd values -1, 1, 3 with
// frequencies (0.02, 0.68, 0.30) and (0.30, 0.68, 0.02).
double atom_internal_weight();
double atom_cross_weight();
// log2 of the atom-count lower bound with a even and b odd coordinates:
// the two rounded multinomials divided by d = a + b.
double atom_count_log2(std::size_t a, std::size_t b);
// Smallest d* <= d_max such that, for every d in [d*, d_max] and every
// split, the atom count exceeds 2^{1.011 d}.
std::optional<std::size_t> atom_count_threshold(std::size_t d_max);

}  // namespace rlo

#endif
