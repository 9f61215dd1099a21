#ifndef RLO_ENUMERATE_HPP
#define RLO_ENUMERATE_HPP

#include <cstdint>
#include <string>

#include "rlo/core.hpp"

namespace rlo {

struct EnumOptions {
  std::size_t naive_cap = 30;
  std::size_t mitm_cap = 48;
  unsigned threads = 0;  // 0: worker_count()
};

struct EnumResult {
  ExactProbability probability;
  std::string method;
};

// All 2^n signings, Gray-code order.
ExactProbability prob_ball_naive(const UnitVectorConfig& config, const BallQuery& query,
                                 const EnumOptions& options = {});

// Half-sum grid join.
ExactProbability prob_ball_mitm(const UnitVectorConfig& config, const BallQuery& query,
                                const EnumOptions& options = {});

// Picks the naive path up to 20 vectors and splits above that.
EnumResult prob_ball(const UnitVectorConfig& config, const BallQuery& query,
                     const EnumOptions& options = {});

struct McEstimate {
  double mean = 0;
  double std_error = 0;
  std::uint64_t samples = 0;
};

// Mean over random planar configurations of the exact probability that the
// signed sum lies in the closed unit disc.
McEstimate rayleigh_mc(std::size_t n, std::uint64_t samples, std::uint64_t seed,
                       unsigned threads = 0);

struct MinimizeOptions {
  std::size_t restarts = 4;
  std::size_t max_sweeps = 200;
  double initial_step = 0.5;
  double min_step = 1e-3;
};

struct MinimizeResult {
  UnitVectorConfig config;
  ExactProbability probability;
};

// Coordinate descent over spherical angles, deterministic given the seed.
MinimizeResult local_search_minimize(std::size_t n, std::size_t d, double radius_sq,
                                     std::uint64_t seed, const MinimizeOptions& options = {},
                                     const EnumOptions& enum_options = {});

UnitVectorConfig config_from_angles(std::size_t d, const std::vector<double>& angles);

}  // namespace rlo

#endif
