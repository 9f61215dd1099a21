#ifndef RLO_BALANCE_HPP
#define RLO_BALANCE_HPP

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include <json.hpp>

#include "rlo/core.hpp"

namespace rlo {

// Signs with |sum| <= 1 for an odd number of planar unit vectors.
Signing swanepoel_signs(const UnitVectorConfig& config);

// Planar vectors rotated so the alternating sum is (beta, 0), reflected
// into the right half-plane and sorted by angle in (-pi/2, pi/2].
// Context vector k equals orientation[k] * R(rotation) v_{source[k]}.
struct BalancingContext {
  std::vector<double> angles;
  std::vector<std::size_t> source;
  std::vector<int> orientation;
  double rotation = 0;
  double beta = 0;
  double star_stretch = 1;  // 1 / sqrt(1 - |beta|)

  std::size_t size() const { return angles.size(); }
  double x(std::size_t k) const;
  double y(std::size_t k) const;
  // |(x, y)|* = |(x / sqrt(1 - |beta|), y)|
  double norm_star(double px, double py) const;
  Signing to_input_signing(const std::vector<int>& context_signs) const;
};

BalancingContext build_context(const UnitVectorConfig& config);

double star_norm(double beta, double px, double py);

struct CertificateOptions {
  double degenerate_tol = 1e-9;
  double pair_tol = 1e-9;
  double cert_tol = 1e-9;
  std::size_t exhaustive_limit = 20;  // verify every signing up to 2^20
};

struct SigningCertificate {
  Signing base;
  std::vector<std::pair<std::size_t, std::size_t>> flip_pairs;  // input indices
  double radius_sq = 1;
  double beta = 0;
  bool degenerate = false;
  bool exhaustive = false;        // every signing evaluated
  double verified_max_norm = 0;   // max |sigma| over evaluated signings
  double analytic_bound = 0;      // guaranteed upper bound on |sigma|
  double pairing_star_sum = 0;    // star length of the full balanced pairing
  std::size_t pairing_size = 0;

  std::size_t size_log2() const { return flip_pairs.size(); }
  BigInt size() const { return pow2(static_cast<unsigned>(flip_pairs.size())); }
  // Bit p of mask flips both signs of flip_pairs[p].
  Signing expand(std::uint64_t mask) const;
};

SigningCertificate certificate(const UnitVectorConfig& config,
                               const CertificateOptions& options = {});

nlohmann::json to_json(const SigningCertificate& cert);

}  // namespace rlo

#endif
