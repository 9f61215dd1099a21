#include "rlo/pairing.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

namespace rlo {

std::vector<double> StandardForm::point(std::size_t k) const {
  return {std::cos(angles[k]), std::sin(angles[k])};
}

UnitVectorConfig StandardForm::to_config() const {
  std::vector<double> flat;
  flat.reserve(2 * size());
  for (std::size_t k = 0; k < size(); ++k) {
    flat.push_back(std::cos(angles[k]));
    flat.push_back(std::sin(angles[k]));
  }
  return UnitVectorConfig(2, std::move(flat));
}

namespace {

StandardForm finish(std::vector<double> theta, std::vector<bool> flipped) {
  StandardForm sf;
  const std::size_t n = theta.size();
  sf.flipped = std::move(flipped);
  sf.order.resize(n);
  std::iota(sf.order.begin(), sf.order.end(), std::size_t(0));
  std::stable_sort(sf.order.begin(), sf.order.end(),
                   [&](std::size_t a, std::size_t b) { return theta[a] < theta[b]; });
  const double lo = n ? theta[sf.order[0]] : 0.0;
  sf.rotation = -lo;
  sf.angles.resize(n);
  for (std::size_t k = 0; k < n; ++k) sf.angles[k] = theta[sf.order[k]] - lo;
  return sf;
}

}  // namespace

StandardForm standard_form_from_angles(const std::vector<double>& angles) {
  constexpr double two_pi = 2 * std::numbers::pi;
  std::vector<double> theta(angles.size());
  std::vector<bool> flipped(angles.size(), false);
  for (std::size_t i = 0; i < angles.size(); ++i) {
    double t = std::fmod(angles[i], two_pi);
    if (t < 0) t += two_pi;
    if (t >= two_pi) t = 0;
    if (t >= std::numbers::pi) {
      t -= std::numbers::pi;
      flipped[i] = true;
    }
    theta[i] = t;
  }
  return finish(std::move(theta), std::move(flipped));
}

StandardForm to_standard_form(const UnitVectorConfig& config) {
  if (config.dim() != 2) throw DimensionError("standard form needs d = 2");
  std::vector<double> angles(config.size());
  for (std::size_t i = 0; i < config.size(); ++i) {
    auto v = config.vector(i);
    angles[i] = std::atan2(v[1], v[0]);
  }
  return standard_form_from_angles(angles);
}

double pair_sq_length(const StandardForm& sf, std::size_t i, std::size_t j) {
  const double dx = std::cos(sf.angles[i]) - std::cos(sf.angles[j]);
  const double dy = std::sin(sf.angles[i]) - std::sin(sf.angles[j]);
  return dx * dx + dy * dy;
}

double pairing_e1(const StandardForm& sf, const Pairing& p) {
  double s = 0;
  for (auto [i, j] : p) s += std::abs(sf.angles[i] - sf.angles[j]);
  return s;
}

double pairing_e2(const StandardForm& sf, const Pairing& p) {
  double s = 0;
  for (auto [i, j] : p) s += pair_sq_length(sf, i, j);
  return s;
}

Pairing optimal_pairing(const StandardForm& sf) {
  const std::size_t n = sf.size();
  if (n % 2 == 0) throw ParityError("optimal pairing needs an odd number of vectors");
  const std::size_t k = n / 2;
  Pairing low, high;
  for (std::size_t i = 0; i < k; ++i) {
    low.emplace_back(2 * i, 2 * i + 1);
    high.emplace_back(2 * i + 1, 2 * i + 2);
  }
  return pairing_e1(sf, high) < pairing_e1(sf, low) ? high : low;
}

GreedyResult greedy_delta_pairing(const StandardForm& sf, double delta) {
  if (!(delta > 0)) throw DomainError("delta must be positive");
  GreedyResult r;
  r.pairing = optimal_pairing(sf);
  double e2 = pairing_e2(sf, r.pairing);
  while (e2 > delta && !r.pairing.empty()) {
    r.e2_trajectory.push_back(e2);
    std::size_t best = 0;
    double best_len = -1;
    for (std::size_t p = 0; p < r.pairing.size(); ++p) {
      const double len = pair_sq_length(sf, r.pairing[p].first, r.pairing[p].second);
      if (len > best_len) {
        best_len = len;
        best = p;
      }
    }
    r.removed_lengths.push_back(best_len);
    r.pairing.erase(r.pairing.begin() + static_cast<std::ptrdiff_t>(best));
    e2 = pairing_e2(sf, r.pairing);
  }
  r.e2_trajectory.push_back(e2);
  return r;
}

Decomposition approximate_decomposition(const UnitVectorConfig& config, double delta) {
  if (!(delta > 0)) throw DomainError("delta must be positive");
  Decomposition dec;
  dec.form = to_standard_form(config);
  dec.alpha = delta * delta / 2;
  dec.radius = delta;
  auto greedy = greedy_delta_pairing(dec.form, dec.alpha);
  dec.pairing = std::move(greedy.pairing);
  dec.e2 = greedy.e2_trajectory.back();
  dec.hypothesis_slack = delta * delta - dec.alpha - dec.e2;
  std::vector<bool> in_a(config.size(), false);
  for (auto [i, j] : dec.pairing) {
    in_a[dec.form.order[i]] = true;
    in_a[dec.form.order[j]] = true;
  }
  for (std::size_t i = 0; i < config.size(); ++i)
    (in_a[i] ? dec.paired : dec.rest).push_back(i);
  return dec;
}

UnitVectorConfig pairing_extremal_fixture(std::size_t k, double theta) {
  if (k == 0) throw DomainError("fixture needs k >= 1");
  if (!(theta > 0 && theta < std::numbers::pi / 2)) throw DomainError("theta must lie in (0, pi/2)");
  std::vector<double> flat;
  for (std::size_t i = 0; i + 1 < 2 * k; ++i) {
    flat.push_back(1.0);
    flat.push_back(0.0);
  }
  flat.insert(flat.end(), {0.0, 1.0, -std::cos(theta), std::sin(theta)});
  return UnitVectorConfig(2, std::move(flat));
}

}  // namespace rlo
