#ifndef RLO_PAIRING_HPP
#define RLO_PAIRING_HPP

#include <cstddef>
#include <utility>
#include <vector>

#include "rlo/core.hpp"

namespace rlo {

// Planar vectors flipped into the upper half-plane, rotated so the
// smallest angle is 0 and sorted. angles[k] belongs to input vector
// order[k]; flipped[i] says whether input i was negated.
struct StandardForm {
  std::vector<double> angles;
  std::vector<std::size_t> order;
  std::vector<bool> flipped;
  double rotation = 0;  // added to every (flipped) input angle

  std::size_t size() const { return angles.size(); }
  std::vector<double> point(std::size_t k) const;
  UnitVectorConfig to_config() const;
};

StandardForm to_standard_form(const UnitVectorConfig& config);
StandardForm standard_form_from_angles(const std::vector<double>& angles);

// Pairs of standard-form positions.
using Pairing = std::vector<std::pair<std::size_t, std::size_t>>;

double pair_sq_length(const StandardForm& sf, std::size_t i, std::size_t j);
double pairing_e1(const StandardForm& sf, const Pairing& p);  // sum of angle gaps
double pairing_e2(const StandardForm& sf, const Pairing& p);  // sum of squared lengths

// Better of the two consecutive pairings of an odd-size standard form.
Pairing optimal_pairing(const StandardForm& sf);

struct GreedyResult {
  Pairing pairing;
  std::vector<double> e2_trajectory;    // before each removal, then final
  std::vector<double> removed_lengths;  // squared lengths of removed pairs
};

GreedyResult greedy_delta_pairing(const StandardForm& sf, double delta);

struct Decomposition {
  StandardForm form;
  Pairing pairing;                  // standard-form positions
  std::vector<std::size_t> paired;  // input indices in A
  std::vector<std::size_t> rest;    // input indices in B
  double e2 = 0;
  double alpha = 0;
  double radius = 0;
  double hypothesis_slack = 0;  // radius^2 - alpha - e2
};

Decomposition approximate_decomposition(const UnitVectorConfig& config, double delta);

// (1,0) repeated 2k-1 times, then (0,1) and (-cos theta, sin theta).
UnitVectorConfig pairing_extremal_fixture(std::size_t k, double theta);

}  // namespace rlo

#endif
