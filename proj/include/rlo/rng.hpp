#ifndef RLO_RNG_HPP
#define RLO_RNG_HPP

#include <cstdint>

namespace rlo {

// SplitMix64 finalizer.
std::uint64_t mix64(std::uint64_t z);

// Counter-based SplitMix64: output i of a stream keyed by `key` is
// mix64(key + (i + 1) * 0x9E3779B97F4A7C15). Streams for independent
// samples are derived with stream_key(seed, stream_index).
class CounterRng {
 public:
  static constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;

  explicit CounterRng(std::uint64_t key) : key_(key) {}

  std::uint64_t at(std::uint64_t counter) const { return mix64(key_ + (counter + 1) * kGamma); }
  std::uint64_t next() { return at(counter_++); }
  // Uniform in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  std::uint64_t below(std::uint64_t bound);

  static std::uint64_t stream_key(std::uint64_t seed, std::uint64_t stream) {
    return mix64(seed ^ mix64(stream + kGamma));
  }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace rlo

#endif
