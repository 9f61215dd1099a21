#include "rlo/enumerate.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <numbers>
#include <unordered_map>

#include "rlo/parallel.hpp"
#include "rlo/rng.hpp"

namespace rlo {
namespace {

constexpr std::size_t kGrayLowBits = 16;

unsigned threads_of(const EnumOptions& o) { return o.threads ? o.threads : worker_count(); }

double sq_norm(const double* x, std::size_t d) {
  double s = 0;
  for (std::size_t k = 0; k < d; ++k) s += x[k] * x[k];
  return s;
}

// Visits all 2^(hi - lo) signings of vectors [lo, hi) added to `base`.
// Each block of high bits restarts from an exactly recomputed sum.
template <class Visit>
void gray_walk(const UnitVectorConfig& config, std::size_t lo, std::size_t hi,
               const std::vector<double>& offset, std::uint64_t block, std::size_t low_bits,
               Visit&& visit) {
  const std::size_t d = config.dim();
  std::vector<double> cur = offset;
  for (std::size_t i = lo; i < hi; ++i) {
    bool negative = i >= lo + low_bits && ((block >> (i - lo - low_bits)) & 1);
    auto v = config.vector(i);
    for (std::size_t k = 0; k < d; ++k) cur[k] += negative ? -v[k] : v[k];
  }
  std::vector<int> sign(low_bits, 1);
  visit(cur.data());
  const std::uint64_t steps = std::uint64_t(1) << low_bits;
  for (std::uint64_t t = 1; t < steps; ++t) {
    int j = std::countr_zero(t);
    auto v = config.vector(lo + j);
    double f = sign[j] > 0 ? -2.0 : 2.0;
    sign[j] = -sign[j];
    for (std::size_t k = 0; k < d; ++k) cur[k] += f * v[k];
    visit(cur.data());
  }
}

}  // namespace

ExactProbability prob_ball_naive(const UnitVectorConfig& config, const BallQuery& query,
                                 const EnumOptions& options) {
  const std::size_t n = config.size();
  if (n > options.naive_cap)
    throw ResourceError("naive enumeration capped at " + std::to_string(options.naive_cap) +
                        " vectors");
  const std::size_t d = config.dim();
  if (n == 0) return {query.contains(0.0) ? 1 : 0, 0};

  const std::size_t low = std::min(n, kGrayLowBits);
  const std::uint64_t blocks = std::uint64_t(1) << (n - low);
  std::vector<std::uint64_t> counts(blocks, 0);
  const double limit = query.radius_sq + query.boundary_tol;
  const std::vector<double> zero(d, 0.0);
  parallel_for(blocks, [&](std::size_t b, unsigned) {
    std::uint64_t c = 0;
    gray_walk(config, 0, n, zero, b, low, [&](const double* s) { c += sq_norm(s, d) <= limit; });
    counts[b] = c;
  }, threads_of(options));

  std::uint64_t total = 0;
  for (auto c : counts) total += c;
  return {BigInt(total), static_cast<unsigned>(n)};
}

namespace {

constexpr std::size_t kGridDims = 4;
using CellKey = std::array<std::int64_t, kGridDims>;

struct CellKeyHash {
  std::size_t operator()(const CellKey& k) const {
    std::uint64_t h = 0;
    for (auto c : k) h = mix64(h ^ static_cast<std::uint64_t>(c));
    return static_cast<std::size_t>(h);
  }
};

CellKey cell_of(const double* x, std::size_t g, double side, double sign) {
  CellKey key{};
  for (std::size_t k = 0; k < g; ++k)
    key[k] = static_cast<std::int64_t>(std::floor(sign * x[k] / side));
  return key;
}

}  // namespace

ExactProbability prob_ball_mitm(const UnitVectorConfig& config, const BallQuery& query,
                                const EnumOptions& options) {
  const std::size_t n = config.size();
  if (n > options.mitm_cap)
    throw ResourceError("split enumeration capped at " + std::to_string(options.mitm_cap) +
                        " vectors");
  const std::size_t d = config.dim();
  if (n < 2) return prob_ball_naive(config, query, options);

  const std::size_t nl = (n + 1) / 2;
  const std::size_t nr = n - nl;
  const double limit = query.radius_sq + query.boundary_tol;

  // Right half sums, indexed by sign mask; bit set means negative.
  const std::size_t right_count = std::size_t(1) << nr;
  std::vector<double> right(right_count * d, 0.0);
  for (std::size_t i = 0; i < nr; ++i) {
    auto v = config.vector(nl + i);
    for (std::size_t k = 0; k < d; ++k) right[k] += v[k];
  }
  for (std::size_t i = 0; i < nr; ++i) {
    auto v = config.vector(nl + i);
    const std::size_t half = std::size_t(1) << i;
    for (std::size_t mask = 0; mask < half; ++mask)
      for (std::size_t k = 0; k < d; ++k)
        right[(mask | half) * d + k] = right[mask * d + k] - 2.0 * v[k];
  }

  // Cells of side sqrt(limit) in the first g coordinates: every partner
  // of a left sum lies in the 3^g cells around its negation.
  const std::size_t g = std::min(d, kGridDims);
  const double side = limit > 0 ? std::sqrt(limit) : 1e-9;
  std::vector<CellKey> keys(right_count);
  std::vector<std::uint32_t> order(right_count);
  for (std::size_t j = 0; j < right_count; ++j) {
    keys[j] = cell_of(&right[j * d], g, side, 1.0);
    order[j] = static_cast<std::uint32_t>(j);
  }
  std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
    return keys[a] != keys[b] ? keys[a] < keys[b] : a < b;
  });
  std::vector<double> sorted(right_count * d);
  for (std::size_t j = 0; j < right_count; ++j)
    std::copy_n(&right[order[j] * d], d, &sorted[j * d]);
  std::unordered_map<CellKey, std::pair<std::uint32_t, std::uint32_t>, CellKeyHash> cells;
  for (std::size_t j = 0; j < right_count;) {
    std::size_t e = j;
    while (e < right_count && keys[order[e]] == keys[order[j]]) ++e;
    cells.emplace(keys[order[j]], std::make_pair(std::uint32_t(j), std::uint32_t(e)));
    j = e;
  }
  right.clear();
  right.shrink_to_fit();

  std::size_t neighbours = 1;
  for (std::size_t k = 0; k < g; ++k) neighbours *= 3;

  const std::size_t low = std::min(nl, kGrayLowBits);
  const std::uint64_t blocks = std::uint64_t(1) << (nl - low);
  std::vector<std::uint64_t> counts(blocks, 0);
  const std::vector<double> zero(d, 0.0);
  parallel_for(blocks, [&](std::size_t b, unsigned) {
    std::uint64_t c = 0;
    std::vector<double> tot(d);
    gray_walk(config, 0, nl, zero, b, low, [&](const double* p) {
      CellKey centre = cell_of(p, g, side, -1.0);
      for (std::size_t code = 0; code < neighbours; ++code) {
        CellKey key = centre;
        std::size_t rest = code;
        for (std::size_t k = 0; k < g; ++k) {
          key[k] += static_cast<std::int64_t>(rest % 3) - 1;
          rest /= 3;
        }
        auto it = cells.find(key);
        if (it == cells.end()) continue;
        for (std::uint32_t j = it->second.first; j < it->second.second; ++j) {
          const double* q = &sorted[std::size_t(j) * d];
          for (std::size_t k = 0; k < d; ++k) tot[k] = p[k] + q[k];
          c += sq_norm(tot.data(), d) <= limit;
        }
      }
    });
    counts[b] = c;
  }, threads_of(options));

  std::uint64_t total = 0;
  for (auto c : counts) total += c;
  return {BigInt(total), static_cast<unsigned>(n)};
}

EnumResult prob_ball(const UnitVectorConfig& config, const BallQuery& query,
                     const EnumOptions& options) {
  if (config.size() <= 20 && config.size() <= options.naive_cap)
    return {prob_ball_naive(config, query, options), "naive"};
  return {prob_ball_mitm(config, query, options), "mitm"};
}

UnitVectorConfig config_from_angles(std::size_t d, const std::vector<double>& angles) {
  if (d < 2) throw DimensionError("angle parametrisation needs d >= 2");
  const std::size_t per = d - 1;
  if (angles.size() % per != 0) throw DimensionError("angle count not a multiple of d-1");
  const std::size_t n = angles.size() / per;
  std::vector<double> flat;
  flat.reserve(n * d);
  for (std::size_t i = 0; i < n; ++i) {
    const double* a = &angles[i * per];
    // x_1 = cos a_1, x_2 = sin a_1 cos a_2, ..., x_d = sin a_1 ... sin a_{d-1}
    std::vector<double> v(d);
    double s = 1.0;
    for (std::size_t k = 0; k < per; ++k) {
      v[k] = s * std::cos(a[k]);
      s *= std::sin(a[k]);
    }
    v[per] = s;
    double nrm = std::sqrt(sq_norm(v.data(), d));
    for (double c : v) flat.push_back(c / nrm);
  }
  return UnitVectorConfig(d, std::move(flat));
}

McEstimate rayleigh_mc(std::size_t n, std::uint64_t samples, std::uint64_t seed,
                       unsigned threads) {
  if (n < 2) throw DomainError("rayleigh_mc needs n >= 2");
  if (n > 30) throw ResourceError("rayleigh_mc uses exhaustive enumeration; n capped at 30");
  if (samples < 1) throw DomainError("rayleigh_mc needs at least one sample");
  // Sample i reads counters [i n, (i + 1) n) of one keyed stream.
  const CounterRng rng(mix64(seed));

  constexpr std::uint64_t kChunk = 1024;
  const std::uint64_t chunks = (samples + kChunk - 1) / kChunk;
  std::vector<unsigned __int128> sum(chunks), sum_sq(chunks);
  const BallQuery disc(1.0);
  EnumOptions serial;
  serial.threads = 1;

  parallel_for(chunks, [&](std::size_t c, unsigned) {
    unsigned __int128 s = 0, s2 = 0;
    const std::uint64_t end = std::min(samples, (c + 1) * kChunk);
    std::vector<double> flat(2 * n);
    for (std::uint64_t i = c * kChunk; i < end; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        const std::uint64_t bits = rng.at(i * n + j) >> 11;
        double phi = 2.0 * std::numbers::pi * (static_cast<double>(bits) * 0x1.0p-53);
        flat[2 * j] = std::cos(phi);
        flat[2 * j + 1] = std::sin(phi);
      }
      UnitVectorConfig config(2, flat);
      auto count = prob_ball_naive(config, disc, serial).count.convert_to<std::uint64_t>();
      s += count;
      s2 += static_cast<unsigned __int128>(count) * count;
    }
    sum[c] = s;
    sum_sq[c] = s2;
  }, threads ? threads : worker_count());

  unsigned __int128 s = 0, s2 = 0;
  for (std::uint64_t c = 0; c < chunks; ++c) {
    s += sum[c];
    s2 += sum_sq[c];
  }
  const long double scale = std::ldexp(1.0L, -static_cast<int>(n));
  const long double N = static_cast<long double>(samples);
  const long double mean_count = static_cast<long double>(s) / N;
  const long double var_count =
      samples > 1 ? (static_cast<long double>(s2) - N * mean_count * mean_count) / (N - 1) : 0.0L;
  McEstimate est;
  est.samples = samples;
  est.mean = static_cast<double>(mean_count * scale);
  est.std_error = static_cast<double>(std::sqrt(std::max(0.0L, var_count) / N) * scale);
  return est;
}

MinimizeResult local_search_minimize(std::size_t n, std::size_t d, double radius_sq,
                                     std::uint64_t seed, const MinimizeOptions& options,
                                     const EnumOptions& enum_options) {
  if (n == 0) throw DomainError("minimize needs n >= 1");
  if (d < 2) throw DimensionError("minimize needs d >= 2");
  if (options.restarts == 0) throw DomainError("minimize needs at least one restart");
  const BallQuery query(radius_sq);
  const std::size_t per = d - 1;
  auto evaluate = [&](const std::vector<double>& angles) {
    return prob_ball_mitm(config_from_angles(d, angles), query, enum_options).count;
  };

  std::vector<double> best_angles;
  BigInt best_count = -1;
  for (std::size_t r = 0; r < options.restarts; ++r) {
    CounterRng rng(CounterRng::stream_key(seed, r));
    std::vector<double> angles(n * per);
    for (std::size_t k = 0; k < angles.size(); ++k) {
      const bool last = (k % per) == per - 1;
      angles[k] = (last ? 2.0 : 1.0) * std::numbers::pi * rng.uniform();
    }
    BigInt current = evaluate(angles);
    double step = options.initial_step;
    for (std::size_t sweep = 0; sweep < options.max_sweeps && step >= options.min_step;
         ++sweep) {
      bool improved = false;
      for (std::size_t k = 0; k < angles.size(); ++k) {
        for (double dir : {1.0, -1.0}) {
          const double old = angles[k];
          angles[k] = old + dir * step;
          BigInt trial = evaluate(angles);
          if (trial < current) {
            current = std::move(trial);
            improved = true;
            break;
          }
          angles[k] = old;
        }
      }
      if (!improved) step /= 2;
    }
    if (best_count < 0 || current < best_count) {
      best_count = current;
      best_angles = angles;
    }
  }
  return {config_from_angles(d, best_angles), {best_count, static_cast<unsigned>(n)}};
}

}  // namespace rlo
