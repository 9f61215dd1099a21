#include "rlo/structured.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "rlo/binom.hpp"
#include "rlo/parallel.hpp"

namespace rlo {
namespace {

int parity(std::int64_t v) { return static_cast<int>(((v % 2) + 2) % 2); }

std::int64_t total(const IntVec& v) {
  std::int64_t s = 0;
  for (auto x : v) s += x;
  return s;
}

void require_nonneg(const IntVec& v, const char* what) {
  for (auto x : v)
    if (x < 0) throw DomainError(std::string(what) + " must be non-negative");
}

unsigned exponent_of(std::int64_t n) {
  if (n < 0 || n > (1 << 30)) throw DomainError("vector count out of range");
  return static_cast<unsigned>(n);
}

std::int64_t isqrt(std::int64_t v) {
  if (v <= 0) return 0;
  auto r = static_cast<std::int64_t>(std::sqrt(static_cast<double>(v)));
  while (r * r > v) --r;
  while ((r + 1) * (r + 1) <= v) ++r;
  return r;
}

}  // namespace

OrthogonalConfig::OrthogonalConfig(IntVec m_) : m(std::move(m_)) {
  if (m.empty()) throw DimensionError("orthogonal config needs d >= 1");
  require_nonneg(m, "multiplicities");
  if (n() < 1) throw DomainError("orthogonal config needs n >= 1");
}
std::int64_t OrthogonalConfig::n() const { return total(m); }

SimplicialConfig::SimplicialConfig(IntVec m_) : m(std::move(m_)) {
  if (m.size() < 2) throw DimensionError("simplicial config needs d >= 1");
  require_nonneg(m, "multiplicities");
  if (n() < 1) throw DomainError("simplicial config needs n >= 1");
}
std::int64_t SimplicialConfig::n() const { return total(m); }

MixedConfig::MixedConfig(std::array<std::int64_t, 3> a_, IntVec b_)
    : a(a_), b(std::move(b_)) {
  if (b.empty()) throw DimensionError("mixed config needs d >= 3");
  for (auto v : a)
    if (v < 0) throw DomainError("triangle multiplicities must be non-negative");
  require_nonneg(b, "axis multiplicities");
  if (parity(a[0]) != parity(a[1]) || parity(a[1]) != parity(a[2]))
    throw ParityError("triangle multiplicities must share parity");
  if (parity(b[0]) != 0) throw ParityError("b_3 must be even");
  for (std::size_t i = 1; i < b.size(); ++i)
    if (parity(b[i]) != 1) throw ParityError("b_4..b_d must be odd");
}
std::int64_t MixedConfig::n() const { return a[0] + a[1] + a[2] + total(b); }

double PerturbedConfig::default_beta(std::int64_t n) {
  return std::asin(1.0 / (2.0 * static_cast<double>(n)));
}

PerturbedConfig::PerturbedConfig(std::int64_t kp, std::int64_t km, IntVec k_,
                                 std::optional<double> beta_)
    : k1_plus(kp), k1_minus(km), k(std::move(k_)) {
  if (k.empty()) throw DimensionError("perturbed config needs d >= 2");
  if (kp < 0 || km < 0) throw DomainError("multiplicities must be non-negative");
  require_nonneg(k, "multiplicities");
  if (parity(kp) != 0) throw ParityError("k1_plus must be even");
  if (parity(km) != 1) throw ParityError("k1_minus must be odd");
  if (parity(k[0]) != 0) throw ParityError("k_2 must be even");
  for (std::size_t i = 1; i < k.size(); ++i)
    if (parity(k[i]) != 1) throw ParityError("k_3..k_d must be odd");
  beta = beta_ ? *beta_ : default_beta(n());
  if (!(beta > 0 && beta < std::numbers::pi / 2))
    throw DomainError("beta must lie in (0, pi/2)");
  if (!(std::sin(beta) < 1.0 / static_cast<double>(n())))
    throw DomainError("perturbation needs sin(beta) < 1/n");
}
std::int64_t PerturbedConfig::n() const { return k1_plus + k1_minus + total(k); }

BigInt count_S(std::size_t d, std::int64_t R, const std::vector<int>& h) {
  if (h.size() != d) throw DimensionError("parity vector length must equal d");
  if (R < 0) return 0;
  // ways[b]: points on the processed coordinates with budget b left.
  std::vector<BigInt> ways(R + 1, 0);
  ways[R] = 1;
  for (std::size_t i = 0; i < d; ++i) {
    if (h[i] != 0 && h[i] != 1) throw DomainError("parity entries must be 0 or 1");
    std::vector<BigInt> next(R + 1, 0);
    for (std::int64_t b = 0; b <= R; ++b) {
      if (ways[b] == 0) continue;
      for (std::int64_t x = h[i]; x * x <= b; x += 2) {
        const int copies = x == 0 ? 1 : 2;
        next[b - x * x] += copies * ways[b];
      }
    }
    ways = std::move(next);
  }
  BigInt s = 0;
  for (auto& w : ways) s += w;
  return s;
}

std::vector<IntVec> list_S(std::size_t d, std::int64_t R, const std::vector<int>& h,
                           std::size_t limit) {
  if (h.size() != d) throw DimensionError("parity vector length must equal d");
  std::vector<IntVec> out;
  IntVec cur(d);
  auto rec = [&](auto&& self, std::size_t i, std::int64_t budget) -> void {
    if (i == d) {
      if (out.size() >= limit) throw ResourceError("lattice point listing exceeds limit");
      out.push_back(cur);
      return;
    }
    const std::int64_t r = isqrt(budget);
    for (std::int64_t x = -r; x <= r; ++x) {
      if (parity(x) != h[i]) continue;
      cur[i] = x;
      self(self, i + 1, budget - x * x);
    }
  };
  if (R >= 0) rec(rec, 0, R);
  return out;
}

BigInt f_td(std::size_t t, std::size_t d) {
  if (t > d) throw DomainError("t must not exceed d");
  std::vector<int> h(d, 1);
  std::fill(h.begin(), h.begin() + t, 0);
  return count_S(d, static_cast<std::int64_t>(d), h);
}

namespace {

BigInt min_over_t(std::size_t d, std::size_t first) {
  BigInt best = -1;
  for (std::size_t t = first; t <= d; t += 2) {
    BigInt v = f_td(t, d);
    if (best < 0 || v < best) best = v;
  }
  return best;
}

BigInt scaled_pow2(std::int64_t c, std::int64_t e) {
  // c * 2^e with e possibly negative (exact in all closed-form cases).
  BigInt r = c;
  if (e >= 0) return r << static_cast<unsigned>(e);
  return r >> static_cast<unsigned>(-e);
}

}  // namespace

BigInt f0(std::size_t d) {
  if (d == 0) throw DomainError("d must be positive");
  return min_over_t(d, 0);
}

BigInt f1(std::size_t d) {
  if (d == 0) throw DomainError("d must be positive");
  return min_over_t(d, 1);
}

BigInt f0_closed_form(std::size_t d) {
  const auto D = static_cast<std::int64_t>(d);
  if (d == 0) throw DomainError("d must be positive");
  if (d == 1) return scaled_pow2(1, D);
  if (d <= 5) return scaled_pow2(1, D - 2);
  if (d <= 9 || d >= 17) return scaled_pow2(13, D - 6);
  return scaled_pow2(191 + D, D - 10);
}

BigInt f1_closed_form(std::size_t d) {
  const auto D = static_cast<std::int64_t>(d);
  if (d == 0) throw DomainError("d must be positive");
  if (d <= 2) return scaled_pow2(1, D - 1);
  if (d <= 6) return scaled_pow2(1, D - 3);
  return scaled_pow2(15, D - 7);
}

BigInt F_count(std::size_t t) {
  BigInt s = 0;
  for (std::size_t i = 0; i <= t / 4; ++i)
    s += (BigInt(1) << static_cast<unsigned>(i)) *
         binomial(static_cast<std::int64_t>(t), static_cast<std::int64_t>(i));
  return s;
}

FRangeReport check_F_range(std::size_t t_lo, std::size_t t_hi) {
  FRangeReport rep;
  rep.all_hold = true;
  for (std::size_t t = t_lo; t <= t_hi; ++t) {
    if (t == 10 || t == 14) continue;
    FRangeRow row;
    row.t = t;
    row.F = F_count(t);
    const auto T = static_cast<std::int64_t>(t);
    row.f = t % 2 == 0 ? scaled_pow2(13, T - 6) : scaled_pow2(15, T - 7);
    row.holds = row.F > row.f;
    rep.all_hold = rep.all_hold && row.holds;
    rep.rows.push_back(std::move(row));
  }
  return rep;
}

ExactProbability prob_orthogonal_exact(const OrthogonalConfig& config, std::int64_t R) {
  const unsigned n = exponent_of(config.n());
  if (R < 0) return {0, n};
  std::vector<BigInt> ways(R + 1, 0);
  ways[R] = 1;
  for (auto mi : config.m) {
    std::vector<BigInt> next(R + 1, 0);
    const int h = parity(mi);
    for (std::int64_t b = 0; b <= R; ++b) {
      if (ways[b] == 0) continue;
      for (std::int64_t x = h; x * x <= b && x <= mi; x += 2) {
        BigInt w = binomial(mi, (mi + x) / 2);
        if (x != 0) w *= 2;  // +x and -x carry equal weight
        next[b - x * x] += w * ways[b];
      }
    }
    ways = std::move(next);
  }
  BigInt s = 0;
  for (auto& w : ways) s += w;
  return {s, n};
}

ExactProbability prob_simplicial_exact(const SimplicialConfig& config, std::int64_t R) {
  const unsigned n = exponent_of(config.n());
  const std::size_t d = config.d();
  if (R < 0) return {0, n};
  const auto D = static_cast<std::int64_t>(d) * R;
  const std::int64_t bound = isqrt(D) + 1;
  IntVec x(d + 1);
  x[d] = parity(config.m[d]);
  BigInt count = 0;
  // pair: sum of (x_i - x_j)^2 over the fixed coordinates, including x[d].
  auto rec = [&](auto&& self, std::size_t i, std::int64_t pair) -> void {
    if (i == d) {
      count += shifted_product_sum_unchecked(config.m, x);
      return;
    }
    const int h = parity(config.m[i]);
    for (std::int64_t v = x[d] - bound; v <= x[d] + bound; ++v) {
      if (parity(v) != h) continue;
      std::int64_t add = (v - x[d]) * (v - x[d]);
      for (std::size_t j = 0; j < i; ++j) add += (v - x[j]) * (v - x[j]);
      if (pair + add > D) continue;
      x[i] = v;
      self(self, i + 1, pair + add);
    }
  };
  rec(rec, 0, 0);
  return {count, n};
}

namespace {

// Weights of one coordinate: value s_i = c + y with multiplicity m_i.
struct BigWeights {
  static BigInt one() { return 1; }
  static BigInt zero() { return 0; }
  static BigInt weight(std::int64_t m, std::int64_t s) {
    if (std::abs(s) > m || parity(m - s) != 0) return 0;
    return binomial(m, (m + s) / 2);
  }
  static void addmul(BigInt& acc, const BigInt& a, const BigInt& b) {
    mpz_addmul(acc.backend().data(), a.backend().data(), b.backend().data());
  }
  static bool is_zero(const BigInt& v) { return v == 0; }
};

// Probabilities C(m, k) / 2^m in long double.
struct RealWeights {
  static long double one() { return 1; }
  static long double zero() { return 0; }
  static long double weight(std::int64_t m, std::int64_t s) {
    if (std::abs(s) > m || parity(m - s) != 0) return 0;
    const long double k = (m + s) / 2;
    return std::exp(std::lgamma((long double)m + 1) - std::lgamma(k + 1) -
                    std::lgamma((long double)m - k + 1) - m * std::log(2.0L));
  }
  static void addmul(long double& acc, long double a, long double b) { acc += a * b; }
  static bool is_zero(long double v) { return v == 0; }
};

template <class W>
auto simplicial_dp(const SimplicialConfig& config, std::int64_t R) {
  using T = decltype(W::one());
  const std::size_t d = config.d();
  const std::int64_t D = static_cast<std::int64_t>(d) * R;
  // |s_i - s_anchor| is at most sqrt(2D / (d + 1)).
  const std::int64_t Y = isqrt(2 * D / static_cast<std::int64_t>(d + 1));
  const std::int64_t mc = config.m[d];

  // Layer i stores (S, Q) with |S| <= smax(i), Q in [ceil(S^2/i), (D + S^2)/(i+1)].
  struct Layer {
    std::int64_t smax = 0;
    std::vector<std::int64_t> qlo, qhi;
    std::vector<std::size_t> offset;
    std::vector<T> cells;
    std::size_t index(std::int64_t S, std::int64_t Q) const {
      return offset[S + smax] + static_cast<std::size_t>(Q - qlo[S + smax]);
    }
    bool inside(std::int64_t S, std::int64_t Q) const {
      return S >= -smax && S <= smax && Q >= qlo[S + smax] && Q <= qhi[S + smax];
    }
  };
  auto make_layer = [&](std::size_t i) {
    Layer L;
    const auto I = static_cast<std::int64_t>(i);
    L.smax = std::min(I * Y, isqrt(I * D));
    const std::size_t width = static_cast<std::size_t>(2 * L.smax + 1);
    L.qlo.resize(width);
    L.qhi.resize(width);
    L.offset.resize(width + 1);
    std::size_t acc = 0;
    for (std::int64_t S = -L.smax; S <= L.smax; ++S) {
      const std::size_t j = static_cast<std::size_t>(S + L.smax);
      L.qlo[j] = i == 0 ? 0 : (S * S + I - 1) / I;
      L.qhi[j] = (D + S * S) / (I + 1);
      L.offset[j] = acc;
      if (L.qhi[j] >= L.qlo[j]) acc += static_cast<std::size_t>(L.qhi[j] - L.qlo[j] + 1);
    }
    L.offset[width] = acc;
    L.cells.assign(acc, W::zero());
    return L;
  };

  std::vector<std::int64_t> anchors;
  for (std::int64_t c = -mc; c <= mc; c += 2) anchors.push_back(c);
  std::vector<T> per_anchor(anchors.size(), W::zero());

  parallel_for(anchors.size(), [&](std::size_t a, unsigned) {
    const std::int64_t c = anchors[a];
    Layer cur = make_layer(0);
    cur.cells[0] = W::one();
    for (std::size_t i = 0; i < d; ++i) {
      Layer next = make_layer(i + 1);
      const std::int64_t mi = config.m[i];
      std::vector<std::pair<std::int64_t, T>> steps;
      for (std::int64_t y = -Y; y <= Y; ++y) {
        T w = W::weight(mi, c + y);
        if (!W::is_zero(w)) steps.emplace_back(y, std::move(w));
      }
      for (std::int64_t S = -cur.smax; S <= cur.smax; ++S) {
        const std::size_t j = static_cast<std::size_t>(S + cur.smax);
        for (std::int64_t Q = cur.qlo[j]; Q <= cur.qhi[j]; ++Q) {
          const T& v = cur.cells[cur.index(S, Q)];
          if (W::is_zero(v)) continue;
          for (const auto& [y, w] : steps) {
            const std::int64_t S2 = S + y, Q2 = Q + y * y;
            if (static_cast<std::int64_t>(i + 2) * Q2 - S2 * S2 > D) continue;
            if (!next.inside(S2, Q2)) continue;
            W::addmul(next.cells[next.index(S2, Q2)], v, w);
          }
        }
      }
      cur = std::move(next);
    }
    T sum = W::zero();
    for (const auto& v : cur.cells) sum += v;
    T res = W::zero();
    W::addmul(res, sum, W::weight(mc, c));
    per_anchor[a] = std::move(res);
  });

  T total_weight = W::zero();
  for (const auto& v : per_anchor) total_weight += v;
  return total_weight;
}

}  // namespace

ExactProbability prob_simplicial_dp(const SimplicialConfig& config, std::int64_t R) {
  const unsigned n = exponent_of(config.n());
  if (R < 0) return {0, n};
  return {simplicial_dp<BigWeights>(config, R), n};
}

double prob_simplicial_dp_approx(const SimplicialConfig& config, std::int64_t R) {
  if (R < 0) return 0;
  return static_cast<double>(simplicial_dp<RealWeights>(config, R));
}

ExactProbability prob_mixed_exact(const MixedConfig& config) {
  const unsigned n = exponent_of(config.n());
  const std::int64_t p = parity(config.a[0]);
  BigInt count = shifted_product_sum_unchecked({config.a[0], config.a[1], config.a[2]},
                                               {p, p, p});
  count *= binomial(config.b[0], config.b[0] / 2);
  for (std::size_t i = 1; i < config.b.size(); ++i)
    count *= binomial(config.b[i] + 1, (config.b[i] + 1) / 2);
  return {count, n};
}

ExactProbability prob_perturbed_exact(const PerturbedConfig& config) {
  const unsigned n = exponent_of(config.n());
  BigInt count = binomial(config.k1_plus, config.k1_plus / 2) *
                 binomial(config.k1_minus + 1, (config.k1_minus + 1) / 2) *
                 binomial(config.k[0], config.k[0] / 2);
  for (std::size_t i = 1; i < config.k.size(); ++i)
    count *= binomial(config.k[i] + 1, (config.k[i] + 1) / 2);
  return {count, n};
}

namespace {

// Each slot takes the value of its parity closest to target (ties to the
// lower one, never below its parity floor). The sum is then corrected in
// steps of 2, each step moving the slot furthest from its target in the
// needed direction; `order` breaks ties.
IntVec round_with_parity(const std::vector<double>& targets, const std::vector<int>& parities,
                         std::int64_t n, const std::vector<std::size_t>& order) {
  const std::size_t k = targets.size();
  IntVec v(k);
  std::int64_t s = 0;
  for (std::size_t i = 0; i < k; ++i) {
    auto lo = static_cast<std::int64_t>(std::floor(targets[i]));
    if (parity(lo) != parities[i]) --lo;
    const std::int64_t hi = lo + 2;
    v[i] = (targets[i] - static_cast<double>(lo) <= static_cast<double>(hi) - targets[i]) ? lo : hi;
    if (v[i] < parities[i]) v[i] = parities[i];
    s += v[i];
  }
  if (parity(n - s) != 0) throw ConstructionError("parity pattern does not match n");
  while (s != n) {
    const std::int64_t step = s < n ? 2 : -2;
    std::optional<std::size_t> pick;
    double best = 0;
    for (std::size_t i : order) {
      if (v[i] + step < parities[i]) continue;
      // Signed excess in the direction we are about to move away from.
      const double excess = (static_cast<double>(v[i]) - targets[i]) * (step > 0 ? -1 : 1);
      if (!pick || excess > best + 1e-12) {
        pick = i;
        best = excess;
      }
    }
    if (!pick) throw ConstructionError("n too small for the parity pattern");
    v[*pick] += step;
    s += step;
  }
  return v;
}

}  // namespace

PerturbedConfig make_counterexample(std::size_t d, std::int64_t n, std::optional<double> beta) {
  if (d < 2) throw ConstructionError("counterexample needs d >= 2");
  const auto D = static_cast<std::int64_t>(d);
  if (parity(n - D) == 0) throw ConstructionError("counterexample needs n and d of opposite parity");
  if (n < D + 1) throw ConstructionError("counterexample needs n >= d + 1");
  // Slots: k1_plus, k1_minus, k_2, k_3..k_d.
  const double target = static_cast<double>(n) / static_cast<double>(d + 1);
  std::vector<double> targets(d + 1, target);
  std::vector<int> par(d + 1, 1);
  par[0] = 0;
  par[2] = 0;
  std::vector<std::size_t> order = {0, 2, 1};
  for (std::size_t i = 3; i <= d; ++i) order.push_back(i);
  IntVec v = round_with_parity(targets, par, n, order);
  return PerturbedConfig(v[0], v[1], IntVec(v.begin() + 2, v.end()),
                         beta ? beta : std::optional<double>(PerturbedConfig::default_beta(n)));
}

std::size_t best_orthogonal_t(std::size_t d, std::int64_t n) {
  if (d == 0) throw ConstructionError("orthogonal construction needs d >= 1");
  std::optional<std::size_t> best;
  BigInt best_val;
  for (std::size_t t = 0; t <= d; ++t) {
    const auto odd = static_cast<std::int64_t>(d - t);
    if (parity(n - odd) != 0 || n < odd) continue;
    BigInt v = f_td(t, d);
    if (!best || v < best_val) {
      best = t;
      best_val = v;
    }
  }
  if (!best) throw ConstructionError("no parity pattern fits n");
  return *best;
}

OrthogonalConfig make_orthogonal(std::size_t d, std::int64_t n, std::optional<std::size_t> t) {
  if (d == 0) throw ConstructionError("orthogonal construction needs d >= 1");
  if (n < 1) throw ConstructionError("orthogonal construction needs n >= 1");
  const std::size_t tt = t ? *t : best_orthogonal_t(d, n);
  if (tt > d) throw ConstructionError("t must not exceed d");
  if (parity(n - static_cast<std::int64_t>(d - tt)) != 0)
    throw ConstructionError("number of odd multiplicities must match the parity of n");
  std::vector<double> targets(d, static_cast<double>(n) / static_cast<double>(d));
  std::vector<int> par(d, 1);
  std::fill(par.begin(), par.begin() + tt, 0);
  std::vector<std::size_t> order(d);
  for (std::size_t i = 0; i < d; ++i) order[i] = i;
  return OrthogonalConfig(round_with_parity(targets, par, n, order));
}

SimplicialConfig make_triangle(std::int64_t n) {
  if (n < 1) throw ConstructionError("triangle construction needs n >= 1");
  const int p = parity(n);
  IntVec v = round_with_parity(std::vector<double>(3, static_cast<double>(n) / 3.0), {p, p, p},
                               n, {0, 1, 2});
  return SimplicialConfig(v);
}

MixedConfig make_mixed(std::size_t d, std::int64_t n) {
  if (d < 3) throw ConstructionError("mixed construction needs d >= 3");
  const auto D = static_cast<double>(d);
  const int p = parity(n - static_cast<std::int64_t>(d - 3));
  std::vector<double> targets(d + 1, static_cast<double>(n) / D);
  for (std::size_t j = 0; j < 3; ++j) targets[j] = 2.0 * static_cast<double>(n) / (3.0 * D);
  std::vector<int> par(d + 1, 1);
  par[0] = par[1] = par[2] = p;
  par[3] = 0;
  std::vector<std::size_t> order(d + 1);
  for (std::size_t i = 0; i <= d; ++i) order[i] = i;
  IntVec v = round_with_parity(targets, par, n, order);
  return MixedConfig({v[0], v[1], v[2]}, IntVec(v.begin() + 3, v.end()));
}

namespace {

void append_copies(std::vector<double>& flat, const std::vector<double>& v, std::int64_t times) {
  for (std::int64_t r = 0; r < times; ++r) flat.insert(flat.end(), v.begin(), v.end());
}

std::vector<double> axis(std::size_t d, std::size_t i) {
  std::vector<double> e(d, 0.0);
  e[i] = 1.0;
  return e;
}

}  // namespace

UnitVectorConfig materialize(const OrthogonalConfig& c) {
  std::vector<double> flat;
  for (std::size_t i = 0; i < c.d(); ++i) append_copies(flat, axis(c.d(), i), c.m[i]);
  return UnitVectorConfig(c.d(), std::move(flat));
}

UnitVectorConfig materialize(const SimplicialConfig& c) {
  const auto simplex = materialize_simplex_vertices(c.d());
  std::vector<double> flat;
  for (std::size_t i = 0; i <= c.d(); ++i) {
    auto v = simplex.vector(i);
    append_copies(flat, std::vector<double>(v.begin(), v.end()), c.m[i]);
  }
  return UnitVectorConfig(c.d(), std::move(flat));
}

UnitVectorConfig materialize(const MixedConfig& c) {
  const std::size_t d = c.d();
  const auto tri = materialize_simplex_vertices(2);
  std::vector<double> flat;
  for (std::size_t j = 0; j < 3; ++j) {
    std::vector<double> w(d, 0.0);
    w[0] = tri.vector(j)[0];
    w[1] = tri.vector(j)[1];
    append_copies(flat, w, c.a[j]);
  }
  for (std::size_t i = 0; i < c.b.size(); ++i) append_copies(flat, axis(d, i + 2), c.b[i]);
  return UnitVectorConfig(d, std::move(flat));
}

UnitVectorConfig materialize(const PerturbedConfig& c) {
  const std::size_t d = c.d();
  std::vector<double> plus(d, 0.0), minus(d, 0.0);
  plus[0] = minus[0] = std::cos(c.beta);
  plus[1] = std::sin(c.beta);
  minus[1] = -std::sin(c.beta);
  std::vector<double> flat;
  append_copies(flat, plus, c.k1_plus);
  append_copies(flat, minus, c.k1_minus);
  for (std::size_t i = 0; i < c.k.size(); ++i) append_copies(flat, axis(d, i + 1), c.k[i]);
  return UnitVectorConfig(d, std::move(flat));
}

nlohmann::json to_json(const OrthogonalConfig& c) {
  return {{"type", "orthogonal"}, {"params", {{"m", c.m}}}};
}

nlohmann::json to_json(const SimplicialConfig& c) {
  return {{"type", "simplicial"}, {"params", {{"m", c.m}}}};
}

nlohmann::json to_json(const MixedConfig& c) {
  return {{"type", "mixed"},
          {"params", {{"a", std::vector<std::int64_t>(c.a.begin(), c.a.end())}, {"b", c.b}}}};
}

nlohmann::json to_json(const PerturbedConfig& c) {
  return {{"type", "perturbed"},
          {"params",
           {{"k1_plus", c.k1_plus}, {"k1_minus", c.k1_minus}, {"k", c.k}, {"beta", c.beta}}}};
}

namespace {

constexpr double kEvenFreq[3] = {0.02, 0.68, 0.30};  // values -2, 0, 2
constexpr double kOddFreq[3] = {0.30, 0.68, 0.02};   // values -1, 1, 3
constexpr int kEvenVal[3] = {-2, 0, 2};
constexpr int kOddVal[3] = {-1, 1, 3};

double log2_multinomial_rounded(std::size_t a) {
  if (a == 0) return 0;
  const auto A = static_cast<std::int64_t>(a);
  const std::int64_t k0 = std::llround(0.02 * static_cast<double>(a));
  const std::int64_t k2 = std::llround(0.30 * static_cast<double>(a));
  const std::int64_t k1 = A - k0 - k2;
  return log2_binomial(A, k0) + log2_binomial(A - k0, k1);
}

}  // namespace

double atom_internal_weight() {
  double s = 0;
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j)
      s += static_cast<double>((kEvenVal[j] - kEvenVal[i]) * (kEvenVal[j] - kEvenVal[i])) *
           kEvenFreq[i] * kEvenFreq[j];
  return s;
}

double atom_cross_weight() {
  double s = 0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      s += static_cast<double>((kOddVal[j] - kEvenVal[i]) * (kOddVal[j] - kEvenVal[i])) *
           kEvenFreq[i] * kOddFreq[j];
  return s;
}

double atom_count_log2(std::size_t a, std::size_t b) {
  const std::size_t d = a + b;
  if (d == 0) throw DomainError("atom count needs d >= 1");
  return log2_multinomial_rounded(a) + log2_multinomial_rounded(b) -
         std::log2(static_cast<double>(d));
}

std::optional<std::size_t> atom_count_threshold(std::size_t d_max) {
  std::optional<std::size_t> start;
  for (std::size_t d = 1; d <= d_max; ++d) {
    bool ok = true;
    for (std::size_t a = 0; a <= d && ok; ++a)
      ok = atom_count_log2(a, d - a) > 1.011 * static_cast<double>(d);
    if (!ok)
      start.reset();
    else if (!start)
      start = d;
  }
  return start;
}

}  // namespace rlo
