#include "rlo/balance.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <numeric>

namespace rlo {
namespace {

constexpr double kSwanepoelTol = 1e-10;

void require_planar_odd(const UnitVectorConfig& config) {
  if (config.dim() != 2) throw DimensionError("balancing needs d = 2");
  if (config.size() % 2 == 0) throw ParityError("balancing needs an odd number of vectors");
}

// Polygon labelling: vertex j < n is orient[j] * v_{src[j]}, vertex j + n its negation.
struct Labelling {
  std::vector<std::size_t> src;
  std::vector<int> sign;  // sign of v_{src[t]} in the alternating sum
  double sx = 0, sy = 0;
};

Labelling find_labelling(const UnitVectorConfig& config) {
  const std::size_t n = config.size();
  std::vector<double> theta(n);
  std::vector<int> orient(n, 1);
  for (std::size_t i = 0; i < n; ++i) {
    auto v = config.vector(i);
    double t = std::atan2(v[1], v[0]);
    if (t < 0) t += 2 * std::numbers::pi;
    if (t >= 2 * std::numbers::pi) t = 0;
    if (t >= std::numbers::pi) {
      t -= std::numbers::pi;
      orient[i] = -1;
    }
    theta[i] = t;
  }
  std::vector<std::size_t> by_angle(n);
  std::iota(by_angle.begin(), by_angle.end(), std::size_t(0));
  std::stable_sort(by_angle.begin(), by_angle.end(),
                   [&](std::size_t a, std::size_t b) { return theta[a] < theta[b]; });

  Labelling best;
  double best_norm = INFINITY;
  for (int dir : {1, -1}) {
    for (std::size_t s = 0; s < n; ++s) {
      Labelling cand;
      cand.src.resize(n);
      cand.sign.resize(n);
      for (std::size_t t = 0; t < n; ++t) {
        const auto step = static_cast<std::ptrdiff_t>(t) * dir;
        const auto j = static_cast<std::size_t>(
            ((static_cast<std::ptrdiff_t>(s) + step) % static_cast<std::ptrdiff_t>(2 * n) +
             static_cast<std::ptrdiff_t>(2 * n)) %
            static_cast<std::ptrdiff_t>(2 * n));
        const std::size_t i = by_angle[j % n];
        const int vertex_sign = j < n ? orient[i] : -orient[i];
        const int alt = t % 2 == 0 ? 1 : -1;
        cand.src[t] = i;
        cand.sign[t] = alt * vertex_sign;
        auto v = config.vector(i);
        cand.sx += cand.sign[t] * v[0];
        cand.sy += cand.sign[t] * v[1];
      }
      const double nrm = std::hypot(cand.sx, cand.sy);
      if (nrm < best_norm) {
        best_norm = nrm;
        best = std::move(cand);
      }
      if (best_norm <= 1 + kSwanepoelTol) return best;
    }
  }
  throw InternalError("no alternating labelling reaches the unit disc");
}

}  // namespace

Signing swanepoel_signs(const UnitVectorConfig& config) {
  require_planar_odd(config);
  Labelling lab = find_labelling(config);
  std::vector<int> signs(config.size());
  for (std::size_t t = 0; t < lab.src.size(); ++t) signs[lab.src[t]] = lab.sign[t];
  return Signing(std::move(signs));
}

double BalancingContext::x(std::size_t k) const { return std::cos(angles[k]); }
double BalancingContext::y(std::size_t k) const { return std::sin(angles[k]); }

double star_norm(double beta, double px, double py) {
  const double a = px / std::sqrt(1 - std::abs(beta));
  return std::hypot(a, py);
}

double BalancingContext::norm_star(double px, double py) const {
  return star_norm(beta, px, py);
}

Signing BalancingContext::to_input_signing(const std::vector<int>& context_signs) const {
  std::vector<int> s(size());
  for (std::size_t k = 0; k < size(); ++k) s[source[k]] = context_signs[k] * orientation[k];
  return Signing(std::move(s));
}

BalancingContext build_context(const UnitVectorConfig& config) {
  require_planar_odd(config);
  const std::size_t n = config.size();
  Labelling lab = find_labelling(config);

  BalancingContext ctx;
  ctx.rotation = std::hypot(lab.sx, lab.sy) > 0 ? -std::atan2(lab.sy, lab.sx) : 0.0;
  const double c = std::cos(ctx.rotation), s = std::sin(ctx.rotation);
  std::vector<double> phi(n);
  std::vector<int> orient(n, 1);
  for (std::size_t i = 0; i < n; ++i) {
    auto v = config.vector(i);
    const double rx = c * v[0] - s * v[1], ry = s * v[0] + c * v[1];
    double t = std::atan2(ry, rx);
    if (t > std::numbers::pi / 2) {
      t -= std::numbers::pi;
      orient[i] = -1;
    } else if (t <= -std::numbers::pi / 2) {
      t += std::numbers::pi;
      orient[i] = -1;
    }
    phi[i] = t;
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t(0));
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return phi[a] < phi[b]; });
  double ax = 0, ay = 0;
  for (std::size_t k = 0; k < n; ++k) {
    ctx.angles.push_back(phi[order[k]]);
    ctx.source.push_back(order[k]);
    ctx.orientation.push_back(orient[order[k]]);
    const double alt = k % 2 == 0 ? 1.0 : -1.0;
    ax += alt * std::cos(phi[order[k]]);
    ay += alt * std::sin(phi[order[k]]);
  }
  if (std::abs(ay) > 1e-9 || std::abs(std::abs(ax) - std::hypot(lab.sx, lab.sy)) > 1e-9)
    throw InternalError("relabelled alternating sum does not match the rotated sum");
  ctx.beta = ax;
  if (std::abs(ctx.beta) > 1 + 1e-12) throw InternalError("alternating sum outside the unit disc");
  const double gap = 1 - std::abs(ctx.beta);
  ctx.star_stretch = gap > 0 ? 1 / std::sqrt(gap) : INFINITY;
  return ctx;
}

Signing SigningCertificate::expand(std::uint64_t mask) const {
  std::vector<int> s = base.values();
  for (std::size_t p = 0; p < flip_pairs.size() && p < 64; ++p)
    if ((mask >> p) & 1) {
      s[flip_pairs[p].first] = -s[flip_pairs[p].first];
      s[flip_pairs[p].second] = -s[flip_pairs[p].second];
    }
  return Signing(std::move(s));
}

namespace {

// Max |sigma| over all 2^|pairs| signings, walking a Gray code.
double exhaustive_max_norm(const UnitVectorConfig& config, const SigningCertificate& cert) {
  std::vector<int> s = cert.base.values();
  auto sum = signed_sum(config, cert.base);
  double best = std::hypot(sum[0], sum[1]);
  const std::uint64_t count = std::uint64_t(1) << cert.flip_pairs.size();
  for (std::uint64_t t = 1; t < count; ++t) {
    const auto [i, j] = cert.flip_pairs[std::countr_zero(t)];
    for (std::size_t idx : {i, j}) {
      auto v = config.vector(idx);
      sum[0] -= 2.0 * s[idx] * v[0];
      sum[1] -= 2.0 * s[idx] * v[1];
      s[idx] = -s[idx];
    }
    best = std::max(best, std::hypot(sum[0], sum[1]));
  }
  return best;
}

bool verify(const UnitVectorConfig& config, SigningCertificate& cert,
            const CertificateOptions& opt) {
  const double limit = std::sqrt(cert.radius_sq + opt.cert_tol);
  if (cert.flip_pairs.size() <= opt.exhaustive_limit) {
    cert.exhaustive = true;
    cert.verified_max_norm = exhaustive_max_norm(config, cert);
    return cert.verified_max_norm <= limit;
  }
  cert.exhaustive = false;
  auto sum = signed_sum(config, cert.base);
  cert.verified_max_norm = std::hypot(sum[0], sum[1]);
  return cert.verified_max_norm <= limit && cert.analytic_bound <= limit;
}

SigningCertificate singleton(const UnitVectorConfig& config, double beta,
                             const CertificateOptions& opt) {
  SigningCertificate cert;
  cert.base = swanepoel_signs(config);
  cert.beta = beta;
  cert.degenerate = true;
  cert.analytic_bound = std::sqrt(norm_sq(config, cert.base));
  if (!verify(config, cert, opt)) throw InternalError("balancing signs left the unit disc");
  return cert;
}

}  // namespace

SigningCertificate certificate(const UnitVectorConfig& config, const CertificateOptions& opt) {
  BalancingContext ctx = build_context(config);
  const std::size_t n = ctx.size();
  std::vector<int> alt(n);
  for (std::size_t k = 0; k < n; ++k) alt[k] = k % 2 == 0 ? 1 : -1;

  SigningCertificate cert;
  cert.base = ctx.to_input_signing(alt);
  cert.beta = ctx.beta;
  const double gap = 1 - std::abs(ctx.beta);

  if (gap <= opt.degenerate_tol) {
    // Pairs whose base contributions cancel stay cancelled when both flip.
    cert.degenerate = true;
    std::vector<bool> used(n, false);
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    double slack = 0;
    for (std::size_t i = 0; i < n && pairs.size() < (n - 1) / 2; ++i) {
      if (used[i]) continue;
      for (std::size_t j = i + 1; j < n; ++j) {
        if (used[j]) continue;
        const double dx = alt[i] * ctx.x(i) + alt[j] * ctx.x(j);
        const double dy = alt[i] * ctx.y(i) + alt[j] * ctx.y(j);
        const double r = std::hypot(dx, dy);
        if (r <= opt.pair_tol) {
          used[i] = used[j] = true;
          pairs.emplace_back(i, j);
          slack += 2 * r;
          break;
        }
      }
    }
    if (pairs.empty()) return singleton(config, ctx.beta, opt);
    for (auto [i, j] : pairs) cert.flip_pairs.emplace_back(ctx.source[i], ctx.source[j]);
    cert.pairing_size = pairs.size();
    cert.analytic_bound = std::abs(ctx.beta) + slack;
    if (!verify(config, cert, opt)) return singleton(config, ctx.beta, opt);
    return cert;
  }

  // Parity-balanced pairing, 1-based positions q = k + 1.
  std::vector<std::pair<std::size_t, std::size_t>> pairs;  // context indices
  auto pos = [](std::size_t q) { return q - 1; };
  const std::size_t half = (n - 1) / 2;
  if (ctx.beta >= 0) {
    std::size_t best = 1;
    for (std::size_t q = 1; q <= n; q += 2)
      if (ctx.x(pos(q)) > ctx.x(pos(best))) best = q;
    const std::size_t r = (best - 1) / 2;
    for (std::size_t k = 1; k <= r; ++k) pairs.emplace_back(pos(2 * k), pos(2 * k - 1));
    for (std::size_t k = r + 1; k <= half; ++k) pairs.emplace_back(pos(2 * k), pos(2 * k + 1));
  } else {
    if (n < 3) throw InternalError("negative beta needs at least three vectors");
    std::size_t best = 2;
    for (std::size_t q = 2; q <= n; q += 2)
      if (ctx.x(pos(q)) > ctx.x(pos(best))) best = q;
    const std::size_t r = best / 2;
    for (std::size_t k = 1; k + 1 <= r; ++k) pairs.emplace_back(pos(2 * k + 1), pos(2 * k));
    for (std::size_t k = r + 1; k <= half; ++k) pairs.emplace_back(pos(2 * k - 1), pos(2 * k));
  }

  std::vector<double> len(pairs.size());
  double total = 0;
  for (std::size_t p = 0; p < pairs.size(); ++p) {
    const auto [i, j] = pairs[p];
    len[p] = ctx.norm_star(ctx.x(i) - ctx.x(j), ctx.y(i) - ctx.y(j));
    total += len[p];
  }
  cert.pairing_star_sum = total;
  cert.pairing_size = pairs.size();

  std::vector<std::size_t> by_len(pairs.size());
  std::iota(by_len.begin(), by_len.end(), std::size_t(0));
  std::stable_sort(by_len.begin(), by_len.end(),
                   [&](std::size_t a, std::size_t b) { return len[a] > len[b]; });
  constexpr std::size_t kPieces = 7;
  const double budget = std::sqrt(gap) / 2;
  std::optional<std::size_t> chosen;
  double chosen_sum = 0;
  for (std::size_t piece = 0; piece < kPieces && !chosen; ++piece) {
    double s = 0;
    for (std::size_t t = piece; t < by_len.size(); t += kPieces) s += len[by_len[t]];
    if (s <= budget) {
      chosen = piece;
      chosen_sum = s;
    }
  }
  if (!chosen) throw InternalError("no pairing piece fits the ellipse budget");
  std::vector<std::size_t> members;
  for (std::size_t t = *chosen; t < by_len.size(); t += kPieces) members.push_back(by_len[t]);
  std::sort(members.begin(), members.end());
  for (std::size_t p : members)
    cert.flip_pairs.emplace_back(ctx.source[pairs[p].first], ctx.source[pairs[p].second]);

  // Flips move the sum by 2(v_i - v_j) per pair; their star length is at
  // most sqrt(gap), and that star ball around (beta, 0) lies in the disc.
  cert.analytic_bound = 2 * chosen_sum <= std::sqrt(gap) ? 1.0 : INFINITY;
  if (!verify(config, cert, opt)) throw InternalError("certificate signing left the unit disc");
  return cert;
}

nlohmann::json to_json(const SigningCertificate& cert) {
  nlohmann::json pairs = nlohmann::json::array();
  for (auto [i, j] : cert.flip_pairs) pairs.push_back({i, j});
  return {{"base", cert.base.values()},
          {"flip_pairs", pairs},
          {"radius_sq", cert.radius_sq},
          {"beta", cert.beta},
          {"degenerate", cert.degenerate},
          {"exhaustive", cert.exhaustive},
          {"verified_max_norm", cert.verified_max_norm},
          {"size_log2", cert.size_log2()},
          {"size", cert.size().str()}};
}

}  // namespace rlo
