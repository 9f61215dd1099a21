#include "rlo/core.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>

namespace rlo {

UnitVectorConfig::UnitVectorConfig(std::size_t dim,
                                   const std::vector<std::vector<double>>& vectors,
                                   double unit_tol)
    : dim_(dim) {
  if (dim == 0) throw DimensionError("dimension must be positive");
  coords_.reserve(vectors.size() * dim);
  for (const auto& v : vectors) {
    if (v.size() != dim) throw DimensionError("vector length does not match dimension");
    coords_.insert(coords_.end(), v.begin(), v.end());
  }
  validate(unit_tol);
}

UnitVectorConfig::UnitVectorConfig(std::size_t dim, std::vector<double> flat_coords,
                                   double unit_tol)
    : dim_(dim), coords_(std::move(flat_coords)) {
  if (dim == 0) throw DimensionError("dimension must be positive");
  if (coords_.size() % dim != 0) throw DimensionError("coordinate count not a multiple of d");
  validate(unit_tol);
}

void UnitVectorConfig::validate(double unit_tol) const {
  for (std::size_t i = 0; i < size(); ++i) {
    double s = 0;
    for (double c : vector(i)) {
      if (!std::isfinite(c)) throw DomainError("non-finite coordinate");
      s += c * c;
    }
    if (std::abs(std::sqrt(s) - 1.0) > unit_tol)
      throw DomainError("vector " + std::to_string(i) + " is not a unit vector");
  }
}

Signing::Signing(std::vector<int> signs) : signs_(std::move(signs)) {
  for (int s : signs_)
    if (s != 1 && s != -1) throw DomainError("signs must be +1 or -1");
}

BallQuery::BallQuery(double r2, double tol) : radius_sq(r2), boundary_tol(tol) {
  if (!(r2 >= 0) || !std::isfinite(r2)) throw DomainError("radius_sq must be finite and >= 0");
  if (!(tol >= 0)) throw DomainError("boundary_tol must be >= 0");
}

BigInt pow2(unsigned n) {
  BigInt r = 1;
  r <<= n;
  return r;
}

ExactProbability::ExactProbability(BigInt c, unsigned n) : count(std::move(c)), exponent(n) {
  if (count < 0 || count > pow2(n)) throw InternalError("probability count out of range");
}

double log2_big(const BigInt& x) {
  if (x <= 0) return -INFINITY;
  long exp = 0;
  double mant = mpz_get_d_2exp(&exp, x.backend().data());
  return std::log2(mant) + static_cast<double>(exp);
}

double ExactProbability::log2_value() const {
  return log2_big(count) - static_cast<double>(exponent);
}

double ExactProbability::value() const {
  if (count == 0) return 0.0;
  long exp = 0;
  double mant = mpz_get_d_2exp(&exp, count.backend().data());
  return std::ldexp(mant, static_cast<int>(exp - static_cast<long>(exponent)));
}

std::string ExactProbability::fraction() const {
  return count.str() + "/" + pow2(exponent).str();
}

std::vector<double> signed_sum(const UnitVectorConfig& config, const Signing& signing) {
  if (signing.size() != config.size())
    throw DimensionError("signing length does not match vector count");
  std::vector<double> s(config.dim(), 0.0);
  for (std::size_t i = 0; i < config.size(); ++i) {
    auto v = config.vector(i);
    for (std::size_t k = 0; k < s.size(); ++k) s[k] += signing[i] * v[k];
  }
  return s;
}

double norm_sq(const UnitVectorConfig& config, const Signing& signing) {
  double r = 0;
  for (double c : signed_sum(config, signing)) r += c * c;
  return r;
}

UnitVectorConfig materialize_simplex_vertices(std::size_t d) {
  if (d == 0) throw DimensionError("simplex dimension must be positive");
  const std::size_t m = d + 1;
  // Centered basis vectors of R^{d+1}; the first d span the hyperplane.
  std::vector<std::vector<double>> centered(m, std::vector<double>(m, -1.0 / m));
  for (std::size_t i = 0; i < m; ++i) centered[i][i] += 1.0;

  std::vector<std::vector<double>> basis;
  for (std::size_t i = 0; i < d; ++i) {
    auto b = centered[i];
    for (const auto& e : basis) {
      double dot = 0;
      for (std::size_t k = 0; k < m; ++k) dot += b[k] * e[k];
      for (std::size_t k = 0; k < m; ++k) b[k] -= dot * e[k];
    }
    double nrm = 0;
    for (double c : b) nrm += c * c;
    nrm = std::sqrt(nrm);
    for (double& c : b) c /= nrm;
    basis.push_back(std::move(b));
  }

  std::vector<double> flat;
  flat.reserve(m * d);
  for (std::size_t i = 0; i < m; ++i) {
    std::vector<double> coords(d);
    double nrm = 0;
    for (std::size_t j = 0; j < d; ++j) {
      for (std::size_t k = 0; k < m; ++k) coords[j] += centered[i][k] * basis[j][k];
      nrm += coords[j] * coords[j];
    }
    nrm = std::sqrt(nrm);
    for (double c : coords) flat.push_back(c / nrm);
  }
  UnitVectorConfig config(d, std::move(flat));

  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j) {
      double dot = 0;
      auto a = config.vector(i), b = config.vector(j);
      for (std::size_t k = 0; k < d; ++k) dot += a[k] * b[k];
      if (std::abs(dot + 1.0 / static_cast<double>(d)) > 1e-10)
        throw InternalError("simplex vertices lost their inner-product structure");
    }
  return config;
}

namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

UnitVectorConfig read_csv(std::istream& in, double unit_tol) {
  std::vector<double> flat;
  std::size_t dim = 0;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    line = trim(line);
    if (line.empty()) continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      cell = trim(cell);
      double v = 0;
      auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
      if (ec != std::errc() || ptr != cell.data() + cell.size())
        throw ParseError("line " + std::to_string(lineno) + ": bad number '" + cell + "'");
      row.push_back(v);
    }
    if (dim == 0) dim = row.size();
    if (row.size() != dim)
      throw ParseError("line " + std::to_string(lineno) + ": inconsistent column count");
    double s = 0;
    for (double c : row) s += c * c;
    double nrm = std::sqrt(s);
    if (!std::isfinite(nrm) || std::abs(nrm - 1.0) > unit_tol)
      throw DomainError("line " + std::to_string(lineno) + ": not a unit vector");
    // Rows already unit up to rounding are kept bit for bit.
    if (std::abs(nrm - 1.0) <= 4 * std::numeric_limits<double>::epsilon()) nrm = 1.0;
    for (double c : row) flat.push_back(c / nrm);
  }
  if (dim == 0) throw ParseError("no vectors in input");
  return UnitVectorConfig(dim, std::move(flat), unit_tol);
}

UnitVectorConfig read_csv_file(const std::string& path, double unit_tol) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  return read_csv(in, unit_tol);
}

void write_csv(std::ostream& out, const UnitVectorConfig& config) {
  auto old = out.precision(17);
  for (std::size_t i = 0; i < config.size(); ++i) {
    auto v = config.vector(i);
    for (std::size_t k = 0; k < v.size(); ++k) {
      if (k) out << ',';
      out << v[k];
    }
    out << '\n';
  }
  out.precision(old);
}

void write_csv_file(const std::string& path, const UnitVectorConfig& config) {
  std::ofstream out(path);
  if (!out) throw ResourceError("cannot write " + path);
  write_csv(out, config);
}

}  // namespace rlo
