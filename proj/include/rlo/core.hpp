#ifndef RLO_CORE_HPP
#define RLO_CORE_HPP

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/gmp.hpp>

namespace rlo {

using BigInt = boost::multiprecision::mpz_int;

struct DimensionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct DomainError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct ParityError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ResourceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ConstructionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct InternalError : std::logic_error {
  using std::logic_error::logic_error;
};

// n unit vectors in R^d, stored row-major.
class UnitVectorConfig {
 public:
  static constexpr double kDefaultUnitTol = 1e-12;

  UnitVectorConfig() = default;
  UnitVectorConfig(std::size_t dim, const std::vector<std::vector<double>>& vectors,
                   double unit_tol = kDefaultUnitTol);
  UnitVectorConfig(std::size_t dim, std::vector<double> flat_coords,
                   double unit_tol = kDefaultUnitTol);

  std::size_t dim() const { return dim_; }
  std::size_t size() const { return dim_ == 0 ? 0 : coords_.size() / dim_; }
  std::span<const double> vector(std::size_t i) const {
    return {coords_.data() + i * dim_, dim_};
  }
  std::span<const double> coords() const { return coords_; }

 private:
  void validate(double unit_tol) const;

  std::size_t dim_ = 0;
  std::vector<double> coords_;
};

class Signing {
 public:
  Signing() = default;
  explicit Signing(std::vector<int> signs);

  std::size_t size() const { return signs_.size(); }
  int operator[](std::size_t i) const { return signs_[i]; }
  const std::vector<int>& values() const { return signs_; }

  friend bool operator==(const Signing&, const Signing&) = default;

 private:
  std::vector<int> signs_;
};

struct BallQuery {
  static constexpr double kDefaultBoundaryTol = 1e-9;

  double radius_sq = 1.0;
  double boundary_tol = kDefaultBoundaryTol;

  BallQuery() = default;
  explicit BallQuery(double r2, double tol = kDefaultBoundaryTol);

  bool contains(double norm_sq) const { return norm_sq <= radius_sq + boundary_tol; }
};

// count / 2^exponent.
struct ExactProbability {
  BigInt count;
  unsigned exponent = 0;

  ExactProbability() = default;
  ExactProbability(BigInt c, unsigned n);

  double value() const;
  double log2_value() const;
  std::string fraction() const;

  friend bool operator==(const ExactProbability& a, const ExactProbability& b) {
    return a.exponent == b.exponent && a.count == b.count;
  }
};

double log2_big(const BigInt& x);
BigInt pow2(unsigned n);

double norm_sq(const UnitVectorConfig& config, const Signing& signing);
std::vector<double> signed_sum(const UnitVectorConfig& config, const Signing& signing);

UnitVectorConfig materialize_simplex_vertices(std::size_t d);

// CSV without header: one vector per row, d columns.
UnitVectorConfig read_csv(std::istream& in, double unit_tol = UnitVectorConfig::kDefaultUnitTol);
UnitVectorConfig read_csv_file(const std::string& path,
                               double unit_tol = UnitVectorConfig::kDefaultUnitTol);
void write_csv(std::ostream& out, const UnitVectorConfig& config);
void write_csv_file(const std::string& path, const UnitVectorConfig& config);

}  // namespace rlo

#endif
