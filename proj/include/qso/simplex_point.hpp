#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace qso {

// A point of the probability simplex S^{m-1}: m nonnegative coordinates
// summing to 1 within kSumTolerance. Instances are immutable; the two
// factories differ in how strictly they treat their input.
class SimplexPoint {
 public:
  // Validates caller-supplied coordinates. Coordinates in
  // (-kNegativeClamp, 0) are clamped to 0 (and the vector renormalized);
  // anything more negative raises NegativeCoordinate. A sum further than
  // kSumTolerance from 1 raises NotNormalized. Exact inputs are stored
  // bit-for-bit unchanged.
  static SimplexPoint validated(std::vector<double> coords);

  // Accepts the output of internal arithmetic: clamps rounding debris the
  // same way, then divides by the coordinate sum so downstream consumers see
  // a freshly normalized vector. The division is exact (a no-op) when the
  // sum is already 1.0.
  static SimplexPoint from_arithmetic(std::vector<double> coords);

  static SimplexPoint barycenter(std::size_t m);

  // k-th unit vector e_{k+1}, 0-based k.
  static SimplexPoint vertex(std::size_t m, std::size_t k);

  std::size_t dim() const noexcept { return coords_.size(); }
  double operator[](std::size_t i) const noexcept { return coords_[i]; }
  std::span<const double> coords() const noexcept { return coords_; }

  // Bitwise equality; useful for fixed-point and determinism checks.
  bool operator==(const SimplexPoint&) const = default;

 private:
  explicit SimplexPoint(std::vector<double> coords) : coords_(std::move(coords)) {}

  std::vector<double> coords_;
};

double l1_distance(const SimplexPoint& a, const SimplexPoint& b);
double min_coordinate(const SimplexPoint& x) noexcept;

}  // namespace qso
