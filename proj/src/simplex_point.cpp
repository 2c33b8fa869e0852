#include "qso/simplex_point.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qso/error.hpp"
#include "qso/numeric_format.hpp"
#include "qso/tolerances.hpp"

namespace qso {
namespace {

// Clamps coordinates in (-kNegativeClamp, 0) to zero; rejects anything more
// negative, and NaN, via the negated comparison. Returns whether a clamp
// happened. Shared by both factories.
bool clamp_negatives(std::vector<double>& coords) {
  bool clamped = false;
  for (std::size_t i = 0; i < coords.size(); ++i) {
    const double v = coords[i];
    if (!(v > -kNegativeClamp)) {
      throw Error(ErrorCode::NegativeCoordinate,
                  "coordinate " + std::to_string(i + 1) + " is " + format_full(v));
    }
    if (v < 0.0) {
      coords[i] = 0.0;
      clamped = true;
    }
  }
  return clamped;
}

double coordinate_sum(const std::vector<double>& coords) {
  double sum = 0.0;
  for (double v : coords) sum += v;
  return sum;
}

}  // namespace

SimplexPoint SimplexPoint::validated(std::vector<double> coords) {
  if (coords.empty()) {
    throw Error(ErrorCode::EmptyVector, "simplex point needs at least one coordinate");
  }
  const bool clamped = clamp_negatives(coords);
  const double sum = coordinate_sum(coords);
  if (!(std::abs(sum - 1.0) <= kSumTolerance)) {
    throw Error(ErrorCode::NotNormalized, "coordinates sum to " + format_full(sum));
  }
  // Untouched input is stored verbatim; only a clamp forces renormalization.
  if (clamped && sum != 1.0) {
    for (double& v : coords) v /= sum;
  }
  return SimplexPoint(std::move(coords));
}

SimplexPoint SimplexPoint::from_arithmetic(std::vector<double> coords) {
  if (coords.empty()) {
    throw Error(ErrorCode::EmptyVector, "simplex point needs at least one coordinate");
  }
  clamp_negatives(coords);
  const double sum = coordinate_sum(coords);
  if (!(sum > 0.0) || !std::isfinite(sum)) {
    throw Error(ErrorCode::NotNormalized, "arithmetic result sums to " + format_full(sum));
  }
  for (double& v : coords) v /= sum;
  return SimplexPoint(std::move(coords));
}

SimplexPoint SimplexPoint::barycenter(std::size_t m) {
  if (m == 0) throw Error(ErrorCode::InvalidDimension, "dimension must be at least 1");
  return validated(std::vector<double>(m, 1.0 / static_cast<double>(m)));
}

SimplexPoint SimplexPoint::vertex(std::size_t m, std::size_t k) {
  if (m == 0) throw Error(ErrorCode::InvalidDimension, "dimension must be at least 1");
  if (k >= m) {
    throw Error(ErrorCode::IndexOutOfRange,
                "vertex " + std::to_string(k + 1) + " of a " + std::to_string(m) +
                    "-species simplex");
  }
  std::vector<double> coords(m, 0.0);
  coords[k] = 1.0;
  return SimplexPoint(std::move(coords));
}

double l1_distance(const SimplexPoint& a, const SimplexPoint& b) {
  if (a.dim() != b.dim()) {
    throw Error(ErrorCode::DimensionMismatch,
                "points have dimensions " + std::to_string(a.dim()) + " and " +
                    std::to_string(b.dim()));
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) sum += std::abs(a[i] - b[i]);
  return sum;
}

double min_coordinate(const SimplexPoint& x) noexcept {
  double lo = x[0];
  for (std::size_t i = 1; i < x.dim(); ++i) lo = std::min(lo, x[i]);
  return lo;
}

}  // namespace qso
