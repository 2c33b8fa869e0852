#include "qso/cubic_matrix.hpp"

#include <cmath>
#include <string>

#include "qso/error.hpp"
#include "qso/numeric_format.hpp"
#include "qso/tolerances.hpp"

namespace qso {
namespace {

std::string triple(std::size_t i, std::size_t j, std::size_t k) {
  return "(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + "," +
         std::to_string(k + 1) + ")";
}

}  // namespace

CubicHeredityMatrix CubicHeredityMatrix::validated(std::size_t m, std::vector<double> entries) {
  if (m == 0) {
    throw Error(ErrorCode::InvalidDimension, "tensor dimension must be at least 1");
  }
  if (entries.size() != m * m * m) {
    throw Error(ErrorCode::DimensionMismatch,
                "expected " + std::to_string(m * m * m) + " entries for a " +
                    std::to_string(m) + "^3 tensor, got " + std::to_string(entries.size()));
  }
  const auto at = [&](std::size_t i, std::size_t j, std::size_t k) {
    return entries[(i * m + j) * m + k];
  };
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      for (std::size_t k = 0; k < m; ++k) {
        const double v = at(i, j, k);
        if (!(v >= 0.0)) {
          throw Error(ErrorCode::NegativeEntry,
                      "p" + triple(i, j, k) + " is " + format_full(v));
        }
      }
    }
  }
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      for (std::size_t k = 0; k < m; ++k) {
        if (at(i, j, k) != at(j, i, k)) {
          throw Error(ErrorCode::SymmetryViolation,
                      "p" + triple(i, j, k) + " = " + format_full(at(i, j, k)) +
                          " but p" + triple(j, i, k) + " = " + format_full(at(j, i, k)));
        }
      }
    }
  }
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      double sum = 0.0;
      for (std::size_t k = 0; k < m; ++k) sum += at(i, j, k);
      if (!(std::abs(sum - 1.0) <= kSumTolerance)) {
        throw Error(ErrorCode::RowNotNormalized,
                    "fiber (i=" + std::to_string(i + 1) + ", j=" + std::to_string(j + 1) +
                        ") sums to " + format_full(sum));
      }
    }
  }
  return CubicHeredityMatrix(m, std::move(entries));
}

StochasticMatrix CubicHeredityMatrix::slice(std::size_t i) const {
  if (i >= m_) {
    throw Error(ErrorCode::IndexOutOfRange,
                "slice " + std::to_string(i + 1) + " of a " + std::to_string(m_) +
                    "-species tensor");
  }
  // The i-th block is a contiguous m x m chunk thanks to k-fastest layout.
  std::vector<double> block(entries_.begin() + static_cast<std::ptrdiff_t>(i * m_ * m_),
                            entries_.begin() + static_cast<std::ptrdiff_t>((i + 1) * m_ * m_));
  return StochasticMatrix::validated(m_, std::move(block));
}

}  // namespace qso
