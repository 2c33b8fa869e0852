#include "qso/stochastic_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qso/error.hpp"
#include "qso/numeric_format.hpp"
#include "qso/tolerances.hpp"

namespace qso {
namespace {

void check_shape(std::size_t m, std::size_t n_entries) {
  if (m == 0) {
    throw Error(ErrorCode::InvalidDimension, "matrix dimension must be at least 1");
  }
  if (n_entries != m * m) {
    throw Error(ErrorCode::DimensionMismatch,
                "expected " + std::to_string(m * m) + " entries for a " +
                    std::to_string(m) + "x" + std::to_string(m) + " matrix, got " +
                    std::to_string(n_entries));
  }
}

double row_sum(std::span<const double> row) {
  double sum = 0.0;
  for (double v : row) sum += v;
  return sum;
}

}  // namespace

StochasticMatrix StochasticMatrix::validated(std::size_t m, std::vector<double> entries) {
  check_shape(m, entries.size());
  for (std::size_t i = 0; i < m; ++i) {
    bool clamped = false;
    for (std::size_t j = 0; j < m; ++j) {
      double& v = entries[i * m + j];
      if (!(v > -kNegativeClamp)) {
        throw Error(ErrorCode::NegativeEntry,
                    "entry (" + std::to_string(i + 1) + "," + std::to_string(j + 1) +
                        ") is " + format_full(v));
      }
      if (v < 0.0) {
        v = 0.0;
        clamped = true;
      }
    }
    const double sum = row_sum({entries.data() + i * m, m});
    if (!(std::abs(sum - 1.0) <= kSumTolerance)) {
      throw Error(ErrorCode::RowNotNormalized,
                  "row " + std::to_string(i + 1) + " sums to " + format_full(sum));
    }
    if (clamped && sum != 1.0) {
      for (std::size_t j = 0; j < m; ++j) entries[i * m + j] /= sum;
    }
  }
  return StochasticMatrix(m, std::move(entries));
}

StochasticMatrix StochasticMatrix::from_arithmetic(std::size_t m, std::vector<double> entries) {
  check_shape(m, entries.size());
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      double& v = entries[i * m + j];
      if (!(v > -kNegativeClamp)) {
        throw Error(ErrorCode::NegativeEntry,
                    "entry (" + std::to_string(i + 1) + "," + std::to_string(j + 1) +
                        ") is " + format_full(v));
      }
      if (v < 0.0) v = 0.0;
    }
    const double sum = row_sum({entries.data() + i * m, m});
    if (!(sum > 0.0) || !std::isfinite(sum)) {
      throw Error(ErrorCode::RowNotNormalized,
                  "row " + std::to_string(i + 1) + " of arithmetic result sums to " +
                      format_full(sum));
    }
    for (std::size_t j = 0; j < m; ++j) entries[i * m + j] /= sum;
  }
  return StochasticMatrix(m, std::move(entries));
}

StochasticMatrix StochasticMatrix::validated_rows(const std::vector<std::vector<double>>& rows) {
  const std::size_t m = rows.size();
  if (m == 0) {
    throw Error(ErrorCode::InvalidDimension, "matrix dimension must be at least 1");
  }
  std::vector<double> entries;
  entries.reserve(m * m);
  for (std::size_t i = 0; i < m; ++i) {
    if (rows[i].size() != m) {
      throw Error(ErrorCode::DimensionMismatch,
                  "row " + std::to_string(i + 1) + " has " + std::to_string(rows[i].size()) +
                      " entries, expected " + std::to_string(m));
    }
    entries.insert(entries.end(), rows[i].begin(), rows[i].end());
  }
  return validated(m, std::move(entries));
}

StochasticMatrix StochasticMatrix::identity(std::size_t m) {
  if (m == 0) {
    throw Error(ErrorCode::InvalidDimension, "matrix dimension must be at least 1");
  }
  std::vector<double> entries(m * m, 0.0);
  for (std::size_t i = 0; i < m; ++i) entries[i * m + i] = 1.0;
  return StochasticMatrix(m, std::move(entries));
}

StochasticMatrix StochasticMatrix::constant_rows(const SimplexPoint& x) {
  const std::size_t m = x.dim();
  std::vector<double> entries;
  entries.reserve(m * m);
  for (std::size_t i = 0; i < m; ++i) {
    entries.insert(entries.end(), x.coords().begin(), x.coords().end());
  }
  return StochasticMatrix(m, std::move(entries));
}

double StochasticMatrix::min_entry() const noexcept {
  return *std::min_element(entries_.begin(), entries_.end());
}

StochasticMatrix multiply(const StochasticMatrix& a, const StochasticMatrix& b) {
  if (a.dim() != b.dim()) {
    throw Error(ErrorCode::DimensionMismatch,
                "cannot multiply " + std::to_string(a.dim()) + "x" + std::to_string(a.dim()) +
                    " by " + std::to_string(b.dim()) + "x" + std::to_string(b.dim()));
  }
  const std::size_t m = a.dim();
  std::vector<double> out(m * m, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t k = 0; k < m; ++k) {
      const double aik = a.at(i, k);
      if (aik == 0.0) continue;
      for (std::size_t j = 0; j < m; ++j) {
        out[i * m + j] += aik * b.at(k, j);
      }
    }
  }
  return StochasticMatrix::from_arithmetic(m, std::move(out));
}

SimplexPoint left_action(const SimplexPoint& x, const StochasticMatrix& q) {
  if (x.dim() != q.dim()) {
    throw Error(ErrorCode::DimensionMismatch,
                "point of dimension " + std::to_string(x.dim()) +
                    " against matrix of dimension " + std::to_string(q.dim()));
  }
  const std::size_t m = x.dim();
  std::vector<double> out(m, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    const double xi = x[i];
    if (xi == 0.0) continue;
    for (std::size_t j = 0; j < m; ++j) {
      out[j] += xi * q.at(i, j);
    }
  }
  return SimplexPoint::from_arithmetic(std::move(out));
}

double max_row_l1_distance(const StochasticMatrix& a, const StochasticMatrix& b) {
  if (a.dim() != b.dim()) {
    throw Error(ErrorCode::DimensionMismatch,
                "matrices have dimensions " + std::to_string(a.dim()) + " and " +
                    std::to_string(b.dim()));
  }
  const std::size_t m = a.dim();
  double worst = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    double dist = 0.0;
    for (std::size_t j = 0; j < m; ++j) dist += std::abs(a.at(i, j) - b.at(i, j));
    worst = std::max(worst, dist);
  }
  return worst;
}

}  // namespace qso
