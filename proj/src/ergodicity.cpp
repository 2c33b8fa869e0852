#include "qso/ergodicity.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qso/detail/cesaro_loop.hpp"
#include "qso/error.hpp"
#include "qso/ext_float.hpp"
#include "qso/tolerances.hpp"

namespace qso {

double dobrushin_coefficient(const StochasticMatrix& q) {
  const std::size_t m = q.dim();
  double worst = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      double dist = 0.0;
      for (std::size_t k = 0; k < m; ++k) dist += std::abs(q.at(i, k) - q.at(j, k));
      worst = std::max(worst, dist);
    }
  }
  // Row sums carry up to kSumTolerance drift, so the half-distance can poke
  // a hair above 1; the coefficient is capped at its mathematical range.
  return std::min(1.0, 0.5 * worst);
}

double column_spread(const StochasticMatrix& q) {
  const std::size_t m = q.dim();
  double worst = 0.0;
  for (std::size_t k = 0; k < m; ++k) {
    double lo = q.at(0, k);
    double hi = lo;
    for (std::size_t i = 1; i < m; ++i) {
      lo = std::min(lo, q.at(i, k));
      hi = std::max(hi, q.at(i, k));
    }
    worst = std::max(worst, hi - lo);
  }
  return worst;
}

bool is_scrambling(const StochasticMatrix& q, double positivity_threshold) {
  const std::size_t m = q.dim();
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      bool share_column = false;
      for (std::size_t k = 0; k < m; ++k) {
        if (q.at(i, k) > positivity_threshold && q.at(j, k) > positivity_threshold) {
          share_column = true;
          break;
        }
      }
      if (!share_column) return false;
    }
  }
  return true;
}

ChainProductAccumulator::ChainProductAccumulator(std::size_t m, std::size_t start_index)
    : m_(m), start_(start_index), product_(m * m, 0.0) {
  if (m == 0) {
    throw Error(ErrorCode::InvalidDimension, "matrix dimension must be at least 1");
  }
  for (std::size_t i = 0; i < m; ++i) product_[i * m + i] = 1.0;
}

void ChainProductAccumulator::push(const StochasticMatrix& factor) {
  if (factor.dim() != m_) {
    throw Error(ErrorCode::DimensionMismatch,
                "factor has dimension " + std::to_string(factor.dim()) + ", chain uses " +
                    std::to_string(m_));
  }

  std::vector<double> next(m_ * m_, 0.0);
  for (std::size_t i = 0; i < m_; ++i) {
    for (std::size_t k = 0; k < m_; ++k) {
      const double aik = product_[i * m_ + k];
      if (aik == 0.0) continue;
      for (std::size_t j = 0; j < m_; ++j) {
        next[i * m_ + j] += aik * factor.at(k, j);
      }
    }
  }
  // Drift policy: a row is only touched when its sum leaves the validation
  // band, so short products stay bit-exact.
  for (std::size_t i = 0; i < m_; ++i) {
    double sum = 0.0;
    for (std::size_t j = 0; j < m_; ++j) sum += next[i * m_ + j];
    const double drift = std::abs(sum - 1.0);
    stats_.max_row_drift = std::max(stats_.max_row_drift, drift);
    if (drift > kSumTolerance) {
      for (std::size_t j = 0; j < m_; ++j) next[i * m_ + j] /= sum;
      ++stats_.renormalized_rows;
    }
  }
  product_ = std::move(next);

  all_scrambling_ = all_scrambling_ && is_scrambling(factor);
  min_entry_ = std::min(min_entry_, factor.min_entry());
  ++count_;
}

ErgodicityReport ChainProductAccumulator::report() const {
  if (count_ == 0) {
    throw Error(ErrorCode::EmptyRange, "no factors accumulated");
  }
  StochasticMatrix product = StochasticMatrix::validated(m_, product_);
  const double delta = dobrushin_coefficient(product);
  const double spread = column_spread(product);
  return ErgodicityReport{start_,
                          start_ + count_,
                          std::move(product),
                          delta,
                          spread,
                          all_scrambling_,
                          min_entry_};
}

StochasticMatrix chain_product(std::span<const StochasticMatrix> chain, std::size_t i,
                               std::size_t j, ChainProductStats* stats) {
  if (i >= j) {
    throw Error(ErrorCode::EmptyRange,
                "product range (" + std::to_string(i) + ", " + std::to_string(j) +
                    "] is empty");
  }
  if (j > chain.size()) {
    throw Error(ErrorCode::IndexOutOfRange,
                "horizon " + std::to_string(j) + " exceeds chain length " +
                    std::to_string(chain.size()));
  }
  ChainProductAccumulator acc(chain[i].dim(), i);
  for (std::size_t t = i; t < j; ++t) acc.push(chain[t]);
  if (stats) *stats = acc.stats();
  return acc.report().product;
}

std::vector<ErgodicityReport> weak_ergodicity_diagnostic(std::span<const StochasticMatrix> chain,
                                                         std::size_t i,
                                                         std::span<const std::size_t> horizons) {
  std::vector<ErgodicityReport> reports;
  if (horizons.empty()) return reports;
  for (std::size_t t = 0; t < horizons.size(); ++t) {
    if (horizons[t] <= i || horizons[t] > chain.size()) {
      throw Error(ErrorCode::IndexOutOfRange,
                  "horizon " + std::to_string(horizons[t]) + " outside (" + std::to_string(i) +
                      ", " + std::to_string(chain.size()) + "]");
    }
    if (t > 0 && horizons[t] <= horizons[t - 1]) {
      throw Error(ErrorCode::IndexOutOfRange,
                  "horizons must be strictly increasing: " + std::to_string(horizons[t]) +
                      " after " + std::to_string(horizons[t - 1]));
    }
  }
  ChainProductAccumulator acc(chain[i].dim(), i);
  std::size_t next_factor = i;
  reports.reserve(horizons.size());
  for (const std::size_t j : horizons) {
    while (next_factor < j) acc.push(chain[next_factor++]);
    reports.push_back(acc.report());
  }
  return reports;
}

CesaroEstimate cesaro_estimate(const ChainSchedule& schedule, const SimplexPoint& x0,
                               std::uint64_t max_k, EvolutionMode mode, double tolerance,
                               const CesaroOptions& options) {
  const auto ignore = [](std::uint64_t, std::span<const double>) {};
  if (options.lane == NumericLane::kExtended) {
    return detail::cesaro_loop<ExtFloat>(schedule, x0, max_k, mode, tolerance, ignore);
  }
  return detail::cesaro_loop<double>(schedule, x0, max_k, mode, tolerance, ignore);
}

}  // namespace qso
