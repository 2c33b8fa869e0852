#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qso/chain_schedule.hpp"
#include "qso/detail/step_kernels.hpp"
#include "qso/ergodicity.hpp"
#include "qso/error.hpp"
#include "qso/operators.hpp"
#include "qso/simplex_point.hpp"

namespace qso::detail {

// Streaming per-coordinate pairwise (tree) summation: partial sums are held
// per binary-counter level and merged like carries, so the accumulated
// rounding error grows with log2(count) instead of count. Deterministic for
// a given push sequence.
class PairwiseMeanAccumulator {
 public:
  explicit PairwiseMeanAccumulator(std::size_t m) : m_(m), scratch_(m, 0.0) {}

  void push(std::span<const double> v) {
    for (std::size_t c = 0; c < m_; ++c) scratch_[c] = v[c];
    std::uint64_t carries = count_;
    std::size_t level = 0;
    while (carries & 1u) {
      for (std::size_t c = 0; c < m_; ++c) scratch_[c] += levels_[level][c];
      carries >>= 1;
      ++level;
    }
    if (level == levels_.size()) {
      levels_.push_back(scratch_);
    } else {
      levels_[level] = scratch_;
    }
    ++count_;
  }

  std::uint64_t count() const noexcept { return count_; }

  // Folds occupied levels smallest-block first.
  std::vector<double> mean() const {
    std::vector<double> total(m_, 0.0);
    std::uint64_t bits = count_;
    for (std::size_t level = 0; bits != 0; ++level, bits >>= 1) {
      if (bits & 1u) {
        for (std::size_t c = 0; c < m_; ++c) total[c] += levels_[level][c];
      }
    }
    const double k = static_cast<double>(count_);
    for (double& v : total) v /= k;
    return total;
  }

 private:
  std::size_t m_;
  std::vector<double> scratch_;
  std::vector<std::vector<double>> levels_;
  std::uint64_t count_ = 0;
};

// Largest power of two not exceeding n (n >= 1).
inline std::uint64_t dyadic_floor(std::uint64_t n) {
  std::uint64_t p = 1;
  while (p <= n / 2) p *= 2;
  return p;
}

// The one Cesaro stepping loop, shared by both numeric lanes and by the
// Zakharevich experiment. The observer sees every visited state before the
// step is taken: observe(n, coords) receives the double projection of
// x^(n), n = 0 .. K-1. Checkpoints land at every dyadic count.
template <class S, class Observer>
CesaroEstimate cesaro_loop(const ChainSchedule& schedule, const SimplexPoint& x0,
                           std::uint64_t max_k, EvolutionMode mode, double tolerance,
                           Observer&& observe) {
  if (schedule.dim() != x0.dim()) {
    throw Error(ErrorCode::DimensionMismatch,
                "cesaro_estimate: dimensions " + std::to_string(schedule.dim()) + " and " +
                    std::to_string(x0.dim()) + " do not agree");
  }
  if (max_k < 2) {
    throw Error(ErrorCode::EmptyRange,
                "max_k is " + std::to_string(max_k) + ", need at least 2 checkpoints");
  }
  if (!(tolerance > 0.0)) {
    throw Error(ErrorCode::DegenerateSample, "tolerance must be positive");
  }
  const std::uint64_t horizon = dyadic_floor(max_k);
  if (const auto len = schedule.length(); len && *len < horizon - 1) {
    throw Error(ErrorCode::ScheduleExhausted,
                "schedule provides " + std::to_string(*len) + " steps, " +
                    std::to_string(horizon - 1) + " required");
  }

  const std::size_t m = x0.dim();
  std::vector<S> x = lift_point<S>(x0.coords());
  std::vector<S> next(m, NumericOps<S>::from_double(0.0));
  std::vector<double> projected(m, 0.0);

  PairwiseMeanAccumulator mean(m);
  CesaroEstimate estimate;
  estimate.converged = false;
  estimate.tolerance = tolerance;

  for (std::uint64_t n = 0; n < horizon; ++n) {
    for (std::size_t c = 0; c < m; ++c) projected[c] = NumericOps<S>::to_double(x[c]);
    observe(n, std::span<const double>(projected));
    mean.push(projected);

    const std::uint64_t k = n + 1;
    if ((k & (k - 1)) == 0) {  // dyadic checkpoint
      estimate.checkpoints.push_back({k, SimplexPoint::from_arithmetic(mean.mean())});
    }
    if (k == horizon) break;

    const ScheduleStep& step = schedule.at(n);
    if (mode == EvolutionMode::kMarkov) {
      if (!step.interbreeding) {
        throw Error(ErrorCode::DimensionMismatch,
                    "markov mode requires an interbreeding matrix at schedule step " +
                        std::to_string(n + 1));
      }
      markov_step(step.heredity, *step.interbreeding, x, next);
    } else {
      bernoulli_step(step.heredity, x, next);
    }
    renormalize_step(next);
    x.swap(next);
  }

  for (std::size_t t = 1; t < estimate.checkpoints.size(); ++t) {
    estimate.oscillation.push_back(
        l1_distance(estimate.checkpoints[t - 1].average, estimate.checkpoints[t].average));
  }
  const std::size_t gaps = estimate.oscillation.size();
  if (gaps >= 3) {
    estimate.converged = estimate.oscillation[gaps - 1] < tolerance &&
                         estimate.oscillation[gaps - 2] < tolerance &&
                         estimate.oscillation[gaps - 3] < tolerance;
  }
  return estimate;
}

}  // namespace qso::detail
