#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "qso/simplex_point.hpp"

namespace qso {

// Row-stochastic m x m matrix: nonnegative entries, each row summing to 1
// within kSumTolerance. Row-major storage, immutable after construction.
class StochasticMatrix {
 public:
  // Validates caller-supplied entries (row-major, length m*m). Entries in
  // (-kNegativeClamp, 0) are clamped to 0 and the affected row renormalized;
  // anything more negative raises NegativeEntry. A row sum further than
  // kSumTolerance from 1 raises RowNotNormalized. Clean input is stored
  // bit-for-bit.
  static StochasticMatrix validated(std::size_t m, std::vector<double> entries);

  // Accepts the output of internal arithmetic: clamps rounding debris and
  // divides every row by its sum.
  static StochasticMatrix from_arithmetic(std::size_t m, std::vector<double> entries);

  static StochasticMatrix validated_rows(const std::vector<std::vector<double>>& rows);

  static StochasticMatrix identity(std::size_t m);

  // The matrix Pi_x of the Bernoulli reduction: every row equal to x.
  static StochasticMatrix constant_rows(const SimplexPoint& x);

  std::size_t dim() const noexcept { return m_; }
  double at(std::size_t i, std::size_t j) const noexcept { return entries_[i * m_ + j]; }
  std::span<const double> row(std::size_t i) const noexcept {
    return {entries_.data() + i * m_, m_};
  }
  std::span<const double> entries() const noexcept { return entries_; }
  double min_entry() const noexcept;

  bool operator==(const StochasticMatrix&) const = default;

 private:
  StochasticMatrix(std::size_t m, std::vector<double> entries)
      : m_(m), entries_(std::move(entries)) {}

  std::size_t m_;
  std::vector<double> entries_;
};

// Plain matrix product; rows of the result are renormalized (they are exact
// convex combinations of b's rows, so the division is a guard against
// rounding drift only).
StochasticMatrix multiply(const StochasticMatrix& a, const StochasticMatrix& b);

// Row-vector action x -> x Q; the distribution of the next generation given
// the current one and a one-step transition matrix.
SimplexPoint left_action(const SimplexPoint& x, const StochasticMatrix& q);

// max over rows i of the L1 distance between a.row(i) and b.row(i); the
// matrix norm used by the continuity probe.
double max_row_l1_distance(const StochasticMatrix& a, const StochasticMatrix& b);

}  // namespace qso
