#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "qso/chain_schedule.hpp"
#include "qso/operators.hpp"
#include "qso/simplex_point.hpp"
#include "qso/stochastic_matrix.hpp"

namespace qso {

// Dobrushin contraction coefficient delta(Q) = (1/2) max_{i,j} sum_k
// |q_ik - q_jk|. Zero exactly when all rows coincide (constant columns, the
// shape weak ergodicity drives products toward); 1 when two rows have
// disjoint support.
double dobrushin_coefficient(const StochasticMatrix& q);

// max over columns of (max entry - min entry); the literal "gets to be a
// constant column" measurement. Equivalent to dobrushin up to a factor
// depending on m only.
double column_spread(const StochasticMatrix& q);

// Scrambling: every pair of rows shares a column where both exceed the
// threshold. The default threshold 0 is the classical strict-positivity
// notion; a positive threshold gives the "numerically scrambling" scan
// variant.
bool is_scrambling(const StochasticMatrix& q, double positivity_threshold = 0.0);

// Bookkeeping of the drift policy applied while forming a long product.
struct ChainProductStats {
  std::size_t renormalized_rows = 0;
  double max_row_drift = 0.0;  // worst |row sum - 1| seen before renormalization
};

// Diagnostics for a forward product Q^{i:j} = Q(i+1) Q(i+2) ... Q(j).
struct ErgodicityReport {
  std::size_t start_index;  // i
  std::size_t end_index;    // j
  StochasticMatrix product;
  double dobrushin;
  double column_spread;
  bool all_factors_scrambling;  // every factor in (i, j] scrambling at threshold 0
  double min_factor_entry;      // smallest entry over all factors: the epsilon surrogate
};

// Incremental left-to-right product over a stream of factors. Rows whose
// sums drift beyond kSumTolerance are renormalized (and counted); the
// snapshot product therefore always passes StochasticMatrix validation.
// Factor-level diagnostics (scrambling, minimum entry) accumulate alongside.
class ChainProductAccumulator {
 public:
  explicit ChainProductAccumulator(std::size_t m, std::size_t start_index = 0);

  void push(const StochasticMatrix& factor);

  std::size_t factor_count() const noexcept { return count_; }
  const ChainProductStats& stats() const noexcept { return stats_; }

  // Snapshot for the range (start_index, start_index + factor_count()];
  // requires at least one factor.
  ErgodicityReport report() const;

 private:
  std::size_t m_;
  std::size_t start_;
  std::size_t count_ = 0;
  std::vector<double> product_;  // row-major running product, starts as identity
  bool all_scrambling_ = true;
  double min_entry_ = 1.0;
  ChainProductStats stats_;
};

// Product Q^{i:j} over an explicit chain; 0 <= i < j <= chain length.
// Optional stats output reports the drift policy's activity.
StochasticMatrix chain_product(std::span<const StochasticMatrix> chain, std::size_t i,
                               std::size_t j, ChainProductStats* stats = nullptr);

// One ErgodicityReport per horizon j for the products Q^{i:j}; horizons must
// be strictly increasing, all > i and <= chain length.
std::vector<ErgodicityReport> weak_ergodicity_diagnostic(std::span<const StochasticMatrix> chain,
                                                         std::size_t i,
                                                         std::span<const std::size_t> horizons);

// Arithmetic scalar driving a Cesaro estimate. kF64 is plain double and the
// default. kExtended runs the identical operation sequence on ExtFloat
// scalars, whose extended exponent range keeps near-boundary orbits alive
// past the double underflow horizon; required for faithful long-horizon
// Zakharevich runs.
enum class NumericLane { kF64, kExtended };

struct CesaroOptions {
  NumericLane lane = NumericLane::kF64;
};

struct CesaroCheckpoint {
  std::uint64_t k;
  SimplexPoint average;  // (1/k) sum_{n=0}^{k-1} x^(n)
};

struct CesaroEstimate {
  std::vector<CesaroCheckpoint> checkpoints;  // at k = 1, 2, 4, ..., strictly increasing
  std::vector<double> oscillation;            // L1 gaps between consecutive averages
  bool converged = false;                     // three-window rule at `tolerance`
  double tolerance = 0.0;
};

// Running Cesaro mean of the trajectory from x0, checkpointed at every
// dyadic k <= max_k (the effective horizon is the largest power of two
// <= max_k). converged is true iff at least three oscillation values exist
// and the last three are all strictly below tolerance — a finite-horizon
// heuristic, not a limit statement. Memory is O(m log k): the trajectory is
// never stored.
CesaroEstimate cesaro_estimate(const ChainSchedule& schedule, const SimplexPoint& x0,
                               std::uint64_t max_k, EvolutionMode mode, double tolerance,
                               const CesaroOptions& options = {});

}  // namespace qso
