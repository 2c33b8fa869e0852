#include <cmath>
#include <cstdint>
#include <vector>

#include "doctest.h"
#include "qso/chain_schedule.hpp"
#include "qso/ergodicity.hpp"
#include "qso/error.hpp"
#include "qso/operators.hpp"
#include "qso/random.hpp"
#include "qso/zakharevich.hpp"
#include "testing.hpp"

using qso::CesaroEstimate;
using qso::CesaroOptions;
using qso::ChainProductStats;
using qso::ChainSchedule;
using qso::CubicHeredityMatrix;
using qso::ErgodicityReport;
using qso::ErrorCode;
using qso::EvolutionMode;
using qso::NumericLane;
using qso::SimplexPoint;
using qso::StochasticMatrix;
using qso::testing::error_code_of;

namespace {

// Random m=3 matrix with every entry >= 0.1: convex mix with the uniform
// matrix, row sums stay exactly 1 in the reals.
StochasticMatrix positive_stochastic(std::uint64_t seed) {
  const StochasticMatrix r = qso::random_stochastic(3, seed);
  std::vector<double> entries(9);
  for (std::size_t i = 0; i < 9; ++i) entries[i] = 0.1 + 0.7 * r.entries()[i];
  return StochasticMatrix::from_arithmetic(3, std::move(entries));
}

// Smallest pairwise row overlap mass: delta(Q) = 1 - min_{i<j} sum_k
// min(q_ik, q_jk) is the standard identity the coefficient satisfies.
double min_overlap(const StochasticMatrix& q) {
  double worst = 1.0;
  for (std::size_t i = 0; i < q.dim(); ++i) {
    for (std::size_t j = i + 1; j < q.dim(); ++j) {
      double mass = 0.0;
      for (std::size_t k = 0; k < q.dim(); ++k) mass += std::min(q.at(i, k), q.at(j, k));
      worst = std::min(worst, mass);
    }
  }
  return worst;
}

}  // namespace

TEST_CASE("dobrushin coefficient on the worked examples") {
  CHECK(qso::dobrushin_coefficient(StochasticMatrix::constant_rows(qso::random_simplex(4, 1))) ==
        0.0);
  CHECK(qso::dobrushin_coefficient(StochasticMatrix::identity(3)) == 1.0);
  const StochasticMatrix q = StochasticMatrix::validated_rows(
      {{0.5, 0.5, 0.0}, {0.0, 0.5, 0.5}, {0.5, 0.0, 0.5}});
  CHECK(qso::dobrushin_coefficient(q) == 0.5);
}

TEST_CASE("column spread is the literal constant-column measurement") {
  CHECK(qso::column_spread(StochasticMatrix::identity(3)) == 1.0);
  CHECK(qso::column_spread(StochasticMatrix::constant_rows(qso::random_simplex(3, 2))) == 0.0);

  // Spread and dobrushin vanish together and bound each other by
  // m-dependent factors only.
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const std::size_t m = 2 + seed % 5;
    const StochasticMatrix q = qso::random_stochastic(m, seed);
    const double spread = qso::column_spread(q);
    const double delta = qso::dobrushin_coefficient(q);
    CHECK(spread <= 2.0 * delta + 1e-15);
    CHECK(2.0 * delta <= static_cast<double>(m) * spread + 1e-15);
  }
}

TEST_CASE("dobrushin equals one minus the minimum row overlap") {
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    const std::size_t m = 2 + seed % 5;
    const StochasticMatrix q = qso::random_stochastic(m, seed);
    CHECK(std::fabs(qso::dobrushin_coefficient(q) - (1.0 - min_overlap(q))) <= 1e-12);
  }
}

TEST_CASE("scrambling detection and the positivity threshold") {
  CHECK(!qso::is_scrambling(StochasticMatrix::identity(3)));
  CHECK(qso::is_scrambling(StochasticMatrix::validated(3, std::vector<double>(9, 1.0 / 3))));
  CHECK(qso::is_scrambling(
      qso::zakharevich_transition(SimplexPoint::validated({0.2, 0.3, 0.5}))));

  // Every scrambling matrix strictly contracts: positive overlap mass.
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const StochasticMatrix q = qso::random_stochastic(3, seed);
    if (qso::is_scrambling(q)) {
      CHECK(qso::dobrushin_coefficient(q) <= 1.0 - min_overlap(q) + 1e-12);
      CHECK(min_overlap(q) > 0.0);
      CHECK(qso::dobrushin_coefficient(q) < 1.0);
    }
  }

  // A tiny overlap counts at threshold zero but not past eta.
  const StochasticMatrix faint =
      StochasticMatrix::validated_rows({{1.0 - 1e-13, 1e-13}, {0.0, 1.0}});
  CHECK(qso::is_scrambling(faint));
  CHECK(!qso::is_scrambling(faint, 1e-12));
}

TEST_CASE("chain products reproduce hand calculations") {
  const StochasticMatrix mix = StochasticMatrix::validated_rows({{0.5, 0.5}, {0.5, 0.5}});
  const StochasticMatrix id2 = StochasticMatrix::identity(2);

  const std::vector<StochasticMatrix> pair{mix, id2};
  CHECK(qso::chain_product(pair, 0, 2) == mix);
  CHECK(qso::chain_product(pair, 0, 1) == mix);
  CHECK(qso::chain_product(pair, 1, 2) == id2);

  const std::vector<StochasticMatrix> ids(5, StochasticMatrix::identity(3));
  CHECK(qso::chain_product(ids, 0, 5) == StochasticMatrix::identity(3));

  ChainProductStats stats;
  qso::chain_product(pair, 0, 2, &stats);
  CHECK(stats.renormalized_rows == 0);

  CHECK(error_code_of([&] { qso::chain_product(pair, 1, 1); }) == ErrorCode::EmptyRange);
  CHECK(error_code_of([&] { qso::chain_product(pair, 2, 1); }) == ErrorCode::EmptyRange);
  CHECK(error_code_of([&] { qso::chain_product(pair, 0, 3); }) == ErrorCode::IndexOutOfRange);
}

TEST_CASE("the product accumulator matches the one-shot product") {
  std::vector<StochasticMatrix> chain;
  for (std::uint64_t seed = 0; seed < 12; ++seed) chain.push_back(qso::random_stochastic(3, seed));

  qso::ChainProductAccumulator acc(3);
  CHECK(error_code_of([&] { acc.report(); }) == ErrorCode::EmptyRange);
  for (std::size_t j = 0; j < chain.size(); ++j) {
    acc.push(chain[j]);
    const ErgodicityReport report = acc.report();
    CHECK(report.start_index == 0);
    CHECK(report.end_index == j + 1);
    CHECK(qso::testing::max_abs_diff(report.product, qso::chain_product(chain, 0, j + 1)) <=
          1e-14);
    CHECK(report.all_factors_scrambling);  // random positive matrices scramble
  }
}

TEST_CASE("weak ergodicity diagnostics on degenerate chains") {
  const std::vector<StochasticMatrix> ids(8, StochasticMatrix::identity(3));
  const std::vector<std::size_t> horizons{1, 2, 4, 8};
  const std::vector<ErgodicityReport> rid = qso::weak_ergodicity_diagnostic(ids, 0, horizons);
  CHECK(rid.size() == 4);
  for (const ErgodicityReport& r : rid) {
    CHECK(r.dobrushin == 1.0);
    CHECK(!r.all_factors_scrambling);
    CHECK(r.min_factor_entry == 0.0);
  }

  const std::vector<StochasticMatrix> flat(
      8, StochasticMatrix::validated(3, std::vector<double>(9, 1.0 / 3)));
  for (const ErgodicityReport& r : qso::weak_ergodicity_diagnostic(flat, 0, horizons)) {
    CHECK(r.dobrushin <= 1e-15);
    CHECK(r.column_spread <= 1e-15);
    CHECK(r.all_factors_scrambling);
    CHECK(r.min_factor_entry == 1.0 / 3);
  }

  CHECK(error_code_of([&] {
          qso::weak_ergodicity_diagnostic(ids, 0, std::vector<std::size_t>{2, 2});
        }) == ErrorCode::IndexOutOfRange);
  CHECK(error_code_of([&] {
          qso::weak_ergodicity_diagnostic(ids, 0, std::vector<std::size_t>{9});
        }) == ErrorCode::IndexOutOfRange);
  CHECK(error_code_of([&] {
          qso::weak_ergodicity_diagnostic(ids, 3, std::vector<std::size_t>{3});
        }) == ErrorCode::IndexOutOfRange);
}

TEST_CASE("uniformly positive chains contract geometrically") {
  std::vector<StochasticMatrix> chain;
  for (std::uint64_t seed = 0; seed < 30; ++seed) chain.push_back(positive_stochastic(seed));
  for (std::size_t j = 1; j <= 30; ++j) {
    const double delta = qso::dobrushin_coefficient(qso::chain_product(chain, 0, j));
    CHECK(delta <= std::pow(0.7, static_cast<double>(j)) + 1e-12);
  }
}

TEST_CASE("dobrushin is submultiplicative on random pairs") {
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    const std::size_t m = 2 + seed % 5;
    const StochasticMatrix a = qso::random_stochastic(m, 2 * seed);
    const StochasticMatrix b = qso::random_stochastic(m, 2 * seed + 1);
    CHECK(qso::dobrushin_coefficient(multiply(a, b)) <=
          qso::dobrushin_coefficient(a) * qso::dobrushin_coefficient(b) + 1e-12);
  }
}

TEST_CASE("cesaro averages at fixed points converge immediately") {
  const ChainSchedule z = ChainSchedule::constant({qso::zakharevich_cubic(), {}});

  const CesaroEstimate bary = qso::cesaro_estimate(z, SimplexPoint::barycenter(3), 1024,
                                                   EvolutionMode::kBernoulli, 0.01);
  CHECK(bary.converged);
  CHECK(bary.checkpoints.size() == 11);  // k = 1, 2, ..., 1024
  CHECK(bary.checkpoints.back().k == 1024);
  for (const qso::CesaroCheckpoint& c : bary.checkpoints) {
    CHECK(c.average == SimplexPoint::barycenter(3));
  }
  for (const double gap : bary.oscillation) CHECK(gap == 0.0);

  const CesaroEstimate vert = qso::cesaro_estimate(z, SimplexPoint::vertex(3, 0), 1024,
                                                   EvolutionMode::kBernoulli, 0.01);
  CHECK(vert.converged);
  CHECK(vert.checkpoints.back().average == SimplexPoint::vertex(3, 0));
}

TEST_CASE("the convergence verdict needs three oscillation gaps") {
  const ChainSchedule z = ChainSchedule::constant({qso::zakharevich_cubic(), {}});
  // max_k = 4 gives checkpoints 1, 2, 4: only two gaps, so even a fixed
  // point cannot be ruled converged.
  const CesaroEstimate shallow = qso::cesaro_estimate(z, SimplexPoint::barycenter(3), 4,
                                                      EvolutionMode::kBernoulli, 0.01);
  CHECK(shallow.oscillation.size() == 2);
  CHECK(!shallow.converged);

  const CesaroEstimate deep = qso::cesaro_estimate(z, SimplexPoint::barycenter(3), 8,
                                                   EvolutionMode::kBernoulli, 0.01);
  CHECK(deep.oscillation.size() == 3);
  CHECK(deep.converged);
}

TEST_CASE("the effective horizon is the dyadic floor of max_k") {
  const ChainSchedule z = ChainSchedule::constant({qso::zakharevich_cubic(), {}});
  const CesaroEstimate e = qso::cesaro_estimate(z, SimplexPoint::barycenter(3), 100,
                                                EvolutionMode::kBernoulli, 0.01);
  std::vector<std::uint64_t> ks;
  for (const qso::CesaroCheckpoint& c : e.checkpoints) ks.push_back(c.k);
  CHECK(ks == std::vector<std::uint64_t>{1, 2, 4, 8, 16, 32, 64});
}

TEST_CASE("the running mean matches a stored-trajectory mean") {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const std::size_t m = 2 + seed % 3;
    const CubicHeredityMatrix p = qso::random_cubic(m, seed);
    const ChainSchedule schedule = ChainSchedule::constant({p, {}});
    const SimplexPoint x0 = qso::random_simplex(m, seed + 40);
    const std::uint64_t max_k = 512;

    const qso::Trajectory t =
        run_trajectory(schedule, x0, max_k - 1, EvolutionMode::kBernoulli);
    const CesaroEstimate e =
        qso::cesaro_estimate(schedule, x0, max_k, EvolutionMode::kBernoulli, 0.01);

    for (const qso::CesaroCheckpoint& c : e.checkpoints) {
      std::vector<double> mean(m, 0.0);
      for (std::uint64_t n = 0; n < c.k; ++n) {
        for (std::size_t d = 0; d < m; ++d) mean[d] += t.points[n][d];
      }
      double worst = 0.0;
      for (std::size_t d = 0; d < m; ++d) {
        worst = std::max(worst, std::fabs(mean[d] / static_cast<double>(c.k) - c.average[d]));
      }
      CHECK(worst <= 1e-10);
    }
  }
}

TEST_CASE("both numeric lanes agree bit-for-bit while doubles stay normal") {
  const CubicHeredityMatrix p = qso::random_cubic(3, 123);
  const ChainSchedule schedule = ChainSchedule::constant({p, {}});
  const SimplexPoint x0 = qso::random_simplex(3, 124);

  CesaroOptions ext;
  ext.lane = NumericLane::kExtended;
  const CesaroEstimate a =
      qso::cesaro_estimate(schedule, x0, 256, EvolutionMode::kBernoulli, 0.01);
  const CesaroEstimate b =
      qso::cesaro_estimate(schedule, x0, 256, EvolutionMode::kBernoulli, 0.01, ext);

  REQUIRE(a.checkpoints.size() == b.checkpoints.size());
  for (std::size_t t = 0; t < a.checkpoints.size(); ++t) {
    CHECK(a.checkpoints[t].k == b.checkpoints[t].k);
    CHECK(a.checkpoints[t].average == b.checkpoints[t].average);
  }
  CHECK(a.oscillation == b.oscillation);
  CHECK(a.converged == b.converged);
}

TEST_CASE("markov-mode cesaro follows the interbreeding schedule") {
  const CubicHeredityMatrix p = qso::random_cubic(3, 15);
  const StochasticMatrix pi = qso::random_stochastic(3, 16);
  const ChainSchedule schedule = ChainSchedule::constant({p, pi});
  const SimplexPoint x0 = qso::random_simplex(3, 17);

  const qso::Trajectory t = run_trajectory(schedule, x0, 63, EvolutionMode::kMarkov);
  const CesaroEstimate e = qso::cesaro_estimate(schedule, x0, 64, EvolutionMode::kMarkov, 0.01);
  std::vector<double> mean(3, 0.0);
  for (std::uint64_t n = 0; n < 64; ++n) {
    for (std::size_t d = 0; d < 3; ++d) mean[d] += t.points[n][d];
  }
  for (std::size_t d = 0; d < 3; ++d) {
    CHECK(std::fabs(mean[d] / 64.0 - e.checkpoints.back().average[d]) <= 1e-10);
  }

  const ChainSchedule bare = ChainSchedule::constant({p, {}});
  CHECK(error_code_of([&] {
          qso::cesaro_estimate(bare, x0, 64, EvolutionMode::kMarkov, 0.01);
        }) == ErrorCode::DimensionMismatch);
}

TEST_CASE("cesaro estimate validates its configuration") {
  const ChainSchedule z = ChainSchedule::constant({qso::zakharevich_cubic(), {}});
  const SimplexPoint x0 = SimplexPoint::barycenter(3);
  CHECK(error_code_of([&] {
          qso::cesaro_estimate(z, x0, 1, EvolutionMode::kBernoulli, 0.01);
        }) == ErrorCode::EmptyRange);
  CHECK(error_code_of([&] {
          qso::cesaro_estimate(z, x0, 64, EvolutionMode::kBernoulli, 0.0);
        }) == ErrorCode::DegenerateSample);
  CHECK(error_code_of([&] {
          qso::cesaro_estimate(z, SimplexPoint::barycenter(4), 64, EvolutionMode::kBernoulli,
                               0.01);
        }) == ErrorCode::DimensionMismatch);

  const CubicHeredityMatrix p = qso::random_cubic(2, 3);
  const ChainSchedule finite = ChainSchedule::finite({{p, {}}, {p, {}}});
  CHECK(error_code_of([&] {
          qso::cesaro_estimate(finite, qso::random_simplex(2, 4), 64, EvolutionMode::kBernoulli,
                               0.01);
        }) == ErrorCode::ScheduleExhausted);
}
