#include <cmath>
#include <cstdint>
#include <vector>

#include "doctest.h"
#include "qso/ergodicity.hpp"
#include "qso/error.hpp"
#include "qso/operators.hpp"
#include "qso/random.hpp"
#include "qso/simplex_point.hpp"
#include "qso/stochastic_matrix.hpp"
#include "qso/zakharevich.hpp"
#include "testing.hpp"

using qso::CubicHeredityMatrix;
using qso::ErrorCode;
using qso::PointExperiment;
using qso::ScrambleScanReport;
using qso::SimplexPoint;
using qso::StochasticMatrix;
using qso::ZakharevichExperimentConfig;
using qso::ZakharevichExperimentReport;
using qso::testing::error_code_of;
using qso::testing::max_abs_diff;

namespace {

// Literal closed form of one generation, for cross-checking the tensor.
SimplexPoint closed_form_step(const SimplexPoint& p) {
  const double x = p[0], y = p[1], z = p[2];
  return SimplexPoint::from_arithmetic({x * x + 2 * x * y, y * y + 2 * y * z, z * z + 2 * x * z});
}

SimplexPoint grid_point(std::size_t a, std::size_t b, std::size_t g) {
  const double gd = static_cast<double>(g);
  return SimplexPoint::from_arithmetic(
      {static_cast<double>(a) / gd, static_cast<double>(b) / gd,
       static_cast<double>(g - a - b) / gd});
}

}  // namespace

TEST_CASE("the bundled tensor matches the three published blocks") {
  const CubicHeredityMatrix z = qso::zakharevich_cubic();
  CHECK(z.dim() == 3);
  CHECK(z.slice(0) ==
        StochasticMatrix::validated_rows({{1, 0, 0}, {1, 0, 0}, {0, 0, 1}}));
  CHECK(z.slice(1) ==
        StochasticMatrix::validated_rows({{1, 0, 0}, {0, 1, 0}, {0, 1, 0}}));
  CHECK(z.slice(2) ==
        StochasticMatrix::validated_rows({{0, 0, 1}, {0, 1, 0}, {0, 0, 1}}));

  // Cross-check of the parental symmetry on the blocks: (P_i)_{jk} == (P_j)_{ik}.
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) {
      for (std::size_t k = 0; k < 3; ++k) CHECK(z.slice(i).at(j, k) == z.slice(j).at(i, k));
    }
  }
  CHECK(z.at(0, 1, 0) == 1.0);  // p_{12,1} == p_{21,1} == 1
  CHECK(z.at(1, 0, 0) == 1.0);
}

TEST_CASE("one generation equals the closed form on a 50-point grid") {
  const CubicHeredityMatrix z = qso::zakharevich_cubic();
  const std::size_t g = 50;
  for (std::size_t a = 0; a <= g; ++a) {
    for (std::size_t b = 0; a + b <= g; ++b) {
      const SimplexPoint p = grid_point(a, b, g);
      CHECK(max_abs_diff(bernoulli_apply(z, p), closed_form_step(p)) <= 1e-12);
    }
  }
}

TEST_CASE("the parametric transition matrix matches its worked values") {
  const StochasticMatrix at_bary = qso::zakharevich_transition(SimplexPoint::barycenter(3));
  CHECK(max_abs_diff(at_bary, {{2.0 / 3, 0.0, 1.0 / 3},
                               {1.0 / 3, 2.0 / 3, 0.0},
                               {0.0, 1.0 / 3, 2.0 / 3}}) <= 1e-15);
  CHECK(qso::dobrushin_coefficient(at_bary) == doctest::Approx(2.0 / 3).epsilon(1e-15));

  const StochasticMatrix at_vertex = qso::zakharevich_transition(SimplexPoint::vertex(3, 0));
  CHECK(at_vertex == qso::zakharevich_cubic().slice(0));

  CHECK(error_code_of([] { qso::zakharevich_transition(SimplexPoint::barycenter(4)); }) ==
        ErrorCode::DimensionMismatch);
}

TEST_CASE("closed-form and induced transition matrices coincide on the grid") {
  const CubicHeredityMatrix z = qso::zakharevich_cubic();
  const std::size_t g = 50;
  for (std::size_t a = 0; a <= g; ++a) {
    for (std::size_t b = 0; a + b <= g; ++b) {
      const SimplexPoint p = grid_point(a, b, g);
      CHECK(max_abs_diff(qso::zakharevich_transition(p), induced_transition(z, p)) <= 1e-15);
    }
  }
}

TEST_CASE("x times Q(x) is one generation, for random points") {
  const CubicHeredityMatrix z = qso::zakharevich_cubic();
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const SimplexPoint x = qso::random_simplex(3, seed);
    CHECK(qso::l1_distance(left_action(x, qso::zakharevich_transition(x)),
                           bernoulli_apply(z, x)) <= 1e-12);
  }
}

TEST_CASE("vertices and the barycenter are held for a thousand generations") {
  const CubicHeredityMatrix z = qso::zakharevich_cubic();
  for (const SimplexPoint& start :
       {SimplexPoint::vertex(3, 0), SimplexPoint::vertex(3, 1), SimplexPoint::vertex(3, 2),
        SimplexPoint::barycenter(3)}) {
    SimplexPoint x = start;
    double worst = 0.0;
    for (int step = 0; step < 1000; ++step) {
      x = bernoulli_apply(z, x);
      worst = std::max(worst, max_abs_diff(x, start));
    }
    CHECK(worst <= 1e-14);
  }
}

TEST_CASE("the z = 0 edge maps into the boundary exactly") {
  const CubicHeredityMatrix z = qso::zakharevich_cubic();
  for (int i = 0; i <= 20; ++i) {
    const double a = static_cast<double>(i) / 20.0;
    const SimplexPoint edge = SimplexPoint::from_arithmetic({a, 1.0 - a, 0.0});
    CHECK(bernoulli_apply(z, edge)[2] == 0.0);
  }
}

TEST_CASE("the induced matrix scrambles on the interior but not on the boundary") {
  CHECK(qso::is_scrambling(qso::zakharevich_transition(SimplexPoint::barycenter(3))));
  CHECK(qso::is_scrambling(
      qso::zakharevich_transition(SimplexPoint::validated({1e-9, 0.5, 0.5 - 1e-9}))));
  CHECK(!qso::is_scrambling(qso::zakharevich_transition(SimplexPoint::vertex(3, 0))));
  CHECK(!qso::is_scrambling(qso::zakharevich_transition(SimplexPoint::validated({0.5, 0.5, 0.0}))));

  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const SimplexPoint x = qso::random_simplex(3, seed);
    if (qso::min_coordinate(x) >= 1e-9) {
      CHECK(qso::is_scrambling(qso::zakharevich_transition(x)));
    }
  }
}

TEST_CASE("scramble_scan classifies the grid-10 lattice") {
  const ScrambleScanReport r = qso::scramble_scan(10, 0.01);
  CHECK(r.points.size() == 66);  // 11 * 12 / 2
  CHECK(r.interior_scrambling == 36);
  CHECK(r.interior_non_scrambling == 0);
  CHECK(r.boundary_scrambling == 0);
  CHECK(r.boundary_non_scrambling == 30);
}

TEST_CASE("scramble_scan at grid 200 finds only boundary failures") {
  const ScrambleScanReport r = qso::scramble_scan(200, 0.01);
  CHECK(r.points.size() == 20301);
  CHECK(r.interior_scrambling == 19110);  // lattice points with min coord >= 0.01
  CHECK(r.interior_non_scrambling == 0);
  // Sub-margin but strictly positive points still scramble; true edge points
  // (some coordinate exactly zero) never do.
  CHECK(r.boundary_scrambling == 591);
  CHECK(r.boundary_non_scrambling == 600);
  for (const qso::ScanPoint& pt : r.points) {
    const bool on_edge = pt.x == 0.0 || pt.y == 0.0 || pt.z == 0.0;
    CHECK(pt.scrambling == !on_edge);
  }
}

TEST_CASE("scramble_scan validates its parameters") {
  CHECK(error_code_of([] { qso::scramble_scan(1, 0.01); }) == ErrorCode::EmptyRange);
  CHECK(error_code_of([] { qso::scramble_scan(10, 0.0); }) == ErrorCode::DegenerateSample);
  CHECK(error_code_of([] { qso::scramble_scan(10, 0.34); }) == ErrorCode::DegenerateSample);
  CHECK(error_code_of([] { qso::scramble_scan(10, 0.01, -1.0); }) ==
        ErrorCode::DegenerateSample);

  // A positive eta reclassifies points whose overlaps are smaller than eta.
  const ScrambleScanReport strict = qso::scramble_scan(10, 0.01, 0.15);
  CHECK(strict.interior_scrambling < 36);
}

TEST_CASE("the map x -> Q(x) never expands L1 distances") {
  const double ratio = qso::continuity_probe(100000, 7);
  CHECK(ratio <= 1.0 + 1e-9);
  CHECK(ratio > 0.5);  // sanity: the bound is nearly attained somewhere

  CHECK(error_code_of([] { qso::continuity_probe(1, 7); }) == ErrorCode::EmptyRange);

  // Collinear pair from the worked example: the ratio is exactly at the
  // Lipschitz bound.
  const SimplexPoint a = SimplexPoint::validated({0.2, 0.3, 0.5});
  const SimplexPoint b = SimplexPoint::validated({0.3, 0.3, 0.4});
  const double hand = qso::max_row_l1_distance(qso::zakharevich_transition(a),
                                               qso::zakharevich_transition(b)) /
                      qso::l1_distance(a, b);
  CHECK(std::fabs(hand - 1.0) <= 1e-12);
}

TEST_CASE("trajectory and induced chain agree step by step") {
  const CubicHeredityMatrix z = qso::zakharevich_cubic();
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    SimplexPoint x = qso::random_simplex(3, seed);
    for (int step = 0; step < 10000; ++step) {
      const SimplexPoint next = bernoulli_apply(z, x);
      const SimplexPoint via_chain = left_action(x, qso::zakharevich_transition(x));
      CHECK(qso::l1_distance(next, via_chain) <= 1e-12);
      x = next;
    }
  }
}

TEST_CASE("experiment defaults carry the frozen verdict configuration") {
  const ZakharevichExperimentConfig d = ZakharevichExperimentConfig::defaults();
  CHECK(d.max_steps == (std::uint64_t{1} << 20));
  CHECK(d.cesaro_tolerance == 0.01);
  CHECK(d.scramble_scan_grid == 200);
  CHECK(d.interior_margin == 0.01);
  REQUIRE(d.initial_points.size() == 3);
  CHECK(d.initial_points[0] == SimplexPoint::barycenter(3));
  CHECK(d.initial_points[1] == SimplexPoint::vertex(3, 0));
  CHECK(d.initial_points[2] == SimplexPoint::validated({0.3, 0.3, 0.4}));
}

TEST_CASE("the nonergodicity experiment juxtaposes the three behaviors") {
  ZakharevichExperimentConfig config = ZakharevichExperimentConfig::defaults();
  config.max_steps = std::uint64_t{1} << 12;
  config.scramble_scan_grid = 20;

  const ZakharevichExperimentReport report = qso::nonergodicity_experiment(config);
  REQUIRE(report.runs.size() == 3);
  CHECK(report.scan.points.size() == 21 * 22 / 2);

  // Barycenter: a fixed point with a constant scrambling chain whose
  // products contract geometrically.
  const PointExperiment& bary = report.runs[0];
  CHECK(bary.cesaro.converged);
  CHECK(bary.cesaro.checkpoints.back().average == SimplexPoint::barycenter(3));
  CHECK(bary.visited.scrambling == config.max_steps);
  CHECK(bary.visited.non_scrambling == 0);
  CHECK(bary.visited.interior == config.max_steps);
  REQUIRE(!bary.chain_reports.empty());
  CHECK(bary.chain_reports.front().end_index == 1);
  CHECK(bary.chain_reports.front().dobrushin == doctest::Approx(2.0 / 3).epsilon(1e-15));
  for (const qso::ErgodicityReport& r : bary.chain_reports) {
    CHECK(r.dobrushin <=
          std::pow(2.0 / 3, static_cast<double>(r.end_index)) + 1e-12);
    CHECK(r.all_factors_scrambling);
  }

  // Vertex: fixed, but the chain never mixes.
  const PointExperiment& vert = report.runs[1];
  CHECK(vert.cesaro.converged);
  CHECK(vert.cesaro.checkpoints.back().average == SimplexPoint::vertex(3, 0));
  CHECK(vert.visited.non_scrambling == config.max_steps);
  CHECK(vert.visited.boundary == config.max_steps);
  CHECK(vert.visited.min_coordinate == 0.0);
  for (const qso::ErgodicityReport& r : vert.chain_reports) {
    CHECK(r.dobrushin == 1.0);
    CHECK(!r.all_factors_scrambling);
  }

  // Interior point: the Cesaro verdict refuses to converge even though the
  // chain-level contraction is total.
  const PointExperiment& interior = report.runs[2];
  CHECK(!interior.cesaro.converged);
  CHECK(interior.cesaro.tolerance == 0.01);
  CHECK(interior.chain_reports.back().dobrushin <= 1e-12);
}

TEST_CASE("the experiment validates its configuration before running") {
  ZakharevichExperimentConfig config = ZakharevichExperimentConfig::defaults();
  config.initial_points.clear();
  CHECK(error_code_of([&] { qso::nonergodicity_experiment(config); }) == ErrorCode::EmptyVector);

  config = ZakharevichExperimentConfig::defaults();
  config.initial_points[0] = SimplexPoint::barycenter(2);
  CHECK(error_code_of([&] { qso::nonergodicity_experiment(config); }) ==
        ErrorCode::DimensionMismatch);

  config = ZakharevichExperimentConfig::defaults();
  config.max_steps = 1;
  CHECK(error_code_of([&] { qso::nonergodicity_experiment(config); }) == ErrorCode::EmptyRange);

  config = ZakharevichExperimentConfig::defaults();
  config.cesaro_tolerance = 0.0;
  CHECK(error_code_of([&] { qso::nonergodicity_experiment(config); }) ==
        ErrorCode::DegenerateSample);

  config = ZakharevichExperimentConfig::defaults();
  config.interior_margin = 0.5;
  CHECK(error_code_of([&] { qso::nonergodicity_experiment(config); }) ==
        ErrorCode::DegenerateSample);

  config = ZakharevichExperimentConfig::defaults();
  config.scramble_scan_grid = 1;
  CHECK(error_code_of([&] { qso::nonergodicity_experiment(config); }) == ErrorCode::EmptyRange);
}
