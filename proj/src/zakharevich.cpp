#include "qso/zakharevich.hpp"

#include <cmath>
#include <random>
#include <string>

#include "qso/detail/cesaro_loop.hpp"
#include "qso/error.hpp"
#include "qso/ext_float.hpp"
#include "qso/operators.hpp"
#include "qso/random.hpp"

namespace qso {
namespace {

void require_three_species(std::size_t m, const char* what) {
  if (m != 3) {
    throw Error(ErrorCode::DimensionMismatch,
                std::string(what) + " is defined on S^2 only, got dimension " +
                    std::to_string(m));
  }
}

}  // namespace

CubicHeredityMatrix zakharevich_cubic() {
  // Offspring distributions (fibers over k) read off V:(x,y,z) ->
  // (x^2+2xy, y^2+2yz, z^2+2xz): pairs {1,1} and {1,2} produce species 1,
  // {2,2} and {2,3} produce species 2, {3,3} and {1,3} produce species 3.
  const std::size_t m = 3;
  std::vector<double> p(m * m * m, 0.0);
  const auto set_fiber = [&](std::size_t i, std::size_t j, std::size_t k) {
    p[(i * m + j) * m + k] = 1.0;
    p[(j * m + i) * m + k] = 1.0;
  };
  set_fiber(0, 0, 0);
  set_fiber(0, 1, 0);
  set_fiber(1, 1, 1);
  set_fiber(1, 2, 1);
  set_fiber(2, 2, 2);
  set_fiber(0, 2, 2);
  return CubicHeredityMatrix::validated(m, std::move(p));
}

StochasticMatrix zakharevich_transition(const SimplexPoint& p) {
  require_three_species(p.dim(), "zakharevich_transition");
  const double x = p[0];
  const double y = p[1];
  const double z = p[2];
  return StochasticMatrix::from_arithmetic(3, {x + y, 0.0, z,
                                               x, y + z, 0.0,
                                               0.0, y, x + z});
}

ScrambleScanReport scramble_scan(std::size_t grid, double interior_margin,
                                 double positivity_threshold) {
  if (grid < 2) {
    throw Error(ErrorCode::EmptyRange,
                "grid resolution is " + std::to_string(grid) + ", need at least 2");
  }
  if (!(interior_margin > 0.0) || !(interior_margin < 1.0 / 3.0)) {
    throw Error(ErrorCode::DegenerateSample,
                "interior margin must lie in (0, 1/3)");
  }
  if (!(positivity_threshold >= 0.0)) {
    throw Error(ErrorCode::DegenerateSample, "positivity threshold must be >= 0");
  }
  ScrambleScanReport report;
  report.grid = grid;
  report.interior_margin = interior_margin;
  report.points.reserve((grid + 1) * (grid + 2) / 2);
  const double g = static_cast<double>(grid);
  for (std::size_t a = 0; a <= grid; ++a) {
    for (std::size_t b = 0; b + a <= grid; ++b) {
      const std::size_t c = grid - a - b;
      const double x = static_cast<double>(a) / g;
      const double y = static_cast<double>(b) / g;
      const double z = static_cast<double>(c) / g;
      const SimplexPoint point = SimplexPoint::validated({x, y, z});
      const bool scrambling =
          is_scrambling(zakharevich_transition(point), positivity_threshold);
      const bool interior = min_coordinate(point) >= interior_margin;
      report.points.push_back(ScanPoint{x, y, z, scrambling, interior});
      if (interior) {
        scrambling ? ++report.interior_scrambling : ++report.interior_non_scrambling;
      } else {
        scrambling ? ++report.boundary_scrambling : ++report.boundary_non_scrambling;
      }
    }
  }
  return report;
}

double continuity_probe(std::size_t samples, std::uint64_t seed) {
  if (samples < 2) {
    throw Error(ErrorCode::EmptyRange,
                "need at least 2 probe samples, got " + std::to_string(samples));
  }
  std::mt19937_64 engine(seed);
  double worst = 0.0;
  for (std::size_t s = 0; s < samples; ++s) {
    const SimplexPoint x = random_simplex(3, engine);
    SimplexPoint x_prime = random_simplex(3, engine);
    int attempts = 0;
    while (l1_distance(x, x_prime) == 0.0) {
      if (++attempts > 64) {
        throw Error(ErrorCode::DegenerateSample, "could not draw a distinct pair");
      }
      x_prime = random_simplex(3, engine);
    }
    const double ratio = max_row_l1_distance(zakharevich_transition(x),
                                             zakharevich_transition(x_prime)) /
                         l1_distance(x, x_prime);
    worst = std::max(worst, ratio);
  }
  return worst;
}

ZakharevichExperimentConfig ZakharevichExperimentConfig::defaults() {
  ZakharevichExperimentConfig config;
  config.initial_points = {SimplexPoint::barycenter(3), SimplexPoint::vertex(3, 0),
                           SimplexPoint::validated({0.3, 0.3, 0.4})};
  config.max_steps = std::uint64_t{1} << 20;
  config.cesaro_tolerance = 0.01;
  config.scramble_scan_grid = 200;
  config.interior_margin = 0.01;
  return config;
}

ZakharevichExperimentReport nonergodicity_experiment(const ZakharevichExperimentConfig& config) {
  // Validate the whole config before any computation starts.
  if (config.initial_points.empty()) {
    throw Error(ErrorCode::EmptyVector, "experiment needs at least one initial point");
  }
  for (const SimplexPoint& p : config.initial_points) {
    require_three_species(p.dim(), "nonergodicity_experiment");
  }
  if (!(config.interior_margin > 0.0) || !(config.interior_margin < 1.0 / 3.0)) {
    throw Error(ErrorCode::DegenerateSample, "interior margin must lie in (0, 1/3)");
  }
  if (config.max_steps < 2) {
    throw Error(ErrorCode::EmptyRange,
                "max_steps is " + std::to_string(config.max_steps) + ", need at least 2");
  }
  if (config.scramble_scan_grid < 2) {
    throw Error(ErrorCode::EmptyRange,
                "grid resolution is " + std::to_string(config.scramble_scan_grid) +
                    ", need at least 2");
  }
  if (!(config.cesaro_tolerance > 0.0)) {
    throw Error(ErrorCode::DegenerateSample, "tolerance must be positive");
  }

  const CubicHeredityMatrix tensor = zakharevich_cubic();
  const ChainSchedule schedule = ChainSchedule::constant({tensor, std::nullopt});

  ZakharevichExperimentReport report;
  report.config = config;
  report.scan = scramble_scan(config.scramble_scan_grid, config.interior_margin);
  report.runs.reserve(config.initial_points.size());

  for (const SimplexPoint& x0 : config.initial_points) {
    ChainProductAccumulator chain(3, 0);
    std::vector<ErgodicityReport> chain_reports;
    VisitedStateSummary visited;

    // One pass drives everything: the observer sees the double projection of
    // every extended-lane state before the step, feeds the induced-chain
    // accumulator, and classifies the visited state.
    const auto observe = [&](std::uint64_t n, std::span<const double> coords) {
      const SimplexPoint state =
          SimplexPoint::from_arithmetic(std::vector<double>(coords.begin(), coords.end()));
      const StochasticMatrix factor = zakharevich_transition(state);
      chain.push(factor);
      const std::uint64_t count = n + 1;
      if ((count & (count - 1)) == 0) {
        chain_reports.push_back(chain.report());
      }

      const bool scrambling = is_scrambling(factor);
      scrambling ? ++visited.scrambling : ++visited.non_scrambling;
      const double lo = min_coordinate(state);
      visited.min_coordinate = std::min(visited.min_coordinate, lo);
      lo >= config.interior_margin ? ++visited.interior : ++visited.boundary;
    };

    CesaroEstimate cesaro = detail::cesaro_loop<ExtFloat>(
        schedule, x0, config.max_steps, EvolutionMode::kBernoulli, config.cesaro_tolerance,
        observe);

    report.runs.push_back(PointExperiment{x0, std::move(cesaro), std::move(chain_reports),
                                          visited});
  }
  return report;
}

}  // namespace qso
