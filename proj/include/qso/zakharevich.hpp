#pragma once

#include <cstdint>
#include <vector>

#include "qso/cubic_matrix.hpp"
#include "qso/ergodicity.hpp"
#include "qso/simplex_point.hpp"
#include "qso/stochastic_matrix.hpp"

namespace qso {

// The m = 3 heredity tensor of Zakharevich's counterexample, whose Bernoulli
// operator is V:(x,y,z) -> (x^2 + 2xy, y^2 + 2yz, z^2 + 2xz). Its Cesaro
// averages famously fail to converge from interior starting points.
CubicHeredityMatrix zakharevich_cubic();

// Closed form of the one-step transition matrix this operator induces at x:
// rows (x+y, 0, z), (x, y+z, 0), (0, y, x+z). Identical (to rounding) to
// induced_transition(zakharevich_cubic(), x); both are implemented so tests
// can cross-check the transcription.
StochasticMatrix zakharevich_transition(const SimplexPoint& x);

struct ScanPoint {
  double x, y, z;
  bool scrambling;
  bool interior;  // min coordinate >= the scan's interior margin
};

struct ScrambleScanReport {
  std::size_t grid = 0;
  double interior_margin = 0.0;
  std::vector<ScanPoint> points;  // barycentric lattice, (grid+1)(grid+2)/2 entries
  std::size_t interior_scrambling = 0;
  std::size_t interior_non_scrambling = 0;
  std::size_t boundary_scrambling = 0;
  std::size_t boundary_non_scrambling = 0;
};

// Classifies is_scrambling(zakharevich_transition(p), positivity_threshold)
// over the uniform barycentric lattice {(a,b,c)/grid : a+b+c = grid}.
// Interior points are those with min coordinate >= interior_margin. The
// classical claim is scrambling at every point of the simplex; the scan
// shows it holds on the interior but fails on vertices and edges. A positive
// threshold gives the "numerically scrambling" variant of the scan.
ScrambleScanReport scramble_scan(std::size_t grid, double interior_margin,
                                 double positivity_threshold = 0.0);

// Empirical Lipschitz constant of x -> Q(x) in (L1, max-row-L1) norms over
// random point pairs: returns the largest observed ratio
// max_row_l1_distance(Q(x), Q(x')) / l1_distance(x, x'). The map is
// 1-Lipschitz by inspection of its entries, so the result should never
// exceed 1 beyond rounding; with the simplex compact, this is the numerical
// surrogate for the compactness of {Q(x)}.
double continuity_probe(std::size_t samples, std::uint64_t seed);

struct ZakharevichExperimentConfig {
  std::vector<SimplexPoint> initial_points;
  std::uint64_t max_steps = 0;       // Cesaro horizon (effective: largest power of two <= this)
  double cesaro_tolerance = 0.0;     // three-window convergence threshold
  std::size_t scramble_scan_grid = 0;
  double interior_margin = 0.0;

  // The shipped defaults: barycenter, the vertex (1,0,0), and the interior
  // point (0.3, 0.3, 0.4) at horizon 2^20 with tolerance 0.01 — values
  // confirmed against a long-horizon extended-precision oracle before being
  // frozen here. Scan grid 200, margin 0.01.
  static ZakharevichExperimentConfig defaults();
};

// Classification of the states x^(0), ..., x^(K-1) a run visited, in the
// double projection of the extended-lane orbit.
struct VisitedStateSummary {
  std::uint64_t scrambling = 0;      // steps whose induced Q(x^(n)) was scrambling
  std::uint64_t non_scrambling = 0;
  std::uint64_t interior = 0;        // min coordinate >= interior_margin
  std::uint64_t boundary = 0;
  double min_coordinate = 1.0;       // smallest coordinate ever seen
};

struct PointExperiment {
  SimplexPoint initial_point;
  CesaroEstimate cesaro;
  // Reports for the induced chain products Q^{0:j} at dyadic horizons j.
  std::vector<ErgodicityReport> chain_reports;
  VisitedStateSummary visited;
};

struct ZakharevichExperimentReport {
  ZakharevichExperimentConfig config;
  std::vector<PointExperiment> runs;
  ScrambleScanReport scan;
};

// The full counterexample experiment: for every initial point, a Cesaro
// estimate on the extended numeric lane (the double lane underflows to a
// vertex on long horizons and would fake convergence), the induced chain
// Q(x^(n)) accumulated into weak-ergodicity reports at dyadic horizons, and
// the scramble classification of visited states; plus one lattice scan.
// Trajectory-level Cesaro behavior and chain-level Dobrushin decay are thus
// reported side by side.
ZakharevichExperimentReport nonergodicity_experiment(const ZakharevichExperimentConfig& config);

}  // namespace qso
