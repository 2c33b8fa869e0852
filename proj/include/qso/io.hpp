#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "qso/cubic_matrix.hpp"
#include "qso/ergodicity.hpp"
#include "qso/operators.hpp"
#include "qso/simplex_point.hpp"
#include "qso/stochastic_matrix.hpp"
#include "qso/zakharevich.hpp"

// File formats.
//
// JSON inputs (parsers reject unknown top-level keys):
//   cubic tensor      {"m": 3, "p": [[[...], ...], ...]}   p[i][j] = fiber over k
//   stochastic matrix {"m": 3, "q": [[...], ...]}
//   simplex point     {"x": [...]}
//   chain             JSON Lines, one stochastic-matrix object per line
//
// Outputs (all numbers at 17 significant digits; writes go to a temporary
// file renamed into place on success, so failed runs leave no partial file):
//   trajectory         CSV  step,x_1,...,x_m
//   transition log     JSONL {"step": n, "Q": [[...], ...]}
//   Cesaro checkpoints CSV  k,avg_1,...,avg_m,delta_prev (first row's delta empty)
//   ergodicity reports JSONL {"i", "j", "dobrushin", "column_spread",
//                             "all_factors_scrambling", "min_factor_entry"}
//   scramble scan      CSV  x,y,z,scrambling,interior
//   experiment report  single JSON document

namespace qso::io {

CubicHeredityMatrix load_cubic(const std::filesystem::path& path);
StochasticMatrix load_stochastic(const std::filesystem::path& path);
SimplexPoint load_simplex(const std::filesystem::path& path);
std::vector<StochasticMatrix> load_chain(const std::filesystem::path& path);

void save_cubic(const std::filesystem::path& path, const CubicHeredityMatrix& p);
void save_stochastic(const std::filesystem::path& path, const StochasticMatrix& q);
void save_simplex(const std::filesystem::path& path, const SimplexPoint& x);

void write_trajectory_csv(const std::filesystem::path& path, const Trajectory& trajectory);
void write_transition_log_jsonl(const std::filesystem::path& path, const Trajectory& trajectory);
void write_cesaro_csv(const std::filesystem::path& path, const CesaroEstimate& estimate);
void write_reports_jsonl(const std::filesystem::path& path,
                         std::span<const ErgodicityReport> reports);
void write_scan_csv(const std::filesystem::path& path, const ScrambleScanReport& report);
void write_experiment_json(const std::filesystem::path& path,
                           const ZakharevichExperimentReport& report);

// Serialization backing write_experiment_json; exposed for tests.
std::string render_experiment_json(const ZakharevichExperimentReport& report);

// Writes `content` to path atomically (temp file + rename). Throws IoError.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

}  // namespace qso::io
