// qso — command-line front-end for the quadratic stochastic operator
// laboratory. Subcommands: simulate, cesaro, chain, scramble-scan,
// zakharevich. Exit codes: 0 success, 2 validation/configuration failure,
// 3 I/O failure.

#include <chrono>
#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qso/chain_schedule.hpp"
#include "qso/cubic_matrix.hpp"
#include "qso/ergodicity.hpp"
#include "qso/error.hpp"
#include "qso/io.hpp"
#include "qso/numeric_format.hpp"
#include "qso/operators.hpp"
#include "qso/random.hpp"
#include "qso/zakharevich.hpp"

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::vector<double> parse_number_list(const std::string& text) {
  std::vector<double> values;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = text.find(',', pos);
    const std::string token =
        text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    try {
      std::size_t consumed = 0;
      values.push_back(std::stod(token, &consumed));
      if (consumed != token.size()) throw std::invalid_argument(token);
    } catch (const std::exception&) {
      throw qso::Error(qso::ErrorCode::ParseError,
                       "cannot parse \"" + token + "\" as a number in \"" + text + "\"");
    }
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return values;
}

std::string point_text(const qso::SimplexPoint& x) {
  std::string out = "(";
  for (std::size_t c = 0; c < x.dim(); ++c) {
    if (c != 0) out += ", ";
    out += qso::format_full(x[c]);
  }
  out += ")";
  return out;
}

// The CLI caps m: desk-scale experiments only, and O(m^3) input tensors stay
// small. The library itself has no such bound.
constexpr std::size_t kMaxCliDimension = 64;

struct OperatorInputs {
  std::string cubic_path;
  std::string builtin;
  std::string pi_path;
  std::string x0_text;
  std::uint64_t seed = 0;
};

void add_operator_options(CLI::App* cmd, OperatorInputs& in) {
  auto* cubic = cmd->add_option("--cubic", in.cubic_path,
                                "JSON file with the heredity tensor {\"m\":…, \"p\":…}");
  auto* builtin =
      cmd->add_option("--builtin", in.builtin, "use a bundled operator (choices: zakharevich)");
  builtin->excludes(cubic);
  cubic->excludes(builtin);
  cmd->add_option("--pi", in.pi_path,
                  "JSON file with the interbreeding matrix {\"m\":…, \"q\":…}; enables "
                  "markov mode");
  cmd->add_option("--x0", in.x0_text, "initial point as comma-separated coordinates");
  cmd->add_option("--seed", in.seed, "seed for the random initial point when --x0 is omitted")
      ->capture_default_str();
}

qso::CubicHeredityMatrix resolve_tensor(const OperatorInputs& in) {
  if (!in.builtin.empty()) {
    if (in.builtin != "zakharevich") {
      throw qso::Error(qso::ErrorCode::ParseError,
                       "unknown builtin operator \"" + in.builtin + "\"");
    }
    return qso::zakharevich_cubic();
  }
  if (in.cubic_path.empty()) {
    throw qso::Error(qso::ErrorCode::ParseError, "either --cubic or --builtin is required");
  }
  qso::CubicHeredityMatrix tensor = qso::io::load_cubic(in.cubic_path);
  if (tensor.dim() > kMaxCliDimension) {
    throw qso::Error(qso::ErrorCode::InvalidDimension,
                     "m = " + std::to_string(tensor.dim()) + " exceeds the CLI bound " +
                         std::to_string(kMaxCliDimension));
  }
  return tensor;
}

qso::SimplexPoint resolve_x0(const OperatorInputs& in, std::size_t m) {
  if (in.x0_text.empty()) {
    return qso::random_simplex(m, in.seed);
  }
  return qso::SimplexPoint::validated(parse_number_list(in.x0_text));
}

std::optional<qso::StochasticMatrix> resolve_pi(const OperatorInputs& in) {
  if (in.pi_path.empty()) return std::nullopt;
  return qso::io::load_stochastic(in.pi_path);
}

int run_simulate(const OperatorInputs& in, std::uint64_t steps, const std::string& out_path,
                 const std::string& format) {
  const Clock::time_point start = Clock::now();
  const qso::CubicHeredityMatrix tensor = resolve_tensor(in);
  const std::optional<qso::StochasticMatrix> pi = resolve_pi(in);
  const qso::SimplexPoint x0 = resolve_x0(in, tensor.dim());

  const qso::ChainSchedule schedule = qso::ChainSchedule::constant({tensor, pi});
  const qso::EvolutionMode mode =
      pi ? qso::EvolutionMode::kMarkov : qso::EvolutionMode::kBernoulli;
  const bool record = format == "jsonl";
  const qso::Trajectory trajectory = qso::run_trajectory(schedule, x0, steps, mode, record);

  if (record) {
    qso::io::write_transition_log_jsonl(out_path, trajectory);
  } else {
    qso::io::write_trajectory_csv(out_path, trajectory);
  }
  std::cout << "simulate: mode=" << (pi ? "markov" : "bernoulli") << " steps=" << steps
            << " final=" << point_text(trajectory.points.back())
            << " wall=" << qso::format_full(seconds_since(start)) << "s out=" << out_path
            << "\n";
  return 0;
}

int run_cesaro(const OperatorInputs& in, std::uint64_t max_k, double tolerance,
               const std::string& lane_name, const std::string& out_path) {
  const Clock::time_point start = Clock::now();
  const qso::CubicHeredityMatrix tensor = resolve_tensor(in);
  const std::optional<qso::StochasticMatrix> pi = resolve_pi(in);
  const qso::SimplexPoint x0 = resolve_x0(in, tensor.dim());

  qso::CesaroOptions options;
  if (lane_name == "extended") {
    options.lane = qso::NumericLane::kExtended;
  } else if (lane_name != "f64") {
    throw qso::Error(qso::ErrorCode::ParseError,
                     "unknown numeric lane \"" + lane_name + "\" (choices: f64, extended)");
  }

  const qso::ChainSchedule schedule = qso::ChainSchedule::constant({tensor, pi});
  const qso::EvolutionMode mode =
      pi ? qso::EvolutionMode::kMarkov : qso::EvolutionMode::kBernoulli;
  const qso::CesaroEstimate estimate =
      qso::cesaro_estimate(schedule, x0, max_k, mode, tolerance, options);

  qso::io::write_cesaro_csv(out_path, estimate);
  std::cout << "cesaro: x0=" << point_text(x0) << " k=" << estimate.checkpoints.back().k
            << " converged=" << (estimate.converged ? "true" : "false") << " last_delta="
            << (estimate.oscillation.empty()
                    ? std::string("n/a")
                    : qso::format_full(estimate.oscillation.back()))
            << " wall=" << qso::format_full(seconds_since(start)) << "s out=" << out_path
            << "\n";
  return 0;
}

int run_chain(const std::string& chain_path, std::size_t start_index,
              const std::string& horizons_text, const std::string& out_path) {
  const Clock::time_point start = Clock::now();
  const std::vector<qso::StochasticMatrix> chain = qso::io::load_chain(chain_path);
  if (chain.empty()) {
    throw qso::Error(qso::ErrorCode::EmptyVector, chain_path + " holds no matrices");
  }
  if (chain.front().dim() > kMaxCliDimension) {
    throw qso::Error(qso::ErrorCode::InvalidDimension,
                     "m = " + std::to_string(chain.front().dim()) + " exceeds the CLI bound " +
                         std::to_string(kMaxCliDimension));
  }

  std::vector<std::size_t> horizons;
  if (!horizons_text.empty()) {
    for (const double v : parse_number_list(horizons_text)) {
      if (v < 1.0 || v != static_cast<double>(static_cast<std::size_t>(v))) {
        throw qso::Error(qso::ErrorCode::ParseError,
                         "horizons must be positive integers, got " + qso::format_full(v));
      }
      horizons.push_back(static_cast<std::size_t>(v));
    }
  } else {
    // Default: dyadic horizons after start_index, plus the chain end.
    for (std::size_t h = 1; start_index + h <= chain.size(); h *= 2) {
      horizons.push_back(start_index + h);
    }
    if (horizons.empty() || horizons.back() != chain.size()) {
      horizons.push_back(chain.size());
    }
  }

  const std::vector<qso::ErgodicityReport> reports =
      qso::weak_ergodicity_diagnostic(chain, start_index, horizons);
  qso::io::write_reports_jsonl(out_path, reports);
  std::cout << "chain: factors=" << chain.size() << " start=" << start_index
            << " horizons=" << reports.size() << " final_dobrushin="
            << qso::format_full(reports.back().dobrushin)
            << " wall=" << qso::format_full(seconds_since(start)) << "s out=" << out_path
            << "\n";
  return 0;
}

int run_scramble_scan(std::size_t grid, double margin, double eta, const std::string& out_path) {
  const Clock::time_point start = Clock::now();
  const qso::ScrambleScanReport report = qso::scramble_scan(grid, margin, eta);
  qso::io::write_scan_csv(out_path, report);
  std::cout << "scramble-scan: points=" << report.points.size()
            << " interior_scrambling=" << report.interior_scrambling
            << " interior_non_scrambling=" << report.interior_non_scrambling
            << " boundary_scrambling=" << report.boundary_scrambling
            << " boundary_non_scrambling=" << report.boundary_non_scrambling
            << " wall=" << qso::format_full(seconds_since(start)) << "s out=" << out_path
            << "\n";
  return 0;
}

int run_zakharevich(std::uint64_t max_k, double tolerance, std::size_t grid, double margin,
                    const std::vector<std::string>& x0_texts, const std::string& out_path) {
  const Clock::time_point start = Clock::now();
  qso::ZakharevichExperimentConfig config = qso::ZakharevichExperimentConfig::defaults();
  config.max_steps = max_k;
  config.cesaro_tolerance = tolerance;
  config.scramble_scan_grid = grid;
  config.interior_margin = margin;
  if (!x0_texts.empty()) {
    config.initial_points.clear();
    for (const std::string& text : x0_texts) {
      config.initial_points.push_back(qso::SimplexPoint::validated(parse_number_list(text)));
    }
  }

  const qso::ZakharevichExperimentReport report = qso::nonergodicity_experiment(config);
  qso::io::write_experiment_json(out_path, report);
  for (const qso::PointExperiment& run : report.runs) {
    std::cout << "zakharevich: x0=" << point_text(run.initial_point)
              << " cesaro_converged=" << (run.cesaro.converged ? "true" : "false")
              << " last_delta="
              << (run.cesaro.oscillation.empty()
                      ? std::string("n/a")
                      : qso::format_full(run.cesaro.oscillation.back()))
              << " chain_dobrushin=" << qso::format_full(run.chain_reports.back().dobrushin)
              << " visited_non_scrambling=" << run.visited.non_scrambling << "\n";
  }
  std::cout << "zakharevich: wall=" << qso::format_full(seconds_since(start))
            << "s out=" << out_path << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"qso — a numerical laboratory for quadratic stochastic operators of heredity"};
  app.require_subcommand(1);

  OperatorInputs sim_in;
  std::uint64_t sim_steps = 100;
  std::string sim_out;
  std::string sim_format = "csv";
  CLI::App* simulate = app.add_subcommand("simulate", "iterate the operator and dump the orbit");
  add_operator_options(simulate, sim_in);
  simulate->add_option("--steps", sim_steps, "number of generations")->capture_default_str();
  simulate->add_option("--out", sim_out, "output file")->required();
  simulate
      ->add_option("--format", sim_format,
                   "csv = trajectory rows; jsonl = one-step transition matrices")
      ->check(CLI::IsMember({"csv", "jsonl"}))
      ->capture_default_str();

  OperatorInputs ces_in;
  std::uint64_t ces_max_k = 4096;
  double ces_tolerance = 0.01;
  std::string ces_lane = "f64";
  std::string ces_out;
  CLI::App* cesaro = app.add_subcommand("cesaro", "running Cesaro averages at dyadic checkpoints");
  add_operator_options(cesaro, ces_in);
  cesaro->add_option("--max-k", ces_max_k, "checkpoint horizon (effective: power of two <= this)")
      ->capture_default_str();
  cesaro->add_option("--tolerance", ces_tolerance, "three-window convergence threshold")
      ->capture_default_str();
  cesaro
      ->add_option("--lane", ces_lane,
                   "numeric lane: f64, or extended (extended-exponent scalars for "
                   "long near-boundary orbits)")
      ->check(CLI::IsMember({"f64", "extended"}))
      ->capture_default_str();
  cesaro->add_option("--out", ces_out, "output CSV file")->required();

  std::string chain_path;
  std::size_t chain_start = 0;
  std::string chain_horizons;
  std::string chain_out;
  CLI::App* chain = app.add_subcommand("chain", "weak-ergodicity diagnostics for a matrix chain");
  chain->add_option("--chain", chain_path, "JSONL file, one stochastic matrix per line")
      ->required();
  chain->add_option("--start", chain_start, "product start index i")->capture_default_str();
  chain->add_option("--horizons", chain_horizons,
                    "comma-separated end indices j (default: dyadic up to chain length)");
  chain->add_option("--out", chain_out, "output JSONL file")->required();

  std::size_t scan_grid = 200;
  double scan_margin = 0.01;
  double scan_eta = 0.0;
  std::string scan_out;
  CLI::App* scan = app.add_subcommand(
      "scramble-scan", "classify the induced Zakharevich matrices over a simplex lattice");
  scan->add_option("--grid", scan_grid, "lattice resolution")->capture_default_str();
  scan->add_option("--margin", scan_margin, "interior classification margin")
      ->capture_default_str();
  scan->add_option("--eta", scan_eta, "positivity threshold for \"numerically scrambling\"")
      ->capture_default_str();
  scan->add_option("--out", scan_out, "output CSV file")->required();

  std::uint64_t zak_max_k = std::uint64_t{1} << 20;
  double zak_tolerance = 0.01;
  std::size_t zak_grid = 200;
  double zak_margin = 0.01;
  std::vector<std::string> zak_x0;
  std::string zak_out;
  CLI::App* zakharevich = app.add_subcommand(
      "zakharevich", "the full non-ergodicity experiment for the built-in counterexample");
  zakharevich->add_option("--max-k", zak_max_k, "Cesaro horizon")->capture_default_str();
  zakharevich->add_option("--tolerance", zak_tolerance, "Cesaro convergence threshold")
      ->capture_default_str();
  zakharevich->add_option("--grid", zak_grid, "scramble-scan resolution")->capture_default_str();
  zakharevich->add_option("--margin", zak_margin, "interior classification margin")
      ->capture_default_str();
  zakharevich->add_option("--x0", zak_x0,
                          "initial point(s), comma-separated coordinates; replaces the "
                          "default three starting points");
  zakharevich->add_option("--out", zak_out, "output JSON file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (simulate->parsed()) return run_simulate(sim_in, sim_steps, sim_out, sim_format);
    if (cesaro->parsed()) return run_cesaro(ces_in, ces_max_k, ces_tolerance, ces_lane, ces_out);
    if (chain->parsed()) return run_chain(chain_path, chain_start, chain_horizons, chain_out);
    if (scan->parsed()) return run_scramble_scan(scan_grid, scan_margin, scan_eta, scan_out);
    if (zakharevich->parsed())
      return run_zakharevich(zak_max_k, zak_tolerance, zak_grid, zak_margin, zak_x0, zak_out);
  } catch (const qso::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.code() == qso::ErrorCode::IoError ? 3 : 2;
  } catch (const std::exception& e) {
    std::cerr << "unexpected error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
