#include "qso/io.hpp"

#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "qso/detail/cesaro_loop.hpp"
#include "qso/error.hpp"
#include "qso/numeric_format.hpp"

namespace qso::io {
namespace {

using nlohmann::json;

json parse_document(const std::filesystem::path& path, std::istream& in) {
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::ParseError, path.string() + ": " + e.what());
  }
  return doc;
}

void check_keys(const std::filesystem::path& path, const json& doc,
                std::initializer_list<const char*> allowed_keys) {
  if (!doc.is_object()) {
    throw Error(ErrorCode::ParseError, path.string() + ": top level must be a JSON object");
  }
  for (const auto& item : doc.items()) {
    bool known = false;
    for (const char* key : allowed_keys) {
      if (item.key() == key) {
        known = true;
        break;
      }
    }
    if (!known) {
      throw Error(ErrorCode::ParseError,
                  path.string() + ": unknown top-level key \"" + item.key() + "\"");
    }
  }
  for (const char* key : allowed_keys) {
    if (!doc.contains(key)) {
      throw Error(ErrorCode::ParseError,
                  path.string() + ": missing required key \"" + key + "\"");
    }
  }
}

std::size_t read_dimension(const std::filesystem::path& path, const json& doc) {
  const json& m = doc.at("m");
  if (!m.is_number_unsigned() || m.get<std::uint64_t>() == 0) {
    throw Error(ErrorCode::ParseError, path.string() + ": \"m\" must be a positive integer");
  }
  return m.get<std::size_t>();
}

double read_number(const std::filesystem::path& path, const json& value, const char* where) {
  if (!value.is_number()) {
    throw Error(ErrorCode::ParseError,
                path.string() + ": " + where + " must be a number");
  }
  return value.get<double>();
}

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorCode::IoError, "cannot open " + path.string() + " for reading");
  }
  return in;
}

StochasticMatrix stochastic_from_json(const std::filesystem::path& path, const json& doc) {
  check_keys(path, doc, {"m", "q"});
  const std::size_t m = read_dimension(path, doc);
  const json& rows = doc.at("q");
  if (!rows.is_array() || rows.size() != m) {
    throw Error(ErrorCode::DimensionMismatch,
                path.string() + ": \"q\" must hold " + std::to_string(m) + " rows");
  }
  std::vector<double> entries;
  entries.reserve(m * m);
  for (std::size_t i = 0; i < m; ++i) {
    const json& row = rows[i];
    if (!row.is_array() || row.size() != m) {
      throw Error(ErrorCode::DimensionMismatch,
                  path.string() + ": row " + std::to_string(i + 1) + " must hold " +
                      std::to_string(m) + " entries");
    }
    for (std::size_t j = 0; j < m; ++j) {
      entries.push_back(read_number(path, row[j], "matrix entry"));
    }
  }
  return StochasticMatrix::validated(m, std::move(entries));
}

void append_number_array(std::string& out, std::span<const double> values) {
  out += '[';
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i != 0) out += ',';
    out += format_full(values[i]);
  }
  out += ']';
}

void append_matrix(std::string& out, const StochasticMatrix& q) {
  out += '[';
  for (std::size_t i = 0; i < q.dim(); ++i) {
    if (i != 0) out += ',';
    append_number_array(out, q.row(i));
  }
  out += ']';
}

const char* bool_text(bool b) { return b ? "true" : "false"; }

void append_report(std::string& out, const ErgodicityReport& report) {
  out += "{\"i\":" + std::to_string(report.start_index);
  out += ",\"j\":" + std::to_string(report.end_index);
  out += ",\"dobrushin\":" + format_full(report.dobrushin);
  out += ",\"column_spread\":" + format_full(report.column_spread);
  out += std::string(",\"all_factors_scrambling\":") + bool_text(report.all_factors_scrambling);
  out += ",\"min_factor_entry\":" + format_full(report.min_factor_entry);
  out += '}';
}

void append_cesaro(std::string& out, const CesaroEstimate& estimate) {
  out += "{\"tolerance\":" + format_full(estimate.tolerance);
  out += std::string(",\"converged\":") + bool_text(estimate.converged);
  out += ",\"checkpoints\":[";
  for (std::size_t t = 0; t < estimate.checkpoints.size(); ++t) {
    if (t != 0) out += ',';
    out += "{\"k\":" + std::to_string(estimate.checkpoints[t].k) + ",\"average\":";
    append_number_array(out, estimate.checkpoints[t].average.coords());
    out += '}';
  }
  out += "],\"oscillation\":";
  append_number_array(out, estimate.oscillation);
  out += '}';
}

}  // namespace

CubicHeredityMatrix load_cubic(const std::filesystem::path& path) {
  std::ifstream in = open_input(path);
  const json doc = parse_document(path, in);
  check_keys(path, doc, {"m", "p"});
  const std::size_t m = read_dimension(path, doc);
  const json& outer = doc.at("p");
  if (!outer.is_array() || outer.size() != m) {
    throw Error(ErrorCode::DimensionMismatch,
                path.string() + ": \"p\" must hold " + std::to_string(m) + " blocks");
  }
  std::vector<double> entries;
  entries.reserve(m * m * m);
  for (std::size_t i = 0; i < m; ++i) {
    const json& middle = outer[i];
    if (!middle.is_array() || middle.size() != m) {
      throw Error(ErrorCode::DimensionMismatch,
                  path.string() + ": \"p\"[" + std::to_string(i) + "] must hold " +
                      std::to_string(m) + " fibers");
    }
    for (std::size_t j = 0; j < m; ++j) {
      const json& fiber = middle[j];
      if (!fiber.is_array() || fiber.size() != m) {
        throw Error(ErrorCode::DimensionMismatch,
                    path.string() + ": fiber p[" + std::to_string(i) + "][" +
                        std::to_string(j) + "] must hold " + std::to_string(m) + " entries");
      }
      for (std::size_t k = 0; k < m; ++k) {
        entries.push_back(read_number(path, fiber[k], "tensor entry"));
      }
    }
  }
  return CubicHeredityMatrix::validated(m, std::move(entries));
}

StochasticMatrix load_stochastic(const std::filesystem::path& path) {
  std::ifstream in = open_input(path);
  const json doc = parse_document(path, in);
  return stochastic_from_json(path, doc);
}

SimplexPoint load_simplex(const std::filesystem::path& path) {
  std::ifstream in = open_input(path);
  const json doc = parse_document(path, in);
  check_keys(path, doc, {"x"});
  const json& coords = doc.at("x");
  if (!coords.is_array()) {
    throw Error(ErrorCode::ParseError, path.string() + ": \"x\" must be an array");
  }
  std::vector<double> values;
  values.reserve(coords.size());
  for (const json& v : coords) {
    values.push_back(read_number(path, v, "coordinate"));
  }
  return SimplexPoint::validated(std::move(values));
}

std::vector<StochasticMatrix> load_chain(const std::filesystem::path& path) {
  std::ifstream in = open_input(path);
  std::vector<StochasticMatrix> chain;
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    json doc;
    try {
      doc = json::parse(line);
    } catch (const json::parse_error& e) {
      throw Error(ErrorCode::ParseError,
                  path.string() + ":" + std::to_string(line_number) + ": " + e.what());
    }
    StochasticMatrix q = stochastic_from_json(path, doc);
    if (!chain.empty() && q.dim() != chain.front().dim()) {
      throw Error(ErrorCode::DimensionMismatch,
                  path.string() + ":" + std::to_string(line_number) + ": matrix has dimension " +
                      std::to_string(q.dim()) + ", chain uses " +
                      std::to_string(chain.front().dim()));
    }
    chain.push_back(std::move(q));
  }
  return chain;
}

void save_cubic(const std::filesystem::path& path, const CubicHeredityMatrix& p) {
  std::string out = "{\"m\":" + std::to_string(p.dim()) + ",\"p\":[";
  for (std::size_t i = 0; i < p.dim(); ++i) {
    if (i != 0) out += ',';
    out += '[';
    for (std::size_t j = 0; j < p.dim(); ++j) {
      if (j != 0) out += ',';
      append_number_array(out, p.fiber(i, j));
    }
    out += ']';
  }
  out += "]}\n";
  write_file_atomic(path, out);
}

void save_stochastic(const std::filesystem::path& path, const StochasticMatrix& q) {
  std::string out = "{\"m\":" + std::to_string(q.dim()) + ",\"q\":";
  append_matrix(out, q);
  out += "}\n";
  write_file_atomic(path, out);
}

void save_simplex(const std::filesystem::path& path, const SimplexPoint& x) {
  std::string out = "{\"x\":";
  append_number_array(out, x.coords());
  out += "}\n";
  write_file_atomic(path, out);
}

void write_trajectory_csv(const std::filesystem::path& path, const Trajectory& trajectory) {
  const std::size_t m = trajectory.points.empty() ? 0 : trajectory.points.front().dim();
  std::string out = "step";
  for (std::size_t c = 0; c < m; ++c) out += ",x_" + std::to_string(c + 1);
  out += '\n';
  for (std::size_t n = 0; n < trajectory.points.size(); ++n) {
    out += std::to_string(n);
    for (std::size_t c = 0; c < m; ++c) {
      out += ',';
      out += format_full(trajectory.points[n][c]);
    }
    out += '\n';
  }
  write_file_atomic(path, out);
}

void write_transition_log_jsonl(const std::filesystem::path& path, const Trajectory& trajectory) {
  if (!trajectory.transition_log) {
    throw Error(ErrorCode::EmptyVector, "trajectory carries no transition log");
  }
  std::string out;
  for (std::size_t n = 0; n < trajectory.transition_log->size(); ++n) {
    out += "{\"step\":" + std::to_string(n) + ",\"Q\":";
    append_matrix(out, (*trajectory.transition_log)[n]);
    out += "}\n";
  }
  write_file_atomic(path, out);
}

void write_cesaro_csv(const std::filesystem::path& path, const CesaroEstimate& estimate) {
  const std::size_t m =
      estimate.checkpoints.empty() ? 0 : estimate.checkpoints.front().average.dim();
  std::string out = "k";
  for (std::size_t c = 0; c < m; ++c) out += ",avg_" + std::to_string(c + 1);
  out += ",delta_prev\n";
  for (std::size_t t = 0; t < estimate.checkpoints.size(); ++t) {
    out += std::to_string(estimate.checkpoints[t].k);
    for (std::size_t c = 0; c < m; ++c) {
      out += ',';
      out += format_full(estimate.checkpoints[t].average[c]);
    }
    out += ',';
    if (t > 0) out += format_full(estimate.oscillation[t - 1]);
    out += '\n';
  }
  write_file_atomic(path, out);
}

void write_reports_jsonl(const std::filesystem::path& path,
                         std::span<const ErgodicityReport> reports) {
  std::string out;
  for (const ErgodicityReport& report : reports) {
    append_report(out, report);
    out += '\n';
  }
  write_file_atomic(path, out);
}

void write_scan_csv(const std::filesystem::path& path, const ScrambleScanReport& report) {
  std::string out = "x,y,z,scrambling,interior\n";
  for (const ScanPoint& p : report.points) {
    out += format_full(p.x);
    out += ',';
    out += format_full(p.y);
    out += ',';
    out += format_full(p.z);
    out += ',';
    out += bool_text(p.scrambling);
    out += ',';
    out += bool_text(p.interior);
    out += '\n';
  }
  write_file_atomic(path, out);
}

std::string render_experiment_json(const ZakharevichExperimentReport& report) {
  std::string out = "{\n\"operator\":\"zakharevich\",\n";
  out += "\"config\":{\"max_steps\":" + std::to_string(report.config.max_steps);
  out += ",\"effective_horizon\":" +
         std::to_string(detail::dyadic_floor(report.config.max_steps));
  out += ",\"cesaro_tolerance\":" + format_full(report.config.cesaro_tolerance);
  out += ",\"scramble_scan_grid\":" + std::to_string(report.config.scramble_scan_grid);
  out += ",\"interior_margin\":" + format_full(report.config.interior_margin);
  out += ",\"numeric_lane\":\"extended\"";
  out += ",\"initial_points\":[";
  for (std::size_t r = 0; r < report.config.initial_points.size(); ++r) {
    if (r != 0) out += ',';
    append_number_array(out, report.config.initial_points[r].coords());
  }
  out += "]},\n\"runs\":[\n";
  for (std::size_t r = 0; r < report.runs.size(); ++r) {
    const PointExperiment& run = report.runs[r];
    if (r != 0) out += ",\n";
    out += "{\"initial_point\":";
    append_number_array(out, run.initial_point.coords());
    out += ",\n\"cesaro\":";
    append_cesaro(out, run.cesaro);
    out += ",\n\"chain\":[";
    for (std::size_t t = 0; t < run.chain_reports.size(); ++t) {
      if (t != 0) out += ',';
      append_report(out, run.chain_reports[t]);
    }
    out += "],\n\"visited\":{";
    out += "\"scrambling\":" + std::to_string(run.visited.scrambling);
    out += ",\"non_scrambling\":" + std::to_string(run.visited.non_scrambling);
    out += ",\"interior\":" + std::to_string(run.visited.interior);
    out += ",\"boundary\":" + std::to_string(run.visited.boundary);
    out += ",\"min_coordinate\":" + format_full(run.visited.min_coordinate);
    out += "}}";
  }
  out += "\n],\n\"scan\":{";
  out += "\"grid\":" + std::to_string(report.scan.grid);
  out += ",\"interior_margin\":" + format_full(report.scan.interior_margin);
  out += ",\"interior_scrambling\":" + std::to_string(report.scan.interior_scrambling);
  out += ",\"interior_non_scrambling\":" + std::to_string(report.scan.interior_non_scrambling);
  out += ",\"boundary_scrambling\":" + std::to_string(report.scan.boundary_scrambling);
  out += ",\"boundary_non_scrambling\":" + std::to_string(report.scan.boundary_non_scrambling);
  out += "}\n}\n";
  return out;
}

void write_experiment_json(const std::filesystem::path& path,
                           const ZakharevichExperimentReport& report) {
  write_file_atomic(path, render_experiment_json(report));
}

void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) {
      throw Error(ErrorCode::IoError, "cannot open " + tmp.string() + " for writing");
    }
    out << content;
    out.flush();
    if (!out) {
      std::error_code ec;
      std::filesystem::remove(tmp, ec);
      throw Error(ErrorCode::IoError, "write to " + tmp.string() + " failed");
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::error_code ignore;
    std::filesystem::remove(tmp, ignore);
    throw Error(ErrorCode::IoError,
                "cannot move " + tmp.string() + " to " + path.string() + ": " + ec.message());
  }
}

}  // namespace qso::io
