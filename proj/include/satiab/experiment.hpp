#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "satiab/allocator.hpp"
#include "satiab/ratemodel.hpp"

namespace satiab {

/// Scenario as written in config files: decibel and engineering units.
/// Defaults reproduce the reference parameter table.
struct ScenarioInputs {
  double total_bandwidth_mhz = 40.0;
  double total_power_dbm = 40.0;
  double noise_density_dbm_hz = -174.0;
  double interference_density_dbm_hz = -174.0;
  double satellite_gain_dbi = 36.0;
  double bs_gain_dbi = 32.8;
  double ue_gain_dbi = 0.0;
  double carrier_frequency_ghz = 2.0;
  double aperture_radius_m = 1.5;
  double altitude_km = 600.0;
  double boresight_ue_deg = 0.0;
  double boresight_bs_deg = 0.8;
  double overlap_mhz = 0.0;
  double access_weight = 0.1;
  DuplexMode duplex = DuplexMode::FDD;

  bool operator==(const ScenarioInputs&) const = default;
};

// Converts to linear SI units and computes both channel gains.
ScenarioParams build_scenario(const ScenarioInputs& in);

struct PowerSweep {
  double min_dbm = 40.0;
  double max_dbm = 50.0;
  double step_db = 1.0;
  std::vector<double> altitudes_km{600.0, 1200.0};

  std::vector<double> points() const;
  bool operator==(const PowerSweep&) const = default;
};

struct OverlapSweep {
  int points = 11;  // w_o / W spaced evenly over [0, 1]
  std::vector<double> access_weights{0.05, 0.1, 0.2};

  std::vector<double> ratios() const;
  bool operator==(const OverlapSweep&) const = default;
};

using SweepSpec = std::variant<std::monostate, PowerSweep, OverlapSweep>;

struct SolverSet {
  bool exact = false;
  bool pso = false;
  bool oracle = false;

  bool any() const { return exact || pso || oracle; }
  bool operator==(const SolverSet&) const = default;
};

SolverSet parse_solver_list(std::string_view comma_separated);
std::string to_string(const SolverSet& s);

struct ExperimentConfig {
  ScenarioInputs scenario;
  PsoConfig pso;
  SweepSpec sweep;
  SolverSet solvers{true, true, false};
  int oracle_resolution = 200;
  std::string output_path = "out";
};

bool same_config(const ExperimentConfig& a, const ExperimentConfig& b);

std::vector<std::string> config_violations(const ExperimentConfig& cfg);

/// Parses a JSON config. Missing keys keep their defaults; when "solvers"
/// is absent the exact solver is enabled only for zero overlap.
/// Throws ParseError (malformed JSON, unknown key, wrong type) or
/// ValidationError (every violated invariant).
ExperimentConfig parse_config(std::string_view json_text, std::string_view source = "<string>");
ExperimentConfig load_config(const std::filesystem::path& path);

// Serializes every field; parse_config(write_config(c)) reproduces c.
std::string write_config(const ExperimentConfig& cfg);

struct SweepRow {
  std::string sweep = "none";  // none | power | overlap
  double x = 0.0;              // swept value (dBm or w_o/W)
  double total_power_dbm = 0.0;
  double overlap_ratio = 0.0;
  double access_weight = 0.0;
  DuplexMode duplex = DuplexMode::FDD;
  double altitude_km = 0.0;
  SolverKind solver = SolverKind::PSO;
  std::string status = "ok";  // or the solver's error message
  Allocation allocation;
  RateReport report;
  std::uint64_t iterations = 0;
  bool converged = true;
};

struct RunOptions {
  unsigned threads = 0;  // 0: hardware concurrency
};

// Selected solvers on the configured scenario.
std::vector<SweepRow> run_single(const ExperimentConfig& cfg, const RunOptions& opts = {});

// Grid oracle only, at cfg.oracle_resolution.
std::vector<SweepRow> run_oracle(const ExperimentConfig& cfg, const RunOptions& opts = {});

/// Power sweep with orthogonal spectrum: every power point x duplex mode x
/// altitude x selected solver. Rows ordered by power, mode, altitude, solver.
std::vector<SweepRow> run_power_sweep(const ExperimentConfig& cfg, const RunOptions& opts = {});

/// Overlap sweep with PSO over w_o / W for each access weight and duplex
/// mode; the exact solver is added at zero overlap as a cross-check.
std::vector<SweepRow> run_overlap_sweep(const ExperimentConfig& cfg, const RunOptions& opts = {});

// Scenario a row was computed under.
ScenarioParams row_scenario(const ExperimentConfig& cfg, const SweepRow& row);

// Re-validates and re-evaluates each successful row; returns one message per mismatch.
std::vector<std::string> audit_rows(const ExperimentConfig& cfg, const std::vector<SweepRow>& rows,
                                    double rel_tol = 1e-6);

const std::vector<std::string>& csv_columns();
std::string format_csv(const std::vector<SweepRow>& rows);
void write_csv(const std::vector<SweepRow>& rows, const std::filesystem::path& path);
std::vector<SweepRow> parse_csv(std::string_view text);
std::vector<SweepRow> read_csv(const std::filesystem::path& path);

std::string render_svg(const std::vector<SweepRow>& rows);
void emit_plot(const std::vector<SweepRow>& rows, const std::filesystem::path& path);

}  // namespace satiab
