// sat-iab: run single solves and parameter sweeps for the satellite
// integrated access/backhaul allocator.
//
// Exit codes: 0 success, 1 validation or parse error, 2 I/O error.

#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "satiab/errors.hpp"
#include "satiab/experiment.hpp"

namespace fs = std::filesystem;
using namespace satiab;

namespace {

struct CommonFlags {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::string out_dir;
  std::string solvers;
  unsigned threads = 0;
};

void add_common(CLI::App* cmd, CommonFlags& f) {
  cmd->add_option("--config", f.config_path, "JSON config file (defaults apply when omitted)");
  cmd->add_option("--seed", f.seed, "PSO seed (overrides SAT_IAB_SEED and the config)");
  cmd->add_option("--out", f.out_dir, "Output directory (default: config output_path)");
  cmd->add_option("--solvers", f.solvers, "Comma-separated subset of exact,pso,oracle");
  cmd->add_option("--threads", f.threads, "Worker threads for sweep points (0 = all cores)");
}

std::uint64_t parse_seed(const char* text) {
  char* end = nullptr;
  errno = 0;
  const unsigned long long v = std::strtoull(text, &end, 10);
  if (errno != 0 || end == text || *end != '\0' || text[0] == '-')
    throw ValidationError({std::string("SAT_IAB_SEED is not an unsigned 64-bit integer: ") + text});
  return v;
}

ExperimentConfig resolve_config(const CommonFlags& f) {
  ExperimentConfig cfg = f.config_path.empty() ? parse_config("{}", "<defaults>") : load_config(f.config_path);
  if (const char* env = std::getenv("SAT_IAB_SEED"); env && *env) cfg.pso.rng_seed = parse_seed(env);
  if (f.seed) cfg.pso.rng_seed = *f.seed;
  if (!f.solvers.empty()) cfg.solvers = parse_solver_list(f.solvers);
  if (!f.out_dir.empty()) cfg.output_path = f.out_dir;
  auto problems = config_violations(cfg);
  if (!problems.empty()) throw ValidationError(std::move(problems));
  return cfg;
}

fs::path prepare_out(const ExperimentConfig& cfg) {
  const fs::path dir = cfg.output_path;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory " + dir.string() + ": " + ec.message());
  return dir;
}

void print_rows(const std::vector<SweepRow>& rows) {
  for (const auto& r : rows) {
    if (r.status != "ok") {
      std::printf("%-7s %-6s x=%-8g %s  ERROR: %s\n", r.sweep.c_str(),
                  std::string(to_string(r.solver)).c_str(), r.x,
                  std::string(to_string(r.duplex)).c_str(), r.status.c_str());
      continue;
    }
    std::printf("%-7s %-6s x=%-8g %s alt=%gkm eps=%g  zeta=%.4f Mbps  R_A=%.4f  R_B=%.4f  R=%.4f Mbps\n",
                r.sweep.c_str(), std::string(to_string(r.solver)).c_str(), r.x,
                std::string(to_string(r.duplex)).c_str(), r.altitude_km, r.access_weight,
                r.report.maxmin_level / 1e6, r.report.rate_access / 1e6,
                r.report.rate_backhaul / 1e6, r.report.throughput / 1e6);
  }
}

void write_outputs(const std::vector<SweepRow>& rows, const fs::path& dir, const std::string& stem,
                   bool plot) {
  write_csv(rows, dir / (stem + ".csv"));
  std::cout << "wrote " << (dir / (stem + ".csv")).string() << "\n";
  if (plot) {
    emit_plot(rows, dir / (stem + ".svg"));
    std::cout << "wrote " << (dir / (stem + ".svg")).string() << "\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Power and bandwidth allocation for satellite integrated access and backhaul"};
  app.require_subcommand(1);

  CommonFlags solve_f, power_f, overlap_f, oracle_f, audit_f;
  auto* solve = app.add_subcommand("solve", "Solve the configured scenario with the selected solvers");
  add_common(solve, solve_f);
  auto* power = app.add_subcommand("sweep-power", "Throughput vs total transmit power (zero overlap)");
  add_common(power, power_f);
  auto* overlap = app.add_subcommand("sweep-overlap", "Throughput vs normalized bandwidth overlap");
  add_common(overlap, overlap_f);
  auto* oracle = app.add_subcommand("oracle", "Brute-force grid search on the configured scenario");
  add_common(oracle, oracle_f);
  int resolution = 0;
  oracle->add_option("--resolution", resolution, "Grid points per axis (>= 10)");
  auto* audit = app.add_subcommand("audit", "Re-validate and re-evaluate every row of a result CSV");
  add_common(audit, audit_f);
  std::string audit_csv;
  audit->add_option("--csv", audit_csv, "CSV produced by solve/sweep/oracle")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (solve->parsed()) {
      const auto cfg = resolve_config(solve_f);
      const auto rows = run_single(cfg, {solve_f.threads});
      print_rows(rows);
      write_outputs(rows, prepare_out(cfg), "solve", false);
    } else if (power->parsed()) {
      const auto cfg = resolve_config(power_f);
      const auto rows = run_power_sweep(cfg, {power_f.threads});
      print_rows(rows);
      write_outputs(rows, prepare_out(cfg), "sweep_power", true);
    } else if (overlap->parsed()) {
      const auto cfg = resolve_config(overlap_f);
      const auto rows = run_overlap_sweep(cfg, {overlap_f.threads});
      print_rows(rows);
      write_outputs(rows, prepare_out(cfg), "sweep_overlap", true);
    } else if (oracle->parsed()) {
      auto cfg = resolve_config(oracle_f);
      if (resolution != 0) cfg.oracle_resolution = resolution;
      const auto rows = run_oracle(cfg, {oracle_f.threads});
      print_rows(rows);
      write_outputs(rows, prepare_out(cfg), "oracle", false);
    } else if (audit->parsed()) {
      const auto cfg = resolve_config(audit_f);
      const auto rows = read_csv(audit_csv);
      const auto problems = audit_rows(cfg, rows);
      for (const auto& p : problems) std::cerr << p << "\n";
      std::cout << "audited " << rows.size() << " rows, " << problems.size() << " problems\n";
      return problems.empty() ? 0 : 1;
    }
  } catch (const IoError& e) {
    std::cerr << "I/O error: " << e.what() << "\n";
    return 2;
  } catch (const fs::filesystem_error& e) {
    std::cerr << "I/O error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
