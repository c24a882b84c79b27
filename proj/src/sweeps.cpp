#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <functional>
#include <thread>

#include "satiab/errors.hpp"
#include "satiab/experiment.hpp"

namespace satiab {

namespace {

// A row to compute: its identifying fields are filled, results are not.
struct Task {
  SweepRow row;
  ScenarioInputs inputs;
};

SweepRow solve_task(const ExperimentConfig& cfg, const Task& task) {
  SweepRow row = task.row;
  try {
    const ScenarioParams scn = build_scenario(task.inputs);
    SolveResult res;
    switch (row.solver) {
      case SolverKind::ExactOrthogonal:
        res = solve_orthogonal(scn);
        break;
      case SolverKind::PSO:
        res = pso_solve(scn, cfg.pso);
        break;
      case SolverKind::GridOracle:
        res = grid_oracle(scn, cfg.oracle_resolution);
        break;
    }
    row.allocation = res.allocation;
    row.report = res.report;
    row.iterations = res.iterations_used;
    row.converged = res.converged;
  } catch (const std::exception& e) {
    row.status = e.what();
    row.converged = false;
  }
  return row;
}

// Tasks are independent; each thread writes only its own output slots.
std::vector<SweepRow> run_tasks(const ExperimentConfig& cfg, const std::vector<Task>& tasks,
                                const RunOptions& opts) {
  std::vector<SweepRow> rows(tasks.size());
  unsigned threads = opts.threads != 0 ? opts.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(tasks.size(), 1)));

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < tasks.size(); i = next++) rows[i] = solve_task(cfg, tasks[i]);
  };
  if (threads <= 1) {
    worker();
    return rows;
  }
  std::vector<std::jthread> pool;
  for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  pool.clear();
  return rows;
}

Task make_task(const ScenarioInputs& inputs, std::string sweep, double x, SolverKind solver) {
  Task t;
  t.inputs = inputs;
  t.row.sweep = std::move(sweep);
  t.row.x = x;
  t.row.total_power_dbm = inputs.total_power_dbm;
  t.row.overlap_ratio = inputs.overlap_mhz / inputs.total_bandwidth_mhz;
  t.row.access_weight = inputs.access_weight;
  t.row.duplex = inputs.duplex;
  t.row.altitude_km = inputs.altitude_km;
  t.row.solver = solver;
  return t;
}

std::vector<SolverKind> selected(const SolverSet& s) {
  std::vector<SolverKind> out;
  if (s.exact) out.push_back(SolverKind::ExactOrthogonal);
  if (s.pso) out.push_back(SolverKind::PSO);
  if (s.oracle) out.push_back(SolverKind::GridOracle);
  return out;
}

void require_valid(const ExperimentConfig& cfg) {
  auto problems = config_violations(cfg);
  if (!problems.empty()) throw ValidationError(std::move(problems));
}

constexpr DuplexMode kModes[] = {DuplexMode::FDD, DuplexMode::TDD};

}  // namespace

std::vector<SweepRow> run_single(const ExperimentConfig& cfg, const RunOptions& opts) {
  require_valid(cfg);
  std::vector<Task> tasks;
  for (SolverKind k : selected(cfg.solvers))
    tasks.push_back(make_task(cfg.scenario, "none", cfg.scenario.total_power_dbm, k));
  return run_tasks(cfg, tasks, opts);
}

std::vector<SweepRow> run_oracle(const ExperimentConfig& cfg, const RunOptions& opts) {
  require_valid(cfg);
  return run_tasks(cfg, {make_task(cfg.scenario, "none", cfg.scenario.total_power_dbm, SolverKind::GridOracle)},
                   opts);
}

std::vector<SweepRow> run_power_sweep(const ExperimentConfig& cfg, const RunOptions& opts) {
  require_valid(cfg);
  if (cfg.scenario.overlap_mhz != 0.0) throw ValidationError({"power sweep requires zero overlap"});
  const PowerSweep sweep =
      std::holds_alternative<PowerSweep>(cfg.sweep) ? std::get<PowerSweep>(cfg.sweep) : PowerSweep{};

  std::vector<Task> tasks;
  for (double p : sweep.points()) {
    for (DuplexMode mode : kModes) {
      for (double alt : sweep.altitudes_km) {
        ScenarioInputs in = cfg.scenario;
        in.total_power_dbm = p;
        in.duplex = mode;
        in.altitude_km = alt;
        for (SolverKind k : selected(cfg.solvers)) tasks.push_back(make_task(in, "power", p, k));
      }
    }
  }
  return run_tasks(cfg, tasks, opts);
}

std::vector<SweepRow> run_overlap_sweep(const ExperimentConfig& cfg, const RunOptions& opts) {
  require_valid(cfg);
  if (!cfg.solvers.pso) throw ValidationError({"overlap sweep requires the pso solver"});
  const OverlapSweep sweep = std::holds_alternative<OverlapSweep>(cfg.sweep)
                                 ? std::get<OverlapSweep>(cfg.sweep)
                                 : OverlapSweep{};

  std::vector<Task> tasks;
  for (double ratio : sweep.ratios()) {
    for (double eps : sweep.access_weights) {
      for (DuplexMode mode : kModes) {
        ScenarioInputs in = cfg.scenario;
        in.overlap_mhz = ratio * in.total_bandwidth_mhz;
        in.access_weight = eps;
        in.duplex = mode;
        if (ratio == 0.0) tasks.push_back(make_task(in, "overlap", ratio, SolverKind::ExactOrthogonal));
        tasks.push_back(make_task(in, "overlap", ratio, SolverKind::PSO));
        if (cfg.solvers.oracle) tasks.push_back(make_task(in, "overlap", ratio, SolverKind::GridOracle));
      }
    }
  }
  return run_tasks(cfg, tasks, opts);
}

ScenarioParams row_scenario(const ExperimentConfig& cfg, const SweepRow& row) {
  ScenarioInputs in = cfg.scenario;
  in.total_power_dbm = row.total_power_dbm;
  in.overlap_mhz = row.overlap_ratio * in.total_bandwidth_mhz;
  in.access_weight = row.access_weight;
  in.duplex = row.duplex;
  in.altitude_km = row.altitude_km;
  return build_scenario(in);
}

std::vector<std::string> audit_rows(const ExperimentConfig& cfg, const std::vector<SweepRow>& rows,
                                    double rel_tol) {
  std::vector<std::string> problems;
  auto close = [rel_tol](double a, double b) {
    return std::fabs(a - b) <= rel_tol * std::max(std::fabs(a), std::fabs(b)) + 1e-12;
  };
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const SweepRow& row = rows[i];
    if (row.status != "ok") continue;
    const std::string tag = "row " + std::to_string(i + 1) + ": ";
    try {
      const ScenarioParams scn = row_scenario(cfg, row);
      for (Constraint c : validate(scn, row.allocation, rel_tol))
        problems.push_back(tag + "violates " + std::string(to_string(c)));
      const RateReport r = evaluate(scn, row.allocation);
      if (!close(r.rate_access, row.report.rate_access))
        problems.push_back(tag + "access rate does not re-evaluate");
      if (!close(r.rate_backhaul, row.report.rate_backhaul))
        problems.push_back(tag + "backhaul rate does not re-evaluate");
      if (!close(r.throughput, row.report.throughput))
        problems.push_back(tag + "throughput does not re-evaluate");
      if (!close(r.maxmin_level, row.report.maxmin_level))
        problems.push_back(tag + "max-min level does not re-evaluate");
    } catch (const std::exception& e) {
      problems.push_back(tag + e.what());
    }
  }
  return problems;
}

}  // namespace satiab
