#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string_view>
#include <vector>

#include "satiab/ratemodel.hpp"
#include "satiab/rng.hpp"

namespace satiab {

enum class SolverKind { ExactOrthogonal, PSO, GridOracle };

std::string_view to_string(SolverKind kind);

struct SolveResult {
  Allocation allocation;
  RateReport report;
  SolverKind solver = SolverKind::ExactOrthogonal;
  std::uint64_t iterations_used = 0;
  bool converged = true;
};

/// Smallest power that lets a single orthogonal link carry `rate_target`
/// over `bandwidth` with channel gain `beta`.
///
/// Requires scn.overlap_bandwidth == 0. Throws Infeasible when the result
/// is not a finite double.
double min_power_for_rate(double rate_target, double bandwidth, double beta,
                          const ScenarioParams& scn);

struct OrthogonalOptions {
  int max_bisection_steps = 200;
  double bisection_rel_tol = 1e-13;
  double golden_rel_tol = 1e-9;
};

/// Max-min optimum for non-overlapping spectrum (w_o == 0).
///
/// Bisects on the max-min level; each candidate level is feasible when the
/// least total power over the access/backhaul bandwidth split (a convex
/// problem, solved by golden-section search) fits in the power budget.
SolveResult solve_orthogonal(const ScenarioParams& scn, const OrthogonalOptions& opts = {});

struct PsoConfig {
  int population_size = 50;
  int max_iterations = 200;
  double learning_factor_1 = 2.0;  // pull toward the ring-local best
  double learning_factor_2 = 2.0;  // pull toward the global best
  double inertia_weight = 0.01;    // scales the velocity in the position update
  std::uint64_t rng_seed = 1;
  bool neighborhood_includes_self = true;
};

std::vector<std::string> pso_config_violations(const PsoConfig& cfg);
void require_valid(const PsoConfig& cfg);

using Particle = std::array<double, 4>;  // P_UE, P_BS, W_A, W_B

Allocation to_allocation(const Particle& p);
Particle to_particle(const Allocation& a);

struct PsoState {
  std::vector<Particle> population;
  std::vector<Particle> velocity;
  std::vector<double> fitness;  // of the current (normalized) population
  Particle best_particle{};
  double best_fitness = -1.0;
  int iteration = 0;
};

struct PsoCounters {
  std::uint64_t fitness_evaluations = 0;
  std::uint64_t element_updates = 0;  // velocity/position entries touched
  std::uint64_t random_draws = 0;
  std::uint64_t reseeded_particles = 0;
};

/// Particle swarm search over (P_UE, P_BS, W_A, W_B).
///
/// Each iteration projects every particle onto the feasible set (power and
/// bandwidth rescaled onto their budgets, bandwidths clamped to
/// [a1 w_o, a1 W]), scores it with min{R_A, eps R_B}, picks ring-local and
/// global bests, then applies X += u1 r1 (local - F) + u2 r2 (global - F)
/// and F += mu X. Random numbers come from one sequential stream (row
/// major, r1 before r2 per element) so results depend only on the seed.
class PsoSolver {
public:
  PsoSolver(const ScenarioParams& scn, const PsoConfig& cfg);

  // Replaces the random initial population. Velocities are reset to zero.
  void set_population(std::vector<Particle> population);

  // One normalize/score/best/update pass. Returns the running best fitness.
  double step();

  SolveResult run();

  const PsoState& state() const { return state_; }
  const PsoCounters& counters() const { return counters_; }

private:
  void normalize(Particle& p);
  void reseed(Particle& p);

  ScenarioParams scn_;
  PsoConfig cfg_;
  CounterRng rng_;
  PsoState state_;
  PsoCounters counters_;
  double power_budget_;
  double bandwidth_budget_;
  double bandwidth_floor_;
  double bandwidth_ceiling_;
};

SolveResult pso_solve(const ScenarioParams& scn, const PsoConfig& cfg);

/// Exhaustive search on a resolution x resolution grid over P_UE in [0, P]
/// (P_BS = P - P_UE) and W_A in [a1 w_o, a1 W] (W_B fills the bandwidth
/// budget). Grids with (r1 - 1) dividing (r2 - 1) nest.
SolveResult grid_oracle(const ScenarioParams& scn, int resolution);

}  // namespace satiab
