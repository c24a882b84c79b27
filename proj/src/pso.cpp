#include <algorithm>
#include <cmath>
#include <string>

#include "satiab/allocator.hpp"
#include "satiab/errors.hpp"

namespace satiab {

Allocation to_allocation(const Particle& p) { return {p[0], p[1], p[2], p[3]}; }

Particle to_particle(const Allocation& a) { return {a.p_ue, a.p_bs, a.w_a, a.w_b}; }

std::vector<std::string> pso_config_violations(const PsoConfig& cfg) {
  std::vector<std::string> out;
  if (cfg.population_size < 3) out.emplace_back("PSO population size must be at least 3");
  if (cfg.max_iterations < 1) out.emplace_back("PSO iteration count must be at least 1");
  if (!(cfg.learning_factor_1 > 0.0) || !(cfg.learning_factor_2 > 0.0))
    out.emplace_back("PSO learning factors must be positive");
  // Zero inertia is allowed: it freezes the swarm, which is useful for checks.
  if (!(cfg.inertia_weight >= 0.0)) out.emplace_back("PSO inertia weight must be nonnegative");
  return out;
}

void require_valid(const PsoConfig& cfg) {
  auto problems = pso_config_violations(cfg);
  if (!problems.empty()) throw ValidationError(std::move(problems));
}

PsoSolver::PsoSolver(const ScenarioParams& scn, const PsoConfig& cfg)
    : scn_(scn), cfg_(cfg), rng_(cfg.rng_seed) {
  require_valid(scn_);
  require_valid(cfg_);
  const double a1 = duplex_factors(scn_.duplex).bandwidth_scale;
  power_budget_ = scn_.total_power;
  bandwidth_budget_ = a1 * (scn_.total_bandwidth + scn_.overlap_bandwidth);
  bandwidth_floor_ = a1 * scn_.overlap_bandwidth;
  bandwidth_ceiling_ = a1 * scn_.total_bandwidth;

  const auto n = static_cast<std::size_t>(cfg_.population_size);
  state_.population.resize(n);
  state_.velocity.assign(n, Particle{});
  state_.fitness.assign(n, 0.0);
  for (auto& p : state_.population) reseed(p);
}

void PsoSolver::set_population(std::vector<Particle> population) {
  if (population.size() != static_cast<std::size_t>(cfg_.population_size))
    throw ValidationError({"initial population must have population_size rows"});
  state_.population = std::move(population);
  state_.velocity.assign(state_.population.size(), Particle{});
}

void PsoSolver::reseed(Particle& p) {
  p[0] = rng_.uniform(0.0, power_budget_);
  p[1] = rng_.uniform(0.0, power_budget_);
  p[2] = rng_.uniform(0.0, bandwidth_budget_);
  p[3] = rng_.uniform(0.0, bandwidth_budget_);
  counters_.random_draws += 4;
}

void PsoSolver::normalize(Particle& p) {
  for (int attempt = 0;; ++attempt) {
    const double power_sum = std::fabs(p[0]) + std::fabs(p[1]);
    const double bw_sum = std::fabs(p[2]) + std::fabs(p[3]);
    if (power_sum > 0.0 && bw_sum > 0.0 && std::isfinite(power_sum) && std::isfinite(bw_sum)) break;
    // The projection is undefined here; draw a fresh particle instead.
    reseed(p);
    ++counters_.reseeded_particles;
    if (attempt > 64) throw NonConvergence("PSO could not redraw a usable particle");
  }
  const double power_sum = std::fabs(p[0]) + std::fabs(p[1]);
  const double bw_sum = std::fabs(p[2]) + std::fabs(p[3]);
  p[0] = std::fabs(p[0]) / power_sum * power_budget_;
  p[1] = std::fabs(p[1]) / power_sum * power_budget_;
  p[2] = std::fabs(p[2]) / bw_sum * bandwidth_budget_;
  p[3] = std::fabs(p[3]) / bw_sum * bandwidth_budget_;
  for (int l = 2; l < 4; ++l) p[l] = std::clamp(p[l], bandwidth_floor_, bandwidth_ceiling_);
}

double PsoSolver::step() {
  auto& pop = state_.population;
  auto& vel = state_.velocity;
  const std::size_t n = pop.size();

  for (auto& p : pop) normalize(p);

  for (std::size_t i = 0; i < n; ++i) {
    state_.fitness[i] = evaluate(scn_, to_allocation(pop[i])).fitness;
    ++counters_.fitness_evaluations;
  }

  std::size_t global = 0;
  for (std::size_t i = 1; i < n; ++i)
    if (state_.fitness[i] > state_.fitness[global]) global = i;
  if (state_.fitness[global] > state_.best_fitness) {
    state_.best_fitness = state_.fitness[global];
    state_.best_particle = pop[global];
  }

  // Ring neighborhood: i-1, i+1 (wrapping), and optionally i itself.
  std::vector<std::size_t> local(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t prev = (i + n - 1) % n;
    const std::size_t next = (i + 1) % n;
    std::size_t pick = state_.fitness[prev] >= state_.fitness[next] ? prev : next;
    if (cfg_.neighborhood_includes_self && state_.fitness[i] >= state_.fitness[pick]) pick = i;
    local[i] = pick;
  }

  // Bests are snapshotted before any row moves.
  const std::vector<Particle> snapshot = pop;
  const Particle& leader = snapshot[global];
  for (std::size_t i = 0; i < n; ++i) {
    const Particle& neighbor_best = snapshot[local[i]];
    for (std::size_t m = 0; m < 4; ++m) {
      const double r1 = rng_.uniform();
      const double r2 = rng_.uniform();
      vel[i][m] += cfg_.learning_factor_1 * r1 * (neighbor_best[m] - snapshot[i][m]) +
                   cfg_.learning_factor_2 * r2 * (leader[m] - snapshot[i][m]);
      pop[i][m] += cfg_.inertia_weight * vel[i][m];
      counters_.element_updates += 1;
    }
    counters_.random_draws += 8;
  }

  ++state_.iteration;
  return state_.best_fitness;
}

SolveResult PsoSolver::run() {
  while (state_.iteration < cfg_.max_iterations) step();

  SolveResult result;
  result.solver = SolverKind::PSO;
  result.allocation = to_allocation(state_.best_particle);
  result.report = evaluate(scn_, result.allocation);
  result.iterations_used = static_cast<std::uint64_t>(state_.iteration);
  result.converged = true;
  return result;
}

SolveResult pso_solve(const ScenarioParams& scn, const PsoConfig& cfg) {
  return PsoSolver(scn, cfg).run();
}

}  // namespace satiab
