#include <cmath>
#include <limits>
#include <utility>

#include "satiab/allocator.hpp"
#include "satiab/errors.hpp"

namespace satiab {

std::string_view to_string(SolverKind kind) {
  switch (kind) {
    case SolverKind::ExactOrthogonal:
      return "exact";
    case SolverKind::PSO:
      return "pso";
    case SolverKind::GridOracle:
      return "oracle";
  }
  return "unknown";
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Unchecked inversion of the single-link rate; +inf when out of range.
double power_for_rate(double rate, double bandwidth, double beta, double rate_share, double n0) {
  if (rate <= 0.0) return 0.0;
  if (bandwidth <= 0.0) return kInf;
  const double exponent = rate * std::log(2.0) / (rate_share * bandwidth);
  return std::expm1(exponent) * n0 * bandwidth / beta;
}

struct SplitOptimum {
  double access_bandwidth;
  double total_power;
};

// Golden-section search for the bandwidth split that minimizes the power
// needed to carry (eps * level, level). The objective is convex in W_A.
SplitOptimum best_split(const ScenarioParams& scn, double level, double budget, double rel_tol) {
  const auto [rate_share, a1] = duplex_factors(scn.duplex);
  const double n0 = scn.noise_plus_interference();
  const double access_target = scn.access_weight * level;
  auto power = [&](double w_a) {
    return power_for_rate(access_target, w_a, scn.beta_ue, rate_share, n0) +
           power_for_rate(level, budget - w_a, scn.beta_bs, rate_share, n0);
  };

  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double lo = 0.0;
  double hi = budget;
  double x1 = hi - inv_phi * (hi - lo);
  double x2 = lo + inv_phi * (hi - lo);
  double f1 = power(x1);
  double f2 = power(x2);
  while (hi - lo > rel_tol * budget) {
    if (f1 <= f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - inv_phi * (hi - lo);
      f1 = power(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + inv_phi * (hi - lo);
      f2 = power(x2);
    }
  }
  const double w_a = f1 <= f2 ? x1 : x2;
  return {w_a, power(w_a)};
}

}  // namespace

double min_power_for_rate(double rate_target, double bandwidth, double beta,
                          const ScenarioParams& scn) {
  if (scn.overlap_bandwidth != 0.0)
    throw ValidationError({"closed-form power inversion requires zero overlap bandwidth"});
  if (!(bandwidth > 0.0) || !(beta > 0.0) || !(rate_target >= 0.0))
    throw ValidationError({"power inversion needs bandwidth > 0, gain > 0 and rate >= 0"});
  const double p = power_for_rate(rate_target, bandwidth, beta,
                                  duplex_factors(scn.duplex).rate_share,
                                  scn.noise_plus_interference());
  if (!std::isfinite(p)) throw Infeasible("required power overflows for the requested rate");
  return p;
}

SolveResult solve_orthogonal(const ScenarioParams& scn, const OrthogonalOptions& opts) {
  require_valid(scn);
  if (scn.overlap_bandwidth != 0.0)
    throw ValidationError({"exact solver requires zero overlap bandwidth"});

  const auto [rate_share, a1] = duplex_factors(scn.duplex);
  const double budget = a1 * scn.total_bandwidth;
  const double n0 = scn.noise_plus_interference();

  // Backhaul alone with every resource bounds the max-min level.
  double hi = rate_share * budget * std::log2(1.0 + scn.total_power * scn.beta_bs / (n0 * budget));
  double lo = 0.0;
  SplitOptimum at_lo{budget / 2.0, 0.0};

  int steps = 0;
  bool converged = false;
  while (steps < opts.max_bisection_steps) {
    if (hi - lo <= opts.bisection_rel_tol * hi) {
      converged = true;
      break;
    }
    ++steps;
    const double mid = 0.5 * (lo + hi);
    const SplitOptimum split = best_split(scn, mid, budget, opts.golden_rel_tol);
    if (split.total_power <= scn.total_power) {
      lo = mid;
      at_lo = split;
    } else {
      hi = mid;
    }
  }
  if (lo == 0.0) at_lo = best_split(scn, 0.0, budget, opts.golden_rel_tol);

  SolveResult result;
  result.solver = SolverKind::ExactOrthogonal;
  result.iterations_used = static_cast<std::uint64_t>(steps);
  result.converged = converged;

  Allocation& a = result.allocation;
  a.w_a = at_lo.access_bandwidth;
  a.w_b = budget - a.w_a;
  a.p_ue = power_for_rate(scn.access_weight * lo, a.w_a, scn.beta_ue, rate_share, n0);
  a.p_bs = scn.total_power - a.p_ue;
  result.report = evaluate(scn, a);
  return result;
}

SolveResult grid_oracle(const ScenarioParams& scn, int resolution) {
  require_valid(scn);
  if (resolution < 10) throw ValidationError({"grid resolution must be at least 10"});

  const double a1 = duplex_factors(scn.duplex).bandwidth_scale;
  const double floor = a1 * scn.overlap_bandwidth;
  const double ceiling = a1 * scn.total_bandwidth;
  const double budget = a1 * (scn.total_bandwidth + scn.overlap_bandwidth);
  const double last = static_cast<double>(resolution - 1);

  SolveResult best;
  best.solver = SolverKind::GridOracle;
  best.report.maxmin_level = -1.0;
  for (int i = 0; i < resolution; ++i) {
    const double p_ue = scn.total_power * (static_cast<double>(i) / last);
    for (int j = 0; j < resolution; ++j) {
      const double w_a = floor + (ceiling - floor) * (static_cast<double>(j) / last);
      const Allocation a{p_ue, scn.total_power - p_ue, w_a, budget - w_a};
      const RateReport r = evaluate(scn, a);
      if (r.maxmin_level > best.report.maxmin_level) {
        best.allocation = a;
        best.report = r;
      }
    }
  }
  best.iterations_used = static_cast<std::uint64_t>(resolution) * resolution;
  best.converged = true;
  return best;
}

}  // namespace satiab
