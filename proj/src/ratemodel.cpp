#include "satiab/ratemodel.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

#include "satiab/errors.hpp"

namespace satiab {

std::string_view to_string(DuplexMode mode) { return mode == DuplexMode::FDD ? "FDD" : "TDD"; }

DuplexMode parse_duplex(std::string_view text) {
  std::string upper(text);
  std::transform(upper.begin(), upper.end(), upper.begin(),
                 [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
  if (upper == "FDD") return DuplexMode::FDD;
  if (upper == "TDD") return DuplexMode::TDD;
  throw ParseError("unknown duplex mode '" + std::string(text) + "' (expected FDD or TDD)");
}

DuplexFactors duplex_factors(DuplexMode mode) {
  switch (mode) {
    case DuplexMode::FDD:
      return {1.0, 0.5};
    case DuplexMode::TDD:
      return {0.5, 1.0};
  }
  return {1.0, 0.5};
}

std::vector<std::string> scenario_violations(const ScenarioParams& scn) {
  std::vector<std::string> out;
  if (!(scn.total_power > 0.0)) out.emplace_back("total power must be positive");
  if (!(scn.total_bandwidth > 0.0)) out.emplace_back("total bandwidth must be positive");
  if (!(scn.overlap_bandwidth >= 0.0) || scn.overlap_bandwidth > scn.total_bandwidth)
    out.emplace_back("overlap bandwidth must lie in [0, total bandwidth]");
  if (!(scn.noise_density > 0.0)) out.emplace_back("noise density must be positive");
  if (!(scn.interference_density > 0.0)) out.emplace_back("interference density must be positive");
  if (!(scn.access_weight > 0.0 && scn.access_weight <= 1.0))
    out.emplace_back("access weight must lie in (0, 1]");
  if (!(scn.beta_ue > 0.0)) out.emplace_back("access channel gain must be positive");
  if (!(scn.beta_bs > 0.0)) out.emplace_back("backhaul channel gain must be positive");
  return out;
}

void require_valid(const ScenarioParams& scn) {
  auto problems = scenario_violations(scn);
  if (!problems.empty()) throw ValidationError(std::move(problems));
}

ScenarioParams make_scenario(const ScenarioParams& scn, std::optional<int> overlap_flag) {
  auto problems = scenario_violations(scn);
  if (overlap_flag) {
    if (*overlap_flag != 0 && *overlap_flag != 1)
      problems.emplace_back("overlap flag must be 0 or 1");
    else if (*overlap_flag != scn.overlap_flag())
      problems.emplace_back("overlap flag must be 1 exactly when overlap bandwidth is positive");
  }
  if (!problems.empty()) throw ValidationError(std::move(problems));
  return scn;
}

namespace {

// own_bw * a_o * log2(1 + own_power*beta / (N0*own_bw + flag*a1*other_power*beta*w_o/other_bw))
double link_rate(const ScenarioParams& scn, double own_power, double own_bw, double other_power,
                 double other_bw, double beta, const char* other_name) {
  const auto [rate_share, bandwidth_scale] = duplex_factors(scn.duplex);
  double overlap_interference = 0.0;
  if (scn.overlap_flag() == 1) {
    if (!(other_bw > 0.0))
      throw InvalidAllocation(std::string("overlap interference needs a positive ") + other_name +
                              " bandwidth");
    overlap_interference =
        bandwidth_scale * other_power * beta * scn.overlap_bandwidth / other_bw;
  }
  if (own_bw <= 0.0 || own_power <= 0.0) return 0.0;
  const double sinr =
      own_power * beta / (scn.noise_plus_interference() * own_bw + overlap_interference);
  return rate_share * own_bw * std::log2(1.0 + sinr);
}

}  // namespace

double access_rate(const ScenarioParams& scn, const Allocation& alloc) {
  return link_rate(scn, alloc.p_ue, alloc.w_a, alloc.p_bs, alloc.w_b, scn.beta_ue, "backhaul");
}

double backhaul_rate(const ScenarioParams& scn, const Allocation& alloc) {
  return link_rate(scn, alloc.p_bs, alloc.w_b, alloc.p_ue, alloc.w_a, scn.beta_bs, "access");
}

RateReport evaluate(const ScenarioParams& scn, const Allocation& alloc) {
  RateReport r;
  r.rate_access = access_rate(scn, alloc);
  r.rate_backhaul = backhaul_rate(scn, alloc);
  r.throughput = r.rate_access + r.rate_backhaul;
  r.fitness = std::min(r.rate_access, scn.access_weight * r.rate_backhaul);
  r.maxmin_level = std::min(r.rate_access / scn.access_weight, r.rate_backhaul);
  return r;
}

std::string_view to_string(Constraint c) {
  switch (c) {
    case Constraint::PowerBudget:
      return "power_budget";
    case Constraint::BandwidthBudget:
      return "bandwidth_budget";
    case Constraint::BandwidthCeiling:
      return "bandwidth_ceiling";
    case Constraint::BandwidthFloor:
      return "bandwidth_floor";
    case Constraint::NonNegativePower:
      return "nonnegative_power";
  }
  return "unknown";
}

std::vector<Constraint> validate(const ScenarioParams& scn, const Allocation& alloc, double tol) {
  const double a1 = duplex_factors(scn.duplex).bandwidth_scale;
  const double ceiling = a1 * scn.total_bandwidth;
  const double floor = a1 * scn.overlap_bandwidth;
  const double bw_slack = tol * ceiling;

  std::vector<Constraint> out;
  if (alloc.p_ue + alloc.p_bs > scn.total_power * (1.0 + tol)) out.push_back(Constraint::PowerBudget);
  if (alloc.w_a + alloc.w_b > a1 * (scn.total_bandwidth + scn.overlap_bandwidth) * (1.0 + tol))
    out.push_back(Constraint::BandwidthBudget);
  if (alloc.w_a > ceiling + bw_slack || alloc.w_b > ceiling + bw_slack)
    out.push_back(Constraint::BandwidthCeiling);
  if (alloc.w_a < floor - bw_slack || alloc.w_b < floor - bw_slack)
    out.push_back(Constraint::BandwidthFloor);
  if (alloc.p_ue < -tol * scn.total_power || alloc.p_bs < -tol * scn.total_power)
    out.push_back(Constraint::NonNegativePower);
  return out;
}

}  // namespace satiab
