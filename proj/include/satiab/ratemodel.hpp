#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace satiab {

enum class DuplexMode { FDD, TDD };

std::string_view to_string(DuplexMode mode);
DuplexMode parse_duplex(std::string_view text);  // "FDD"/"TDD", case-insensitive

// Rate prefactor (alpha_o) and bandwidth scale (alpha_1) of a duplex mode.
struct DuplexFactors {
  double rate_share;       // FDD 1, TDD 1/2
  double bandwidth_scale;  // FDD 1/2, TDD 1
};

DuplexFactors duplex_factors(DuplexMode mode);

/// Everything the rate equations need, in linear SI units.
///
/// The overlap indicator is not stored: it is 1 exactly when
/// overlap_bandwidth > 0. Use make_scenario() to reject an explicit
/// indicator that disagrees with the overlap.
struct ScenarioParams {
  double total_power = 10.0;            // W
  double total_bandwidth = 40e6;        // Hz
  double overlap_bandwidth = 0.0;       // Hz, in [0, total_bandwidth]
  double noise_density = 3.98e-21;      // W/Hz
  double interference_density = 3.98e-21;  // W/Hz
  double access_weight = 0.1;           // epsilon, (0, 1]
  DuplexMode duplex = DuplexMode::FDD;
  double beta_ue = 1.0;  // access channel gain
  double beta_bs = 1.0;  // backhaul channel gain

  int overlap_flag() const { return overlap_bandwidth > 0.0 ? 1 : 0; }
  double noise_plus_interference() const { return noise_density + interference_density; }
};

std::vector<std::string> scenario_violations(const ScenarioParams& scn);
void require_valid(const ScenarioParams& scn);

// Validates `scn` and, when given, checks the explicit overlap indicator
// against the overlap bandwidth.
ScenarioParams make_scenario(const ScenarioParams& scn, std::optional<int> overlap_flag = {});

struct Allocation {
  double p_ue = 0.0;  // W, access link power
  double p_bs = 0.0;  // W, backhaul link power
  double w_a = 0.0;   // Hz, access bandwidth
  double w_b = 0.0;   // Hz, backhaul bandwidth
};

struct RateReport {
  double rate_access = 0.0;    // bit/s
  double rate_backhaul = 0.0;  // bit/s
  double throughput = 0.0;     // access + backhaul
  double maxmin_level = 0.0;   // min{R_A / eps, R_B}
  double fitness = 0.0;        // min{R_A, eps * R_B}
};

// Achievable rates. Zero bandwidth yields zero rate; an overlap term that
// would divide by the other link's zero bandwidth throws InvalidAllocation.
double access_rate(const ScenarioParams& scn, const Allocation& alloc);
double backhaul_rate(const ScenarioParams& scn, const Allocation& alloc);

RateReport evaluate(const ScenarioParams& scn, const Allocation& alloc);

enum class Constraint {
  PowerBudget,      // P_UE + P_BS <= P
  BandwidthBudget,  // W_A + W_B <= a1 (W + w_o)
  BandwidthCeiling, // W_i <= a1 W
  BandwidthFloor,   // W_i >= a1 w_o
  NonNegativePower, // P_i >= 0
};

std::string_view to_string(Constraint c);

// Violated constraints, each listed once; empty when feasible within the
// relative tolerance `tol`.
std::vector<Constraint> validate(const ScenarioParams& scn, const Allocation& alloc,
                                 double tol = 1e-6);

}  // namespace satiab
