#pragma once

#include <random>

#include "satiab/experiment.hpp"

namespace fixtures {

// Reference-table scenario with a few knobs exposed.
inline satiab::ScenarioParams table_scenario(double power_dbm = 40.0,
                                             satiab::DuplexMode mode = satiab::DuplexMode::FDD,
                                             double altitude_km = 600.0, double overlap_ratio = 0.0,
                                             double access_weight = 0.1) {
  satiab::ScenarioInputs in;
  in.total_power_dbm = power_dbm;
  in.duplex = mode;
  in.altitude_km = altitude_km;
  in.overlap_mhz = overlap_ratio * in.total_bandwidth_mhz;
  in.access_weight = access_weight;
  return satiab::build_scenario(in);
}

// Random scenario around the reference operating point.
inline satiab::ScenarioParams random_scenario(std::mt19937_64& gen, bool allow_overlap) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  satiab::ScenarioInputs in;
  in.total_power_dbm = 30.0 + 25.0 * u(gen);
  in.total_bandwidth_mhz = 5.0 + 95.0 * u(gen);
  in.altitude_km = 400.0 + 1200.0 * u(gen);
  in.bs_gain_dbi = 10.0 + 30.0 * u(gen);
  in.ue_gain_dbi = -3.0 + 10.0 * u(gen);
  in.boresight_bs_deg = 1.2 * u(gen);
  in.access_weight = 0.02 + 0.98 * u(gen);
  in.duplex = u(gen) < 0.5 ? satiab::DuplexMode::FDD : satiab::DuplexMode::TDD;
  in.overlap_mhz = allow_overlap && u(gen) < 0.7 ? u(gen) * in.total_bandwidth_mhz : 0.0;
  return satiab::build_scenario(in);
}

// Uniformly random allocation satisfying every constraint of `scn`.
inline satiab::Allocation random_feasible(std::mt19937_64& gen, const satiab::ScenarioParams& scn) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double a1 = satiab::duplex_factors(scn.duplex).bandwidth_scale;
  const double floor = a1 * scn.overlap_bandwidth;
  const double ceiling = a1 * scn.total_bandwidth;
  const double budget = a1 * (scn.total_bandwidth + scn.overlap_bandwidth);
  satiab::Allocation a;
  const double total = scn.total_power * u(gen);
  a.p_ue = total * u(gen);
  a.p_bs = total - a.p_ue;
  a.w_a = floor + (ceiling - floor) * u(gen);
  const double room = std::min(ceiling, budget - a.w_a);
  a.w_b = floor + (room - floor) * u(gen);
  if (scn.overlap_bandwidth == 0.0) {
    a.w_a = std::max(a.w_a, 1.0);
    a.w_b = std::max(a.w_b, 1.0);
  }
  return a;
}

}  // namespace fixtures
