#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "fixtures.hpp"
#include "satiab/allocator.hpp"
#include "satiab/errors.hpp"

using namespace satiab;
using doctest::Approx;

TEST_CASE("min_power_for_rate") {
  const auto scn = fixtures::table_scenario();
  const double n0 = scn.noise_plus_interference();
  CHECK(min_power_for_rate(0.0, 10e6, scn.beta_ue, scn) == 0.0);
  // one bit per second per effective hertz needs exactly N0 * B / beta
  CHECK(min_power_for_rate(10e6, 10e6, scn.beta_ue, scn) ==
        Approx(n0 * 10e6 / scn.beta_ue).epsilon(1e-15));

  std::mt19937_64 gen(1);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 1000; ++i) {
    const double bw = 1e5 + 2e7 * u(gen);
    const double rate = bw * 8.0 * u(gen);
    const double p = min_power_for_rate(rate, bw, scn.beta_ue, scn);
    REQUIRE(access_rate(scn, {p, 0.0, bw, 1.0}) == Approx(rate).epsilon(1e-9));
  }

  CHECK_THROWS_AS(min_power_for_rate(1e12, 1e3, scn.beta_ue, scn), Infeasible);
  auto overlapped = scn;
  overlapped.overlap_bandwidth = 1e6;
  CHECK_THROWS_AS(min_power_for_rate(1e6, 1e6, scn.beta_ue, overlapped), ValidationError);
}

TEST_CASE("solve_orthogonal on the reference table") {
  for (double p : {40.0, 45.0, 50.0})
    for (auto mode : {DuplexMode::FDD, DuplexMode::TDD})
      for (double alt : {600.0, 1200.0}) {
        const auto scn = fixtures::table_scenario(p, mode, alt);
        const auto exact = solve_orthogonal(scn);
        CHECK(exact.converged);
        const double zeta = exact.report.maxmin_level;
        const auto grid = grid_oracle(scn, 200);
        CHECK(zeta >= grid.report.maxmin_level);
        CHECK((zeta - grid.report.maxmin_level) / zeta <= 0.01);

        // both QoS constraints tight, whole power budget used
        CHECK(exact.report.rate_access / (scn.access_weight * zeta) == Approx(1.0).epsilon(1e-4));
        CHECK(exact.report.rate_backhaul / zeta == Approx(1.0).epsilon(1e-4));
        const auto& a = exact.allocation;
        CHECK((a.p_ue + a.p_bs) / scn.total_power == Approx(1.0).epsilon(1e-6));
        CHECK(validate(scn, a, 1e-6).empty());
        CHECK(evaluate(scn, a).maxmin_level == Approx(zeta).epsilon(1e-6));
      }
}

TEST_CASE("solve_orthogonal limiting and symmetric cases") {
  SUBCASE("vanishing access weight hands everything to the backhaul") {
    auto scn = fixtures::table_scenario();
    scn.access_weight = 1e-7;
    const double bw = 0.5 * scn.total_bandwidth;
    const double single_link = backhaul_rate(scn, {0.0, scn.total_power, 0.0, bw});
    const auto r = solve_orthogonal(scn);
    CHECK(r.report.maxmin_level / single_link > 0.999);
    CHECK(r.allocation.p_bs / scn.total_power > 0.999);
    CHECK(r.allocation.w_b / bw > 0.999);
  }
  SUBCASE("identical links split evenly") {
    auto scn = fixtures::table_scenario();
    scn.beta_bs = scn.beta_ue;
    scn.access_weight = 1.0;
    const auto r = solve_orthogonal(scn);
    const double bw = 0.5 * scn.total_bandwidth;
    CHECK(r.allocation.w_a == Approx(bw / 2).epsilon(1e-4));
    CHECK(r.allocation.w_b == Approx(bw / 2).epsilon(1e-4));
    CHECK(r.allocation.p_ue == Approx(scn.total_power / 2).epsilon(1e-4));
    CHECK(r.allocation.p_bs == Approx(scn.total_power / 2).epsilon(1e-4));

    // the grid's midpoint cell contains the optimum
    const auto g = grid_oracle(scn, 101);
    CHECK(std::fabs(g.allocation.w_a - bw / 2) <= bw / 100);
    CHECK(std::fabs(g.allocation.p_ue - scn.total_power / 2) <= scn.total_power / 100);
  }
  SUBCASE("overlap is rejected") {
    CHECK_THROWS_AS(solve_orthogonal(fixtures::table_scenario(40, DuplexMode::FDD, 600, 0.2)),
                    ValidationError);
  }
}

TEST_CASE("solve_orthogonal is monotone in power and bandwidth") {
  std::mt19937_64 gen(17);
  for (int trial = 0; trial < 10; ++trial) {
    const auto base = fixtures::random_scenario(gen, false);
    double prev = 0.0;
    for (double scale = 0.25; scale <= 4.0; scale *= 1.25) {
      auto s = base;
      s.total_power = base.total_power * scale;
      const double z = solve_orthogonal(s).report.maxmin_level;
      REQUIRE(z >= prev * (1.0 - 1e-9));
      prev = z;
    }
    prev = 0.0;
    for (double scale = 0.25; scale <= 4.0; scale *= 1.25) {
      auto s = base;
      s.total_bandwidth = base.total_bandwidth * scale;
      const double z = solve_orthogonal(s).report.maxmin_level;
      REQUIRE(z >= prev * (1.0 - 1e-9));
      prev = z;
    }
  }
}

TEST_CASE("grid_oracle") {
  const auto scn = fixtures::table_scenario(43, DuplexMode::TDD, 1200, 0.3, 0.2);
  CHECK(grid_oracle(scn, 100).report.maxmin_level >= grid_oracle(scn, 10).report.maxmin_level - 1e-12);
  CHECK_THROWS_AS(grid_oracle(scn, 9), ValidationError);
}

TEST_CASE("solver outputs are feasible and the exact solver dominates the grid") {
  std::mt19937_64 gen(23);
  PsoConfig quick;
  quick.population_size = 20;
  quick.max_iterations = 40;
  for (int i = 0; i < 200; ++i) {
    const auto scn = fixtures::random_scenario(gen, true);
    quick.rng_seed = static_cast<std::uint64_t>(i);
    const auto pso = pso_solve(scn, quick);
    REQUIRE(validate(scn, pso.allocation, 1e-6).empty());
    const auto grid = grid_oracle(scn, 20);
    REQUIRE(validate(scn, grid.allocation, 1e-6).empty());
    if (scn.overlap_bandwidth == 0.0) {
      const auto exact = solve_orthogonal(scn);
      REQUIRE(validate(scn, exact.allocation, 1e-6).empty());
      const double z = exact.report.maxmin_level;
      REQUIRE(grid.report.maxmin_level <= z + 1e-9 * z);
      REQUIRE(pso.report.maxmin_level <= z + 1e-9 * z);
    }
  }
}
