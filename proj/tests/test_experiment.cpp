#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <regex>

#include "satiab/errors.hpp"
#include "satiab/experiment.hpp"
#include "satiab/linkbudget.hpp"

using namespace satiab;
using doctest::Approx;
namespace fs = std::filesystem;

namespace {
fs::path temp_dir(const std::string& name) {
  auto dir = fs::temp_directory_path() / ("satiab_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

std::size_t count(const std::string& s, const std::string& needle) {
  std::size_t n = 0;
  for (auto pos = s.find(needle); pos != std::string::npos; pos = s.find(needle, pos + 1)) ++n;
  return n;
}
}  // namespace

TEST_CASE("empty config gives the reference table") {
  const auto cfg = parse_config("{}");
  const auto& s = cfg.scenario;
  CHECK(s.total_bandwidth_mhz == 40.0);
  CHECK(s.total_power_dbm == 40.0);
  CHECK(s.noise_density_dbm_hz == -174.0);
  CHECK(s.interference_density_dbm_hz == -174.0);
  CHECK(s.satellite_gain_dbi == 36.0);
  CHECK(s.bs_gain_dbi == 32.8);
  CHECK(s.ue_gain_dbi == 0.0);
  CHECK(s.carrier_frequency_ghz == 2.0);
  CHECK(s.aperture_radius_m == 1.5);
  CHECK(s.altitude_km == 600.0);
  CHECK(s.boresight_ue_deg == 0.0);
  CHECK(s.boresight_bs_deg == 0.8);
  CHECK(cfg.pso.population_size == 50);
  CHECK(cfg.pso.max_iterations == 200);
  CHECK(cfg.pso.inertia_weight == 0.01);
  CHECK(cfg.pso.learning_factor_1 == 2.0);
  CHECK(cfg.pso.learning_factor_2 == 2.0);
  CHECK(cfg.solvers == SolverSet{true, true, false});

  const auto scn = build_scenario(s);
  CHECK(scn.total_bandwidth == 40e6);
  CHECK(scn.total_power == Approx(10.0).epsilon(1e-15));
  CHECK(scn.noise_density == Approx(3.981071705534972e-21).epsilon(1e-14));
  CHECK(scn.beta_ue == Approx(1.5734726039155016e-12).epsilon(1e-12));
}

TEST_CASE("config conversions and errors") {
  CHECK(build_scenario(parse_config(R"({"total_power_dbm": 40})").scenario).total_power ==
        Approx(10.0).epsilon(1e-15));
  CHECK_THROWS_AS(parse_config(R"({"overlap_mhz": 50})"), ValidationError);
  try {
    parse_config(R"({"overlap_mhz": 50})");
  } catch (const ValidationError& e) {
    CHECK(!e.problems().empty());
  }
  try {
    parse_config("{\n  \"total_power_dbm\": 40,\n  oops\n}", "cfg.json");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("cfg.json:3:") != std::string::npos);
  }
  try {
    parse_config(R"({"total_power_dbm": "forty"})", "cfg.json");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("total_power_dbm") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_config(R"({"total_power_dbn": 40})"), ParseError);
  CHECK_THROWS_AS(parse_config(R"({"duplex": "XDD"})"), ParseError);
  CHECK_THROWS_AS(parse_config(R"({"solvers": []})"), ValidationError);
  CHECK_THROWS_AS(parse_config(R"({"overlap_mhz": 10, "solvers": ["exact"]})"), ValidationError);
  CHECK_THROWS_AS(parse_config(R"({"sweep": {"kind": "power", "min_dbm": 50, "max_dbm": 40}})"),
                  ValidationError);
  CHECK_THROWS_AS(parse_config(R"({"sweep": {"kind": "overlap", "points": 1}})"), ValidationError);
  CHECK_THROWS_AS(load_config("/nonexistent/satiab.json"), IoError);
  // overlap without an explicit solver list drops the exact solver
  CHECK(parse_config(R"({"overlap_mhz": 10})").solvers == SolverSet{false, true, false});
}

TEST_CASE("write_config round-trips every field") {
  ExperimentConfig cfg;
  cfg.scenario.total_power_dbm = 47.3;
  cfg.scenario.boresight_bs_deg = 0.123456789012345;
  cfg.scenario.duplex = DuplexMode::TDD;
  cfg.scenario.access_weight = 0.2;
  cfg.pso.rng_seed = 18446744073709551557ULL;
  cfg.pso.neighborhood_includes_self = false;
  cfg.pso.inertia_weight = 1.0 / 3.0;
  cfg.solvers = {true, false, true};
  cfg.oracle_resolution = 57;
  cfg.output_path = "some/dir";
  cfg.sweep = PowerSweep{41.5, 49.0, 0.5, {550.0, 1100.0}};
  CHECK(same_config(parse_config(write_config(cfg)), cfg));

  cfg.sweep = OverlapSweep{6, {0.1, 0.3}};
  cfg.solvers = {false, true, false};
  cfg.scenario.overlap_mhz = 3.7;
  CHECK(same_config(parse_config(write_config(cfg)), cfg));
}

TEST_CASE("sweep grids") {
  CHECK(PowerSweep{}.points().size() == 11);
  CHECK(PowerSweep{}.points().back() == 50.0);
  const auto r = OverlapSweep{}.ratios();
  REQUIRE(r.size() == 11);
  CHECK(r.front() == 0.0);
  CHECK(r.back() == 1.0);
}

TEST_CASE("csv layout") {
  const auto dir = temp_dir("csv");
  SUBCASE("empty table is header only") {
    write_csv({}, dir / "empty.csv");
    const auto text = slurp(dir / "empty.csv");
    CHECK(count(text, "\r\n") == 1);
    CHECK(text.rfind("sweep,x,", 0) == 0);
  }
  SUBCASE("one row, one comma per column boundary") {
    SweepRow row;
    row.status = "ok";
    row.allocation = {1.0, 2.0, 3e6, 4e6};
    write_csv({row}, dir / "one.csv");
    const auto text = slurp(dir / "one.csv");
    CHECK(count(text, "\r\n") == 2);
    const auto second = text.substr(text.find("\r\n") + 2);
    CHECK(count(second, ",") == csv_columns().size() - 1);
  }
  SUBCASE("quoted status survives parsing") {
    SweepRow row;
    row.status = "failed, \"badly\"\nsecond line";
    const auto parsed = parse_csv(format_csv({row, row}));
    REQUIRE(parsed.size() == 2);
    CHECK(parsed[1].status == row.status);
  }
  SUBCASE("unwritable path") {
    CHECK_THROWS_AS(write_csv({}, dir / "missing" / "x.csv"), IoError);
  }
  CHECK_THROWS_AS(parse_csv("a,b\r\n"), ParseError);
}

TEST_CASE("power sweep rows, order and plot") {
  auto cfg = parse_config(R"({"solvers": ["exact"], "sweep": {"kind": "power", "step_db": 5}})");
  const auto rows = run_power_sweep(cfg, {2});
  REQUIRE(rows.size() == 3 * 2 * 2);
  CHECK(rows[0].x == 40.0);
  CHECK(rows[0].duplex == DuplexMode::FDD);
  CHECK(rows[0].altitude_km == 600.0);
  CHECK(rows[1].altitude_km == 1200.0);
  CHECK(rows[2].duplex == DuplexMode::TDD);
  CHECK(rows[4].x == 45.0);
  for (const auto& r : rows) CHECK(r.status == "ok");
  CHECK(audit_rows(cfg, rows).empty());

  const auto svg = render_svg(rows);
  CHECK(count(svg, "<polyline") == 4);
  CHECK(svg.find("dBm") != std::string::npos);
  CHECK(svg.find("Mbps") != std::string::npos);
  CHECK(svg.rfind("<?xml", 0) == 0);
  CHECK(svg.find("</svg>") != std::string::npos);
  CHECK_THROWS_AS(render_svg({}), ValidationError);
}

TEST_CASE("overlap sweep determinism, audit and plot") {
  auto cfg = parse_config(R"({"pso_max_iterations": 30, "sweep": {"kind": "overlap", "points": 3}})");
  const auto a = run_overlap_sweep(cfg, {1});
  const auto b = run_overlap_sweep(cfg, {4});
  CHECK(format_csv(a) == format_csv(b));
  // 3 ratios x 3 weights x 2 modes of PSO, plus the exact cross-check at zero overlap
  CHECK(a.size() == 3 * 3 * 2 + 3 * 2);
  CHECK(a[0].solver == SolverKind::ExactOrthogonal);
  CHECK(a[1].solver == SolverKind::PSO);

  const auto dir = temp_dir("overlap");
  write_csv(a, dir / "o.csv");
  const auto reread = read_csv(dir / "o.csv");
  CHECK(audit_rows(cfg, reread).empty());

  auto tampered = reread;
  tampered[3].report.rate_access *= 1.01;
  CHECK(audit_rows(cfg, tampered).size() >= 1);

  const auto svg = render_svg(a);
  // PSO: 3 weights x 2 modes; exact: 3 weights x 2 modes (one point each)
  CHECK(count(svg, "<polyline") == 12);
  std::smatch m;
  const std::regex first_tick(R"(text-anchor="middle">0</text>)");
  CHECK(std::regex_search(svg, m, first_tick));
  CHECK(svg.find(">1</text>") != std::string::npos);
}

TEST_CASE("single solve runs the selected solvers") {
  auto cfg = parse_config(R"({"solvers": ["exact", "pso"]})");
  const auto rows = run_single(cfg);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].solver == SolverKind::ExactOrthogonal);
  CHECK(rows[0].status == "ok");
  CHECK(rows[1].status == "ok");
  // an invalid config never reaches the solvers
  cfg.solvers = {};
  CHECK_THROWS_AS(run_single(cfg), ValidationError);
}
