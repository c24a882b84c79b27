#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/numpy.h>
#include <pybind11/stl/filesystem.h>

#include "satiab/allocator.hpp"
#include "satiab/errors.hpp"
#include "satiab/experiment.hpp"
#include "satiab/linkbudget.hpp"
#include "satiab/ratemodel.hpp"

namespace py = pybind11;
using namespace satiab;

PYBIND11_MODULE(_core, m) {
  m.doc() = "Power and bandwidth allocation for satellite integrated access and backhaul";

  py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<InvalidAllocation>(m, "InvalidAllocation", PyExc_ValueError);
  py::register_exception<Infeasible>(m, "Infeasible", PyExc_ArithmeticError);
  py::register_exception<NonConvergence>(m, "NonConvergence", PyExc_RuntimeError);
  py::register_exception<IoError>(m, "IoError", PyExc_OSError);

  // link budget
  m.def("db_to_linear", &db_to_linear, py::arg("db"));
  m.def("linear_to_db", &linear_to_db, py::arg("ratio"));
  m.def("dbm_to_watts", &dbm_to_watts, py::arg("dbm"));
  m.def("bessel_j1", py::vectorize(&bessel_j1), py::arg("x"));
  m.def("antenna_pattern", &antenna_pattern, py::arg("theta"), py::arg("aperture_radius"),
        py::arg("carrier_frequency"));
  m.def("free_space_path_loss", &free_space_path_loss, py::arg("carrier_frequency"), py::arg("distance"));
  m.def("slant_distance", &slant_distance, py::arg("altitude"), py::arg("boresight_angle"));

  py::class_<SatelliteParams>(m, "SatelliteParams")
      .def(py::init<>())
      .def(py::init([](double g, double a, double f, double h) { return SatelliteParams{g, a, f, h}; }),
           py::arg("antenna_gain"), py::arg("aperture_radius"), py::arg("carrier_frequency"),
           py::arg("altitude"))
      .def_readwrite("antenna_gain", &SatelliteParams::antenna_gain)
      .def_readwrite("aperture_radius", &SatelliteParams::aperture_radius)
      .def_readwrite("carrier_frequency", &SatelliteParams::carrier_frequency)
      .def_readwrite("altitude", &SatelliteParams::altitude);

  py::class_<GroundNodeParams>(m, "GroundNodeParams")
      .def(py::init<>())
      .def(py::init([](double g, double th, double d) { return GroundNodeParams{g, th, d}; }),
           py::arg("antenna_gain"), py::arg("boresight_angle"), py::arg("slant_distance"))
      .def_readwrite("antenna_gain", &GroundNodeParams::antenna_gain)
      .def_readwrite("boresight_angle", &GroundNodeParams::boresight_angle)
      .def_readwrite("slant_distance", &GroundNodeParams::slant_distance);

  m.def("make_ground_node", &make_ground_node, py::arg("sat"), py::arg("antenna_gain"),
        py::arg("boresight_angle"));
  m.def("channel_gain", &channel_gain, py::arg("sat"), py::arg("node"));

  // rate model
  py::enum_<DuplexMode>(m, "DuplexMode").value("FDD", DuplexMode::FDD).value("TDD", DuplexMode::TDD);
  m.def("duplex_factors", [](DuplexMode mode) {
    const auto f = duplex_factors(mode);
    return py::make_tuple(f.rate_share, f.bandwidth_scale);
  });

  py::class_<ScenarioParams>(m, "ScenarioParams")
      .def(py::init<>())
      .def_readwrite("total_power", &ScenarioParams::total_power)
      .def_readwrite("total_bandwidth", &ScenarioParams::total_bandwidth)
      .def_readwrite("overlap_bandwidth", &ScenarioParams::overlap_bandwidth)
      .def_readwrite("noise_density", &ScenarioParams::noise_density)
      .def_readwrite("interference_density", &ScenarioParams::interference_density)
      .def_readwrite("access_weight", &ScenarioParams::access_weight)
      .def_readwrite("duplex", &ScenarioParams::duplex)
      .def_readwrite("beta_ue", &ScenarioParams::beta_ue)
      .def_readwrite("beta_bs", &ScenarioParams::beta_bs)
      .def_property_readonly("overlap_flag", &ScenarioParams::overlap_flag);

  py::class_<Allocation>(m, "Allocation")
      .def(py::init<>())
      .def(py::init([](double pu, double pb, double wa, double wb) { return Allocation{pu, pb, wa, wb}; }),
           py::arg("p_ue"), py::arg("p_bs"), py::arg("w_a"), py::arg("w_b"))
      .def_readwrite("p_ue", &Allocation::p_ue)
      .def_readwrite("p_bs", &Allocation::p_bs)
      .def_readwrite("w_a", &Allocation::w_a)
      .def_readwrite("w_b", &Allocation::w_b)
      .def("__repr__", [](const Allocation& a) {
        return "Allocation(p_ue=" + std::to_string(a.p_ue) + ", p_bs=" + std::to_string(a.p_bs) +
               ", w_a=" + std::to_string(a.w_a) + ", w_b=" + std::to_string(a.w_b) + ")";
      });

  py::class_<RateReport>(m, "RateReport")
      .def_readonly("rate_access", &RateReport::rate_access)
      .def_readonly("rate_backhaul", &RateReport::rate_backhaul)
      .def_readonly("throughput", &RateReport::throughput)
      .def_readonly("maxmin_level", &RateReport::maxmin_level)
      .def_readonly("fitness", &RateReport::fitness);

  m.def("make_scenario", &make_scenario, py::arg("scn"), py::arg("overlap_flag") = py::none());
  m.def("access_rate", &access_rate, py::arg("scn"), py::arg("alloc"));
  m.def("backhaul_rate", &backhaul_rate, py::arg("scn"), py::arg("alloc"));
  m.def("evaluate", &evaluate, py::arg("scn"), py::arg("alloc"));
  m.def(
      "validate",
      [](const ScenarioParams& scn, const Allocation& a, double tol) {
        std::vector<std::string> out;
        for (auto c : validate(scn, a, tol)) out.emplace_back(to_string(c));
        return out;
      },
      py::arg("scn"), py::arg("alloc"), py::arg("tol") = 1e-6);

  // allocator
  py::enum_<SolverKind>(m, "SolverKind")
      .value("ExactOrthogonal", SolverKind::ExactOrthogonal)
      .value("PSO", SolverKind::PSO)
      .value("GridOracle", SolverKind::GridOracle);

  py::class_<SolveResult>(m, "SolveResult")
      .def_readonly("allocation", &SolveResult::allocation)
      .def_readonly("report", &SolveResult::report)
      .def_readonly("solver", &SolveResult::solver)
      .def_readonly("iterations_used", &SolveResult::iterations_used)
      .def_readonly("converged", &SolveResult::converged);

  py::class_<PsoConfig>(m, "PsoConfig")
      .def(py::init<>())
      .def_readwrite("population_size", &PsoConfig::population_size)
      .def_readwrite("max_iterations", &PsoConfig::max_iterations)
      .def_readwrite("learning_factor_1", &PsoConfig::learning_factor_1)
      .def_readwrite("learning_factor_2", &PsoConfig::learning_factor_2)
      .def_readwrite("inertia_weight", &PsoConfig::inertia_weight)
      .def_readwrite("rng_seed", &PsoConfig::rng_seed)
      .def_readwrite("neighborhood_includes_self", &PsoConfig::neighborhood_includes_self);

  m.def("min_power_for_rate", &min_power_for_rate, py::arg("rate_target"), py::arg("bandwidth"),
        py::arg("beta"), py::arg("scn"));
  m.def("solve_orthogonal", [](const ScenarioParams& scn) { return solve_orthogonal(scn); }, py::arg("scn"));
  m.def("pso_solve", &pso_solve, py::arg("scn"), py::arg("cfg") = PsoConfig{},
        py::call_guard<py::gil_scoped_release>());
  m.def("grid_oracle", &grid_oracle, py::arg("scn"), py::arg("resolution"),
        py::call_guard<py::gil_scoped_release>());

  // experiments
  py::class_<ScenarioInputs>(m, "ScenarioInputs")
      .def(py::init<>())
      .def_readwrite("total_bandwidth_mhz", &ScenarioInputs::total_bandwidth_mhz)
      .def_readwrite("total_power_dbm", &ScenarioInputs::total_power_dbm)
      .def_readwrite("noise_density_dbm_hz", &ScenarioInputs::noise_density_dbm_hz)
      .def_readwrite("interference_density_dbm_hz", &ScenarioInputs::interference_density_dbm_hz)
      .def_readwrite("satellite_gain_dbi", &ScenarioInputs::satellite_gain_dbi)
      .def_readwrite("bs_gain_dbi", &ScenarioInputs::bs_gain_dbi)
      .def_readwrite("ue_gain_dbi", &ScenarioInputs::ue_gain_dbi)
      .def_readwrite("carrier_frequency_ghz", &ScenarioInputs::carrier_frequency_ghz)
      .def_readwrite("aperture_radius_m", &ScenarioInputs::aperture_radius_m)
      .def_readwrite("altitude_km", &ScenarioInputs::altitude_km)
      .def_readwrite("boresight_ue_deg", &ScenarioInputs::boresight_ue_deg)
      .def_readwrite("boresight_bs_deg", &ScenarioInputs::boresight_bs_deg)
      .def_readwrite("overlap_mhz", &ScenarioInputs::overlap_mhz)
      .def_readwrite("access_weight", &ScenarioInputs::access_weight)
      .def_readwrite("duplex", &ScenarioInputs::duplex);
  m.def("build_scenario", &build_scenario, py::arg("inputs"));

  py::class_<ExperimentConfig>(m, "ExperimentConfig")
      .def_readwrite("scenario", &ExperimentConfig::scenario)
      .def_readwrite("pso", &ExperimentConfig::pso)
      .def_readwrite("oracle_resolution", &ExperimentConfig::oracle_resolution)
      .def_readwrite("output_path", &ExperimentConfig::output_path);

  py::class_<SweepRow>(m, "SweepRow")
      .def_readonly("sweep", &SweepRow::sweep)
      .def_readonly("x", &SweepRow::x)
      .def_readonly("total_power_dbm", &SweepRow::total_power_dbm)
      .def_readonly("overlap_ratio", &SweepRow::overlap_ratio)
      .def_readonly("access_weight", &SweepRow::access_weight)
      .def_readonly("duplex", &SweepRow::duplex)
      .def_readonly("altitude_km", &SweepRow::altitude_km)
      .def_readonly("solver", &SweepRow::solver)
      .def_readonly("status", &SweepRow::status)
      .def_readonly("allocation", &SweepRow::allocation)
      .def_readonly("report", &SweepRow::report);

  m.def("parse_config", &parse_config, py::arg("json_text"), py::arg("source") = "<string>");
  m.def("load_config", &load_config, py::arg("path"));
  m.def("write_config", &write_config, py::arg("cfg"));
  m.def("run_single", [](const ExperimentConfig& c) { return run_single(c); }, py::arg("cfg"),
        py::call_guard<py::gil_scoped_release>());
  m.def("run_power_sweep", [](const ExperimentConfig& c) { return run_power_sweep(c); }, py::arg("cfg"),
        py::call_guard<py::gil_scoped_release>());
  m.def("run_overlap_sweep", [](const ExperimentConfig& c) { return run_overlap_sweep(c); },
        py::arg("cfg"), py::call_guard<py::gil_scoped_release>());
  m.def("format_csv", &format_csv, py::arg("rows"));
  m.def("write_csv", &write_csv, py::arg("rows"), py::arg("path"));
  m.def("render_svg", &render_svg, py::arg("rows"));
  m.def("audit_rows", &audit_rows, py::arg("cfg"), py::arg("rows"), py::arg("rel_tol") = 1e-6);
}
