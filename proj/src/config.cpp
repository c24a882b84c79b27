#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "satiab/errors.hpp"
#include "satiab/experiment.hpp"
#include "satiab/linkbudget.hpp"

namespace satiab {

using nlohmann::json;

ScenarioParams build_scenario(const ScenarioInputs& in) {
  SatelliteParams sat;
  sat.antenna_gain = db_to_linear(in.satellite_gain_dbi);
  sat.aperture_radius = in.aperture_radius_m;
  sat.carrier_frequency = in.carrier_frequency_ghz * 1e9;
  sat.altitude = in.altitude_km * 1e3;
  require_valid(sat);

  const auto ue = make_ground_node(sat, db_to_linear(in.ue_gain_dbi),
                                   degrees_to_radians(in.boresight_ue_deg));
  const auto bs = make_ground_node(sat, db_to_linear(in.bs_gain_dbi),
                                   degrees_to_radians(in.boresight_bs_deg));

  ScenarioParams scn;
  scn.total_power = dbm_to_watts(in.total_power_dbm);
  scn.total_bandwidth = in.total_bandwidth_mhz * 1e6;
  scn.overlap_bandwidth = in.overlap_mhz * 1e6;
  // Densities are given per Hz; dBm/Hz -> W/Hz.
  scn.noise_density = dbm_to_watts(in.noise_density_dbm_hz);
  scn.interference_density = dbm_to_watts(in.interference_density_dbm_hz);
  scn.access_weight = in.access_weight;
  scn.duplex = in.duplex;
  scn.beta_ue = channel_gain(sat, ue);
  scn.beta_bs = channel_gain(sat, bs);
  require_valid(scn);
  return scn;
}

std::vector<double> PowerSweep::points() const {
  std::vector<double> out;
  if (!(step_db > 0.0) || max_dbm < min_dbm) return out;
  const auto count = static_cast<long>(std::floor((max_dbm - min_dbm) / step_db + 1e-9)) + 1;
  for (long k = 0; k < count; ++k) out.push_back(min_dbm + static_cast<double>(k) * step_db);
  return out;
}

std::vector<double> OverlapSweep::ratios() const {
  std::vector<double> out;
  if (points < 2) return out;
  for (int k = 0; k < points; ++k)
    out.push_back(static_cast<double>(k) / static_cast<double>(points - 1));
  return out;
}

SolverSet parse_solver_list(std::string_view text) {
  SolverSet s;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t comma = text.find(',', start);
    std::string_view item = text.substr(start, comma == std::string_view::npos ? text.npos : comma - start);
    while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
    while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
    if (item == "exact")
      s.exact = true;
    else if (item == "pso")
      s.pso = true;
    else if (item == "oracle")
      s.oracle = true;
    else if (!item.empty())
      throw ParseError("unknown solver '" + std::string(item) + "' (expected exact, pso, oracle)");
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return s;
}

std::string to_string(const SolverSet& s) {
  std::string out;
  auto add = [&](bool on, const char* name) {
    if (!on) return;
    if (!out.empty()) out += ',';
    out += name;
  };
  add(s.exact, "exact");
  add(s.pso, "pso");
  add(s.oracle, "oracle");
  return out;
}

bool same_config(const ExperimentConfig& a, const ExperimentConfig& b) {
  const auto& p = a.pso;
  const auto& q = b.pso;
  return a.scenario == b.scenario && a.sweep == b.sweep && a.solvers == b.solvers &&
         a.oracle_resolution == b.oracle_resolution && a.output_path == b.output_path &&
         p.population_size == q.population_size && p.max_iterations == q.max_iterations &&
         p.learning_factor_1 == q.learning_factor_1 && p.learning_factor_2 == q.learning_factor_2 &&
         p.inertia_weight == q.inertia_weight && p.rng_seed == q.rng_seed &&
         p.neighborhood_includes_self == q.neighborhood_includes_self;
}

std::vector<std::string> config_violations(const ExperimentConfig& cfg) {
  std::vector<std::string> out;
  try {
    build_scenario(cfg.scenario);
  } catch (const ValidationError& e) {
    out.insert(out.end(), e.problems().begin(), e.problems().end());
  }
  for (auto& p : pso_config_violations(cfg.pso)) out.push_back(std::move(p));

  if (const auto* ps = std::get_if<PowerSweep>(&cfg.sweep)) {
    if (!(ps->step_db > 0.0)) out.emplace_back("power sweep step must be positive");
    if (ps->max_dbm < ps->min_dbm) out.emplace_back("power sweep range is empty");
    if (ps->altitudes_km.empty()) out.emplace_back("power sweep needs at least one altitude");
    for (double a : ps->altitudes_km)
      if (!(a > 0.0)) out.emplace_back("power sweep altitudes must be positive");
    if (cfg.scenario.overlap_mhz != 0.0) out.emplace_back("power sweep requires zero overlap");
  } else if (const auto* os = std::get_if<OverlapSweep>(&cfg.sweep)) {
    if (os->points < 2) out.emplace_back("overlap sweep needs at least 2 points");
    if (os->access_weights.empty()) out.emplace_back("overlap sweep needs at least one access weight");
    for (double e : os->access_weights)
      if (!(e > 0.0 && e <= 1.0)) out.emplace_back("overlap sweep access weights must lie in (0, 1]");
    if (!cfg.solvers.pso) out.emplace_back("overlap sweep requires the pso solver");
  }

  if (!cfg.solvers.any()) out.emplace_back("at least one solver must be selected");
  if (cfg.solvers.exact && cfg.scenario.overlap_mhz != 0.0)
    out.emplace_back("exact solver is only available with zero overlap");
  if (cfg.oracle_resolution < 10) out.emplace_back("oracle resolution must be at least 10");
  return out;
}

namespace {

std::pair<std::size_t, std::size_t> line_and_column(std::string_view text, std::size_t byte) {
  std::size_t line = 1;
  std::size_t col = 1;
  for (std::size_t i = 0; i < std::min(byte, text.size()); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

class Reader {
public:
  Reader(const json& j, std::string_view source, std::string prefix = {})
      : j_(j), source_(source), prefix_(std::move(prefix)) {
    if (!j_.is_object()) fail("", "expected a JSON object");
  }

  void number(const char* key, double& out) {
    if (auto* v = find(key)) {
      if (!v->is_number()) fail(key, "expected a number");
      out = v->get<double>();
      if (!std::isfinite(out)) fail(key, "expected a finite number");
    }
  }

  void integer(const char* key, int& out) {
    if (auto* v = find(key)) {
      if (!v->is_number_integer()) fail(key, "expected an integer");
      out = v->get<int>();
    }
  }

  void unsigned64(const char* key, std::uint64_t& out) {
    if (auto* v = find(key)) {
      if (!v->is_number_unsigned()) fail(key, "expected a nonnegative integer");
      out = v->get<std::uint64_t>();
    }
  }

  void boolean(const char* key, bool& out) {
    if (auto* v = find(key)) {
      if (!v->is_boolean()) fail(key, "expected true or false");
      out = v->get<bool>();
    }
  }

  void string(const char* key, std::string& out) {
    if (auto* v = find(key)) {
      if (!v->is_string()) fail(key, "expected a string");
      out = v->get<std::string>();
    }
  }

  void numbers(const char* key, std::vector<double>& out) {
    if (auto* v = find(key)) {
      if (!v->is_array()) fail(key, "expected an array of numbers");
      out.clear();
      for (const auto& e : *v) {
        if (!e.is_number()) fail(key, "expected an array of numbers");
        out.push_back(e.get<double>());
      }
    }
  }

  const json* find(const char* key) {
    seen_.emplace_back(key);
    auto it = j_.find(key);
    return it == j_.end() ? nullptr : &*it;
  }

  // Call after every known key has been read.
  void reject_unknown() const {
    for (auto it = j_.begin(); it != j_.end(); ++it)
      if (std::find(seen_.begin(), seen_.end(), it.key()) == seen_.end())
        fail(it.key(), "unknown key");
  }

  [[noreturn]] void fail(const std::string& key, const std::string& what) const {
    std::string where = std::string(source_);
    if (!key.empty() || !prefix_.empty()) where += ": key '" + prefix_ + key + "'";
    throw ParseError(where + ": " + what);
  }

private:
  const json& j_;
  std::string_view source_;
  std::string prefix_;
  std::vector<std::string> seen_;
};

}  // namespace

ExperimentConfig parse_config(std::string_view text, std::string_view source) {
  json root;
  try {
    root = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    const auto [line, col] = line_and_column(text, e.byte == 0 ? 0 : e.byte - 1);
    throw ParseError(std::string(source) + ":" + std::to_string(line) + ":" + std::to_string(col) +
                     ": malformed JSON (" + e.what() + ")");
  }

  ExperimentConfig cfg;
  Reader r(root, source);
  auto& s = cfg.scenario;
  r.number("total_bandwidth_mhz", s.total_bandwidth_mhz);
  r.number("total_power_dbm", s.total_power_dbm);
  r.number("noise_density_dbm_hz", s.noise_density_dbm_hz);
  r.number("interference_density_dbm_hz", s.interference_density_dbm_hz);
  r.number("satellite_gain_dbi", s.satellite_gain_dbi);
  r.number("bs_gain_dbi", s.bs_gain_dbi);
  r.number("ue_gain_dbi", s.ue_gain_dbi);
  r.number("carrier_frequency_ghz", s.carrier_frequency_ghz);
  r.number("aperture_radius_m", s.aperture_radius_m);
  r.number("altitude_km", s.altitude_km);
  r.number("boresight_ue_deg", s.boresight_ue_deg);
  r.number("boresight_bs_deg", s.boresight_bs_deg);
  r.number("overlap_mhz", s.overlap_mhz);
  r.number("access_weight", s.access_weight);
  std::string duplex = std::string(to_string(s.duplex));
  r.string("duplex", duplex);
  try {
    s.duplex = parse_duplex(duplex);
  } catch (const ParseError& e) {
    r.fail("duplex", e.what());
  }

  auto& p = cfg.pso;
  r.integer("pso_population_size", p.population_size);
  r.integer("pso_max_iterations", p.max_iterations);
  r.number("pso_inertia_weight", p.inertia_weight);
  r.number("pso_learning_factor_1", p.learning_factor_1);
  r.number("pso_learning_factor_2", p.learning_factor_2);
  r.boolean("pso_neighborhood_includes_self", p.neighborhood_includes_self);
  r.unsigned64("seed", p.rng_seed);

  r.integer("oracle_resolution", cfg.oracle_resolution);
  r.string("output_path", cfg.output_path);

  if (const json* sv = r.find("solvers")) {
    if (!sv->is_array()) r.fail("solvers", "expected an array of solver names");
    std::string joined;
    for (const auto& e : *sv) {
      if (!e.is_string()) r.fail("solvers", "expected an array of solver names");
      joined += e.get<std::string>() + ",";
    }
    try {
      cfg.solvers = parse_solver_list(joined);
    } catch (const ParseError& e) {
      r.fail("solvers", e.what());
    }
  } else {
    cfg.solvers = SolverSet{s.overlap_mhz == 0.0, true, false};
  }

  if (const json* sw = r.find("sweep")) {
    Reader sr(*sw, source, "sweep.");
    std::string kind = "none";
    sr.string("kind", kind);
    if (kind == "power") {
      PowerSweep ps;
      sr.number("min_dbm", ps.min_dbm);
      sr.number("max_dbm", ps.max_dbm);
      sr.number("step_db", ps.step_db);
      sr.numbers("altitudes_km", ps.altitudes_km);
      cfg.sweep = ps;
    } else if (kind == "overlap") {
      OverlapSweep os;
      sr.integer("points", os.points);
      sr.numbers("access_weights", os.access_weights);
      cfg.sweep = os;
    } else if (kind != "none") {
      sr.fail("kind", "expected none, power or overlap");
    }
    sr.reject_unknown();
  }
  r.reject_unknown();

  auto problems = config_violations(cfg);
  if (!problems.empty()) throw ValidationError(std::move(problems));
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open config file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str(), path.string());
}

std::string write_config(const ExperimentConfig& cfg) {
  const auto& s = cfg.scenario;
  const auto& p = cfg.pso;
  json j = {
      {"total_bandwidth_mhz", s.total_bandwidth_mhz},
      {"total_power_dbm", s.total_power_dbm},
      {"noise_density_dbm_hz", s.noise_density_dbm_hz},
      {"interference_density_dbm_hz", s.interference_density_dbm_hz},
      {"satellite_gain_dbi", s.satellite_gain_dbi},
      {"bs_gain_dbi", s.bs_gain_dbi},
      {"ue_gain_dbi", s.ue_gain_dbi},
      {"carrier_frequency_ghz", s.carrier_frequency_ghz},
      {"aperture_radius_m", s.aperture_radius_m},
      {"altitude_km", s.altitude_km},
      {"boresight_ue_deg", s.boresight_ue_deg},
      {"boresight_bs_deg", s.boresight_bs_deg},
      {"overlap_mhz", s.overlap_mhz},
      {"access_weight", s.access_weight},
      {"duplex", std::string(to_string(s.duplex))},
      {"pso_population_size", p.population_size},
      {"pso_max_iterations", p.max_iterations},
      {"pso_inertia_weight", p.inertia_weight},
      {"pso_learning_factor_1", p.learning_factor_1},
      {"pso_learning_factor_2", p.learning_factor_2},
      {"pso_neighborhood_includes_self", p.neighborhood_includes_self},
      {"seed", p.rng_seed},
      {"oracle_resolution", cfg.oracle_resolution},
      {"output_path", cfg.output_path},
  };
  json solvers = json::array();
  if (cfg.solvers.exact) solvers.push_back("exact");
  if (cfg.solvers.pso) solvers.push_back("pso");
  if (cfg.solvers.oracle) solvers.push_back("oracle");
  j["solvers"] = solvers;

  if (const auto* ps = std::get_if<PowerSweep>(&cfg.sweep)) {
    j["sweep"] = {{"kind", "power"},
                  {"min_dbm", ps->min_dbm},
                  {"max_dbm", ps->max_dbm},
                  {"step_db", ps->step_db},
                  {"altitudes_km", ps->altitudes_km}};
  } else if (const auto* os = std::get_if<OverlapSweep>(&cfg.sweep)) {
    j["sweep"] = {{"kind", "overlap"}, {"points", os->points}, {"access_weights", os->access_weights}};
  } else {
    j["sweep"] = {{"kind", "none"}};
  }
  return j.dump(2) + "\n";
}

}  // namespace satiab
