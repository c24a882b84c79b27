#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "satiab/errors.hpp"
#include "satiab/experiment.hpp"

namespace satiab {

namespace {

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

std::string quote(const std::string& field) {
  if (field.find_first_of(",\"\r\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

// RFC 4180 records; quoted fields may contain commas, quotes and newlines.
std::vector<std::vector<std::string>> split_records(std::string_view text) {
  std::vector<std::vector<std::string>> records;
  std::vector<std::string> record;
  std::string field;
  bool quoted = false;
  bool any = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    any = true;
    if (quoted) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      record.push_back(std::move(field));
      field.clear();
    } else if (c == '\r' || c == '\n') {
      if (c == '\r' && i + 1 < text.size() && text[i + 1] == '\n') ++i;
      record.push_back(std::move(field));
      field.clear();
      records.push_back(std::move(record));
      record.clear();
      any = false;
    } else {
      field += c;
    }
  }
  if (quoted) throw ParseError("CSV: unterminated quoted field");
  if (any) {
    record.push_back(std::move(field));
    records.push_back(std::move(record));
  }
  return records;
}

double to_double(const std::string& s, std::size_t line, const char* column) {
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size())
    throw ParseError("CSV line " + std::to_string(line) + ": column " + column + " is not a number");
  return v;
}

SolverKind parse_solver(const std::string& s, std::size_t line) {
  if (s == "exact") return SolverKind::ExactOrthogonal;
  if (s == "pso") return SolverKind::PSO;
  if (s == "oracle") return SolverKind::GridOracle;
  throw ParseError("CSV line " + std::to_string(line) + ": unknown solver '" + s + "'");
}

}  // namespace

const std::vector<std::string>& csv_columns() {
  static const std::vector<std::string> columns{
      "sweep",           "x",                 "total_power_dbm",    "overlap_ratio",
      "access_weight",   "duplex",            "altitude_km",        "solver",
      "status",          "p_ue_w",            "p_bs_w",             "w_a_mhz",
      "w_b_mhz",         "rate_access_mbps",  "rate_backhaul_mbps", "throughput_mbps",
      "zeta_mbps",       "fitness_mbps",      "iterations",         "converged"};
  return columns;
}

std::string format_csv(const std::vector<SweepRow>& rows) {
  std::string out;
  const auto& cols = csv_columns();
  for (std::size_t i = 0; i < cols.size(); ++i) {
    if (i) out += ',';
    out += cols[i];
  }
  out += "\r\n";
  for (const auto& r : rows) {
    const auto& a = r.allocation;
    const auto& rep = r.report;
    const std::string fields[] = {
        quote(r.sweep),
        num(r.x),
        num(r.total_power_dbm),
        num(r.overlap_ratio),
        num(r.access_weight),
        std::string(to_string(r.duplex)),
        num(r.altitude_km),
        std::string(to_string(r.solver)),
        quote(r.status),
        num(a.p_ue),
        num(a.p_bs),
        num(a.w_a / 1e6),
        num(a.w_b / 1e6),
        num(rep.rate_access / 1e6),
        num(rep.rate_backhaul / 1e6),
        num(rep.throughput / 1e6),
        num(rep.maxmin_level / 1e6),
        num(rep.fitness / 1e6),
        std::to_string(r.iterations),
        r.converged ? "true" : "false",
    };
    bool first = true;
    for (const auto& f : fields) {
      if (!first) out += ',';
      out += f;
      first = false;
    }
    out += "\r\n";
  }
  return out;
}

void write_csv(const std::vector<SweepRow>& rows, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write CSV file " + path.string());
  out << format_csv(rows);
  if (!out) throw IoError("failed while writing CSV file " + path.string());
}

std::vector<SweepRow> parse_csv(std::string_view text) {
  const auto records = split_records(text);
  if (records.empty() || records.front() != csv_columns())
    throw ParseError("CSV: header does not match the expected column layout");

  std::vector<SweepRow> rows;
  for (std::size_t i = 1; i < records.size(); ++i) {
    const auto& f = records[i];
    const std::size_t line = i + 1;
    if (f.size() != csv_columns().size())
      throw ParseError("CSV line " + std::to_string(line) + ": wrong number of fields");
    SweepRow r;
    r.sweep = f[0];
    r.x = to_double(f[1], line, "x");
    r.total_power_dbm = to_double(f[2], line, "total_power_dbm");
    r.overlap_ratio = to_double(f[3], line, "overlap_ratio");
    r.access_weight = to_double(f[4], line, "access_weight");
    r.duplex = parse_duplex(f[5]);
    r.altitude_km = to_double(f[6], line, "altitude_km");
    r.solver = parse_solver(f[7], line);
    r.status = f[8];
    r.allocation = {to_double(f[9], line, "p_ue_w"), to_double(f[10], line, "p_bs_w"),
                    to_double(f[11], line, "w_a_mhz") * 1e6, to_double(f[12], line, "w_b_mhz") * 1e6};
    r.report.rate_access = to_double(f[13], line, "rate_access_mbps") * 1e6;
    r.report.rate_backhaul = to_double(f[14], line, "rate_backhaul_mbps") * 1e6;
    r.report.throughput = to_double(f[15], line, "throughput_mbps") * 1e6;
    r.report.maxmin_level = to_double(f[16], line, "zeta_mbps") * 1e6;
    r.report.fitness = to_double(f[17], line, "fitness_mbps") * 1e6;
    r.iterations = static_cast<std::uint64_t>(to_double(f[18], line, "iterations"));
    r.converged = f[19] == "true";
    rows.push_back(std::move(r));
  }
  return rows;
}

std::vector<SweepRow> read_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open CSV file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_csv(buf.str());
}

}  // namespace satiab
