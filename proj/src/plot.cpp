#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>

#include "satiab/errors.hpp"
#include "satiab/experiment.hpp"

namespace satiab {

namespace {

constexpr double kWidth = 800.0;
constexpr double kHeight = 520.0;
constexpr double kLeft = 80.0;
constexpr double kRight = 230.0;  // legend column
constexpr double kTop = 30.0;
constexpr double kBottom = 60.0;

const char* const kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd",
                                "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

std::string fmt(double v, const char* spec = "%.4g") {
  char buf[40];
  std::snprintf(buf, sizeof(buf), spec, v);
  return buf;
}

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string series_label(const SweepRow& r) {
  std::string label(to_string(r.duplex));
  if (r.sweep == "overlap")
    label += " eps=" + fmt(r.access_weight, "%g");
  else
    label += " " + fmt(r.altitude_km, "%g") + " km";
  label += " (" + std::string(to_string(r.solver)) + ")";
  return label;
}

}  // namespace

std::string render_svg(const std::vector<SweepRow>& rows) {
  // Series keep first-appearance order so output is deterministic.
  std::vector<std::string> order;
  std::map<std::string, std::vector<std::pair<double, double>>> series;
  for (const auto& r : rows) {
    if (r.status != "ok") continue;
    const std::string key = series_label(r);
    if (!series.count(key)) order.push_back(key);
    series[key].emplace_back(r.x, r.report.throughput / 1e6);
  }
  if (order.empty()) throw ValidationError({"plot needs at least one successful row"});

  const bool overlap = rows.front().sweep == "overlap";
  double x_min = overlap ? 0.0 : std::numeric_limits<double>::infinity();
  double x_max = overlap ? 1.0 : -std::numeric_limits<double>::infinity();
  double y_max = 0.0;
  for (auto& [key, pts] : series) {
    std::sort(pts.begin(), pts.end());
    for (auto [x, y] : pts) {
      if (!overlap) {
        x_min = std::min(x_min, x);
        x_max = std::max(x_max, x);
      }
      y_max = std::max(y_max, y);
    }
  }
  if (x_max <= x_min) x_max = x_min + 1.0;
  if (y_max <= 0.0) y_max = 1.0;
  y_max *= 1.05;

  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;
  auto px = [&](double x) { return kLeft + (x - x_min) / (x_max - x_min) * plot_w; };
  auto py = [&](double y) { return kTop + plot_h - y / y_max * plot_h; };

  const std::string x_label =
      overlap ? "Normalized bandwidth overlap w_o/W" : "Total transmit power (dBm)";
  std::string svg;
  svg += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" + fmt(kWidth) +
         "\" height=\"" + fmt(kHeight) + "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  svg += "<rect x=\"0\" y=\"0\" width=\"" + fmt(kWidth) + "\" height=\"" + fmt(kHeight) +
         "\" fill=\"white\"/>\n";
  svg += "<rect x=\"" + fmt(kLeft) + "\" y=\"" + fmt(kTop) + "\" width=\"" + fmt(plot_w) +
         "\" height=\"" + fmt(plot_h) + "\" fill=\"none\" stroke=\"black\"/>\n";

  for (int i = 0; i <= 5; ++i) {
    const double xv = x_min + (x_max - x_min) * i / 5.0;
    const double yv = y_max * i / 5.0;
    svg += "<text x=\"" + fmt(px(xv)) + "\" y=\"" + fmt(kTop + plot_h + 18) +
           "\" text-anchor=\"middle\">" + fmt(xv, "%.3g") + "</text>\n";
    svg += "<text x=\"" + fmt(kLeft - 6) + "\" y=\"" + fmt(py(yv) + 4) + "\" text-anchor=\"end\">" +
           fmt(yv, "%.4g") + "</text>\n";
  }
  svg += "<text x=\"" + fmt(kLeft + plot_w / 2) + "\" y=\"" + fmt(kHeight - 15) +
         "\" text-anchor=\"middle\">" + xml_escape(x_label) + "</text>\n";
  svg += "<text transform=\"translate(18," + fmt(kTop + plot_h / 2) +
         ") rotate(-90)\" text-anchor=\"middle\">Throughput (Mbps)</text>\n";

  for (std::size_t s = 0; s < order.size(); ++s) {
    const char* color = kPalette[s % std::size(kPalette)];
    std::string points;
    for (auto [x, y] : series[order[s]]) {
      if (!points.empty()) points += ' ';
      points += fmt(px(x), "%.2f") + "," + fmt(py(y), "%.2f");
    }
    svg += "<polyline fill=\"none\" stroke=\"" + std::string(color) +
           "\" stroke-width=\"2\" points=\"" + points + "\"/>\n";
    for (auto [x, y] : series[order[s]])
      svg += "<circle cx=\"" + fmt(px(x), "%.2f") + "\" cy=\"" + fmt(py(y), "%.2f") +
             "\" r=\"3\" fill=\"" + color + "\"/>\n";

    const double ly = kTop + 10 + 18.0 * static_cast<double>(s);
    const double lx = kWidth - kRight + 15;
    svg += "<line x1=\"" + fmt(lx) + "\" y1=\"" + fmt(ly) + "\" x2=\"" + fmt(lx + 20) + "\" y2=\"" +
           fmt(ly) + "\" stroke=\"" + color + "\" stroke-width=\"2\"/>\n";
    svg += "<text x=\"" + fmt(lx + 26) + "\" y=\"" + fmt(ly + 4) + "\">" + xml_escape(order[s]) +
           "</text>\n";
  }
  svg += "</svg>\n";
  return svg;
}

void emit_plot(const std::vector<SweepRow>& rows, const std::filesystem::path& path) {
  const std::string svg = render_svg(rows);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write plot file " + path.string());
  out << svg;
  if (!out) throw IoError("failed while writing plot file " + path.string());
}

}  // namespace satiab
