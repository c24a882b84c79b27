#include "satiab/linkbudget.hpp"

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "satiab/errors.hpp"

namespace satiab {

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

double linear_to_db(double ratio) { return 10.0 * std::log10(ratio); }

double dbm_to_watts(double dbm) { return db_to_linear(dbm - 30.0); }

double watts_to_dbm(double watts) { return linear_to_db(watts) + 30.0; }

double degrees_to_radians(double deg) { return deg * kPi / 180.0; }

namespace {

// Ascending power series; long double keeps the cancellation error near
// 1e-15 absolute at the top of the range.
double j1_series(double x) {
  const long double half = static_cast<long double>(x) / 2.0L;
  const long double half_sq = half * half;
  long double term = half;  // m = 0
  long double sum = term;
  for (int m = 1; m < 80; ++m) {
    term *= -half_sq / (static_cast<long double>(m) * static_cast<long double>(m + 1));
    sum += term;
    if (std::fabs(term) < 1e-21L * std::fabs(sum) && m > 4) break;
  }
  return static_cast<double>(sum);
}

// Hankel asymptotic expansion, x > 0. Terms are summed until they stop
// shrinking (the series diverges past that point).
double j1_asymptotic(double x) {
  constexpr double mu = 4.0;  // 4 * order^2
  const double eight_x = 8.0 * x;
  double p = 1.0;
  double q = 0.0;
  double term = 1.0;
  double prev_abs = std::numeric_limits<double>::infinity();
  for (int k = 1; k < 60; ++k) {
    const double odd = 2.0 * k - 1.0;
    term *= (mu - odd * odd) / (k * eight_x);
    const double mag = std::fabs(term);
    if (mag >= prev_abs) break;
    prev_abs = mag;
    // k odd feeds Q with sign (+, -, +, ...); k even feeds P with sign (-, +, ...).
    if (k % 2 == 1) {
      q += ((k / 2) % 2 == 0 ? term : -term);
    } else {
      p += ((k / 2) % 2 == 1 ? -term : term);
    }
    if (mag < 1e-17) break;
  }
  const double chi = x - 0.75 * kPi;
  return std::sqrt(2.0 / (kPi * x)) * (p * std::cos(chi) - q * std::sin(chi));
}

}  // namespace

double bessel_j1(double x) {
  const double ax = std::fabs(x);
  const double value = ax <= 12.0 ? j1_series(ax) : j1_asymptotic(ax);
  return x < 0.0 ? -value : value;
}

double antenna_pattern(double theta, double aperture_radius, double carrier_frequency) {
  if (theta == 0.0) return 1.0;
  const double k = 2.0 * kPi * carrier_frequency / kSpeedOfLight;
  const double u = k * aperture_radius * std::sin(theta);
  return std::fabs(bessel_j1(u) / u);
}

double free_space_path_loss(double carrier_frequency, double distance) {
  const double amplitude = 4.0 * kPi * carrier_frequency * distance / kSpeedOfLight;
  return amplitude * amplitude;
}

double slant_distance(double altitude, double boresight_angle) {
  return altitude / std::cos(boresight_angle);
}

void require_valid(const SatelliteParams& sat) {
  std::vector<std::string> problems;
  auto positive = [&](double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v)) problems.push_back(std::string(name) + " must be positive");
  };
  positive(sat.antenna_gain, "satellite antenna gain");
  positive(sat.aperture_radius, "aperture radius");
  positive(sat.carrier_frequency, "carrier frequency");
  positive(sat.altitude, "altitude");
  if (!problems.empty()) throw ValidationError(std::move(problems));
}

void require_valid(const GroundNodeParams& node) {
  std::vector<std::string> problems;
  if (!(node.antenna_gain > 0.0)) problems.emplace_back("ground antenna gain must be positive");
  if (!(node.slant_distance > 0.0)) problems.emplace_back("slant distance must be positive");
  if (!(std::fabs(node.boresight_angle) < kPi / 2.0))
    problems.emplace_back("boresight angle must be within (-90, 90) degrees");
  if (!problems.empty()) throw ValidationError(std::move(problems));
}

GroundNodeParams make_ground_node(const SatelliteParams& sat, double antenna_gain,
                                  double boresight_angle) {
  GroundNodeParams node{antenna_gain, boresight_angle,
                        slant_distance(sat.altitude, boresight_angle)};
  require_valid(node);
  return node;
}

double channel_gain(const SatelliteParams& sat, const GroundNodeParams& node) {
  const double pattern =
      antenna_pattern(node.boresight_angle, sat.aperture_radius, sat.carrier_frequency);
  return sat.antenna_gain * node.antenna_gain * pattern /
         free_space_path_loss(sat.carrier_frequency, node.slant_distance);
}

}  // namespace satiab
