#pragma once

// Link budget for the forward service links of a single LEO satellite.
// Everything here works in linear SI units (W, Hz, m, rad); decibel
// values are converted at the boundary with db_to_linear/linear_to_db.

namespace satiab {

inline constexpr double kSpeedOfLight = 299'792'458.0;  // m/s
inline constexpr double kPi = 3.14159265358979323846;

double db_to_linear(double db);
double linear_to_db(double ratio);

// dBm -> W and W -> dBm.
double dbm_to_watts(double dbm);
double watts_to_dbm(double watts);

double degrees_to_radians(double deg);

// Bessel function of the first kind, order one.
double bessel_j1(double x);

/// Normalized satellite antenna gain toward a node seen at `theta` off boresight.
///
/// Returns exactly 1 at theta == 0 and |J1(u)/u| with u = k a sin(theta)
/// otherwise, where k = 2 pi f_c / c. Note the off-axis branch tends to
/// 0.5 as theta -> 0, so the pattern is discontinuous at boresight.
double antenna_pattern(double theta, double aperture_radius, double carrier_frequency);

// (4 pi f d / c)^2 as a linear power ratio (>= 1 for far-field distances).
double free_space_path_loss(double carrier_frequency, double distance);

// Distance to a node at `boresight_angle` from nadir: altitude / cos(angle).
double slant_distance(double altitude, double boresight_angle);

struct SatelliteParams {
  double antenna_gain = 1.0;       // linear
  double aperture_radius = 1.0;    // m
  double carrier_frequency = 1.0;  // Hz
  double altitude = 1.0;           // m
};

struct GroundNodeParams {
  double antenna_gain = 1.0;     // linear
  double boresight_angle = 0.0;  // rad
  double slant_distance = 1.0;   // m
};

// Throws ValidationError when a field is out of range.
void require_valid(const SatelliteParams& sat);
void require_valid(const GroundNodeParams& node);

// Builds a node whose slant distance follows from the satellite altitude.
GroundNodeParams make_ground_node(const SatelliteParams& sat, double antenna_gain,
                                  double boresight_angle);

/// Channel power gain beta = G_sat * G_node * psi(theta) / PL(d).
double channel_gain(const SatelliteParams& sat, const GroundNodeParams& node);

}  // namespace satiab
