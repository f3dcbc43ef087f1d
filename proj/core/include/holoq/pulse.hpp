#pragma once

#include <string>
#include <vector>

#include "holoq/clifford.hpp"
#include "holoq/types.hpp"

// Single-shot drive synthesis: a target rotation (gamma, n) maps onto the
// time-independent parameters (alpha, theta, phi) of a pump/Stokes pulse
// pair sharing one envelope Omega(t),
//
//   Delta_p(t) = Omega(t) sin(alpha)
//   Omega_p(t) = Omega(t) cos(alpha) cos(theta/2)
//   Omega_s(t) = Omega(t) cos(alpha) sin(theta/2) e^{-i phi}
//
// with gamma = pi (1 + sin(alpha)) and n = (sin t cos p, sin t sin p, cos t).
// The pulse area int Omega/2 dt is fixed at pi, which for the default sin^2
// envelope pins Omega0 tau = 4 pi.

namespace holoq {

struct DriveSchedule {
  double alpha = 0.0;  // rad, in [-pi/2, pi/2]
  double theta = 0.0;  // rad, in [0, pi]
  double phi = 0.0;    // rad, in (-pi, pi]
  double omega0 = 0.0; // peak envelope, rad/s
  double tau = 0.0;    // gate duration, s
  std::string shape = "sin2";
  bool is_idle = false;
};

/// Instantaneous drive values at one time point.
struct DriveSample {
  double t = 0.0;        // s
  double delta_p = 0.0;  // rad/s
  cxd omega_p = 0.0;     // rad/s
  cxd omega_s = 0.0;     // rad/s
};

/// gamma = pi (1 + sin alpha); alpha must lie in [-pi/2, pi/2].
double gamma_from_alpha(double alpha);

/// alpha = arcsin(gamma/pi - 1); gamma must lie in (0, 2*pi].
double alpha_from_gamma(double gamma);

/// Unit-peak envelope shape s(x) on x in [0, 1].  Only "sin2" ships;
/// unknown names throw std::invalid_argument.
double shape_value(const std::string& shape, double x);

/// Peak rate giving pulse area int Omega/2 dt = pi for the named shape,
/// computed by quadrature on the unit-peak profile (4*pi/tau for "sin2").
double peak_rate_for_area(const std::string& shape, double tau);

/// Inverts a target gate into a drive schedule of duration tau.  The
/// identity gate becomes a zero-amplitude idle of the same duration; for
/// axes along +-z, phi is conventionally 0.
DriveSchedule synthesize(const GateSpec& spec, double tau, const std::string& shape = "sin2");

/// Omega(t) = omega0 * s(t/tau); t must lie in [0, tau].
double envelope(double t, const DriveSchedule& schedule);

DriveSample drive_at(double t, const DriveSchedule& schedule);

/// Uniform sampling of the drives on [0, tau] including both endpoints.
std::vector<DriveSample> sample_drives(const DriveSchedule& schedule, int n_samples);

/// Pulse area int_0^tau Omega(t)/2 dt by composite Simpson quadrature.
double pulse_area(const DriveSchedule& schedule, int intervals = 4096);

/// Verifies the schedule invariants (parameter ranges and, unless idle,
/// the area condition to 1e-9 relative).  Throws on violation.
void validate_schedule(const DriveSchedule& schedule);

}  // namespace holoq
