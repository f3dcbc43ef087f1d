#include "holoq/pulse.hpp"

#include <cmath>

namespace holoq {

namespace {

// Composite Simpson on [0, 1]; intervals is forced even.
template <typename F>
double simpson01(F f, int intervals) {
  if (intervals % 2) ++intervals;
  const double h = 1.0 / intervals;
  double acc = f(0.0) + f(1.0);
  for (int i = 1; i < intervals; ++i) acc += f(i * h) * (i % 2 ? 4.0 : 2.0);
  return acc * h / 3.0;
}

}  // namespace

double gamma_from_alpha(double alpha) {
  if (alpha < -kPi / 2 - 1e-12 || alpha > kPi / 2 + 1e-12)
    throw std::invalid_argument("gamma_from_alpha: alpha outside [-pi/2, pi/2]");
  return kPi * (1.0 + std::sin(alpha));
}

double alpha_from_gamma(double gamma) {
  if (gamma <= 0.0 || gamma > 2 * kPi + 1e-12)
    throw std::invalid_argument("alpha_from_gamma: gamma outside (0, 2*pi]");
  return std::asin(std::min(1.0, gamma / kPi - 1.0));
}

double shape_value(const std::string& shape, double x) {
  if (shape == "sin2") {
    const double s = std::sin(kPi * x);
    return s * s;
  }
  throw std::invalid_argument("shape_value: unknown envelope shape '" + shape + "'");
}

double peak_rate_for_area(const std::string& shape, double tau) {
  if (tau <= 0.0) throw std::invalid_argument("peak_rate_for_area: tau must be positive");
  const double unit_area = simpson01([&](double x) { return shape_value(shape, x); }, 1 << 14);
  return 2 * kPi / (unit_area * tau);
}

DriveSchedule synthesize(const GateSpec& spec, double tau, const std::string& shape) {
  validate_gate_spec(spec);
  if (tau <= 0.0) throw std::invalid_argument("synthesize: tau must be positive");
  DriveSchedule s;
  s.tau = tau;
  s.shape = shape;
  if (spec.is_identity()) {
    // gamma = 0 needs sin(alpha) = -1, i.e. no drive: an explicit idle.
    s.is_idle = true;
    s.alpha = -kPi / 2;
    s.omega0 = 0.0;
    return s;
  }
  s.alpha = alpha_from_gamma(spec.gamma);
  s.theta = std::acos(std::clamp(spec.axis.z(), -1.0, 1.0));
  s.phi = std::sin(s.theta) < 1e-12 ? 0.0 : std::atan2(spec.axis.y(), spec.axis.x());
  s.omega0 = peak_rate_for_area(shape, tau);
  return s;
}

double envelope(double t, const DriveSchedule& schedule) {
  const double slack = 1e-9 * schedule.tau;
  if (t < -slack || t > schedule.tau + slack)
    throw std::invalid_argument("envelope: t outside [0, tau]");
  if (schedule.is_idle || schedule.omega0 == 0.0) return 0.0;
  const double x = std::clamp(t / schedule.tau, 0.0, 1.0);
  return schedule.omega0 * shape_value(schedule.shape, x);
}

DriveSample drive_at(double t, const DriveSchedule& schedule) {
  const double w = envelope(t, schedule);
  DriveSample d;
  d.t = t;
  d.delta_p = w * std::sin(schedule.alpha);
  const double ca = std::cos(schedule.alpha);
  d.omega_p = w * ca * std::cos(schedule.theta / 2);
  d.omega_s = w * ca * std::sin(schedule.theta / 2) * std::exp(cxd(0, -schedule.phi));
  return d;
}

std::vector<DriveSample> sample_drives(const DriveSchedule& schedule, int n_samples) {
  if (n_samples < 2) throw std::invalid_argument("sample_drives: need at least 2 samples");
  std::vector<DriveSample> out;
  out.reserve(static_cast<std::size_t>(n_samples));
  for (int i = 0; i < n_samples; ++i)
    out.push_back(drive_at(schedule.tau * i / (n_samples - 1), schedule));
  return out;
}

double pulse_area(const DriveSchedule& schedule, int intervals) {
  if (schedule.is_idle || schedule.omega0 == 0.0) return 0.0;
  const double unit = simpson01([&](double x) { return shape_value(schedule.shape, x); }, intervals);
  return 0.5 * schedule.omega0 * schedule.tau * unit;
}

void validate_schedule(const DriveSchedule& schedule) {
  if (schedule.tau <= 0.0) throw std::invalid_argument("schedule: tau must be positive");
  if (schedule.alpha < -kPi / 2 - 1e-12 || schedule.alpha > kPi / 2 + 1e-12)
    throw std::invalid_argument("schedule: alpha outside [-pi/2, pi/2]");
  if (schedule.theta < -1e-12 || schedule.theta > kPi + 1e-12)
    throw std::invalid_argument("schedule: theta outside [0, pi]");
  if (schedule.phi <= -kPi - 1e-12 || schedule.phi > kPi + 1e-12)
    throw std::invalid_argument("schedule: phi outside (-pi, pi]");
  if (schedule.is_idle) return;
  const double area = pulse_area(schedule);
  if (std::abs(area - kPi) > 1e-9 * kPi)
    throw std::invalid_argument("schedule: pulse area condition violated");
}

}  // namespace holoq
