#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "holoq/pulse.hpp"
#include "holoq/types.hpp"

namespace holoq {

/// Decoherence inputs: energy relaxation times of the two ladder
/// transitions and Ramsey pure-dephasing times.  Collapse operators:
///   L1 = sqrt(1/T1_e0) |0><e|       L2 = sqrt(1/T1_1e) |e><1|
///   L3 = sqrt(2/Tphi_e0) |e><e|     L4 = sqrt(2/Tphi_1e) |1><1|
/// so each two-level restriction reproduces the measured relaxation and
/// pure-dephasing rate of that transition.  L3/L4 also damp the 0-1
/// coherence; that cross-coupling is an accepted artifact of the model.
struct NoiseModel {
  double t1_e0 = 25.3e-6;
  double t1_1e = 12.8e-6;
  double tphi_e0 = 28.1e-6;
  double tphi_1e = 13.4e-6;
  bool enabled = true;

  static NoiseModel device_defaults() { return NoiseModel{}; }
  static NoiseModel disabled() {
    NoiseModel n;
    n.enabled = false;
    return n;
  }
};

void validate_noise(const NoiseModel& noise);

/// Collapse operators for the model above; empty when disabled.
std::vector<Mat3c> collapse_operators(const NoiseModel& noise);

struct PropagationResult {
  std::optional<Mat3c> final_unitary;          // unitary mode
  std::optional<Mat3c> final_rho;              // Lindblad mode
  std::optional<Mat9c> final_map;              // Lindblad superoperator mode
  std::vector<std::pair<double, Mat3c>> trajectory;
  int step_count = 0;
};

/// H(t) = Delta_p |e><e| + (Omega_p |e><0| + Omega_s |e><1| + h.c.)/2.
QutritOperator hamiltonian_at(double t, const DriveSchedule& schedule);

/// Bright/dark pair of the drive: |b> = cos(t/2)|0> + sin(t/2)e^{i phi}|1>,
/// |d> = sin(t/2)e^{-i phi}|0> - cos(t/2)|1>.  <b|d> = 0 by construction.
std::pair<QutritState, QutritState> bright_dark(double theta, double phi);

/// Closed-form propagator |d><d| + e^{-i pi(1+sin a)} (|b><b| + |e><e|).
Mat3c closed_form_unitary(const DriveSchedule& schedule);

/// Fixed-step midpoint-exponential propagation of the Schroedinger
/// equation over [0, tau].  Each step is exactly unitary.  Records
/// `trajectory_samples` intermediate propagators when nonzero.
PropagationResult propagate_unitary(const DriveSchedule& schedule, int steps = 2000,
                                    int trajectory_samples = 0);

/// RK4 integration of the Lindblad master equation
///   drho/dt = -i[H(t), rho] + sum_k (L rho L^+ - {L^+L, rho}/2).
/// The output is hermitized; eigenvalues in (-1e-9, 0) are clipped with
/// trace renormalization, anything more negative raises.
PropagationResult propagate_lindblad(const DriveSchedule& schedule, const NoiseModel& noise,
                                     const Mat3c& rho0, int steps = 2000,
                                     int trajectory_samples = 0);

/// RK4 integration of the full 9x9 superoperator of the Lindblad channel
/// (column-major vec convention).  One build covers every input state.
Mat9c propagate_superoperator(const DriveSchedule& schedule, const NoiseModel& noise,
                              int steps = 2000);

/// Superoperator of rho -> U rho U^+.
Mat9c unitary_superoperator(const Mat3c& u);

/// Superoperator of an arbitrary linear channel, built by applying it to
/// the nine matrix units.
template <typename F>
Mat9c superop_from_channel(F&& channel) {
  Mat9c s;
  for (int j = 0; j < 3; ++j)
    for (int i = 0; i < 3; ++i) {
      Mat3c unit = Mat3c::Zero();
      unit(i, j) = 1.0;
      const Mat3c out = channel(unit);
      s.col(i + 3 * j) = Eigen::Map<const Vec9c>(out.data());
    }
  return s;
}

Mat3c apply_superop(const Mat9c& s, const Mat3c& rho);

/// Parallel-transport check: max_{t, i,j in {0,1}} |<i|U^+(t) H(t) U(t)|j>|
/// normalized by Omega0, evaluated on `grid` checkpoints.  Vanishes for
/// every valid schedule since [H(t), U(t)] = 0.
double parallel_transport_residual(const DriveSchedule& schedule, int grid = 200);

/// Cyclicity check: max(|<e|U(tau)|0>|, |<e|U(tau)|1>|).  Vanishes when
/// the pulse-area condition holds.
double cyclicity_residual(const DriveSchedule& schedule, int steps = 2000);

}  // namespace holoq
