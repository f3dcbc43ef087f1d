#include "holoq/dynamics.hpp"

#include <cmath>

namespace holoq {

namespace {

// exp(-i H dt) for Hermitian H via eigendecomposition; exactly unitary
// up to rounding.
Mat3c unitary_step(const Mat3c& h, double dt) {
  Eigen::SelfAdjointEigenSolver<Mat3c> es(h);
  if (es.info() != Eigen::Success) throw std::runtime_error("unitary_step: eigensolver failed");
  Vec3c phases;
  for (int k = 0; k < 3; ++k) phases(k) = std::exp(cxd(0, -es.eigenvalues()(k) * dt));
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

struct LindbladRhs {
  Mat3c ls[4];
  Mat3c damping;  // sum_k L^+L / 2
  int count = 0;

  explicit LindbladRhs(const NoiseModel& noise) {
    damping.setZero();
    for (const Mat3c& l : collapse_operators(noise)) {
      ls[count++] = l;
      damping += 0.5 * l.adjoint() * l;
    }
  }

  Mat3c operator()(const Mat3c& h, const Mat3c& rho) const {
    Mat3c out = cxd(0, -1) * (h * rho - rho * h);
    out -= damping * rho + rho * damping;
    for (int k = 0; k < count; ++k) out += ls[k] * rho * ls[k].adjoint();
    return out;
  }
};

void check_steps(int steps) {
  if (steps < 100) throw std::invalid_argument("propagate: steps below minimum of 100");
}

// Clip eigenvalues in (-1e-9, 0) and renormalize; reject anything more
// negative as an integration failure.
Mat3c enforce_physical(Mat3c rho) {
  rho = 0.5 * (rho + rho.adjoint()).eval();
  Eigen::SelfAdjointEigenSolver<Mat3c> es(rho);
  const double min_eig = es.eigenvalues().minCoeff();
  if (min_eig < -1e-9) throw std::runtime_error("propagate_lindblad: state left the PSD cone");
  if (min_eig < 0.0) {
    Eigen::Vector3d clipped = es.eigenvalues().cwiseMax(0.0);
    clipped /= clipped.sum();
    rho = es.eigenvectors() * clipped.asDiagonal() * es.eigenvectors().adjoint();
  }
  return rho;
}

}  // namespace

void validate_noise(const NoiseModel& noise) {
  if (!noise.enabled) return;
  if (noise.t1_e0 <= 0 || noise.t1_1e <= 0 || noise.tphi_e0 <= 0 || noise.tphi_1e <= 0)
    throw std::invalid_argument("NoiseModel: all times must be positive when enabled");
}

std::vector<Mat3c> collapse_operators(const NoiseModel& noise) {
  validate_noise(noise);
  if (!noise.enabled) return {};
  auto ket = [](int i) { return Vec3c::Unit(i); };
  std::vector<Mat3c> ls;
  ls.push_back(std::sqrt(1.0 / noise.t1_e0) * ket(kIdx0) * ket(kIdxE).adjoint());
  ls.push_back(std::sqrt(1.0 / noise.t1_1e) * ket(kIdxE) * ket(kIdx1).adjoint());
  ls.push_back(std::sqrt(2.0 / noise.tphi_e0) * ket(kIdxE) * ket(kIdxE).adjoint());
  ls.push_back(std::sqrt(2.0 / noise.tphi_1e) * ket(kIdx1) * ket(kIdx1).adjoint());
  return ls;
}

QutritOperator hamiltonian_at(double t, const DriveSchedule& schedule) {
  const DriveSample d = drive_at(t, schedule);
  Mat3c h = Mat3c::Zero();
  h(kIdxE, kIdxE) = d.delta_p;
  h(kIdxE, kIdx0) = 0.5 * d.omega_p;
  h(kIdx0, kIdxE) = 0.5 * std::conj(d.omega_p);
  h(kIdxE, kIdx1) = 0.5 * d.omega_s;
  h(kIdx1, kIdxE) = 0.5 * std::conj(d.omega_s);
  return QutritOperator{h};
}

std::pair<QutritState, QutritState> bright_dark(double theta, double phi) {
  if (theta < -1e-12 || theta > kPi + 1e-12)
    throw std::invalid_argument("bright_dark: theta outside [0, pi]");
  const double c = std::cos(theta / 2), s = std::sin(theta / 2);
  QutritState b, d;
  b.amp(kIdx0) = c;
  b.amp(kIdx1) = s * std::exp(cxd(0, phi));
  // e^{-i phi} on the |0> component keeps <b|d> = 0 for every phi.
  d.amp(kIdx0) = s * std::exp(cxd(0, -phi));
  d.amp(kIdx1) = -c;
  return {b, d};
}

Mat3c closed_form_unitary(const DriveSchedule& schedule) {
  if (schedule.is_idle) return Mat3c::Identity();
  const auto [b, d] = bright_dark(schedule.theta, schedule.phi);
  const cxd phase = std::exp(cxd(0, -kPi * (1.0 + std::sin(schedule.alpha))));
  Mat3c u = d.amp * d.amp.adjoint();
  u += phase * b.amp * b.amp.adjoint();
  u += phase * Vec3c::Unit(kIdxE) * Vec3c::Unit(kIdxE).adjoint();
  return u;
}

PropagationResult propagate_unitary(const DriveSchedule& schedule, int steps,
                                    int trajectory_samples) {
  check_steps(steps);
  const double dt = schedule.tau / steps;
  const int stride = trajectory_samples > 0 ? std::max(1, steps / trajectory_samples) : 0;
  PropagationResult res;
  res.step_count = steps;
  Mat3c u = Mat3c::Identity();
  if (stride) res.trajectory.emplace_back(0.0, u);
  for (int i = 0; i < steps; ++i) {
    const double tm = schedule.tau * (2 * i + 1) / (2.0 * steps);
    u = (unitary_step(hamiltonian_at(tm, schedule).m, dt) * u).eval();
    if (stride && ((i + 1) % stride == 0 || i + 1 == steps))
      res.trajectory.emplace_back(schedule.tau * (i + 1) / steps, u);
  }
  res.final_unitary = u;
  return res;
}

PropagationResult propagate_lindblad(const DriveSchedule& schedule, const NoiseModel& noise,
                                     const Mat3c& rho0, int steps, int trajectory_samples) {
  check_steps(steps);
  if (!is_physical_density(rho0, 1e-9))
    throw std::invalid_argument("propagate_lindblad: rho0 is not a physical density matrix");
  const LindbladRhs rhs(noise);
  const double h = schedule.tau / steps;
  const int stride = trajectory_samples > 0 ? std::max(1, steps / trajectory_samples) : 0;
  PropagationResult res;
  res.step_count = steps;
  Mat3c rho = rho0;
  if (stride) res.trajectory.emplace_back(0.0, rho);
  for (int i = 0; i < steps; ++i) {
    const double t0 = schedule.tau * i / steps;
    const Mat3c h0 = hamiltonian_at(t0, schedule).m;
    const Mat3c hm = hamiltonian_at(t0 + 0.5 * h, schedule).m;
    const Mat3c h1 = hamiltonian_at(schedule.tau * (i + 1) / steps, schedule).m;
    const Mat3c k1 = rhs(h0, rho);
    const Mat3c k2 = rhs(hm, rho + 0.5 * h * k1);
    const Mat3c k3 = rhs(hm, rho + 0.5 * h * k2);
    const Mat3c k4 = rhs(h1, rho + h * k3);
    rho += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    if (stride && ((i + 1) % stride == 0 || i + 1 == steps))
      res.trajectory.emplace_back(schedule.tau * (i + 1) / steps, rho);
  }
  res.final_rho = enforce_physical(rho);
  if (stride) res.trajectory.back().second = *res.final_rho;
  return res;
}

Mat9c propagate_superoperator(const DriveSchedule& schedule, const NoiseModel& noise, int steps) {
  check_steps(steps);
  const LindbladRhs rhs(noise);
  const double h = schedule.tau / steps;
  auto apply = [&](const Mat3c& ham, const Mat9c& s) {
    Mat9c out;
    for (int c = 0; c < 9; ++c) {
      const Mat3c col = Eigen::Map<const Mat3c>(s.col(c).data());
      const Mat3c d = rhs(ham, col);
      out.col(c) = Eigen::Map<const Vec9c>(d.data());
    }
    return out;
  };
  Mat9c s = Mat9c::Identity();
  for (int i = 0; i < steps; ++i) {
    const double t0 = schedule.tau * i / steps;
    const Mat3c h0 = hamiltonian_at(t0, schedule).m;
    const Mat3c hm = hamiltonian_at(t0 + 0.5 * h, schedule).m;
    const Mat3c h1 = hamiltonian_at(schedule.tau * (i + 1) / steps, schedule).m;
    const Mat9c k1 = apply(h0, s);
    const Mat9c k2 = apply(hm, s + 0.5 * h * k1);
    const Mat9c k3 = apply(hm, s + 0.5 * h * k2);
    const Mat9c k4 = apply(h1, s + h * k3);
    s += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return s;
}

Mat9c unitary_superoperator(const Mat3c& u) {
  const Mat3c uc = u.conjugate();
  Mat9c s;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      for (int c = 0; c < 3; ++c)
        for (int d = 0; d < 3; ++d) s(3 * a + b, 3 * c + d) = uc(a, c) * u(b, d);
  return s;
}

Mat3c apply_superop(const Mat9c& s, const Mat3c& rho) {
  const Vec9c v = s * Eigen::Map<const Vec9c>(rho.data());
  return Eigen::Map<const Mat3c>(v.data());
}

double parallel_transport_residual(const DriveSchedule& schedule, int grid) {
  if (grid < 10) throw std::invalid_argument("parallel_transport_residual: grid below 10");
  if (schedule.is_idle || schedule.omega0 == 0.0) return 0.0;
  constexpr int kSubsteps = 8;
  const int steps = grid * kSubsteps;
  const double dt = schedule.tau / steps;
  Mat3c u = Mat3c::Identity();
  double residual = 0.0;
  auto record = [&](double t) {
    const Mat3c m = u.adjoint() * hamiltonian_at(t, schedule).m * u;
    for (int i : {kIdx0, kIdx1})
      for (int j : {kIdx0, kIdx1}) residual = std::max(residual, std::abs(m(i, j)));
  };
  record(0.0);
  for (int i = 0; i < steps; ++i) {
    const double tm = schedule.tau * (2 * i + 1) / (2.0 * steps);
    u = (unitary_step(hamiltonian_at(tm, schedule).m, dt) * u).eval();
    if ((i + 1) % kSubsteps == 0) record(schedule.tau * (i + 1) / steps);
  }
  return residual / schedule.omega0;
}

double cyclicity_residual(const DriveSchedule& schedule, int steps) {
  const Mat3c u = *propagate_unitary(schedule, steps).final_unitary;
  return std::max(std::abs(u(kIdxE, kIdx0)), std::abs(u(kIdxE, kIdx1)));
}

}  // namespace holoq
