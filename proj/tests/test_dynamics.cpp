#include <doctest.h>

#include <cmath>

#include "holoq/dynamics.hpp"

using namespace holoq;

namespace {

constexpr double kTau = 100e-9;

Mat3c ket_rho(int i) { return Vec3c::Unit(i) * Vec3c::Unit(i).adjoint(); }

}  // namespace

TEST_SUITE_BEGIN("dynamics");

TEST_CASE("hamiltonian_at assembles the rotating-frame form") {
  const DriveSchedule idle = synthesize(clifford_lookup(0), kTau);
  CHECK(hamiltonian_at(0.4 * kTau, idle).m.cwiseAbs().maxCoeff() == 0.0);

  const DriveSchedule h = synthesize(clifford_lookup(19), kTau);
  const Mat3c hm = hamiltonian_at(kTau / 2, h).m;
  CHECK((hm - hm.adjoint()).cwiseAbs().maxCoeff() < 1e-12);
  CHECK(std::abs(hm(kIdxE, kIdx0) - 0.5 * h.omega0 * std::cos(kPi / 8)) < 1e-9 * h.omega0);
  CHECK(std::abs(hm(kIdxE, kIdx1) - 0.5 * h.omega0 * std::sin(kPi / 8)) < 1e-9 * h.omega0);
  CHECK(std::abs(hm(kIdxE, kIdxE)) < 1e-12 * h.omega0);

  const DriveSchedule x2 = synthesize(clifford_lookup(12), kTau);
  const Mat3c hx = hamiltonian_at(kTau / 2, x2).m;
  CHECK(hx(kIdxE, kIdxE).real() == doctest::Approx(-x2.omega0 / 2).epsilon(1e-12));

  CHECK_THROWS_AS(hamiltonian_at(2 * kTau, h), std::invalid_argument);
}

TEST_CASE("bright and dark states") {
  {
    auto [b, d] = bright_dark(0.0, 0.3);
    CHECK((b.amp - Vec3c::Unit(kIdx0)).norm() < 1e-12);
    CHECK((d.amp + Vec3c::Unit(kIdx1)).norm() < 1e-12);
  }
  {
    auto [b, d] = bright_dark(kPi, 0.0);
    CHECK((b.amp - Vec3c::Unit(kIdx1)).norm() < 1e-12);
    CHECK((d.amp - Vec3c::Unit(kIdx0)).norm() < 1e-12);
  }
  {
    auto [b, d] = bright_dark(kPi / 2, 0.0);
    Vec3c plus = (Vec3c::Unit(kIdx0) + Vec3c::Unit(kIdx1)) / std::sqrt(2.0);
    Vec3c minus = (Vec3c::Unit(kIdx0) - Vec3c::Unit(kIdx1)) / std::sqrt(2.0);
    CHECK((b.amp - plus).norm() < 1e-12);
    CHECK((d.amp - minus).norm() < 1e-12);
  }
  // orthogonality holds for every (theta, phi), which fixes the e^{-i phi}
  // convention on the dark state
  for (double theta : {0.1, 0.7, 1.9, 3.0})
    for (double phi : {-2.5, -0.4, 0.9, 3.1}) {
      auto [b, d] = bright_dark(theta, phi);
      CHECK(std::abs(b.amp.dot(d.amp)) < 1e-12);  // Eigen dot conjugates the lhs
      CHECK(std::abs(b.amp.norm() - 1.0) < 1e-12);
      CHECK(std::abs(d.amp.norm() - 1.0) < 1e-12);
    }
}

TEST_CASE("propagate_unitary matches targets and the closed form") {
  const DriveSchedule idle = synthesize(clifford_lookup(0), kTau);
  CHECK((*propagate_unitary(idle, 200).final_unitary - Mat3c::Identity()).cwiseAbs().maxCoeff() <
        1e-12);

  const DriveSchedule h = synthesize(clifford_lookup(19), kTau);
  const Mat3c uh = *propagate_unitary(h, 2000).final_unitary;
  // each step is exactly unitary; the product accumulates only rounding
  CHECK((uh.adjoint() * uh - Mat3c::Identity()).cwiseAbs().maxCoeff() < 1e-10);
  CHECK(phase_invariant_distance(computational_block(uh),
                                 CliffordTable::canonical().entry(19).unitary) < 1e-8);
  // the auxiliary level picks up e^{-i pi} = -1 for a pi rotation
  CHECK(std::abs(uh(kIdxE, kIdxE) - cxd(-1, 0)) < 1e-8);

  const DriveSchedule c8 = synthesize(clifford_lookup(8), kTau);
  const Mat3c uc8 = *propagate_unitary(c8, 2000).final_unitary;
  CHECK(phase_invariant_distance(computational_block(uc8),
                                 CliffordTable::canonical().entry(8).unitary) < 1e-8);

  CHECK_THROWS_AS(propagate_unitary(h, 50), std::invalid_argument);
}

TEST_CASE("propagator converges to the closed form when steps double") {
  for (int k : {12, 19, 8}) {
    const DriveSchedule s = synthesize(clifford_lookup(k), kTau);
    const Mat3c exact = closed_form_unitary(s);
    const double d1 = phase_invariant_distance(*propagate_unitary(s, 500).final_unitary, exact);
    const double d2 = phase_invariant_distance(*propagate_unitary(s, 1000).final_unitary, exact);
    // second-order stepping: >= 4x reduction unless already at the
    // floating-point floor (H(t) commutes with itself here, so the
    // midpoint product is exact up to rounding)
    CHECK((d1 < 1e-12 || d2 <= d1 / 4));
    CHECK(d2 < 1e-10);
  }
}

TEST_CASE("dark state is fixed and bright state acquires the holonomy phase") {
  for (int k = 0; k < 24; ++k) {
    const DriveSchedule s = synthesize(clifford_lookup(k), kTau);
    const Mat3c u = *propagate_unitary(s, 2000).final_unitary;
    const auto [b, d] = bright_dark(s.theta, s.phi);
    const cxd d_overlap = d.amp.dot(u * d.amp);
    CHECK(std::norm(d_overlap) > 1.0 - 1e-10);
    const cxd expected_phase = std::exp(cxd(0, -kPi * (1.0 + std::sin(s.alpha))));
    const cxd b_overlap = b.amp.dot(u * b.amp);
    CHECK(std::abs(b_overlap - (s.is_idle ? cxd(1, 0) : expected_phase)) < 1e-8);
    // and the full propagator agrees with the closed form
    CHECK(phase_invariant_distance(u, closed_form_unitary(s)) < 1e-10);
  }
}

TEST_CASE("holonomy residuals vanish for valid schedules") {
  const DriveSchedule idle = synthesize(clifford_lookup(0), kTau);
  CHECK(parallel_transport_residual(idle, 50) == 0.0);
  CHECK(cyclicity_residual(idle) == 0.0);

  for (int k : {19, 8}) {
    const DriveSchedule s = synthesize(clifford_lookup(k), kTau);
    CHECK(parallel_transport_residual(s, 200) < 1e-8);
    CHECK(cyclicity_residual(s) < 1e-8);
  }
  CHECK_THROWS_AS(parallel_transport_residual(synthesize(clifford_lookup(19), kTau), 5),
                  std::invalid_argument);
}

TEST_CASE("breaking the area condition breaks cyclicity") {
  DriveSchedule broken = synthesize(clifford_lookup(19), kTau);
  broken.omega0 *= 0.5;
  CHECK(cyclicity_residual(broken) > 0.1);
}

TEST_CASE("a full turn maps to alpha = pi/2 and drives nothing but a phase") {
  // gamma = 2 pi kills both drive amplitudes (cos alpha = 0); only |e>
  // picks up detuning phase, which closes to 1 at full area.  The
  // projected gate is the identity, phase-equivalent to the -1 target.
  GateSpec spec;
  spec.gamma = 2 * kPi;
  spec.axis = Eigen::Vector3d(0, 0, 1);
  const DriveSchedule s = synthesize(spec, kTau);
  CHECK(s.alpha == doctest::Approx(kPi / 2));
  const Mat3c u = *propagate_unitary(s, 2000).final_unitary;
  CHECK(phase_invariant_distance(computational_block(u), gate_unitary(spec)) < 1e-8);
  CHECK((computational_block(u) - Mat2c::Identity()).cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("lindblad with noise disabled reduces to the unitary channel") {
  const DriveSchedule h = synthesize(clifford_lookup(19), kTau);
  const Mat3c rho0 = ket_rho(kIdx0);
  const Mat3c rho_f =
      *propagate_lindblad(h, NoiseModel::disabled(), rho0, 2000).final_rho;
  const Mat3c u = *propagate_unitary(h, 2000).final_unitary;
  const Mat3c expect = u * rho0 * u.adjoint();
  CHECK((rho_f - expect).cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("idle relaxation matches the single-exponential oracle") {
  const DriveSchedule idle = synthesize(clifford_lookup(0), kTau);
  const NoiseModel noise = NoiseModel::device_defaults();
  const Mat3c rho_f = *propagate_lindblad(idle, noise, ket_rho(kIdxE), 2000).final_rho;
  const double expect = std::exp(-kTau / noise.t1_e0);  // ~0.99606
  CHECK(std::abs(rho_f(kIdxE, kIdxE).real() - expect) < 1e-6 * expect);
  CHECK(expect == doctest::Approx(0.99606).epsilon(1e-4));
  // relaxed population lands in |0>
  CHECK(rho_f(kIdx0, kIdx0).real() == doctest::Approx(1.0 - expect).epsilon(1e-6));
}

TEST_CASE("idle coherence decay combines relaxation and pure dephasing") {
  const DriveSchedule idle = synthesize(clifford_lookup(0), kTau);
  const NoiseModel noise = NoiseModel::device_defaults();
  Mat3c rho0 = Mat3c::Zero();
  rho0(kIdx0, kIdx0) = rho0(kIdx0, kIdxE) = rho0(kIdxE, kIdx0) = rho0(kIdxE, kIdxE) = 0.5;
  const Mat3c rho_f = *propagate_lindblad(idle, noise, rho0, 2000).final_rho;
  const double expect =
      0.5 * std::exp(-kTau / (2 * noise.t1_e0) - kTau / noise.tphi_e0);
  CHECK(std::abs(std::abs(rho_f(kIdx0, kIdxE)) - expect) < 1e-6 * expect);
}

TEST_CASE("lindblad trajectories preserve trace and positivity") {
  const DriveSchedule c8 = synthesize(clifford_lookup(8), kTau);
  const auto res =
      propagate_lindblad(c8, NoiseModel::device_defaults(), ket_rho(kIdx0), 2000, 50);
  REQUIRE(!res.trajectory.empty());
  for (const auto& [t, rho] : res.trajectory) {
    CHECK(std::abs(rho.trace().real() - 1.0) < 1e-9);
    CHECK(std::abs(rho.trace().imag()) < 1e-12);
  }
  CHECK(is_physical_density(*res.final_rho, 1e-9));

  Mat3c bad = Mat3c::Identity();  // trace 3
  CHECK_THROWS_AS(propagate_lindblad(c8, NoiseModel::device_defaults(), bad, 2000),
                  std::invalid_argument);
  NoiseModel invalid;
  invalid.t1_e0 = -1.0;
  CHECK_THROWS_AS(propagate_lindblad(c8, invalid, ket_rho(kIdx0), 2000), std::invalid_argument);
}

TEST_CASE("coarse lindblad stepping is rejected rather than clipped") {
  // at 100 steps the RK4 bias (~1e-5) pushes eigenvalues past the -1e-9
  // failure threshold; the integrator must refuse instead of repairing
  const DriveSchedule c8 = synthesize(clifford_lookup(8), kTau);
  CHECK_THROWS_AS(propagate_lindblad(c8, NoiseModel::disabled(), ket_rho(kIdx0), 100),
                  std::runtime_error);
}

TEST_CASE("lindblad with vanishing rates reproduces the unitary propagator") {
  const DriveSchedule x2 = synthesize(clifford_lookup(12), kTau);
  NoiseModel tiny;
  tiny.t1_e0 = tiny.t1_1e = tiny.tphi_e0 = tiny.tphi_1e = 1e6;  // rates -> 0
  const Mat3c rho0 = 0.5 * (ket_rho(kIdx0) + ket_rho(kIdx1) +
                            Vec3c::Unit(kIdx0) * Vec3c::Unit(kIdx1).adjoint() +
                            Vec3c::Unit(kIdx1) * Vec3c::Unit(kIdx0).adjoint());
  const Mat3c via_lindblad = *propagate_lindblad(x2, tiny, rho0, 4000).final_rho;
  const Mat3c u = *propagate_unitary(x2, 4000).final_unitary;
  CHECK((via_lindblad - u * rho0 * u.adjoint()).cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("superoperator propagation agrees with direct integration") {
  const DriveSchedule h = synthesize(clifford_lookup(19), kTau);
  const NoiseModel noise = NoiseModel::device_defaults();
  const Mat9c s = propagate_superoperator(h, noise, 1000);
  for (int i : {kIdx0, kIdx1}) {
    const Mat3c rho0 = ket_rho(i);
    const Mat3c direct = *propagate_lindblad(h, noise, rho0, 1000).final_rho;
    CHECK((apply_superop(s, rho0) - direct).cwiseAbs().maxCoeff() < 1e-9);
  }
  // unitary superoperator round trip
  const Mat3c u = *propagate_unitary(h, 500).final_unitary;
  const Mat9c su = unitary_superoperator(u);
  const Mat3c rho0 = ket_rho(kIdx1);
  CHECK((apply_superop(su, rho0) - u * rho0 * u.adjoint()).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_SUITE_END();
