#include <doctest.h>

#include <cmath>

#include "holoq/pulse.hpp"

using namespace holoq;

namespace {

constexpr double kTau = 100e-9;

// Quadrature oracle independent of pulse_area(): long midpoint sum.
double midpoint_area(const DriveSchedule& s, int n = 200000) {
  double acc = 0.0;
  for (int i = 0; i < n; ++i) acc += envelope(s.tau * (2 * i + 1) / (2.0 * n), s);
  return 0.5 * acc * s.tau / n;
}

}  // namespace

TEST_SUITE_BEGIN("pulse");

TEST_CASE("gamma_from_alpha hits the three protocol set points") {
  CHECK(gamma_from_alpha(0.0) == doctest::Approx(kPi).epsilon(1e-15));
  CHECK(gamma_from_alpha(-kPi / 6) == doctest::Approx(kPi / 2).epsilon(1e-12));
  CHECK(gamma_from_alpha(-std::asin(1.0 / 3.0)) == doctest::Approx(2 * kPi / 3).epsilon(1e-12));
  CHECK_THROWS_AS(gamma_from_alpha(1.7), std::invalid_argument);
}

TEST_CASE("alpha_from_gamma inverts the angle map") {
  CHECK(alpha_from_gamma(kPi) == doctest::Approx(0.0));
  CHECK(alpha_from_gamma(kPi / 2) == doctest::Approx(-kPi / 6).epsilon(1e-12));
  CHECK(alpha_from_gamma(2 * kPi / 3) == doctest::Approx(-std::asin(1.0 / 3.0)).epsilon(1e-12));
  CHECK(alpha_from_gamma(2 * kPi / 3) == doctest::Approx(-0.339836909).epsilon(1e-8));
  CHECK_THROWS_AS(alpha_from_gamma(0.0), std::invalid_argument);
  CHECK_THROWS_AS(alpha_from_gamma(2 * kPi + 1e-6), std::invalid_argument);

  for (double gamma : {0.3, kPi / 2, kPi, 2.5, 2 * kPi}) {
    CHECK(gamma_from_alpha(alpha_from_gamma(gamma)) == doctest::Approx(gamma).epsilon(1e-12));
  }
}

TEST_CASE("synthesize reproduces the protocol gate parameters") {
  const DriveSchedule h = synthesize(clifford_lookup(19), kTau);
  CHECK(h.alpha == doctest::Approx(0.0));
  CHECK(h.theta == doctest::Approx(kPi / 4).epsilon(1e-12));
  CHECK(h.phi == doctest::Approx(0.0));
  CHECK(h.omega0 == doctest::Approx(4 * kPi / kTau).epsilon(1e-9));
  CHECK_FALSE(h.is_idle);

  const DriveSchedule x2 = synthesize(clifford_lookup(12), kTau);
  CHECK(x2.alpha == doctest::Approx(-kPi / 6).epsilon(1e-12));
  CHECK(x2.theta == doctest::Approx(kPi / 2).epsilon(1e-12));
  CHECK(x2.phi == doctest::Approx(0.0));

  const DriveSchedule c8 = synthesize(clifford_lookup(8), kTau);
  CHECK(c8.alpha == doctest::Approx(-std::asin(1.0 / 3.0)).epsilon(1e-12));
  CHECK(c8.theta == doctest::Approx(std::acos(1.0 / std::sqrt(3.0))).epsilon(1e-12));
  CHECK(c8.phi == doctest::Approx(kPi / 4).epsilon(1e-12));

  const DriveSchedule idle = synthesize(clifford_lookup(0), kTau);
  CHECK(idle.is_idle);
  CHECK(idle.omega0 == 0.0);
  CHECK(idle.tau == kTau);

  // phi defaults to 0 on the +-z axes where it is undefined
  CHECK(synthesize(clifford_lookup(3), kTau).phi == 0.0);
  CHECK(synthesize(clifford_lookup(17), kTau).phi == 0.0);

  CHECK_THROWS_AS(synthesize(clifford_lookup(1), -1.0), std::invalid_argument);
}

TEST_CASE("envelope endpoints, peak and area condition") {
  const DriveSchedule h = synthesize(clifford_lookup(19), kTau);
  CHECK(envelope(0.0, h) == doctest::Approx(0.0));
  CHECK(envelope(kTau, h) == doctest::Approx(0.0));
  CHECK(envelope(kTau / 2, h) == doctest::Approx(h.omega0).epsilon(1e-15));
  CHECK_THROWS_AS(envelope(-0.1 * kTau, h), std::invalid_argument);
  CHECK_THROWS_AS(envelope(1.1 * kTau, h), std::invalid_argument);

  // int Omega/2 dt = pi, by an independent quadrature
  CHECK(midpoint_area(h) == doctest::Approx(kPi).epsilon(1e-9));

  CHECK_THROWS_AS(shape_value("gauss", 0.5), std::invalid_argument);
}

TEST_CASE("area condition holds for every synthesized schedule") {
  for (int k = 0; k < 24; ++k) {
    const DriveSchedule s = synthesize(clifford_lookup(k), kTau);
    CHECK_NOTHROW(validate_schedule(s));
    if (!s.is_idle) CHECK(std::abs(pulse_area(s) - kPi) < 1e-9 * kPi);
  }
  DriveSchedule broken = synthesize(clifford_lookup(19), kTau);
  broken.omega0 *= 0.5;
  CHECK_THROWS_AS(validate_schedule(broken), std::invalid_argument);
}

TEST_CASE("sample_drives values and invariants") {
  const DriveSchedule idle = synthesize(clifford_lookup(0), kTau);
  for (const DriveSample& d : sample_drives(idle, 16)) {
    CHECK(d.delta_p == 0.0);
    CHECK(std::abs(d.omega_p) == 0.0);
    CHECK(std::abs(d.omega_s) == 0.0);
  }

  const DriveSchedule h = synthesize(clifford_lookup(19), kTau);
  const auto samples = sample_drives(h, 3);  // endpoints + midpoint
  CHECK(samples.front().t == 0.0);
  CHECK(samples.back().t == doctest::Approx(kTau));
  const DriveSample& mid = samples[1];
  CHECK(mid.delta_p == doctest::Approx(0.0));
  CHECK(std::abs(mid.omega_p) == doctest::Approx(h.omega0 * std::cos(kPi / 8)).epsilon(1e-12));
  CHECK(std::abs(mid.omega_s) == doctest::Approx(h.omega0 * std::sin(kPi / 8)).epsilon(1e-12));

  const DriveSchedule x2 = synthesize(clifford_lookup(12), kTau);
  const auto x2_samples = sample_drives(x2, 3);
  CHECK(x2_samples[1].delta_p == doctest::Approx(-x2.omega0 / 2).epsilon(1e-12));

  // 2pi/3 rotations run at one third of the envelope detuning
  const DriveSchedule c8 = synthesize(clifford_lookup(8), kTau);
  CHECK(sample_drives(c8, 3)[1].delta_p == doctest::Approx(-c8.omega0 / 3).epsilon(1e-12));

  CHECK_THROWS_AS(sample_drives(h, 1), std::invalid_argument);
}

TEST_CASE("drive samples satisfy the parameterization identities") {
  for (int k : {8, 12, 19, 23}) {
    const DriveSchedule s = synthesize(clifford_lookup(k), kTau);
    for (const DriveSample& d : sample_drives(s, 64)) {
      const double w = envelope(d.t, s);
      CHECK(d.delta_p == doctest::Approx(w * std::sin(s.alpha)).epsilon(1e-12));
      CHECK(std::abs(d.omega_p) ==
            doctest::Approx(w * std::cos(s.alpha) * std::cos(s.theta / 2)).epsilon(1e-12));
      CHECK(std::abs(d.omega_s) ==
            doctest::Approx(w * std::cos(s.alpha) * std::sin(s.theta / 2)).epsilon(1e-12));
      if (std::abs(d.omega_s) > 1e-6)
        CHECK(std::arg(d.omega_s) == doctest::Approx(-s.phi).epsilon(1e-12));
    }
  }
}

TEST_CASE("adjacent samples are continuous at O(omega0/n)") {
  const DriveSchedule c8 = synthesize(clifford_lookup(8), kTau);
  const int n = 512;
  const auto samples = sample_drives(c8, n);
  for (std::size_t i = 1; i < samples.size(); ++i) {
    CHECK(std::abs(samples[i].delta_p - samples[i - 1].delta_p) < 5.0 * c8.omega0 / n);
    CHECK(std::abs(samples[i].omega_p - samples[i - 1].omega_p) < 5.0 * c8.omega0 / n);
    CHECK(std::abs(samples[i].omega_s - samples[i - 1].omega_s) < 5.0 * c8.omega0 / n);
  }
}

TEST_CASE("synthesized parameters rebuild the target unitary") {
  for (int k = 1; k < 24; ++k) {
    const GateSpec spec = clifford_lookup(k);
    const DriveSchedule s = synthesize(spec, kTau);
    GateSpec rebuilt;
    rebuilt.gamma = gamma_from_alpha(s.alpha);
    rebuilt.axis = Eigen::Vector3d(std::sin(s.theta) * std::cos(s.phi),
                                   std::sin(s.theta) * std::sin(s.phi), std::cos(s.theta));
    CHECK(phase_invariant_distance(gate_unitary(rebuilt), gate_unitary(spec)) < 1e-12);
  }
}

TEST_SUITE_END();
