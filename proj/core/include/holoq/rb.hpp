#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "holoq/dynamics.hpp"
#include "holoq/rng.hpp"
#include "holoq/types.hpp"

namespace holoq {

/// Classical readout confusion: column j holds the assignment
/// probabilities for true state j (columns sum to 1, diagonal = the
/// assignment fidelities).  Misassignment mass is split equally between
/// the two other states when built from fidelities alone.
struct ReadoutModel {
  double f0 = 0.995;
  double fe = 0.923;
  double f1 = 0.895;

  Eigen::Matrix3d confusion() const;
  static ReadoutModel device_defaults() { return ReadoutModel{}; }
};

void validate_readout(const ReadoutModel& readout);

struct RBConfig {
  std::vector<int> m_values = {1, 3, 5, 8, 12, 18, 26, 38, 55, 80};
  int k = 50;
  std::uint64_t seed = 0;
  std::optional<int> interleaved_gate;
  NoiseModel noise = NoiseModel::device_defaults();
  std::optional<ReadoutModel> readout;
  /// Toy-noise oracle: compose each gate with a computational-subspace
  /// depolarizing channel of strength lambda (expected fit: p = 1-lambda).
  std::optional<double> depolarizing_lambda;
  /// When set, survival is sampled from shots Bernoulli trials instead of
  /// reporting the exact population.
  std::optional<std::uint64_t> shots;
  double tau = 100e-9;
  int steps = 2000;
};

void validate_rb_config(const RBConfig& config);

struct RBRecord {
  int m = 0;
  std::vector<double> survival;
  double mean = 0.0;
  double stddev = 0.0;
};

/// Parameters of the decay model F = A p^m + B.  `degenerate` marks data
/// with no resolvable decay (flat survival), for which p is pinned to 1.
struct DecayFit {
  double a = 0.0;
  double b = 0.0;
  double p = 1.0;
  Eigen::Matrix3d covariance = Eigen::Matrix3d::Zero();  // order (A, B, p)
  double residual_norm = 0.0;
  bool degenerate = false;

  double sigma_p() const { return std::sqrt(std::max(0.0, covariance(2, 2))); }
};

struct RBResult {
  /// As-measured records (confusion applied when readout is configured);
  /// the fit always uses these.
  std::vector<RBRecord> records;
  /// Readout-corrected records (true populations); present only when
  /// readout is configured.
  std::vector<RBRecord> records_corrected;
  std::optional<DecayFit> fit;
  std::string fit_error;
};

/// Uniformly random Clifford indices plus the recovery index inverting
/// their composition.
std::pair<std::vector<int>, int> generate_sequence(int m, CounterRng& rng);

/// Index of the gate inverting the (optionally interleaved) sequence.
int recovery_index(const std::vector<int>& sequence, std::optional<int> interleaved);

/// Per-Clifford channel superoperators used by the sequence simulator.
struct GateMaps {
  std::array<Mat9c, 24> maps;
};

/// Synthesizes and propagates all 24 Clifford pulses: exact unitary
/// conjugation maps when noise is disabled, Lindblad superoperators
/// otherwise; optionally composed with the depolarizing toy channel.
GateMaps build_gate_maps(const NoiseModel& noise, double tau, int steps,
                         std::optional<double> depolarizing_lambda = std::nullopt);

RBResult run_rb(const RBConfig& config);
RBResult run_rb(const RBConfig& config, const GateMaps& maps);

/// Fits F = A p^m + B to (m, mean) by Levenberg-Marquardt, initialized at
/// A = first-last, B = last, p = 0.99; p is clipped to [0, 1].  Requires
/// at least 3 distinct lengths.
DecayFit fit_decay(const std::vector<RBRecord>& records);

/// r = (1 - p) / 2.
double average_error(double p);

/// F_gate = 1 - (1 - p_gate/p_ref)/2, clipped to [0, 1].
double interleaved_fidelity(double p_gate, double p_ref);

}  // namespace holoq
