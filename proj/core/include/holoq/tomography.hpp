#pragma once

#include <array>
#include <string>
#include <vector>

#include "holoq/dynamics.hpp"
#include "holoq/types.hpp"

namespace holoq {

/// Preparation pulses applied on one ladder transition (0-e or e-1):
/// identity, quarter rotations, or a full pi rotation.
enum class PrepPulse { I, HalfX, HalfY, FullX };

const std::array<PrepPulse, 4>& prep_pulse_set();
std::string prep_pulse_name(PrepPulse p);

/// One of the 16 tomography input settings: a pulse on the 0-e transition
/// followed by a pulse on the e-1 transition, applied to |0>.
struct PreparationSequence {
  PrepPulse op_0e = PrepPulse::I;
  PrepPulse op_e1 = PrepPulse::I;

  Mat3c unitary() const;
  static const std::array<PreparationSequence, 16>& all();
};

/// The 16 input density matrices (ideal instantaneous preparations applied
/// to |0><0|).  Their Gram matrix has rank 9: they span the full operator
/// space.
std::vector<Mat3c> enumerate_preparations();

/// One state-tomography setting: analysis rotation applied before a
/// population measurement in the (|0>, |e>, |1>) basis.
struct QstSetting {
  Mat3c analysis = Mat3c::Identity();
  Eigen::Vector3d populations = Eigen::Vector3d::Zero();
};

/// The standard analysis set: inverses of the 16 preparation unitaries,
/// with populations forward-simulated from rho.  A confusion matrix, when
/// given, maps the true populations to as-measured ones.
std::vector<QstSetting> simulate_qst(const Mat3c& rho,
                                     const Eigen::Matrix3d* confusion = nullptr);

/// Projected-least-squares state reconstruction: the Hermitian least
/// squares solution, eigenvalue-clipped onto the PSD cone and trace
/// renormalized.  Throws on a rank-deficient analysis set.
Mat3c qst_reconstruct(const std::vector<QstSetting>& data, double* residual = nullptr);

/// Process matrix in a declared operator basis.  Entries are expressed in
/// the Hilbert-Schmidt-orthonormalized basis and scaled by 1/dim, so that
/// any trace-preserving process has Tr chi = 1.
struct ChiMatrix {
  Eigen::MatrixXcd entries;
  std::vector<std::string> basis_names;
};

/// Orthonormalized qutrit process basis {I01,...,Ie} (div. by sqrt 2 except Ie).
const std::array<Mat3c, 9>& chi_basis_qutrit();
/// Orthonormalized qubit process basis {I, X, Y, Z} / sqrt 2.
const std::array<Mat2c, 4>& chi_basis_qubit();

/// Solves rho_out = sum_mn chi_mn E_m rho_in E_n^+ over all input/output
/// pairs by linear least squares, then projects onto the Hermitian PSD
/// cone.  Throws on rank deficiency or relative residual above
/// `residual_threshold` (inconsistent data).
ChiMatrix qpt_chi(const std::vector<Mat3c>& inputs, const std::vector<Mat3c>& outputs,
                  double residual_threshold = 0.05);

/// chi of the ideal unitary process rho -> U rho U^+.
ChiMatrix chi_from_unitary(const Mat3c& u);

/// Normalized Hilbert-Schmidt overlap
/// |Tr(a b^+)| / sqrt(Tr(a a^+) Tr(b b^+)); 1 iff a is proportional to b.
double process_fidelity(const ChiMatrix& a, const ChiMatrix& b);

/// The four computational-subspace probe states |0>, |1>, |+>, |+i>
/// embedded in the qutrit space.
std::vector<Mat3c> leakage_inputs();

/// Trace of the reduced qubit-level process matrix, reconstructed from
/// the outputs' (unnormalized) computational-subspace blocks.  1 for a
/// leakage-free trace-preserving process.  `inputs` must include the four
/// probe states of leakage_inputs().
double leakage_trace(const std::vector<Mat3c>& inputs, const std::vector<Mat3c>& outputs);

/// End-to-end process tomography of one synthesized gate.
struct QptReport {
  ChiMatrix chi;
  ChiMatrix chi_ideal;
  double fidelity = 0.0;
  double leakage_trace = 0.0;  // Tr of reduced chi
  double max_qst_residual = 0.0;
};

/// Simulates the full QPT pipeline for `spec`: synthesize the pulse, build
/// the gate channel (unitary propagation when noise is disabled, Lindblad
/// otherwise), push the 16 preparations through it, reconstruct each
/// output by QST, solve for chi and compare against the closed-form ideal.
/// An optional classical confusion matrix corrupts the simulated QST
/// populations (uncorrected readout).
QptReport run_qpt(const GateSpec& spec, const NoiseModel& noise, double tau = 100e-9,
                  int steps = 2000, const Eigen::Matrix3d* confusion = nullptr);

}  // namespace holoq
