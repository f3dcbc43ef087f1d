#pragma once

#include <array>
#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

// Basic value types and operator algebra for a three-level (qutrit) system
// with ladder ordering (|0>, |e>, |1>).  |0> and |1> span the computational
// subspace; |e> is the auxiliary level addressed by the pump/Stokes drives.

namespace holoq {

using cxd = std::complex<double>;
using Vec3c = Eigen::Vector3cd;
using Mat2c = Eigen::Matrix2cd;
using Mat3c = Eigen::Matrix3cd;
using Mat9c = Eigen::Matrix<cxd, 9, 9>;
using Vec9c = Eigen::Matrix<cxd, 9, 1>;

inline constexpr int kIdx0 = 0;  // |0>
inline constexpr int kIdxE = 1;  // |e>
inline constexpr int kIdx1 = 2;  // |1>

inline constexpr double kPi = 3.14159265358979323846;

/// Pure state of the three-level system, amplitudes ordered (|0>, |e>, |1>).
struct QutritState {
  Vec3c amp = Vec3c::Zero();

  /// Normalizes `a` to unit norm.  Throws std::invalid_argument on a
  /// zero vector; the result has squared norm 1 within 1e-12.
  static QutritState normalized(const Vec3c& a);

  /// Basis ket by index (kIdx0, kIdxE, kIdx1).
  static QutritState ket(int index);

  double norm() const { return amp.norm(); }
};

/// 3x3 operator on the qutrit space.  Plain value type; the named
/// factories verify the algebraic property they promise.
struct QutritOperator {
  Mat3c m = Mat3c::Zero();

  /// Verifies A = A^dagger within 1e-12 (max entry deviation).
  static QutritOperator hermitian(const Mat3c& a);
  /// Verifies A^dagger A = I within 1e-12 (max entry deviation).
  static QutritOperator unitary(const Mat3c& a);
};

// Pauli operators on the computational basis {|0>, |1>}.
const Mat2c& pauli_x();
const Mat2c& pauli_y();
const Mat2c& pauli_z();

/// n . sigma for a real 3-vector n.
Mat2c pauli_dot(const Eigen::Vector3d& n);

/// 2x2 block of `u` on the computational subspace span{|0>, |1>}.
Mat2c computational_block(const Mat3c& u);

/// Embeds a 2x2 computational-subspace operator into the qutrit space,
/// with zero coupling to |e> and `e_diag` on the |e><e| entry.
Mat3c embed_computational(const Mat2c& a, cxd e_diag = 0.0);

/// sqrt(1 - |Tr(U^dagger V)| / d): zero iff U and V agree up to a global
/// phase.  Both arguments must be unitary and of equal dimension.
double phase_invariant_distance(const Eigen::MatrixXcd& u, const Eigen::MatrixXcd& v);

/// Returns e^{i phi} A with phi chosen to minimize ||e^{i phi} A - B||.
Eigen::MatrixXcd align_phase(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b);

/// The nine Hermitian process-tomography basis operators, in the declared
/// order {I01, X01, Y01, Z01, X0e, Y0e, Xe1, Ye1, Ie}.  Mutually orthogonal
/// under the Hilbert-Schmidt inner product; unnormalized (Tr E^2 = 2 for
/// the transition operators, 1 for Ie).
const std::array<Mat3c, 9>& qpt_basis_ops();
const std::array<std::string, 9>& qpt_basis_names();

/// True if rho is Hermitian, unit-trace and PSD within `tol`.
bool is_physical_density(const Mat3c& rho, double tol = 1e-9);

}  // namespace holoq
