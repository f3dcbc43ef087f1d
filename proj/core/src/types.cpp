#include "holoq/types.hpp"

namespace holoq {

QutritState QutritState::normalized(const Vec3c& a) {
  const double n = a.norm();
  if (n < 1e-300) throw std::invalid_argument("QutritState: cannot normalize zero vector");
  QutritState s;
  s.amp = a / n;
  return s;
}

QutritState QutritState::ket(int index) {
  if (index < 0 || index > 2) throw std::invalid_argument("QutritState: ket index out of range");
  QutritState s;
  s.amp(index) = 1.0;
  return s;
}

QutritOperator QutritOperator::hermitian(const Mat3c& a) {
  if ((a - a.adjoint()).cwiseAbs().maxCoeff() > 1e-12)
    throw std::invalid_argument("QutritOperator: matrix is not Hermitian");
  return QutritOperator{a};
}

QutritOperator QutritOperator::unitary(const Mat3c& a) {
  if ((a.adjoint() * a - Mat3c::Identity()).cwiseAbs().maxCoeff() > 1e-12)
    throw std::invalid_argument("QutritOperator: matrix is not unitary");
  return QutritOperator{a};
}

const Mat2c& pauli_x() {
  static const Mat2c m = (Mat2c() << 0, 1, 1, 0).finished();
  return m;
}

const Mat2c& pauli_y() {
  static const Mat2c m = (Mat2c() << 0, cxd(0, -1), cxd(0, 1), 0).finished();
  return m;
}

const Mat2c& pauli_z() {
  static const Mat2c m = (Mat2c() << 1, 0, 0, -1).finished();
  return m;
}

Mat2c pauli_dot(const Eigen::Vector3d& n) {
  return n.x() * pauli_x() + n.y() * pauli_y() + n.z() * pauli_z();
}

Mat2c computational_block(const Mat3c& u) {
  Mat2c b;
  b << u(kIdx0, kIdx0), u(kIdx0, kIdx1), u(kIdx1, kIdx0), u(kIdx1, kIdx1);
  return b;
}

Mat3c embed_computational(const Mat2c& a, cxd e_diag) {
  Mat3c m = Mat3c::Zero();
  m(kIdx0, kIdx0) = a(0, 0);
  m(kIdx0, kIdx1) = a(0, 1);
  m(kIdx1, kIdx0) = a(1, 0);
  m(kIdx1, kIdx1) = a(1, 1);
  m(kIdxE, kIdxE) = e_diag;
  return m;
}

double phase_invariant_distance(const Eigen::MatrixXcd& u, const Eigen::MatrixXcd& v) {
  if (u.rows() != v.rows() || u.cols() != v.cols() || u.rows() != u.cols())
    throw std::invalid_argument("phase_invariant_distance: dimension mismatch");
  const double d = static_cast<double>(u.rows());
  // sqrt(1 - |Tr(U^+V)|/d), evaluated as the Frobenius norm of the
  // phase-aligned difference: ||e^{i phi}U - V||^2 = 2d (1 - |Tr|/d) at
  // the optimal phi.  The direct form cannot resolve distances below
  // sqrt(eps); this one is accurate down to rounding.
  const cxd tr = (u.adjoint() * v).trace();
  const cxd phase = std::abs(tr) < 1e-300 ? cxd(1, 0) : cxd(tr / std::abs(tr));
  return (phase * u - v).norm() / std::sqrt(2.0 * d);
}

Eigen::MatrixXcd align_phase(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  const cxd tr = (a.adjoint() * b).trace();
  if (std::abs(tr) < 1e-300) return a;
  return (tr / std::abs(tr)) * a;
}

const std::array<Mat3c, 9>& qpt_basis_ops() {
  static const std::array<Mat3c, 9> ops = [] {
    std::array<Mat3c, 9> e;
    auto ket = [](int i) { return Vec3c::Unit(i); };
    auto sym = [&](int a, int b) { return Mat3c(ket(a) * ket(b).adjoint() + ket(b) * ket(a).adjoint()); };
    auto asym = [&](int a, int b) {
      return Mat3c(cxd(0, -1) * ket(a) * ket(b).adjoint() + cxd(0, 1) * ket(b) * ket(a).adjoint());
    };
    e[0] = ket(kIdx0) * ket(kIdx0).adjoint() + ket(kIdx1) * ket(kIdx1).adjoint();  // I01
    e[1] = sym(kIdx0, kIdx1);                                                      // X01
    e[2] = asym(kIdx0, kIdx1);                                                     // Y01
    e[3] = ket(kIdx0) * ket(kIdx0).adjoint() - ket(kIdx1) * ket(kIdx1).adjoint();  // Z01
    e[4] = sym(kIdx0, kIdxE);                                                      // X0e
    e[5] = asym(kIdx0, kIdxE);                                                     // Y0e
    e[6] = sym(kIdxE, kIdx1);                                                      // Xe1
    e[7] = asym(kIdxE, kIdx1);                                                     // Ye1
    e[8] = ket(kIdxE) * ket(kIdxE).adjoint();                                      // Ie
    return e;
  }();
  return ops;
}

const std::array<std::string, 9>& qpt_basis_names() {
  static const std::array<std::string, 9> names = {"I01", "X01", "Y01", "Z01", "X0e",
                                                   "Y0e", "Xe1", "Ye1", "Ie"};
  return names;
}

bool is_physical_density(const Mat3c& rho, double tol) {
  if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > tol) return false;
  if (std::abs(rho.trace().real() - 1.0) > tol || std::abs(rho.trace().imag()) > tol) return false;
  Eigen::SelfAdjointEigenSolver<Mat3c> es(0.5 * (rho + rho.adjoint()), Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff() > -tol;
}

}  // namespace holoq
