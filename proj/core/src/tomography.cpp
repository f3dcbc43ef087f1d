#include "holoq/tomography.hpp"

#include <cmath>

namespace holoq {

namespace {

// 2x2 rotation of the prep alphabet embedded on a ladder transition
// (a, b), identity on the remaining level.
Mat3c embed_transition(PrepPulse p, int a, int b) {
  Mat2c r;
  const double c = std::sqrt(0.5);
  switch (p) {
    case PrepPulse::I: r = Mat2c::Identity(); break;
    case PrepPulse::HalfX: r << c, cxd(0, -c), cxd(0, -c), c; break;
    case PrepPulse::HalfY: r << c, -c, c, c; break;
    case PrepPulse::FullX: r << 0, cxd(0, -1), cxd(0, -1), 0; break;
  }
  Mat3c u = Mat3c::Identity();
  u(a, a) = r(0, 0);
  u(a, b) = r(0, 1);
  u(b, a) = r(1, 0);
  u(b, b) = r(1, 1);
  return u;
}

// Hermitize + clip negative eigenvalues; optionally renormalize trace.
Eigen::MatrixXcd psd_projection(const Eigen::MatrixXcd& m, bool renormalize_trace) {
  Eigen::MatrixXcd h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
  if (es.info() != Eigen::Success) throw std::runtime_error("psd_projection: eigensolver failed");
  Eigen::VectorXd vals = es.eigenvalues().cwiseMax(0.0);
  if (renormalize_trace) {
    const double sum = vals.sum();
    if (sum <= 0.0) throw std::runtime_error("psd_projection: nonpositive trace");
    vals /= sum;
  }
  return es.eigenvectors() * vals.asDiagonal() * es.eigenvectors().adjoint();
}

// Least-squares chi in `basis` from input/output pairs.  Returns the raw
// (unscaled) solution of rho_out = sum chi_mn B_m rho_in B_n^+.
Eigen::MatrixXcd solve_chi(const std::vector<Eigen::MatrixXcd>& inputs,
                           const std::vector<Eigen::MatrixXcd>& outputs,
                           const std::vector<Eigen::MatrixXcd>& basis,
                           double residual_threshold) {
  if (inputs.size() != outputs.size() || inputs.empty())
    throw std::invalid_argument("qpt: inputs/outputs size mismatch");
  const int d = static_cast<int>(basis[0].rows());
  const int nb = static_cast<int>(basis.size());
  const int rows = static_cast<int>(inputs.size()) * d * d;
  Eigen::MatrixXcd m(rows, nb * nb);
  Eigen::VectorXcd b(rows);
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    const int r0 = static_cast<int>(i) * d * d;
    b.segment(r0, d * d) = Eigen::Map<const Eigen::VectorXcd>(outputs[i].data(), d * d);
    for (int n = 0; n < nb; ++n)
      for (int mm = 0; mm < nb; ++mm) {
        const Eigen::MatrixXcd term = basis[mm] * inputs[i] * basis[n].adjoint();
        m.col(mm + nb * n).segment(r0, d * d) =
            Eigen::Map<const Eigen::VectorXcd>(term.data(), d * d);
      }
  }
  Eigen::ColPivHouseholderQR<Eigen::MatrixXcd> qr(m);
  if (qr.rank() < nb * nb) throw std::runtime_error("qpt: preparation set is rank deficient");
  const Eigen::VectorXcd x = qr.solve(b);
  const double rel = (m * x - b).norm() / std::max(b.norm(), 1e-12);
  if (rel > residual_threshold)
    throw std::runtime_error("qpt: data inconsistent with a linear process");
  Eigen::MatrixXcd chi(nb, nb);
  for (int n = 0; n < nb; ++n)
    for (int mm = 0; mm < nb; ++mm) chi(mm, n) = x(mm + nb * n);
  return chi;
}

}  // namespace

const std::array<PrepPulse, 4>& prep_pulse_set() {
  static const std::array<PrepPulse, 4> set = {PrepPulse::I, PrepPulse::HalfX, PrepPulse::HalfY,
                                               PrepPulse::FullX};
  return set;
}

std::string prep_pulse_name(PrepPulse p) {
  switch (p) {
    case PrepPulse::I: return "I";
    case PrepPulse::HalfX: return "X/2";
    case PrepPulse::HalfY: return "Y/2";
    case PrepPulse::FullX: return "X";
  }
  throw std::invalid_argument("prep_pulse_name: bad pulse");
}

Mat3c PreparationSequence::unitary() const {
  return embed_transition(op_e1, kIdxE, kIdx1) * embed_transition(op_0e, kIdx0, kIdxE);
}

const std::array<PreparationSequence, 16>& PreparationSequence::all() {
  static const std::array<PreparationSequence, 16> seqs = [] {
    std::array<PreparationSequence, 16> s;
    int i = 0;
    for (PrepPulse p0 : prep_pulse_set())
      for (PrepPulse p1 : prep_pulse_set()) s[i++] = PreparationSequence{p0, p1};
    return s;
  }();
  return seqs;
}

std::vector<Mat3c> enumerate_preparations() {
  std::vector<Mat3c> rhos;
  rhos.reserve(16);
  const Mat3c rho0 = Vec3c::Unit(kIdx0) * Vec3c::Unit(kIdx0).adjoint();
  for (const PreparationSequence& seq : PreparationSequence::all()) {
    const Mat3c v = seq.unitary();
    rhos.push_back(v * rho0 * v.adjoint());
  }
  return rhos;
}

std::vector<QstSetting> simulate_qst(const Mat3c& rho, const Eigen::Matrix3d* confusion) {
  std::vector<QstSetting> out;
  out.reserve(16);
  for (const PreparationSequence& seq : PreparationSequence::all()) {
    QstSetting s;
    s.analysis = seq.unitary().adjoint();
    const Mat3c rotated = s.analysis * rho * s.analysis.adjoint();
    for (int k = 0; k < 3; ++k) s.populations(k) = rotated(k, k).real();
    if (confusion) s.populations = (*confusion * s.populations).eval();
    out.push_back(s);
  }
  return out;
}

Mat3c qst_reconstruct(const std::vector<QstSetting>& data, double* residual) {
  if (data.empty()) throw std::invalid_argument("qst_reconstruct: no data");
  const auto& ops = qpt_basis_ops();
  const int rows = static_cast<int>(data.size()) * 3;
  Eigen::MatrixXd a(rows, 9);
  Eigen::VectorXd b(rows);
  for (std::size_t s = 0; s < data.size(); ++s) {
    for (int k = 0; k < 3; ++k) {
      const int r = static_cast<int>(s) * 3 + k;
      b(r) = data[s].populations(k);
      for (int m = 0; m < 9; ++m) {
        const Mat3c rotated = data[s].analysis * ops[m] * data[s].analysis.adjoint();
        a(r, m) = rotated(k, k).real();
      }
    }
  }
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(a);
  if (qr.rank() < 9) throw std::runtime_error("qst_reconstruct: analysis set is rank deficient");
  const Eigen::VectorXd x = qr.solve(b);
  if (residual) *residual = (a * x - b).norm();
  Mat3c rho = Mat3c::Zero();
  for (int m = 0; m < 9; ++m) rho += x(m) * ops[m];
  return psd_projection(rho, /*renormalize_trace=*/true);
}

const std::array<Mat3c, 9>& chi_basis_qutrit() {
  static const std::array<Mat3c, 9> basis = [] {
    std::array<Mat3c, 9> b = qpt_basis_ops();
    for (Mat3c& op : b) op /= std::sqrt((op.adjoint() * op).trace().real());
    return b;
  }();
  return basis;
}

const std::array<Mat2c, 4>& chi_basis_qubit() {
  static const std::array<Mat2c, 4> basis = {
      Mat2c(Mat2c::Identity() / std::sqrt(2.0)), Mat2c(pauli_x() / std::sqrt(2.0)),
      Mat2c(pauli_y() / std::sqrt(2.0)), Mat2c(pauli_z() / std::sqrt(2.0))};
  return basis;
}

ChiMatrix qpt_chi(const std::vector<Mat3c>& inputs, const std::vector<Mat3c>& outputs,
                  double residual_threshold) {
  std::vector<Eigen::MatrixXcd> in(inputs.begin(), inputs.end());
  std::vector<Eigen::MatrixXcd> out(outputs.begin(), outputs.end());
  std::vector<Eigen::MatrixXcd> basis;
  for (const Mat3c& b : chi_basis_qutrit()) basis.emplace_back(b);
  Eigen::MatrixXcd chi = solve_chi(in, out, basis, residual_threshold);
  chi = psd_projection(chi, /*renormalize_trace=*/false) / 3.0;
  ChiMatrix result;
  result.entries = chi;
  result.basis_names.assign(qpt_basis_names().begin(), qpt_basis_names().end());
  return result;
}

ChiMatrix chi_from_unitary(const Mat3c& u) {
  Eigen::VectorXcd c(9);
  const auto& basis = chi_basis_qutrit();
  for (int m = 0; m < 9; ++m) c(m) = (basis[m].adjoint() * u).trace();
  ChiMatrix result;
  result.entries = (c * c.adjoint()) / 3.0;
  result.basis_names.assign(qpt_basis_names().begin(), qpt_basis_names().end());
  return result;
}

double process_fidelity(const ChiMatrix& a, const ChiMatrix& b) {
  if (a.basis_names != b.basis_names || a.entries.rows() != b.entries.rows())
    throw std::invalid_argument("process_fidelity: basis mismatch");
  const double num = std::abs((a.entries * b.entries.adjoint()).trace());
  const double den = std::sqrt((a.entries * a.entries.adjoint()).trace().real() *
                               (b.entries * b.entries.adjoint()).trace().real());
  if (den <= 0.0) throw std::invalid_argument("process_fidelity: zero chi matrix");
  return num / den;
}

std::vector<Mat3c> leakage_inputs() {
  auto pure = [](const Vec3c& v) { return Mat3c(v * v.adjoint() / v.squaredNorm()); };
  Vec3c k0 = Vec3c::Unit(kIdx0), k1 = Vec3c::Unit(kIdx1);
  return {pure(k0), pure(k1), pure(k0 + k1), pure(k0 + cxd(0, 1) * k1)};
}

double leakage_trace(const std::vector<Mat3c>& inputs, const std::vector<Mat3c>& outputs) {
  if (inputs.size() != outputs.size())
    throw std::invalid_argument("leakage_trace: inputs/outputs size mismatch");
  auto sub_block = [](const Mat3c& m) {
    Mat2c b;
    b << m(kIdx0, kIdx0), m(kIdx0, kIdx1), m(kIdx1, kIdx0), m(kIdx1, kIdx1);
    return b;
  };
  // Locate the four probe states among the inputs.
  std::vector<Eigen::MatrixXcd> in, out;
  for (const Mat3c& probe : leakage_inputs()) {
    int found = -1;
    for (std::size_t i = 0; i < inputs.size(); ++i)
      if ((inputs[i] - probe).cwiseAbs().maxCoeff() < 1e-9) {
        found = static_cast<int>(i);
        break;
      }
    if (found < 0)
      throw std::invalid_argument("leakage_trace: required probe state missing from inputs");
    in.emplace_back(sub_block(inputs[static_cast<std::size_t>(found)]));
    out.emplace_back(sub_block(outputs[static_cast<std::size_t>(found)]));
  }
  std::vector<Eigen::MatrixXcd> basis;
  for (const Mat2c& b : chi_basis_qubit()) basis.emplace_back(b);
  Eigen::MatrixXcd chi = solve_chi(in, out, basis, 0.05);
  chi = psd_projection(chi, /*renormalize_trace=*/false) / 2.0;
  return chi.trace().real();
}

QptReport run_qpt(const GateSpec& spec, const NoiseModel& noise, double tau, int steps,
                  const Eigen::Matrix3d* confusion) {
  const DriveSchedule schedule = synthesize(spec, tau);
  Mat9c channel;
  if (noise.enabled) {
    channel = propagate_superoperator(schedule, noise, steps);
  } else {
    channel = unitary_superoperator(*propagate_unitary(schedule, steps).final_unitary);
  }

  const std::vector<Mat3c> inputs = enumerate_preparations();
  std::vector<Mat3c> outputs;
  outputs.reserve(inputs.size());
  QptReport report;
  for (const Mat3c& rho : inputs) {
    double res = 0.0;
    outputs.push_back(
        qst_reconstruct(simulate_qst(apply_superop(channel, rho), confusion), &res));
    report.max_qst_residual = std::max(report.max_qst_residual, res);
  }

  report.chi = qpt_chi(inputs, outputs);
  report.chi_ideal = chi_from_unitary(closed_form_unitary(schedule));
  report.fidelity = process_fidelity(report.chi, report.chi_ideal);

  // Leakage probes take the same measurement path as the QPT outputs.
  const std::vector<Mat3c> probes = leakage_inputs();
  std::vector<Mat3c> probe_outputs;
  for (const Mat3c& rho : probes)
    probe_outputs.push_back(
        qst_reconstruct(simulate_qst(apply_superop(channel, rho), confusion)));
  report.leakage_trace = holoq::leakage_trace(probes, probe_outputs);
  return report;
}

}  // namespace holoq
