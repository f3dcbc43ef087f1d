#include "holoq/rb.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>

#include "holoq/clifford.hpp"

namespace holoq {

namespace {

Mat9c depolarizing_superop(double lambda) {
  return superop_from_channel([lambda](const Mat3c& rho) {
    Mat3c out = rho;
    const cxd tr_sub = rho(kIdx0, kIdx0) + rho(kIdx1, kIdx1);
    out(kIdx0, kIdx0) = (1 - lambda) * rho(kIdx0, kIdx0) + lambda * tr_sub / 2.0;
    out(kIdx1, kIdx1) = (1 - lambda) * rho(kIdx1, kIdx1) + lambda * tr_sub / 2.0;
    out(kIdx0, kIdx1) *= 1 - lambda;
    out(kIdx1, kIdx0) *= 1 - lambda;
    return out;
  });
}

double survival_of(const Vec9c& v, const std::optional<ReadoutModel>& readout) {
  Eigen::Vector3d pops;
  pops << v(0).real(), v(4).real(), v(8).real();  // diagonal of unvec
  if (readout) pops = (readout->confusion() * pops).eval();
  return std::clamp(pops(0), 0.0, 1.0);
}

RBRecord summarize(int m, std::vector<double> survival) {
  RBRecord rec;
  rec.m = m;
  rec.survival = std::move(survival);
  const double n = static_cast<double>(rec.survival.size());
  double sum = 0.0;
  for (double s : rec.survival) sum += s;
  rec.mean = sum / n;
  double var = 0.0;
  for (double s : rec.survival) var += (s - rec.mean) * (s - rec.mean);
  rec.stddev = n > 1 ? std::sqrt(var / (n - 1)) : 0.0;
  return rec;
}

}  // namespace

Eigen::Matrix3d ReadoutModel::confusion() const {
  Eigen::Matrix3d c;
  const double m0 = (1 - f0) / 2, me = (1 - fe) / 2, m1 = (1 - f1) / 2;
  c << f0, me, m1,
       m0, fe, m1,
       m0, me, f1;
  return c;
}

void validate_readout(const ReadoutModel& readout) {
  for (double f : {readout.f0, readout.fe, readout.f1})
    if (f <= 0.0 || f > 1.0)
      throw std::invalid_argument("ReadoutModel: fidelities must lie in (0, 1]");
  const Eigen::Matrix3d c = readout.confusion();
  for (int j = 0; j < 3; ++j)
    if (std::abs(c.col(j).sum() - 1.0) > 1e-12)
      throw std::invalid_argument("ReadoutModel: confusion columns must sum to 1");
}

void validate_rb_config(const RBConfig& config) {
  if (config.m_values.empty()) throw std::invalid_argument("RBConfig: m_values empty");
  int prev = 0;
  for (int m : config.m_values) {
    if (m < 1 || m <= prev)
      throw std::invalid_argument("RBConfig: m_values must be strictly increasing and >= 1");
    prev = m;
  }
  if (config.k < 1) throw std::invalid_argument("RBConfig: k must be >= 1");
  if (config.interleaved_gate && (*config.interleaved_gate < 0 || *config.interleaved_gate >= 24))
    throw std::invalid_argument("RBConfig: interleaved gate index out of range");
  if (config.depolarizing_lambda &&
      (*config.depolarizing_lambda < 0.0 || *config.depolarizing_lambda > 1.0))
    throw std::invalid_argument("RBConfig: depolarizing lambda outside [0, 1]");
  validate_noise(config.noise);
  if (config.readout) validate_readout(*config.readout);
}

std::pair<std::vector<int>, int> generate_sequence(int m, CounterRng& rng) {
  if (m < 1) throw std::invalid_argument("generate_sequence: m must be >= 1");
  std::vector<int> seq(static_cast<std::size_t>(m));
  for (int& g : seq) g = static_cast<int>(rng.below(24));
  return {seq, recovery_index(seq, std::nullopt)};
}

int recovery_index(const std::vector<int>& sequence, std::optional<int> interleaved) {
  int acc = 0;
  for (int g : sequence) {
    acc = clifford_compose(g, acc);
    if (interleaved) acc = clifford_compose(*interleaved, acc);
  }
  return clifford_inverse(acc);
}

GateMaps build_gate_maps(const NoiseModel& noise, double tau, int steps,
                         std::optional<double> depolarizing_lambda) {
  GateMaps gm;
  const Mat9c depol =
      depolarizing_lambda ? depolarizing_superop(*depolarizing_lambda) : Mat9c::Identity();
  for (int g = 0; g < 24; ++g) {
    const DriveSchedule schedule = synthesize(clifford_lookup(g), tau);
    Mat9c map;
    if (noise.enabled) {
      map = propagate_superoperator(schedule, noise, steps);
    } else {
      map = unitary_superoperator(*propagate_unitary(schedule, steps).final_unitary);
    }
    gm.maps[static_cast<std::size_t>(g)] = depolarizing_lambda ? Mat9c(depol * map) : map;
  }
  return gm;
}

RBResult run_rb(const RBConfig& config) {
  validate_rb_config(config);
  return run_rb(config, build_gate_maps(config.noise, config.tau, config.steps,
                                        config.depolarizing_lambda));
}

RBResult run_rb(const RBConfig& config, const GateMaps& gm) {
  validate_rb_config(config);
  RBResult result;
  Vec9c rho0 = Vec9c::Zero();
  rho0(0) = 1.0;  // vec(|0><0|)
  for (int m : config.m_values) {
    std::vector<double> survival, survival_raw;
    survival.reserve(static_cast<std::size_t>(config.k));
    for (int j = 0; j < config.k; ++j) {
      CounterRng rng = CounterRng::keyed(config.seed, static_cast<std::uint64_t>(m),
                                         static_cast<std::uint64_t>(j));
      auto [seq, plain_recovery] = generate_sequence(m, rng);
      const int rec = config.interleaved_gate ? recovery_index(seq, config.interleaved_gate)
                                              : plain_recovery;
      Vec9c v = rho0;
      for (int g : seq) {
        v = gm.maps[static_cast<std::size_t>(g)] * v;
        if (config.interleaved_gate)
          v = gm.maps[static_cast<std::size_t>(*config.interleaved_gate)] * v;
      }
      v = gm.maps[static_cast<std::size_t>(rec)] * v;
      double s = survival_of(v, config.readout);
      if (config.readout) survival_raw.push_back(survival_of(v, std::nullopt));
      if (config.shots && *config.shots > 0)
        s = static_cast<double>(rng.binomial(*config.shots, s)) /
            static_cast<double>(*config.shots);
      survival.push_back(s);
    }
    result.records.push_back(summarize(m, std::move(survival)));
    if (config.readout) result.records_corrected.push_back(summarize(m, std::move(survival_raw)));
  }
  try {
    result.fit = fit_decay(result.records);
  } catch (const std::exception& e) {
    result.fit_error = e.what();
  }
  return result;
}

DecayFit fit_decay(const std::vector<RBRecord>& records) {
  std::vector<double> ms, ys;
  for (const RBRecord& r : records) {
    ms.push_back(static_cast<double>(r.m));
    ys.push_back(r.mean);
  }
  std::vector<double> distinct = ms;
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  if (distinct.size() < 3)
    throw std::invalid_argument("fit_decay: need at least 3 distinct sequence lengths");

  const int n = static_cast<int>(ms.size());
  const double y_max = *std::max_element(ys.begin(), ys.end());
  const double y_min = *std::min_element(ys.begin(), ys.end());

  DecayFit fit;
  // Flat data carries no decay information: p is unidentifiable and the
  // natural resolution is p = 1 (no measurable error per gate).
  if (y_max - y_min < 1e-7) {
    fit.a = 0.0;
    fit.b = (y_max + y_min) / 2;
    fit.p = 1.0;
    fit.degenerate = true;
    double rss = 0.0;
    for (double y : ys) rss += (y - fit.b) * (y - fit.b);
    fit.residual_norm = std::sqrt(rss);
    return fit;
  }

  Eigen::Vector3d beta(ys.front() - ys.back(), ys.back(), 0.99);  // (A, B, p)
  auto residuals = [&](const Eigen::Vector3d& bb, Eigen::VectorXd& r, Eigen::MatrixXd& jac) {
    r.resize(n);
    jac.resize(n, 3);
    for (int i = 0; i < n; ++i) {
      const double pm = std::pow(bb(2), ms[i]);
      r(i) = bb(0) * pm + bb(1) - ys[i];
      jac(i, 0) = pm;
      jac(i, 1) = 1.0;
      jac(i, 2) = bb(0) * ms[i] * std::pow(bb(2), ms[i] - 1);
    }
  };

  Eigen::VectorXd r;
  Eigen::MatrixXd jac;
  residuals(beta, r, jac);
  double cost = r.squaredNorm();
  double lm = 1e-3;
  for (int iter = 0; iter < 200; ++iter) {
    const Eigen::Matrix3d jtj = jac.transpose() * jac;
    const Eigen::Vector3d g = jac.transpose() * r;
    const Eigen::Matrix3d damped =
        jtj + lm * Eigen::Matrix3d(jtj.diagonal().cwiseMax(1e-12).asDiagonal());
    const Eigen::Vector3d step = damped.ldlt().solve(-g);
    Eigen::Vector3d trial = beta + step;
    trial(2) = std::clamp(trial(2), 0.0, 1.0);
    Eigen::VectorXd r_trial;
    Eigen::MatrixXd jac_trial;
    residuals(trial, r_trial, jac_trial);
    const double cost_trial = r_trial.squaredNorm();
    if (cost_trial < cost) {
      const bool converged = (beta - trial).norm() < 1e-13 * (1.0 + beta.norm());
      beta = trial;
      r = r_trial;
      jac = jac_trial;
      cost = cost_trial;
      lm = std::max(lm * 0.3, 1e-12);
      if (converged) break;
    } else {
      lm *= 10.0;
      if (lm > 1e12) break;
    }
  }

  fit.a = beta(0);
  fit.b = beta(1);
  fit.p = beta(2);
  fit.residual_norm = std::sqrt(cost);
  const int dof = std::max(n - 3, 1);
  const double sigma2 = cost / dof;
  const Eigen::Matrix3d jtj = jac.transpose() * jac;
  const Eigen::Matrix3d inv = jtj.fullPivLu().isInvertible()
                                  ? Eigen::Matrix3d(jtj.fullPivLu().inverse())
                                  : Eigen::Matrix3d::Zero();
  fit.covariance = sigma2 * inv;
  return fit;
}

double average_error(double p) {
  if (p < 0.0 || p > 1.0) throw std::invalid_argument("average_error: p outside [0, 1]");
  return (1.0 - p) / 2.0;
}

double interleaved_fidelity(double p_gate, double p_ref) {
  if (p_ref <= 0.0 || p_ref > 1.0)
    throw std::invalid_argument("interleaved_fidelity: p_ref outside (0, 1]");
  if (p_gate < 0.0 || p_gate > 1.0)
    throw std::invalid_argument("interleaved_fidelity: p_gate outside [0, 1]");
  if (p_gate > p_ref)
    std::cerr << "interleaved_fidelity: p_gate " << p_gate << " exceeds p_ref " << p_ref
              << ", clipping F_gate to 1\n";
  return std::clamp(1.0 - (1.0 - p_gate / p_ref) / 2.0, 0.0, 1.0);
}

}  // namespace holoq
