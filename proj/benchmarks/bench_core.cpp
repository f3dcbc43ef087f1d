#include <benchmark/benchmark.h>

#include "holoq/clifford.hpp"
#include "holoq/dynamics.hpp"
#include "holoq/rb.hpp"
#include "holoq/rng.hpp"
#include "holoq/tomography.hpp"

namespace {

using namespace holoq;

constexpr double kTau = 100e-9;

void BM_PropagateUnitary(benchmark::State& state) {
  const DriveSchedule s = synthesize(clifford_lookup(19), kTau);
  const int steps = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(propagate_unitary(s, steps).final_unitary);
  }
}
BENCHMARK(BM_PropagateUnitary)->Arg(500)->Arg(2000);

void BM_LindbladPropagate(benchmark::State& state) {
  const DriveSchedule s = synthesize(clifford_lookup(19), kTau);
  const NoiseModel noise = NoiseModel::device_defaults();
  const Mat3c rho0 = Vec3c::Unit(kIdx0) * Vec3c::Unit(kIdx0).adjoint();
  const int steps = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(propagate_lindblad(s, noise, rho0, steps).final_rho);
  }
}
BENCHMARK(BM_LindbladPropagate)->Arg(2000);

void BM_LindbladSuperoperator(benchmark::State& state) {
  const DriveSchedule s = synthesize(clifford_lookup(19), kTau);
  const NoiseModel noise = NoiseModel::device_defaults();
  const int steps = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(propagate_superoperator(s, noise, steps));
  }
}
BENCHMARK(BM_LindbladSuperoperator)->Arg(2000);

void BM_QptReconstruction(benchmark::State& state) {
  const Mat3c u = closed_form_unitary(synthesize(clifford_lookup(8), kTau));
  const auto inputs = enumerate_preparations();
  std::vector<Mat3c> outputs;
  for (const Mat3c& r : inputs) outputs.push_back(u * r * u.adjoint());
  for (auto _ : state) {
    benchmark::DoNotOptimize(qpt_chi(inputs, outputs));
  }
}
BENCHMARK(BM_QptReconstruction);

void BM_QstReconstruction(benchmark::State& state) {
  const auto [b, d] = bright_dark(1.2, 0.4);
  const Mat3c rho = b.amp * b.amp.adjoint();
  const auto data = simulate_qst(rho);
  for (auto _ : state) {
    benchmark::DoNotOptimize(qst_reconstruct(data));
  }
}
BENCHMARK(BM_QstReconstruction);

void BM_RBSequenceApplication(benchmark::State& state) {
  const GateMaps maps = build_gate_maps(NoiseModel::disabled(), kTau, 500);
  const int m = static_cast<int>(state.range(0));
  CounterRng rng = CounterRng::keyed(1);
  auto [seq, rec] = generate_sequence(m, rng);
  Vec9c rho0 = Vec9c::Zero();
  rho0(0) = 1.0;
  for (auto _ : state) {
    Vec9c v = rho0;
    for (int g : seq) v = maps.maps[static_cast<std::size_t>(g)] * v;
    v = maps.maps[static_cast<std::size_t>(rec)] * v;
    benchmark::DoNotOptimize(v);
  }
}
BENCHMARK(BM_RBSequenceApplication)->Arg(80);

void BM_CliffordCompose(benchmark::State& state) {
  int i = 0;
  for (auto _ : state) {
    i = clifford_compose(i, 17);
    benchmark::DoNotOptimize(i);
  }
}
BENCHMARK(BM_CliffordCompose);

void BM_FitDecay(benchmark::State& state) {
  std::vector<RBRecord> recs;
  for (int m : {1, 3, 5, 8, 12, 18, 26, 38, 55, 80}) {
    RBRecord r;
    r.m = m;
    r.mean = 0.5 * std::pow(0.986, m) + 0.5;
    r.survival = {r.mean};
    recs.push_back(r);
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(fit_decay(recs));
  }
}
BENCHMARK(BM_FitDecay);

}  // namespace

BENCHMARK_MAIN();
