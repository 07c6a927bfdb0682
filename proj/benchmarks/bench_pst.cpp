#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "pst/certify.hpp"
#include "pst/evolution.hpp"
#include "pst/graph.hpp"
#include "pst/paths.hpp"
#include "pst/products.hpp"
#include "pst/spectral.hpp"

namespace {

// Mirror-symmetric potential so certify has structure to chew on.
pst::Potential mirrored(int n) {
  pst::Potential q(n);
  for (int i = 0; i < n; ++i) {
    const double x = 0.3 * std::min(i, n - 1 - i);
    q[i] = std::sin(1.0 + x);
  }
  return q;
}

void BM_decompose(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto h = pst::build_hamiltonian(pst::path_graph(n), mirrored(n));
  for (auto _ : state) {
    auto d = pst::decompose(h);
    benchmark::DoNotOptimize(d.eigenvalues.data());
  }
}
BENCHMARK(BM_decompose)->Arg(8)->Arg(16)->Arg(32)->Arg(64);

void BM_propagator(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto d = pst::decompose(pst::build_hamiltonian(pst::path_graph(n), mirrored(n)));
  double t = 0.0;
  for (auto _ : state) {
    t += 0.1;
    auto u = pst::propagator(d, t);
    benchmark::DoNotOptimize(u.data());
  }
}
BENCHMARK(BM_propagator)->Arg(8)->Arg(32);

void BM_fidelity(benchmark::State& state) {
  const auto inst = pst::p3_instance(2, 1);
  const auto d = pst::decompose(
      pst::build_hamiltonian(pst::path_graph(3), {0.0, inst.q, 0.0}));
  double t = 0.0;
  for (auto _ : state) {
    t += 0.01;
    benchmark::DoNotOptimize(pst::fidelity(d, 0, 2, t));
  }
}
BENCHMARK(BM_fidelity);

void BM_max_fidelity(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto d = pst::decompose(pst::build_hamiltonian(pst::path_graph(n), mirrored(n)));
  for (auto _ : state) {
    auto rec = pst::max_fidelity(d, 0, n - 1, 50.0);
    benchmark::DoNotOptimize(rec.fidelity);
  }
}
BENCHMARK(BM_max_fidelity)->Arg(4)->Arg(8);

void BM_char_poly_path(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const pst::Potential q = mirrored(n);
  double x = -3.0;
  for (auto _ : state) {
    x += 1e-4;
    benchmark::DoNotOptimize(pst::char_poly_path(x, q));
  }
}
BENCHMARK(BM_char_poly_path)->Arg(8)->Arg(64);

void BM_certify_family(benchmark::State& state) {
  const auto inst = pst::p3_instance(4, 1);
  const auto d = pst::decompose(
      pst::build_hamiltonian(pst::path_graph(3), {0.0, inst.q, 0.0}));
  for (auto _ : state) {
    auto cert = pst::certify(d, 0, 2);
    benchmark::DoNotOptimize(cert.certified);
  }
}
BENCHMARK(BM_certify_family);

void BM_certify_refusal(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto d = pst::decompose(
      pst::build_hamiltonian(pst::path_graph(n), mirrored(n)));
  for (auto _ : state) {
    auto cert = pst::certify(d, 0, n - 1);
    benchmark::DoNotOptimize(cert.refusal_reason);
  }
}
BENCHMARK(BM_certify_refusal)->Arg(5)->Arg(8);

void BM_kron_check(benchmark::State& state) {
  const pst::Graph g1 = pst::path_graph(2);
  const pst::Graph g2 = pst::path_graph(3);
  const pst::Potential q1{0.0, 0.0};
  const pst::Potential q2{0.0, 0.0, 0.0};
  const auto d1 = pst::decompose(pst::build_hamiltonian(g1, q1));
  const auto d2 = pst::decompose(pst::build_hamiltonian(g2, q2));
  const auto prod = pst::cartesian_product(g1, g2);
  const auto d12 = pst::decompose(
      pst::build_hamiltonian(prod, pst::combine_potentials(q1, q2)));
  double t = 0.0;
  for (auto _ : state) {
    t += 0.3;
    benchmark::DoNotOptimize(pst::kron_check(d1, d2, d12, t));
  }
}
BENCHMARK(BM_kron_check);

}  // namespace

BENCHMARK_MAIN();
