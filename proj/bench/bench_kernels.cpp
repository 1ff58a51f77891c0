// Serial reference loops against the chunked OpenMP kernels, on the node
// sets the Riemann oracle actually produces.

#include <benchmark/benchmark.h>

#include <random>

#include "tscale/kernels.hpp"
#include "tscale/partition.hpp"
#include "tscale/scale_spec.hpp"

using namespace tscale;

namespace {

const TimeScale& bench_scale() {
  static const TimeScale t =
      parse_scale("union(interval(0, 1.5), points(1.75, 2), geometric(q=0.5, c=0.5, offset=2.5), interval(2.5, 3))");
  return t;
}

std::vector<double> nodes_for(std::int64_t cells) {
  return build_partition(bench_scale(), 0, 3, 3.0 / static_cast<double>(cells)).points();
}

const Expr& integrand() {
  static const Expr f = parse_expr("sin(3*s) + 0.5*exp(-s)*s^2");
  return f;
}

void BM_RiemannSerial(benchmark::State& state) {
  const auto nodes = nodes_for(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(left_riemann_sum_serial(integrand(), nodes));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(nodes.size()));
}

void BM_RiemannParallel(benchmark::State& state) {
  const auto nodes = nodes_for(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(left_riemann_sum_parallel(integrand(), nodes));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(nodes.size()));
  state.counters["threads"] = kernel_threads();
}

std::vector<double> envelope_samples(std::int64_t n) {
  std::mt19937_64 gen(1);
  std::uniform_real_distribution<double> u(0.0, 3.0);
  std::vector<double> ts(static_cast<std::size_t>(n));
  for (auto& x : ts) x = u(gen);
  return ts;
}

void BM_EnvelopeSerial(benchmark::State& state) {
  const JumpEnvelope env(bench_scale(), 0, 3);
  const auto ts = envelope_samples(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(sample_envelope_serial(env, ts));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_EnvelopeParallel(benchmark::State& state) {
  const JumpEnvelope env(bench_scale(), 0, 3);
  const auto ts = envelope_samples(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(sample_envelope_parallel(env, ts));
  state.SetItemsProcessed(state.iterations() * state.range(0));
  state.counters["threads"] = kernel_threads();
}

}  // namespace

BENCHMARK(BM_RiemannSerial)->RangeMultiplier(8)->Range(1 << 12, 1 << 21)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_RiemannParallel)->RangeMultiplier(8)->Range(1 << 12, 1 << 21)->Unit(benchmark::kMicrosecond)->UseRealTime();
BENCHMARK(BM_EnvelopeSerial)->RangeMultiplier(8)->Range(1 << 12, 1 << 18)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_EnvelopeParallel)->RangeMultiplier(8)->Range(1 << 12, 1 << 18)->Unit(benchmark::kMicrosecond)->UseRealTime();

BENCHMARK_MAIN();
