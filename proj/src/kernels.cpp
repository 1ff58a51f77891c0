#include "tscale/kernels.hpp"

#include <algorithm>
#include <exception>
#include <omp.h>

namespace tscale {

namespace {

// Runs body(chunk) for every chunk in parallel. The first failure in chunk
// order is rethrown on the calling thread once the loop has drained.
template <class Body>
void for_each_chunk(std::size_t nchunks, Body body) {
  std::vector<std::exception_ptr> errors(nchunks);
  const auto n = static_cast<long long>(nchunks);
#pragma omp parallel for schedule(static)
  for (long long c = 0; c < n; ++c) {
    try {
      body(static_cast<std::size_t>(c));
    } catch (...) {
      errors[static_cast<std::size_t>(c)] = std::current_exception();
    }
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace

int kernel_threads() { return omp_get_max_threads(); }

double left_riemann_sum_serial(const Expr& f, std::span<const double> nodes) {
  double sum = 0.0;
  for (std::size_t i = 1; i < nodes.size(); ++i) {
    sum += f.eval(nodes[i - 1]) * (nodes[i] - nodes[i - 1]);
  }
  return sum;
}

double left_riemann_sum_parallel(const Expr& f, std::span<const double> nodes) {
  if (nodes.size() < 2) return 0.0;
  const std::size_t cells = nodes.size() - 1;
  const std::size_t nchunks = (cells + kKernelChunk - 1) / kKernelChunk;
  std::vector<double> partial(nchunks, 0.0);
  for_each_chunk(nchunks, [&](std::size_t c) {
    const std::size_t lo = c * kKernelChunk + 1;
    const std::size_t hi = std::min(cells, (c + 1) * kKernelChunk) + 1;
    double s = 0.0;
    for (std::size_t i = lo; i < hi; ++i) s += f.eval(nodes[i - 1]) * (nodes[i] - nodes[i - 1]);
    partial[c] = s;
  });
  double sum = 0.0;
  for (double p : partial) sum += p;
  return sum;
}

std::vector<double> sample_envelope_serial(const JumpEnvelope& env, std::span<const double> ts) {
  std::vector<double> out(ts.size());
  for (std::size_t i = 0; i < ts.size(); ++i) out[i] = env(ts[i]);
  return out;
}

std::vector<double> sample_envelope_parallel(const JumpEnvelope& env, std::span<const double> ts) {
  std::vector<double> out(ts.size());
  const std::size_t nchunks = (ts.size() + kKernelChunk - 1) / kKernelChunk;
  for_each_chunk(nchunks, [&](std::size_t c) {
    const std::size_t hi = std::min(ts.size(), (c + 1) * kKernelChunk);
    for (std::size_t i = c * kKernelChunk; i < hi; ++i) out[i] = env(ts[i]);
  });
  return out;
}

}  // namespace tscale
