#pragma once

// Hot loops in two flavours. The serial versions are plain loops kept as the
// reference; the parallel versions split work into fixed-size chunks whose
// partial results are combined in chunk order, so their output does not
// depend on the thread count.

#include <cstddef>
#include <span>
#include <vector>

#include "tscale/expr.hpp"
#include "tscale/scale.hpp"

namespace tscale {

inline constexpr std::size_t kKernelChunk = 8192;

/// sum_i f(t_{i-1}) (t_i - t_{i-1}) over consecutive nodes.
double left_riemann_sum_serial(const Expr& f, std::span<const double> nodes);
double left_riemann_sum_parallel(const Expr& f, std::span<const double> nodes);

/// S(T)(t) at every sample.
std::vector<double> sample_envelope_serial(const JumpEnvelope& env, std::span<const double> ts);
std::vector<double> sample_envelope_parallel(const JumpEnvelope& env, std::span<const double> ts);

/// Number of OpenMP threads the parallel kernels will use.
int kernel_threads();

}  // namespace tscale
