#include <doctest.h>

#include <cmath>

#include "support.hpp"
#include "tscale/error.hpp"
#include "tscale/kernels.hpp"
#include "tscale/partition.hpp"
#include "tscale/scale_spec.hpp"

using namespace tscale;

TEST_SUITE("kernels") {

TEST_CASE("parallel Riemann sum matches the serial loop") {
  const Expr f = parse_expr("sin(3*s) + s^2");
  for (std::size_t n : {std::size_t{2}, std::size_t{100}, kKernelChunk, kKernelChunk + 1, std::size_t{200003}}) {
    CAPTURE(n);
    std::vector<double> nodes(n);
    for (std::size_t i = 0; i < n; ++i) nodes[i] = 3.0 * static_cast<double>(i) / static_cast<double>(n - 1);
    const double s = left_riemann_sum_serial(f, nodes);
    const double p = left_riemann_sum_parallel(f, nodes);
    CHECK(std::fabs(s - p) <= 1e-12 * std::max(1.0, std::fabs(s)));
    CHECK(p == left_riemann_sum_parallel(f, nodes));  // chunked order is deterministic
  }
  const std::vector<double> one{1.0};
  CHECK(left_riemann_sum_parallel(f, one) == 0);
}

TEST_CASE("parallel envelope sampling matches the serial loop") {
  const TimeScale t = parse_scale("union(interval(0, 1), points(1.5, 2), geometric(q=0.5, c=0.5, offset=2))");
  const JumpEnvelope env(t, 0, 2.5);
  tscale::testing::Rng r(2);
  std::vector<double> ts(50000);
  for (auto& x : ts) x = r.uniform(0, 2.5);
  CHECK(sample_envelope_parallel(env, ts) == sample_envelope_serial(env, ts));
}

TEST_CASE("exceptions inside parallel chunks reach the caller") {
  std::vector<double> nodes(3 * kKernelChunk);
  for (std::size_t i = 0; i < nodes.size(); ++i) nodes[i] = -1.0 + static_cast<double>(i) * 1e-4;
  CHECK_THROWS_AS(left_riemann_sum_parallel(parse_expr("log(s)"), nodes), Error);
  const JumpEnvelope env(TimeScale::interval(0, 1), 0, 1);
  std::vector<double> ts(3 * kKernelChunk, 0.5);
  ts.back() = 7;
  CHECK_THROWS_AS(sample_envelope_parallel(env, ts), Error);
}

TEST_CASE("Riemann sums on a real partition") {
  const TimeScale t = parse_scale("union(interval(0, 2), points(2.5, 3))");
  const DeltaPartition p = build_partition(t, 0, 3, 1e-4);
  const Expr f = parse_expr("exp(-s)");
  CHECK(std::fabs(left_riemann_sum_serial(f, p.points()) - left_riemann_sum_parallel(f, p.points())) <= 1e-12);
  CHECK(kernel_threads() >= 1);
}

}  // TEST_SUITE
