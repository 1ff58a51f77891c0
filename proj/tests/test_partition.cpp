#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "support.hpp"
#include "tscale/error.hpp"
#include "tscale/partition.hpp"
#include "tscale/scale_spec.hpp"

using namespace tscale;
using tscale::testing::BruteScale;
using tscale::testing::Rng;

namespace {

using Pts = std::vector<double>;

}  // namespace

TEST_SUITE("partition") {

TEST_CASE("build_partition examples") {
  CHECK(build_partition(TimeScale::interval(0, 1), 0, 1, 0.25).points() == Pts{0, 0.25, 0.5, 0.75, 1});
  CHECK(build_partition(TimeScale::points({0, 1, 2}), 0, 2, 0.1).points() == Pts{0, 1, 2});
  const DeltaPartition p = build_partition(parse_scale("union(interval(0,1), points(2))"), 0, 2, 0.5);
  CHECK(p.points() == Pts{0, 0.5, 1, 2});
  CHECK(p.cell_kind(1) == CellKind::fine);
  CHECK(p.cell_kind(3) == CellKind::jump);
  CHECK(p.fine_mesh() == 0.5);
}

TEST_CASE("build_partition errors") {
  CHECK_THROWS_AS(build_partition(TimeScale::interval(0, 1), 1, 0, 0.1), Error);
  CHECK_THROWS_AS(build_partition(TimeScale::interval(0, 1), 0, 1, 0.0), Error);
  CHECK_THROWS_AS(build_partition(TimeScale::interval(0, 1), 0, 1, 1e-3, 100), Error);
}

TEST_CASE("partition_function examples") {
  const DeltaPartition p(TimeScale::interval(0, 1), 0.5, {0, 0.5, 1});
  CHECK(partition_function(p, 0.2) == 0.5);
  CHECK(partition_function(p, 0.0) == 0.5);
  CHECK(partition_function(p, 0.7) == 1);
  CHECK(partition_function(p, 0.5) == 1);
  CHECK(partition_function(p, 1) == 1);
  try {
    partition_function(p, 1.5);
    FAIL("expected QueryOutsideWindow");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::QueryOutsideWindow);
  }
}

TEST_CASE("refine") {
  const DeltaPartition p = build_partition(TimeScale::interval(0, 1), 0, 1, 0.5);
  const DeltaPartition q = refine(p);
  CHECK(q.delta() == 0.25);
  CHECK(q.points() == Pts{0, 0.25, 0.5, 0.75, 1});

  const DeltaPartition d = build_partition(TimeScale::points({0, 1, 2}), 0, 2, 0.3);
  CHECK(refine(d).points() == d.points());

  Rng r(21);
  for (int k = 0; k < 100; ++k) {
    const BruteScale b = tscale::testing::random_brute(r);
    const TimeScale t(b.pieces());
    const auto [lo, hi] = tscale::testing::random_window(r, b);
    const DeltaPartition p0 = build_partition(t, lo, hi, r.uniform(0.01, 0.4));
    const DeltaPartition p1 = refine(p0);
    CHECK_MESSAGE(!validate_partition(p1), validate_partition(p1).value_or(""));
    CHECK(std::includes(p1.points().begin(), p1.points().end(), p0.points().begin(), p0.points().end()));
    CHECK(p1.fine_mesh() <= p0.delta() / 2);
  }
}

TEST_CASE("validator accepts greedy output and rejects broken partitions") {
  Rng r(4);
  for (int k = 0; k < 300; ++k) {
    const BruteScale b = tscale::testing::random_brute(r);
    const TimeScale t(b.pieces());
    const auto [lo, hi] = tscale::testing::random_window(r, b);
    const double delta = r.uniform(0.005, 0.6);
    const DeltaPartition p = build_partition(t, lo, hi, delta);
    CHECK(!validate_partition(p));
    // Every gap at least delta long is a cell of its own.
    for (double x : b.anchors()) {
      if (x < lo || x >= hi || !b.member(x)) continue;
      const double s = b.inf_above(x);
      if (s - x < delta) continue;
      const auto& pts = p.points();
      const auto it = std::find(pts.begin(), pts.end(), x);
      REQUIRE(it != pts.end());
      CHECK(*(it + 1) == s);
    }
  }

  const TimeScale t = TimeScale::interval(0, 1);
  CHECK(validate_partition(DeltaPartition(t, 0.25, {0, 0.5, 1})));            // cell too long
  CHECK(validate_partition(DeltaPartition(TimeScale::points({0, 1, 2}), 0.5, {0, 2})));  // skips 1
  CHECK(validate_partition(DeltaPartition(t, 0.5, {0, 0.6, 0.5, 1})));       // not increasing
}

TEST_CASE("partition function approximates the jump envelope within delta") {
  Rng r(9);
  for (int k = 0; k < 200; ++k) {
    const BruteScale b = tscale::testing::random_brute(r);
    const TimeScale t(b.pieces());
    const auto [lo, hi] = tscale::testing::random_window(r, b);
    const JumpEnvelope env(t, lo, hi);
    const double delta = safe_delta0(t, lo, hi) * r.uniform(0.01, 0.99);
    const DeltaPartition p = build_partition(t, lo, hi, delta);
    // Cells may be exactly delta long, so the gap reaches delta at a node
    // that opens a dense cell; everywhere else it stays below.
    const auto& nodes = p.points();
    for (int i = 0; i <= 200; ++i) {
      const double x = lo + (hi - lo) * i / 200.0;
      const double d = std::fabs(partition_function(p, x) - env(x));
      CHECK(d <= delta + 1e-15);
      if (!std::binary_search(nodes.begin(), nodes.end(), x)) CHECK(d < delta);
    }
  }
}

TEST_CASE("partition_csv") {
  const DeltaPartition p = build_partition(parse_scale("union(interval(0,1), points(2))"), 0, 2, 0.5);
  CHECK(partition_csv(p) == "index,t,cell_kind\n0,0,\n1,0.5,fine\n2,1,fine\n3,2,jump\n");
}

}  // TEST_SUITE
