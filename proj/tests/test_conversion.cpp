#include <doctest.h>

#include <cmath>

#include "tscale/conversion.hpp"
#include "tscale/delta_calculus.hpp"
#include "tscale/error.hpp"
#include "tscale/scale_spec.hpp"

using namespace tscale;

namespace {

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an error");
  return ErrorKind::InvalidScale;
}

const TimeScale kThree = TimeScale::points({0, 1, 2});
const TimeScale kLine = TimeScale::interval(-1, 4);

}  // namespace

TEST_SUITE("conversion") {

TEST_CASE("by parts") {
  const TimeScale unit = TimeScale::interval(0, 1);
  CHECK(by_parts_cross_scale(unit, unit, parse_expr("s^2"), 0, 1).value == doctest::Approx(1.0 / 3).epsilon(1e-12));
  CHECK(by_parts_cross_scale(kThree, kThree, parse_expr("s^2"), 0, 2).value == doctest::Approx(1).epsilon(1e-14));
  const TimeScale n = parse_scale("points(0,1,2,3)");
  CHECK(by_parts_cross_scale(n, kLine, parse_expr("s^2"), 0, 3).value == doctest::Approx(5).epsilon(1e-12));
  const TimeScale mixed = parse_scale("union(interval(0,1), points(2))");
  CHECK(by_parts_cross_scale(mixed, mixed, parse_expr("s"), 0, 2).value == doctest::Approx(1.5).epsilon(1e-12));
  CHECK(by_parts_cross_scale(mixed, kLine, parse_expr("s"), 0, 2).value == doctest::Approx(1.5).epsilon(1e-12));
  CHECK(by_parts_cross_scale(n, kLine, parse_expr("s"), 0, 3).method == Method::by_parts);
}

TEST_CASE("by parts needs f differentiable on the dense superscale") {
  CHECK(kind_of([] { by_parts_cross_scale(kThree, kLine, parse_expr("abs(s - 0.5)"), 0, 2); }) ==
        ErrorKind::NotDifferentiable);
  // Kinks at points of a discrete superscale are harmless.
  CHECK(by_parts_cross_scale(kThree, kThree, parse_expr("abs(s - 1)"), 0, 2).value ==
        doctest::Approx(1).epsilon(1e-14));
}

TEST_CASE("via the real line") {
  CHECK(convert_via_real(kThree, parse_expr("s^2"), 0, 2).value == 1);
  CHECK(convert_via_real(TimeScale::interval(0, 1), parse_expr("s"), 0, 1).value ==
        doctest::Approx(0.5).epsilon(1e-14));
  const IntegralReport c =
      convert_via_real(parse_scale("union(geometric(q=0.5,c=1), points(0))"), parse_expr("1"), 0, 1);
  CHECK(std::fabs(c.value - 1) <= 1e-10);
  CHECK(c.truncation_residual < 1e-10);
  CHECK(c.method == Method::convert_real);
}

TEST_CASE("via a superscale") {
  CHECK(convert_via_superscale(kThree, kLine, parse_expr("s^2"), 0, 2).value == doctest::Approx(1).epsilon(1e-12));
  const TimeScale mixed = parse_scale("union(interval(0,1), points(2))");
  CHECK(convert_via_superscale(mixed, mixed, parse_expr("s"), 0, 2).value == doctest::Approx(1.5).epsilon(1e-12));

  // 0 * 2 from the jump at 0, then 6 from [2, 4].
  const TimeScale t = parse_scale("union(points(0), interval(2,4))");
  const TimeScale sup = parse_scale("union(points(0, 1), interval(2,4))");
  const double oracle = riemann_delta_integral(t, parse_expr("s"), 0, 4).value;
  CHECK(oracle == doctest::Approx(6).epsilon(1e-8));
  CHECK(convert_via_superscale(t, sup, parse_expr("s"), 0, 4).value == doctest::Approx(6).epsilon(1e-12));
  CHECK(by_parts_cross_scale(t, sup, parse_expr("s"), 0, 4).value == doctest::Approx(6).epsilon(1e-12));

  CHECK(kind_of([&] { convert_via_superscale(sup, t, parse_expr("s"), 0, 4); }) == ErrorKind::NotSubset);
  CHECK(kind_of([] { convert_via_superscale(kThree, kLine, parse_expr("s"), 2, 2); }) ==
        ErrorKind::DegenerateWindow);
}

TEST_CASE("monotone comparison") {
  const MonotoneComparison a = monotone_compare(kThree, kLine, parse_expr("s"), 0, 2);
  CHECK(a.lhs == doctest::Approx(1).epsilon(1e-12));
  CHECK(a.rhs == doctest::Approx(2).epsilon(1e-12));
  CHECK(a.holds);

  const MonotoneComparison c = monotone_compare(kThree, kLine, parse_expr("3"), 0, 2);
  CHECK(c.lhs == doctest::Approx(6).epsilon(1e-12));
  CHECK(c.rhs == doctest::Approx(6).epsilon(1e-12));
  CHECK(c.holds);

  const MonotoneComparison h =
      monotone_compare(parse_scale("grid(-2, 4, 1)"), parse_scale("grid(-2, 4, 0.5)"), parse_expr("s"), 0, 2);
  CHECK(h.lhs == 1);
  CHECK(h.rhs == 1.5);
  CHECK(h.holds);

  CHECK(kind_of([] { monotone_compare(kThree, kLine, parse_expr("-s"), 0, 2); }) == ErrorKind::NotMonotone);
}

TEST_CASE("chain convergence") {
  const TimeScale stat = parse_scale("union(points(-1, 3), interval(0, 2))");
  const ChainReport s = chain_convergence({stat, stat, stat}, stat, parse_expr("s^2"), 0, 2);
  REQUIRE(s.rows.size() == 3);
  for (const auto& row : s.rows) CHECK(row.gap <= 1e-12);
  CHECK(s.limit == doctest::Approx(8.0 / 3).epsilon(1e-12));
  CHECK(s.envelope_violations == 0);

  std::vector<TimeScale> chain;
  for (int n = 0; n < 5; ++n) chain.push_back(parse_scale("union(points(-1, 0), harmonic(c=1, nmax=" +
                                                          std::to_string(n + 2) + "), interval(1, 3))"));
  const TimeScale sup = parse_scale("union(points(-1), harmonic(c=1), interval(1, 3))");
  const ChainReport c = chain_convergence(chain, sup, parse_expr("2"), 0, 2);
  for (const auto& row : c.rows) CHECK(row.gap <= 1e-12);
  CHECK(c.limit == doctest::Approx(4).epsilon(1e-9));

  CHECK(kind_of([&] { chain_convergence({chain[2], chain[1]}, sup, parse_expr("s"), 0, 2); }) ==
        ErrorKind::ChainNotAscending);
  CHECK(kind_of([&] { chain_convergence(chain, sup, parse_expr("s"), -1, 2); }) == ErrorKind::HypothesisViolated);
  CHECK(kind_of([&] { chain_convergence(chain, sup, parse_expr("s"), 0, 3); }) == ErrorKind::HypothesisViolated);
  CHECK(kind_of([&] { chain_convergence(chain, kThree, parse_expr("s"), 0, 2); }) == ErrorKind::ChainNotAscending);
}

}  // TEST_SUITE
