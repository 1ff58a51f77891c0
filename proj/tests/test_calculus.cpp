#include <doctest.h>

#include <cmath>
#include <numbers>

#include "support.hpp"
#include "tscale/delta_calculus.hpp"
#include "tscale/error.hpp"
#include "tscale/scale_spec.hpp"

using namespace tscale;
using tscale::testing::BruteScale;
using tscale::testing::Rng;

namespace {

// Exact value of the Delta-integral over a scale without dense pieces.
double finite_sum(const std::vector<double>& pts, double a, double b, double (*f)(double)) {
  double out = 0.0;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i)
    if (pts[i] >= a && pts[i] < b) out += f(pts[i]) * (pts[i + 1] - pts[i]);
  return out;
}

}  // namespace

TEST_SUITE("delta_calculus") {

TEST_CASE("delta_derivative examples") {
  const Expr sq = parse_expr("s^2");
  CHECK(delta_derivative(parse_scale("grid(0, 10, 1)"), sq, 3) == 7);
  CHECK(delta_derivative(TimeScale::interval(0, 5), sq, 3) == 6);
  CHECK(delta_derivative(parse_scale("union(interval(0,1), points(2))"), sq, 1) == 3);
  try {
    delta_derivative(TimeScale::interval(0, 5), parse_expr("abs(s - 2)"), 2);
    FAIL("expected NotDifferentiable");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotDifferentiable);
  }
  // At a right-scattered point the quotient exists regardless of kinks.
  CHECK(delta_derivative(TimeScale::points({0, 1, 2}), parse_expr("abs(s - 1)"), 1) == 1);
}

TEST_CASE("riemann examples") {
  CHECK(riemann_delta_integral(parse_scale("points(0,1,2,3,4,5)"), parse_expr("s^2"), 0, 5).value == 30);
  CHECK(riemann_delta_integral(TimeScale::interval(0, 1), parse_expr("s"), 0, 1).value ==
        doctest::Approx(0.5).epsilon(1e-8));
  CHECK(riemann_delta_integral(parse_scale("union(interval(0,1), points(2))"), parse_expr("s"), 0, 2).value ==
        doctest::Approx(1.5).epsilon(1e-8));
  const IntegralReport r = riemann_delta_integral(TimeScale::interval(0, M_PI), parse_expr("sin(s)"), 0, M_PI);
  CHECK(std::fabs(r.value - 2) < 1e-7);
  CHECK(r.method == Method::riemann_sum);
  CHECK(r.truncation_residual == 0);
}

TEST_CASE("riemann on clusters") {
  // f = 1 on {0} ∪ {q^n}: total measure b - a.
  const IntegralReport r = riemann_delta_integral(parse_scale("union(geometric(q=0.5,c=1), points(0))"),
                                                  parse_expr("1"), 0, 1);
  CHECK(std::fabs(r.value - 1) < 1e-8);
}

TEST_CASE("riemann is exact on finite scales") {
  Rng r(12);
  for (int k = 0; k < 100; ++k) {
    BruteScale b;
    const int n = r.integer(3, 12);
    for (int i = 0; i < n; ++i) b.points.push_back(r.grid(0, 4));
    std::sort(b.points.begin(), b.points.end());
    b.points.erase(std::unique(b.points.begin(), b.points.end()), b.points.end());
    if (b.points.size() < 3) continue;
    const TimeScale t(b.pieces());
    const auto [lo, hi] = tscale::testing::random_window(r, b);
    const double exact = finite_sum(b.points, lo, hi, [](double s) { return s * s - s; });
    CHECK(riemann_delta_integral(t, parse_expr("s^2 - s"), lo, hi).value == doctest::Approx(exact).epsilon(1e-14));
  }
}

TEST_CASE("riemann errors") {
  const TimeScale line = TimeScale::interval(0, 1);
  try {
    riemann_delta_integral(line, parse_expr("s"), 1, 0);
    FAIL("expected DegenerateWindow");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::DegenerateWindow);
  }
  IntegrationOptions tight;
  tight.max_halvings = 3;
  try {
    riemann_delta_integral(line, parse_expr("sin(5*s)"), 0, 1, tight);
    FAIL("expected NoConvergence");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NoConvergence);
  }
}

TEST_CASE("linearity and additivity") {
  Rng r(31);
  const IntegrationOptions opts;
  const char* fs[] = {"s^2", "sin(2*s)", "exp(-s)", "1 - s^3/4"};
  for (int k = 0; k < 25; ++k) {
    const BruteScale b = tscale::testing::random_brute(r);
    const TimeScale t(b.pieces());
    const auto [lo, hi] = tscale::testing::random_window(r, b);
    const char* f = fs[r.integer(0, 3)];
    const char* g = fs[r.integer(0, 3)];
    const double al = r.grid(-2, 2);
    const double be = r.grid(-2, 2);
    const std::string combo = format_real(al) + "*(" + f + ") + " + format_real(be) + "*(" + g + ")";
    const double lhs = riemann_delta_integral(t, parse_expr(combo), lo, hi, opts).value;
    const double rf = riemann_delta_integral(t, parse_expr(f), lo, hi, opts).value;
    const double rg = riemann_delta_integral(t, parse_expr(g), lo, hi, opts).value;
    CHECK(std::fabs(lhs - (al * rf + be * rg)) <= 2 * opts.tol * (1 + std::fabs(al) + std::fabs(be)));

    // Split at a member strictly inside the window.
    std::vector<double> inner;
    for (double x : b.anchors())
      if (x > lo && x < hi && b.member(x)) inner.push_back(x);
    if (inner.empty()) continue;
    const double c = inner[static_cast<std::size_t>(r.integer(0, static_cast<int>(inner.size()) - 1))];
    const Expr fe = parse_expr(f);
    const double whole = riemann_delta_integral(t, fe, lo, hi, opts).value;
    const double left = riemann_delta_integral(t, fe, lo, c, opts).value;
    const double right = riemann_delta_integral(t, fe, c, hi, opts).value;
    CHECK(std::fabs(whole - (left + right)) <= 2 * opts.tol * 2);
  }
}

TEST_CASE("classical_integral examples") {
  CHECK(classical_integral(parse_expr("s"), 0, 1).value == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(classical_integral(parse_expr("floor(s)*2*s"), 0, 3).value == doctest::Approx(13).epsilon(1e-13));
  CHECK(std::fabs(classical_integral(parse_expr("sin(s)"), 0, M_PI).value - 2) < 1e-10);
  CHECK(classical_integral(parse_expr("s"), 2, 2).value == 0);
  CHECK(classical_integral(parse_expr("abs(s - 0.3)"), 0, 1).value == doctest::Approx(0.045 + 0.245).epsilon(1e-13));
}

TEST_CASE("abel_sum") {
  auto both = [](std::vector<double> a, std::vector<double> b) { return abel_sum(a, b); };
  CHECK(both({1, 1, 1}, {1, 2, 3}) == std::pair<double, double>{6, 6});
  CHECK(both({0, 0}, {5, 7}) == std::pair<double, double>{0, 0});
  CHECK(both({2, -1, 4}, {1, 1, 1}) == std::pair<double, double>{5, 5});
  CHECK_THROWS_AS(both({1, 2}, {1}), Error);
  CHECK_THROWS_AS(both({1}, {1}), Error);
}

}  // TEST_SUITE
