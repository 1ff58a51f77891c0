#include <doctest.h>

#include <cmath>

#include "expr_corpus.hpp"
#include "support.hpp"
#include "tscale/error.hpp"
#include "tscale/expr.hpp"

using namespace tscale;

TEST_SUITE("expr") {

TEST_CASE("parse shapes") {
  const Expr sq = parse_expr("s^2");
  REQUIRE(sq.size() == 3);
  CHECK(sq.nodes().back().op == Op::Pow);
  CHECK(sq == parse_expr("(s)^(2)"));

  const Expr prod = parse_expr("floor(s)*2*s");
  CHECK(prod.nodes().back().op == Op::Mul);
  CHECK(prod.has_breaks());
  CHECK(!sq.has_breaks());
}

TEST_CASE("precedence and associativity") {
  CHECK(parse_expr("2^3^2").eval(0) == 512);
  CHECK(parse_expr("-2^2").eval(0) == -4);
  CHECK(parse_expr("8/4/2").eval(0) == 1);
  CHECK(parse_expr("1 - 2 - 3").eval(0) == -4);
  CHECK(parse_expr("2*3 + 4*5").eval(0) == 26);
  CHECK(parse_expr("pi").eval(0) == doctest::Approx(3.141592653589793).epsilon(1e-16));
  CHECK(parse_constant("1/4 + 2e-1") == doctest::Approx(0.45));
}

TEST_CASE("syntax errors carry the column") {
  auto column = [](const char* text) -> std::size_t {
    try {
      parse_expr(text);
    } catch (const SyntaxError& e) {
      return e.column();
    }
    return 0;
  };
  CHECK(column("sin(s") == 6);
  CHECK(column("s + * 2") == 5);
  CHECK(column("foo(s)") == 1);
  CHECK(column("s)") == 2);
  CHECK(column("") == 1);
  CHECK(column("2 s") == 3);
  CHECK_THROWS_AS(parse_constant("s + 1"), Error);
}

TEST_CASE("eval_vd examples") {
  const ValDer a = parse_expr("s^2").eval_vd(3);
  CHECK(a.value == 9);
  CHECK(a.derivative == 6);

  const ValDer b = parse_expr("floor(s)").eval_vd(1.5);
  CHECK(b.value == 1);
  CHECK(b.derivative == 0);
  CHECK(b.smooth_at_point);
  CHECK(!parse_expr("floor(s)").eval_vd(2).smooth_at_point);
  CHECK(!parse_expr("abs(s)").eval_vd(0).smooth_at_point);

  const ValDer c = parse_expr("sin(s)").eval_vd(0);
  CHECK(c.value == 0);
  CHECK(c.derivative == 1);
}

TEST_CASE("domain errors") {
  const std::pair<const char*, double> bad[] = {{"log(s)", 0}, {"1/s", 0}, {"sqrt(s - 1)", 0}, {"s^0.5", -1}};
  for (const auto& [text, s] : bad) {
    CAPTURE(text);
    try {
      parse_expr(text).eval(s);
      FAIL("expected DomainError");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::DomainError);
    }
  }
}

TEST_CASE("breaks") {
  const auto b = parse_expr("floor(s)*2*s").breaks(0, 3);
  CHECK(b == std::vector<double>{0, 1, 2, 3});
  const auto h = parse_expr("floor(2*s)").breaks(0, 1.2);
  CHECK(h == std::vector<double>{0, 0.5, 1});
  const auto ab = parse_expr("abs(s - 1.5)").breaks(0, 3);
  CHECK(ab == std::vector<double>{1.5});
  const auto sn = parse_expr("floor(sin(s) * 2)").breaks(0, 3);
  // Non-affine arguments are bracketed inside the window only.
  REQUIRE(sn.size() == 2);
  CHECK(sn[0] == doctest::Approx(std::asin(0.5)).epsilon(1e-12));
  CHECK(sn[1] == doctest::Approx(M_PI - std::asin(0.5)).epsilon(1e-12));
}

TEST_CASE("affine detection") {
  const auto a = parse_expr("3 - 2*s + 0.5*s").affine();
  REQUIRE(a);
  CHECK(a->alpha == 3);
  CHECK(a->beta == -1.5);
  CHECK(!parse_expr("s*s").affine());
  CHECK(!parse_expr("sin(s)").affine());
}

TEST_CASE("print then parse is a fixpoint") {
  for (const char* text : tscale::testing::kExprCorpus) {
    CAPTURE(text);
    const Expr e = parse_expr(text);
    const std::string printed = e.to_string();
    const Expr back = parse_expr(printed);
    CHECK(back == e);
    CHECK(back.to_string() == printed);
  }
}

TEST_CASE("derivative matches central differences") {
  tscale::testing::Rng r(17);
  constexpr double h = 1e-5;
  for (const char* text : tscale::testing::kExprCorpus) {
    CAPTURE(text);
    const Expr e = parse_expr(text);
    int checked = 0;
    for (int i = 0; i < 1000; ++i) {
      const double s = r.uniform(0.5, 3.0);
      if (!e.breaks(s - 2 * h, s + 2 * h).empty()) continue;
      const ValDer vd = e.eval_vd(s);
      const double fd = (e.eval(s + h) - e.eval(s - h)) / (2 * h);
      CHECK(std::fabs(vd.derivative - fd) <= 1e-6 * std::max(1.0, std::fabs(vd.derivative)));
      ++checked;
    }
    CHECK(checked > 900);
  }
}

}  // TEST_SUITE
