#include "tscale/delta_calculus.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <optional>
#include <string>

#include "tscale/error.hpp"
#include "tscale/kernels.hpp"
#include "tscale/partition.hpp"
#include "tscale/quadrature.hpp"

namespace tscale {

namespace {

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

std::string_view method_name(Method m) noexcept {
  switch (m) {
    case Method::riemann_sum: return "riemann_sum";
    case Method::piecewise_closed: return "piecewise_closed";
    case Method::convert_real: return "convert_real";
    case Method::convert_superscale: return "convert_superscale";
    case Method::by_parts: return "by_parts";
  }
  return "unknown";
}

double delta_derivative(const TimeScale& scale, const Expr& f, double t) {
  const double s = scale.snap(t);
  const double sig = scale.sigma(s);
  if (sig > s) return (f.eval(sig) - f.eval(s)) / (sig - s);
  const ValDer vd = f.eval_vd(s);
  if (!vd.smooth_at_point) {
    raise(ErrorKind::NotDifferentiable, "f is not differentiable at the right-dense point " + num(s));
  }
  return vd.derivative;
}

IntegralReport riemann_delta_integral(const TimeScale& scale, const Expr& f, double a, double b,
                                      const IntegrationOptions& opts) {
  const double sa = scale.snap(a);
  const double sb = scale.snap(b);
  if (!(sa < sb)) raise(ErrorKind::DegenerateWindow, "window needs a < b, got [" + num(sa) + ", " + num(sb) + "]");

  IntegralReport rep;
  rep.method = Method::riemann_sum;

  struct Sum {
    double value;
    std::size_t nodes;
    bool exact;  // every cell is a single gap [t, sigma(t)]
  };
  auto sum_at = [&](double delta) {
    DeltaPartition p = build_partition(scale, sa, sb, delta, opts.max_cells + 1);
    rep.evaluations += p.size() - 1;
    const auto& pts = p.points();
    bool exact = true;
    for (std::size_t i = 1; i < pts.size() && exact; ++i) exact = scale.inf_above(pts[i - 1]) == pts[i];
    return Sum{left_riemann_sum_parallel(f, pts), p.size(), exact};
  };
  auto threshold = [&](double v) { return opts.relative_tol ? opts.tol * std::max(1.0, std::fabs(v)) : opts.tol; };

  // Until every interval piece holds a few cells, equal sums only mean the
  // partition has not yet seen the dense part.
  double shortest_run = std::numeric_limits<double>::infinity();
  for (const auto& r : scale.dense_runs(sa, sb)) shortest_run = std::min(shortest_run, r.second - r.first);

  double delta = std::min(safe_delta0(scale, sa, sb), (sb - sa) / 8);
  Sum prev = sum_at(delta);
  if (prev.exact) {
    // [a, b]_T is finite and every partition is the same.
    rep.value = prev.value;
    return rep;
  }
  // Left sums converge at O(delta) on dense pieces, so plain differences
  // stall long before 1e-8. The extrapolated sequence 2 S(d/2) - S(d)
  // cancels the leading term and is accepted after two consecutive
  // agreements. The greedy walk leaves a remainder cell r < delta at the end
  // of each interval; while r is unchanged across halvings the extrapolation
  // is constant but off by about f' r^2 / 2, so acceptance also waits for
  // delta^2 to sit well below tol. With interval pieces present the raw
  // difference is not trusted on its own: runs of opposite slope cancel in it.
  const bool has_dense = std::isfinite(shortest_run);
  const double delta_ok = 0.1 * std::sqrt(opts.tol);
  std::optional<double> prev_r;
  int streak = 0;
  double last_diff = 0.0;
  for (int k = 1; k <= opts.max_halvings; ++k) {
    delta /= 2;
    const Sum cur = sum_at(delta);
    if (cur.exact) {
      rep.value = cur.value;
      rep.est_error = std::fabs(cur.value - prev.value);
      return rep;
    }
    const bool informative =
        cur.nodes != prev.nodes && !(delta > shortest_run / 4) && !(delta > delta_ok);
    const double thr = threshold(cur.value);
    const double raw = std::fabs(cur.value - prev.value);
    const double r = 2.0 * cur.value - prev.value;
    last_diff = raw;
    if (informative && !has_dense && raw < thr) {
      rep.value = cur.value;
      rep.est_error = raw;
      return rep;
    }
    if (prev_r) last_diff = std::fabs(r - *prev_r);
    if (informative && prev_r) {
      streak = last_diff < thr ? streak + 1 : 0;
      if (streak >= 2) {
        rep.value = r;
        rep.est_error = last_diff;
        return rep;
      }
    } else {
      streak = 0;
    }
    prev_r = r;
    prev = cur;
  }
  raise(ErrorKind::NoConvergence, "Riemann sums did not settle after " + std::to_string(opts.max_halvings) +
                                      " halvings (last difference " + num(last_diff) + ")");
}

IntegralReport classical_integral(const Expr& f, double a, double b, double tol) {
  if (!(a <= b)) raise(ErrorKind::DegenerateWindow, "classical integral needs a <= b");
  IntegralReport rep;
  rep.method = Method::piecewise_closed;
  if (a == b) return rep;
  auto g = [&f](double s) { return f.eval(s); };
  QuadResult q = integrate_piecewise(g, a, b, f.breaks(a, b), tol);
  rep.value = q.value;
  rep.est_error = q.error;
  rep.evaluations = q.evaluations;
  return rep;
}

std::pair<double, double> abel_sum(std::span<const double> alpha, std::span<const double> beta) {
  if (alpha.size() != beta.size()) {
    raise(ErrorKind::LengthMismatch, "alpha has " + std::to_string(alpha.size()) + " terms, beta has " +
                                         std::to_string(beta.size()));
  }
  const std::size_t n = alpha.size();
  if (n < 2) raise(ErrorKind::LengthMismatch, "summation by parts needs at least two terms");
  double lhs = 0.0;
  for (std::size_t i = 0; i < n; ++i) lhs += alpha[i] * beta[i];
  double rhs = 0.0;
  double partial = 0.0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    partial += alpha[i];
    rhs += partial * (beta[i] - beta[i + 1]);
  }
  partial += alpha[n - 1];
  rhs += partial * beta[n - 1];
  return {lhs, rhs};
}

}  // namespace tscale
