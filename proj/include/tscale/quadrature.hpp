#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

namespace tscale {

struct QuadResult {
  double value = 0.0;
  double error = 0.0;
  std::size_t evaluations = 0;
};

namespace detail {

template <class F>
struct Simpson {
  const F& f;
  double tol;
  int min_depth;
  int max_depth;
  QuadResult out;

  void step(double a, double b, double fa, double fm, double fb, double whole, double eps, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    out.evaluations += 2;
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double diff = left + right - whole;
    // The last clause stops chasing rounding noise once the tolerance has
    // been halved below what binary64 can resolve on this panel.
    const bool done = depth >= min_depth &&
                      (std::fabs(diff) <= 15.0 * eps || depth >= max_depth ||
                       std::fabs(diff) <= 1e-15 * (std::fabs(left) + std::fabs(right)) ||
                       (b - a) <= 1e-13 * std::max(1.0, std::fabs(a)));
    if (done) {
      out.value += left + right + diff / 15.0;
      out.error += std::fabs(diff) / 15.0;
      return;
    }
    step(a, m, fa, flm, fm, left, 0.5 * eps, depth + 1);
    step(m, b, fm, frm, fb, right, 0.5 * eps, depth + 1);
  }
};

}  // namespace detail

/// Adaptive Simpson on [a, b] with Richardson correction per panel. The
/// endpoint values are passed in so callers can supply one-sided limits.
template <class F>
QuadResult adaptive_simpson(const F& f, double a, double b, double fa, double fb, double tol,
                            int min_depth = 4, int max_depth = 48) {
  if (!(b > a)) return {};
  detail::Simpson<F> s{f, tol, min_depth, max_depth, {}};
  const double m = 0.5 * (a + b);
  const double fm = f(m);
  s.out.evaluations = 1;
  s.step(a, b, fa, fm, fb, (b - a) / 6.0 * (fa + 4.0 * fm + fb), tol, 0);
  return s.out;
}

/// Integral over [a, b] of a function that is smooth between `breaks`.
/// Each smooth piece is integrated separately; its endpoint values are taken
/// a hair inside the piece so a jump at a break never leaks across.
template <class F>
QuadResult integrate_piecewise(const F& f, double a, double b, std::vector<double> breaks, double tol) {
  QuadResult total;
  if (!(b > a)) return total;
  breaks.erase(std::remove_if(breaks.begin(), breaks.end(), [&](double x) { return !(x > a && x < b); }),
               breaks.end());
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());
  std::vector<double> nodes;
  nodes.reserve(breaks.size() + 2);
  nodes.push_back(a);
  nodes.insert(nodes.end(), breaks.begin(), breaks.end());
  nodes.push_back(b);
  const double piece_tol = tol / static_cast<double>(nodes.size() - 1);
  for (std::size_t i = 1; i < nodes.size(); ++i) {
    const double lo = nodes[i - 1];
    const double hi = nodes[i];
    const double nudge = std::min(1e-13 * std::max(1.0, std::max(std::fabs(lo), std::fabs(hi))), 0.25 * (hi - lo));
    const double flo = f(lo + nudge);
    const double fhi = f(hi - nudge);
    QuadResult r = adaptive_simpson(f, lo, hi, flo, fhi, piece_tol);
    total.value += r.value;
    total.error += r.error;
    total.evaluations += r.evaluations + 2;
  }
  return total;
}

}  // namespace tscale
