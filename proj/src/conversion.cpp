#include "tscale/conversion.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

#include "tscale/error.hpp"
#include "tscale/quadrature.hpp"

namespace tscale {

namespace {

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

using Region = std::pair<double, double>;

// Gaps of a scale over [lo, hi) plus the regions integrated classically:
// the interval pieces and the truncated cluster tails, merged.
struct Layout {
  std::vector<GapInterval> gaps;
  std::vector<Region> dense;
  double residual = 0.0;
};

Layout layout(const TimeScale& u, double lo, double hi, const GapOptions& opts) {
  Layout out;
  GapSet gs = u.enumerate_gaps(lo, hi, opts);
  out.gaps = std::move(gs.gaps);
  out.residual = gs.truncation_residual;
  std::vector<Region> regions = u.dense_runs(lo, hi);
  for (const auto& t : gs.tails) {
    double l = std::max(t.first, lo);
    double h = std::min(t.second, hi);
    if (l < h) regions.emplace_back(l, h);
  }
  std::sort(regions.begin(), regions.end());
  for (const auto& r : regions) {
    if (!out.dense.empty() && r.first <= out.dense.back().second) {
      out.dense.back().second = std::max(out.dense.back().second, r.second);
    } else {
      out.dense.push_back(r);
    }
  }
  return out;
}

QuadResult integrate_f(const Expr& f, double lo, double hi, double tol) {
  auto g = [&f](double s) { return f.eval(s); };
  return integrate_piecewise(g, lo, hi, f.breaks(lo, hi), tol);
}

void require_subset(const TimeScale& sup, const TimeScale& scale) {
  SubsetEvidence ev = restrict_to(sup, scale);
  if (!ev.subset) {
    raise(ErrorKind::NotSubset, "T is not contained in the superscale: " + num(ev.witness.value_or(NAN)) +
                                    " is in T but not in the superscale");
  }
}

std::pair<double, double> window(const TimeScale& scale, double a, double b) {
  const double sa = scale.snap(a);
  const double sb = scale.snap(b);
  if (!(sa < sb)) raise(ErrorKind::DegenerateWindow, "window needs a < b, got [" + num(sa) + ", " + num(sb) + "]");
  return {sa, sb};
}

// The Delta_sup-integral of f∘sigma_sup over [a, b]_sup and over any
// subwindow [lo, hi] with lo, hi in sup. On dense pieces sigma is the
// identity, so only f itself is integrated there.
class SuperForm {
 public:
  SuperForm(const TimeScale& sup, const Expr& f, double a, double b, const IntegrationOptions& opts)
      : f_(f), tol_(opts.quad_tol), layout_(layout(sup, a, b, opts.gaps)) {
    terms_.reserve(layout_.gaps.size());
    for (const auto& g : layout_.gaps) terms_.push_back(f.eval(g.sigma_tau) * g.length());
    evaluations += terms_.size();
  }

  double residual() const { return layout_.residual; }

  double jumps(double lo, double hi) const {
    auto first = std::lower_bound(layout_.gaps.begin(), layout_.gaps.end(), lo,
                                  [](const GapInterval& g, double x) { return g.tau < x; });
    auto last = std::lower_bound(first, layout_.gaps.end(), hi,
                                 [](const GapInterval& g, double x) { return g.tau < x; });
    double sum = 0.0;
    for (auto it = first; it != last; ++it) sum += terms_[static_cast<std::size_t>(it - layout_.gaps.begin())];
    return sum;
  }

  double dense(double lo, double hi) {
    double sum = 0.0;
    auto it = std::lower_bound(layout_.dense.begin(), layout_.dense.end(), lo,
                               [](const Region& r, double x) { return r.second <= x; });
    for (; it != layout_.dense.end() && it->first < hi; ++it) {
      const double l = std::max(it->first, lo);
      const double h = std::min(it->second, hi);
      if (!(l < h)) continue;
      QuadResult q = integrate_f(f_, l, h, tol_);
      sum += q.value;
      error += q.error;
      evaluations += q.evaluations;
    }
    return sum;
  }

  double over(double lo, double hi) { return dense(lo, hi) + jumps(lo, hi); }

  double error = 0.0;
  std::size_t evaluations = 0;

 private:
  const Expr& f_;
  double tol_;
  Layout layout_;
  std::vector<double> terms_;
};

// A + sum over T-gaps of mu_T(tau) f(tau) - (the same form on the gap).
IntegralReport superscale_sum(const Layout& lt, SuperForm& form, double total, const Expr& f) {
  IntegralReport rep;
  rep.method = Method::convert_superscale;
  double corrections = 0.0;
  for (const auto& g : lt.gaps) {
    corrections += g.length() * f.eval(g.tau) - form.over(g.tau, g.sigma_tau);
  }
  rep.value = total + corrections;
  rep.evaluations = lt.gaps.size();
  return rep;
}

}  // namespace

IntegralReport convert_via_real(const TimeScale& scale, const Expr& f, double a, double b,
                                const IntegrationOptions& opts) {
  const auto [sa, sb] = window(scale, a, b);
  const Layout lt = layout(scale, sa, sb, opts.gaps);
  IntegralReport rep;
  rep.method = Method::convert_real;
  double dense = 0.0;
  for (const auto& r : lt.dense) {
    QuadResult q = integrate_f(f, r.first, r.second, opts.quad_tol);
    dense += q.value;
    rep.est_error += q.error;
    rep.evaluations += q.evaluations;
  }
  double jumps = 0.0;
  for (const auto& g : lt.gaps) jumps += f.eval(g.tau) * g.length();
  rep.evaluations += lt.gaps.size();
  rep.value = dense + jumps;
  rep.truncation_residual = lt.residual;
  return rep;
}

IntegralReport convert_via_superscale(const TimeScale& scale, const TimeScale& sup, const Expr& f,
                                      double a, double b, const IntegrationOptions& opts) {
  require_subset(sup, scale);
  const auto [sa, sb] = window(scale, a, b);
  const Layout lt = layout(scale, sa, sb, opts.gaps);
  SuperForm form(sup, f, sa, sb, opts);
  const double total = form.over(sa, sb);
  IntegralReport rep = superscale_sum(lt, form, total, f);
  rep.est_error = form.error;
  rep.evaluations += form.evaluations;
  rep.truncation_residual = lt.residual + form.residual();
  return rep;
}

IntegralReport by_parts_cross_scale(const TimeScale& scale, const TimeScale& sup, const Expr& f,
                                    double a, double b, const IntegrationOptions& opts) {
  require_subset(sup, scale);
  const auto [sa, sb] = window(scale, a, b);
  const JumpEnvelope env(scale, sa, sb);
  const Layout lt = layout(scale, sa, sb, opts.gaps);
  const Layout ls = layout(sup, sa, sb, opts.gaps);

  IntegralReport rep;
  rep.method = Method::by_parts;

  // Dense part of the Delta_sup-integral: S(s) f'(s) ds. S is constant on
  // each gap of T and the identity elsewhere, so the gap ends are breaks.
  std::vector<double> env_breaks;
  env_breaks.reserve(2 * lt.gaps.size() + 1);
  for (const auto& g : lt.gaps) {
    env_breaks.push_back(g.tau);
    env_breaks.push_back(g.sigma_tau);
  }
  env_breaks.push_back(env.rho_b());
  std::sort(env_breaks.begin(), env_breaks.end());

  auto integrand = [&](double s) { return env(s) * f.eval_vd(s).derivative; };
  double dense = 0.0;
  for (const auto& r : ls.dense) {
    std::vector<double> fb = f.breaks(r.first, r.second);
    for (double x : fb) {
      if (x > r.first && x < r.second) {
        raise(ErrorKind::NotDifferentiable,
              "f has a kink or jump at " + num(x) + " inside a dense piece of the superscale");
      }
    }
    auto lo = std::upper_bound(env_breaks.begin(), env_breaks.end(), r.first);
    auto hi = std::lower_bound(env_breaks.begin(), env_breaks.end(), r.second);
    QuadResult q = integrate_piecewise(integrand, r.first, r.second, std::vector<double>(lo, hi), opts.quad_tol);
    dense += q.value;
    rep.est_error += q.error;
    rep.evaluations += q.evaluations;
  }

  // Jump part: f^Delta(tau) mu(tau) = f(sigma(tau)) - f(tau) at each gap of sup.
  double jumps = 0.0;
  for (const auto& g : ls.gaps) jumps += env(g.tau) * (f.eval(g.sigma_tau) - f.eval(g.tau));
  rep.evaluations += 2 * ls.gaps.size() + 2;

  rep.value = (sb * f.eval(sb) - sa * f.eval(sa)) - (dense + jumps);
  rep.truncation_residual = lt.residual + ls.residual;
  return rep;
}

MonotoneComparison monotone_compare(const TimeScale& scale, const TimeScale& sup, const Expr& f,
                                    double a, double b, const IntegrationOptions& opts) {
  require_subset(sup, scale);
  const auto [sa, sb] = window(scale, a, b);
  const Layout ls = layout(sup, sa, sb, opts.gaps);
  constexpr double kSlack = -1e-12;
  auto violation = [](double t, double d) {
    raise(ErrorKind::NotMonotone, "f^Delta = " + num(d) + " < 0 at t = " + num(t) + " on the superscale");
  };
  for (const auto& g : ls.gaps) {
    const double d = (f.eval(g.sigma_tau) - f.eval(g.tau)) / g.length();
    if (d < kSlack) violation(g.tau, d);
  }
  for (const auto& r : ls.dense) {
    constexpr int kSamples = 256;
    for (int k = 0; k <= kSamples; ++k) {
      const double t = r.first + (r.second - r.first) * k / kSamples;
      const ValDer vd = f.eval_vd(t);
      if (vd.smooth_at_point && vd.derivative < kSlack) violation(t, vd.derivative);
    }
  }
  MonotoneComparison out;
  out.lhs = convert_via_superscale(scale, sup, f, sa, sb, opts).value;
  out.rhs = convert_via_real(sup, f, sa, sb, opts).value;
  out.holds = out.lhs <= out.rhs + 1e-9;
  return out;
}

ChainReport chain_convergence(const std::vector<TimeScale>& chain, const TimeScale& sup, const Expr& f,
                              double a, double b, const IntegrationOptions& opts) {
  if (chain.empty()) raise(ErrorKind::HypothesisViolated, "the chain is empty");
  const TimeScale& t0 = chain.front();
  if (!t0.contains(a) || !t0.contains(b)) {
    raise(ErrorKind::HypothesisViolated, "a and b must be points of T_0");
  }
  const double sa = t0.snap(a);
  const double sb = t0.snap(b);
  if (!(sa < sb)) raise(ErrorKind::DegenerateWindow, "window needs a < b");
  const double rb = t0.rho(sb);
  if (!(t0.min() < sa && sa < rb && rb <= sb && sb < t0.max())) {
    raise(ErrorKind::HypothesisViolated, "need inf T_0 < a < rho_0(b) <= b < sup T_0, got inf T_0 = " +
                                             num(t0.min()) + ", a = " + num(sa) + ", rho_0(b) = " + num(rb) +
                                             ", b = " + num(sb) + ", sup T_0 = " + num(t0.max()));
  }
  for (std::size_t n = 0; n < chain.size(); ++n) {
    if (n > 0) {
      SubsetEvidence ev = restrict_to(chain[n], chain[n - 1]);
      if (!ev.subset) {
        raise(ErrorKind::ChainNotAscending, "T_" + std::to_string(n - 1) + " is not contained in T_" +
                                                std::to_string(n) + ": witness " + num(ev.witness.value_or(NAN)));
      }
    }
    SubsetEvidence ev = restrict_to(sup, chain[n]);
    if (!ev.subset) {
      raise(ErrorKind::ChainNotAscending, "T_" + std::to_string(n) +
                                              " is not contained in the union scale: witness " +
                                              num(ev.witness.value_or(NAN)));
    }
  }

  ChainReport out;
  IntegralReport lim = convert_via_real(sup, f, sa, sb, opts);
  out.limit = lim.value;
  SuperForm form(sup, f, sa, sb, opts);
  const double total = form.over(sa, sb);
  out.truncation_residual = form.residual();

  constexpr int kSamples = 256;
  std::vector<double> ts;
  for (int k = 0; k <= kSamples; ++k) ts.push_back(sa + (sb - sa) * k / kSamples);
  std::vector<double> prev_env;

  for (std::size_t n = 0; n < chain.size(); ++n) {
    const Layout lt = layout(chain[n], sa, sb, opts.gaps);
    IntegralReport rep = superscale_sum(lt, form, total, f);
    out.rows.push_back({n, rep.value, std::fabs(rep.value - out.limit)});
    out.truncation_residual = std::max(out.truncation_residual, form.residual() + lt.residual);

    const JumpEnvelope env(chain[n], sa, sb);
    std::vector<double> cur;
    for (double t : ts) cur.push_back(env(t));
    if (!prev_env.empty()) {
      for (std::size_t k = 0; k < ts.size(); ++k) {
        ++out.envelope_samples;
        if (cur[k] > prev_env[k] + 1e-12) ++out.envelope_violations;
      }
    }
    prev_env = std::move(cur);
  }
  const JumpEnvelope env_sup(sup, sa, sb);
  for (std::size_t k = 0; k < ts.size(); ++k) {
    ++out.envelope_samples;
    if (env_sup(ts[k]) > prev_env[k] + 1e-12) ++out.envelope_violations;
  }
  return out;
}

}  // namespace tscale
