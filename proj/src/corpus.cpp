#include "tscale/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "tscale/conversion.hpp"
#include "tscale/delta_calculus.hpp"
#include "tscale/error.hpp"
#include "tscale/scale_spec.hpp"

namespace tscale {

namespace {

// Uniform doubles from the raw 64-bit stream. std::uniform_real_distribution
// is implementation-defined, which would make corpora differ across
// standard libraries.
class Draw {
 public:
  explicit Draw(std::uint64_t seed) : gen_(seed) {}

  double unit() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }
  // Three decimals, so cases print and re-read exactly as typed.
  double coarse(double lo, double hi) { return std::round(uniform(lo, hi) * 1000.0) / 1000.0; }
  int integer(int lo, int hi) { return lo + static_cast<int>(gen_() % static_cast<std::uint64_t>(hi - lo + 1)); }
  bool chance(double p) { return unit() < p; }

 private:
  std::mt19937_64 gen_;
};

std::vector<Piece> random_pieces(Draw& d, int min_intervals, int max_intervals, int max_points, double cluster_p) {
  std::vector<Piece> pieces;
  const int nint = d.integer(min_intervals, max_intervals);
  for (int i = 0; i < nint; ++i) {
    const double lo = d.coarse(0.0, 2.8);
    const double hi = std::min(3.0, lo + d.coarse(0.05, 0.6));
    pieces.push_back({ClosedInterval{lo, hi}, 0.0});
  }
  const int npts = d.integer(0, max_points);
  FinitePoints fp;
  for (int i = 0; i < npts; ++i) fp.values.push_back(d.coarse(0.0, 3.0));
  std::sort(fp.values.begin(), fp.values.end());
  if (!fp.values.empty()) pieces.push_back({std::move(fp), 0.0});
  if (d.chance(cluster_p)) {
    const double q = d.coarse(0.3, 0.7);
    const double c = d.coarse(0.1, 0.5);
    pieces.push_back({GeometricCluster{q, c}, d.coarse(0.0, 2.5)});
  }
  return pieces;
}

std::string poly_text(Draw& d, int degree) {
  std::string out;
  for (int k = 0; k <= degree; ++k) {
    const double c = d.coarse(-1.5, 1.5);
    if (k > 0) out += " + ";
    out += "(" + format_real(c) + ")";
    if (k == 1) out += "*s";
    if (k > 1) out += "*s^" + std::to_string(k);
  }
  return out;
}

std::string sine_text(Draw& d) {
  return "sin(" + format_real(d.coarse(0.5, 3.0)) + "*s + (" + format_real(d.coarse(-1.0, 1.0)) + "))";
}

std::string exp_text(Draw& d) {
  return "(" + format_real(d.coarse(-1.0, 1.0)) + ")*exp(" + format_real(d.coarse(-1.0, 1.0)) + "*s)";
}

std::string random_integrand(Draw& d) {
  switch (d.integer(0, 3)) {
    case 0: return poly_text(d, d.integer(0, 4));
    case 1: return sine_text(d);
    case 2: return exp_text(d);
    default: return poly_text(d, d.integer(0, 2)) + " + " + (d.chance(0.5) ? sine_text(d) : exp_text(d));
  }
}

std::string monotone_integrand(Draw& d) {
  switch (d.integer(0, 3)) {
    case 0: return format_real(d.coarse(-1.0, 1.0)) + " + " + format_real(d.coarse(0.0, 2.0)) + "*s";
    case 1: return format_real(d.coarse(0.0, 1.0)) + "*s + " + format_real(d.coarse(0.0, 0.5)) + "*s^3";
    case 2: return format_real(d.coarse(0.1, 1.5)) + "*exp(" + format_real(d.coarse(0.0, 1.0)) + "*s)";
    default: return "1";
  }
}

// Window inside T: either all of it or two random members, as long as
// a < rho(b) so every method applies.
std::pair<double, double> random_window(Draw& d, const TimeScale& t) {
  if (d.chance(0.5)) {
    const double a = t.min_at_least(d.uniform(t.min(), t.max()));
    const double b = t.max_at_most(d.uniform(t.min(), t.max()));
    if (a < b && a < t.rho(b)) return {a, b};
  }
  return {t.min(), t.max()};
}

template <class Integrand>
std::vector<CorpusCase> generate(std::uint64_t seed, std::size_t count, Integrand integrand) {
  Draw d(seed);
  std::vector<CorpusCase> out;
  out.reserve(count);
  while (out.size() < count) {
    TimeScale t(random_pieces(d, 1, 5, 10, 0.4));
    auto [a, b] = random_window(d, t);
    if (!(a < t.rho(b))) continue;

    const double r = d.unit();
    std::vector<Piece> sup_pieces;
    if (r < 0.15) {
      sup_pieces = t.pieces();
    } else if (r < 0.40) {
      sup_pieces = {{ClosedInterval{t.min() - 1.0, t.max() + 1.0}, 0.0}};
    } else {
      sup_pieces = random_pieces(d, 1, 3, 10, 0.3);
      sup_pieces.insert(sup_pieces.end(), t.pieces().begin(), t.pieces().end());
    }
    TimeScale sup(std::move(sup_pieces));

    std::string text = integrand(d);
    Expr f = parse_expr(text);
    out.push_back(CorpusCase{out.size(), std::move(t), std::move(sup), std::move(f), std::move(text), a, b});
  }
  return out;
}

CaseResult run_case(const CorpusCase& c, const IntegrationOptions& opts) {
  CaseResult r;
  r.id = c.id;
  try {
    const IntegralReport oracle = riemann_delta_integral(c.scale, c.f, c.a, c.b, opts);
    const IntegralReport parts = by_parts_cross_scale(c.scale, c.sup, c.f, c.a, c.b, opts);
    const IntegralReport sup = convert_via_superscale(c.scale, c.sup, c.f, c.a, c.b, opts);
    const IntegralReport real = convert_via_real(c.scale, c.f, c.a, c.b, opts);
    const TimeScale line = TimeScale::interval(c.scale.min() - 1.0, c.scale.max() + 1.0);
    const IntegralReport sup_line = convert_via_superscale(c.scale, line, c.f, c.a, c.b, opts);
    r.riemann = oracle.value;
    r.by_parts = parts.value;
    r.superscale = sup.value;
    r.real = real.value;
    r.superscale_real = sup_line.value;
    r.residual = std::max({parts.truncation_residual, sup.truncation_residual, real.truncation_residual});
    r.envelope = std::max(1e-6, 1e-6 * std::fabs(r.riemann)) + truncation_bound(c.f, c.a, c.b, r.residual);
    r.pass = r.max_conversion_error() <= r.envelope && r.real_vs_superscale() <= 1e-9;
  } catch (const Error& e) {
    r.error = std::string(kind_name(e.kind())) + ": " + e.what();
    r.pass = false;
  }
  return r;
}

}  // namespace

double CaseResult::max_conversion_error() const {
  return std::max(std::fabs(by_parts - riemann), std::fabs(superscale - riemann));
}

double CaseResult::real_vs_superscale() const { return std::fabs(real - superscale_real); }

std::vector<CorpusCase> generate_corpus(std::uint64_t seed, std::size_t count) {
  return generate(seed, count, random_integrand);
}

std::vector<CorpusCase> generate_monotone_corpus(std::uint64_t seed, std::size_t count) {
  return generate(seed, count, monotone_integrand);
}

double truncation_bound(const Expr& f, double a, double b, double residual) {
  if (residual <= 0.0) return 0.0;
  double fmax = 0.0;
  double dmax = 0.0;
  constexpr int kSamples = 2048;
  for (int k = 0; k <= kSamples; ++k) {
    const ValDer vd = f.eval_vd(a + (b - a) * k / kSamples);
    fmax = std::max(fmax, std::fabs(vd.value));
    dmax = std::max(dmax, std::fabs(vd.derivative));
  }
  return 2.0 * (fmax + std::fabs(b) * dmax) * residual;
}

std::vector<CaseResult> run_corpus(const std::vector<CorpusCase>& cases, const IntegrationOptions& opts,
                                   bool parallel) {
  std::vector<CaseResult> out(cases.size());
  const auto n = static_cast<long long>(cases.size());
  if (parallel) {
#pragma omp parallel for schedule(dynamic, 1)
    for (long long i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = run_case(cases[static_cast<std::size_t>(i)], opts);
  } else {
    for (long long i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = run_case(cases[static_cast<std::size_t>(i)], opts);
  }
  return out;
}

}  // namespace tscale
