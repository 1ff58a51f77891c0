#include "tscale/scale.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <sstream>

#include "tscale/error.hpp"

namespace tscale {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

}  // namespace

namespace detail {

// Index arithmetic for one cluster {o + g(n) : n >= n0} u {o}, where g is
// c*q^n or c/n. Points decrease strictly in n. `n_res` is the last index
// whose point is still distinguishable from o in binary64; everything past
// it collapses onto o and is not enumerable.
struct ClusterGen {
  bool geometric = true;
  double q = 0.5;
  double c = 1.0;
  double o = 0.0;
  std::int64_t n0 = 0;
  std::int64_t n_res = 0;

  double point(std::int64_t n) const {
    return geometric ? o + c * std::pow(q, static_cast<double>(n))
                     : o + c / static_cast<double>(n);
  }
  double top() const { return point(n0); }

  // Smallest n in [n0, n_res] with pred(point(n)) true, pred monotone
  // (false then true); n_res + 1 when none. `est` is a closed-form guess.
  template <class Pred>
  std::int64_t first_where(Pred pred, double est) const {
    std::int64_t lo = n0;
    std::int64_t hi = n_res + 1;
    if (std::isfinite(est)) {
      double clamped = std::clamp(est, static_cast<double>(lo), static_cast<double>(hi));
      auto n = static_cast<std::int64_t>(clamped);
      for (int step = 0; step < 16; ++step) {
        bool here = n > n_res || pred(point(n));
        bool before = n > n0 && pred(point(n - 1));
        if (here && !before) return n;
        if (!here) {
          ++n;
        } else {
          --n;
        }
      }
    }
    while (lo < hi) {
      std::int64_t mid = lo + (hi - lo) / 2;
      if (pred(point(mid))) {
        hi = mid;
      } else {
        lo = mid + 1;
      }
    }
    return lo;
  }

  double estimate(double x) const {
    double d = x - o;
    if (!(d > 0.0)) return static_cast<double>(n_res + 1);
    double e = geometric ? std::log(d / c) / std::log(q) : c / d;
    return std::ceil(e);
  }

  // Smallest n with point(n) <= x.
  std::int64_t first_at_most(double x) const {
    return first_where([x](double p) { return p <= x; }, estimate(x));
  }
  // Smallest n with point(n) < x.
  std::int64_t first_below(double x) const {
    return first_where([x](double p) { return p < x; }, estimate(x));
  }

  double inf_above(double t) const {
    if (t < o) return o;
    if (t == o) return o;
    if (t >= top()) return kInf;
    std::int64_t n = first_at_most(t);
    return point(n - 1);
  }
  double sup_below(double t) const {
    if (t <= o) return -kInf;
    std::int64_t n = first_below(t);
    return n > n_res ? o : point(n);
  }
  double max_at_most(double x) const {
    if (x < o) return -kInf;
    std::int64_t n = first_at_most(x);
    return n > n_res ? o : point(n);
  }
  double min_at_least(double x) const {
    if (x <= o) return o;
    if (x > top()) return kInf;
    return point(first_below(x) - 1);
  }

  friend bool operator==(const ClusterGen& x, const ClusterGen& y) {
    return x.geometric == y.geometric && x.q == y.q && x.c == y.c && x.o == y.o;
  }
};

}  // namespace detail

namespace {

using detail::ClusterGen;

ClusterGen make_cluster(bool geometric, double q, double c, double o) {
  ClusterGen g;
  g.geometric = geometric;
  g.q = q;
  g.c = c;
  g.o = o;
  g.n0 = geometric ? 0 : 1;
  // Past this index the offset underflows or drops below half an ulp of o.
  std::int64_t cap = geometric
      ? static_cast<std::int64_t>(std::ceil(1100.0 / -std::log2(q))) + 64
      : std::int64_t{1} << 60;
  std::int64_t lo = g.n0;
  std::int64_t hi = cap;
  if (!(g.point(lo) > o)) {
    g.n_res = g.n0 - 1;
    return g;
  }
  while (lo < hi) {
    std::int64_t mid = lo + (hi - lo + 1) / 2;
    if (g.point(mid) > o) {
      lo = mid;
    } else {
      hi = mid - 1;
    }
  }
  g.n_res = lo;
  return g;
}

ClusterGen cluster_of(const Piece& piece) {
  if (auto* geo = std::get_if<GeometricCluster>(&piece.shape)) {
    return make_cluster(true, geo->q, geo->c, piece.offset);
  }
  const auto& har = std::get<HarmonicCluster>(piece.shape);
  return make_cluster(false, 1.0, har.c, piece.offset);
}

void check_finite(double x, const char* what) {
  if (!std::isfinite(x)) raise(ErrorKind::InvalidScale, std::string(what) + " must be finite");
}

double piece_lower(const Piece& p) {
  return std::visit(
      [&](const auto& s) -> double {
        using S = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<S, ClosedInterval>) {
          return s.lo + p.offset;
        } else if constexpr (std::is_same_v<S, FinitePoints>) {
          return s.values.empty() ? kInf : s.values.front() + p.offset;
        } else {
          return p.offset;
        }
      },
      p.shape);
}

int piece_rank(const Piece& p) { return static_cast<int>(p.shape.index()); }

bool same_piece(const Piece& x, const Piece& y) {
  if (x.shape.index() != y.shape.index() || x.offset != y.offset) return false;
  return std::visit(
      [&](const auto& s) -> bool {
        using S = std::decay_t<decltype(s)>;
        const auto& t = std::get<S>(y.shape);
        if constexpr (std::is_same_v<S, ClosedInterval>) {
          return s.lo == t.lo && s.hi == t.hi;
        } else if constexpr (std::is_same_v<S, FinitePoints>) {
          return s.values == t.values;
        } else if constexpr (std::is_same_v<S, GeometricCluster>) {
          return s.q == t.q && s.c == t.c;
        } else {
          return s.c == t.c;
        }
      },
      x.shape);
}

bool cluster_has(const ClusterGen& g, double t) {
  double tol = membership_tolerance(t);
  return g.max_at_most(t + tol) >= t - tol;
}

}  // namespace

double membership_tolerance(double t) { return 1e-12 * std::max(1.0, std::fabs(t)); }

std::vector<Piece> canonical_pieces(std::vector<Piece> pieces) {
  std::vector<ClosedInterval> intervals;
  std::vector<double> points;
  std::vector<Piece> clusters;

  for (const Piece& p : pieces) {
    check_finite(p.offset, "offset");
    if (auto* iv = std::get_if<ClosedInterval>(&p.shape)) {
      check_finite(iv->lo, "interval bound");
      check_finite(iv->hi, "interval bound");
      if (iv->lo > iv->hi) {
        raise(ErrorKind::InvalidScale,
              "interval(" + fmt(iv->lo) + ", " + fmt(iv->hi) + ") has lo > hi");
      }
      double lo = iv->lo + p.offset;
      double hi = iv->hi + p.offset;
      if (lo == hi) {
        points.push_back(lo);
      } else {
        intervals.push_back({lo, hi});
      }
    } else if (auto* fp = std::get_if<FinitePoints>(&p.shape)) {
      for (double v : fp->values) {
        check_finite(v, "point");
        points.push_back(v + p.offset);
      }
    } else if (auto* geo = std::get_if<GeometricCluster>(&p.shape)) {
      check_finite(geo->c, "cluster scale");
      if (!(geo->q > 0.0 && geo->q < 1.0)) {
        raise(ErrorKind::InvalidScale, "geometric base q must lie in (0, 1), got " + fmt(geo->q));
      }
      if (!(geo->c > 0.0)) raise(ErrorKind::InvalidScale, "cluster scale c must be positive");
      clusters.push_back({*geo, p.offset});
    } else {
      const auto& har = std::get<HarmonicCluster>(p.shape);
      check_finite(har.c, "cluster scale");
      if (!(har.c > 0.0)) raise(ErrorKind::InvalidScale, "cluster scale c must be positive");
      clusters.push_back({har, p.offset});
    }
  }

  std::sort(intervals.begin(), intervals.end(),
            [](const ClosedInterval& x, const ClosedInterval& y) { return x.lo < y.lo; });
  std::vector<ClosedInterval> merged;
  for (const auto& iv : intervals) {
    if (!merged.empty() && iv.lo <= merged.back().hi) {
      merged.back().hi = std::max(merged.back().hi, iv.hi);
    } else {
      merged.push_back(iv);
    }
  }

  // A cluster whose accumulation point sits inside an interval (not at its
  // right end) is covered except for finitely many points above it.
  std::vector<Piece> kept_clusters;
  std::vector<ClusterGen> gens;
  for (const Piece& cp : clusters) {
    ClusterGen g = cluster_of(cp);
    if (g.n_res < g.n0) {
      points.push_back(g.o);
      continue;
    }
    auto it = std::find_if(merged.begin(), merged.end(), [&](const ClosedInterval& iv) {
      return iv.lo <= g.o && g.o < iv.hi;
    });
    if (it != merged.end()) {
      std::vector<double> above;
      bool finite = true;
      for (std::int64_t n = g.n0; n <= g.n_res; ++n) {
        double pt = g.point(n);
        if (pt <= it->hi) break;
        if (above.size() >= 1000000) {
          finite = false;
          break;
        }
        above.push_back(pt);
      }
      if (finite) {
        points.insert(points.end(), above.begin(), above.end());
        continue;
      }
    }
    if (std::find(gens.begin(), gens.end(), g) != gens.end()) continue;
    gens.push_back(g);
    kept_clusters.push_back(cp);
  }

  std::sort(points.begin(), points.end());
  std::vector<double> kept_points;
  for (double t : points) {
    double tol = membership_tolerance(t);
    if (!kept_points.empty() && t - kept_points.back() <= tol) continue;
    auto it = std::upper_bound(merged.begin(), merged.end(), t + tol,
                               [](double x, const ClosedInterval& iv) { return x < iv.lo; });
    if (it != merged.begin() && std::prev(it)->hi >= t - tol) continue;
    if (std::any_of(gens.begin(), gens.end(), [&](const ClusterGen& g) { return cluster_has(g, t); })) {
      continue;
    }
    kept_points.push_back(t);
  }

  std::vector<Piece> out;
  for (const auto& iv : merged) out.push_back({iv, 0.0});
  if (!kept_points.empty()) out.push_back({FinitePoints{kept_points}, 0.0});
  for (const auto& cp : kept_clusters) out.push_back(cp);
  std::stable_sort(out.begin(), out.end(), [](const Piece& x, const Piece& y) {
    double lx = piece_lower(x);
    double ly = piece_lower(y);
    if (lx != ly) return lx < ly;
    return piece_rank(x) < piece_rank(y);
  });
  return out;
}

TimeScale::TimeScale(std::vector<Piece> pieces) {
  auto canon = canonical_pieces(std::move(pieces));
  std::vector<ClusterGen> gens;
  std::size_t npoints = 0;
  for (const Piece& p : canon) {
    if (auto* iv = std::get_if<ClosedInterval>(&p.shape)) {
      intervals_.push_back(*iv);
    } else if (auto* fp = std::get_if<FinitePoints>(&p.shape)) {
      points_ = fp->values;
      npoints = points_.size();
    } else {
      gens.push_back(cluster_of(p));
    }
  }
  if (intervals_.empty() && gens.empty() && npoints < 3) {
    raise(ErrorKind::InvalidScale,
          "a time scale needs at least three points, got " + std::to_string(npoints));
  }
  min_ = kInf;
  max_ = -kInf;
  for (const auto& iv : intervals_) {
    min_ = std::min(min_, iv.lo);
    max_ = std::max(max_, iv.hi);
  }
  if (!points_.empty()) {
    min_ = std::min(min_, points_.front());
    max_ = std::max(max_, points_.back());
  }
  for (const auto& g : gens) {
    min_ = std::min(min_, g.o);
    max_ = std::max(max_, g.top());
  }
  pieces_ = std::make_shared<const std::vector<Piece>>(std::move(canon));
  clusters_ = std::make_shared<const std::vector<ClusterGen>>(std::move(gens));
}

TimeScale TimeScale::interval(double lo, double hi) {
  return TimeScale({Piece{ClosedInterval{lo, hi}, 0.0}});
}

TimeScale TimeScale::points(std::vector<double> values) {
  return TimeScale({Piece{FinitePoints{std::move(values)}, 0.0}});
}

TimeScale TimeScale::geometric(double q, double c, double offset) {
  return TimeScale({Piece{GeometricCluster{q, c}, offset}});
}

TimeScale TimeScale::harmonic(double c, double offset) {
  return TimeScale({Piece{HarmonicCluster{c}, offset}});
}

TimeScale TimeScale::unite(const std::vector<TimeScale>& parts) {
  std::vector<Piece> all;
  for (const auto& part : parts) {
    all.insert(all.end(), part.pieces().begin(), part.pieces().end());
  }
  return TimeScale(std::move(all));
}

double TimeScale::inf_above(double t) const {
  double best = kInf;
  auto it = std::upper_bound(intervals_.begin(), intervals_.end(), t,
                             [](double x, const ClosedInterval& iv) { return x < iv.hi; });
  if (it != intervals_.end()) best = it->lo <= t ? t : it->lo;
  auto pt = std::upper_bound(points_.begin(), points_.end(), t);
  if (pt != points_.end()) best = std::min(best, *pt);
  for (const auto& g : *clusters_) best = std::min(best, g.inf_above(t));
  return best;
}

double TimeScale::sup_below(double t) const {
  double best = -kInf;
  auto it = std::lower_bound(intervals_.begin(), intervals_.end(), t,
                             [](const ClosedInterval& iv, double x) { return iv.lo < x; });
  if (it != intervals_.begin()) {
    const auto& iv = *std::prev(it);
    best = iv.hi >= t ? t : iv.hi;
  }
  auto pt = std::lower_bound(points_.begin(), points_.end(), t);
  if (pt != points_.begin()) best = std::max(best, *std::prev(pt));
  for (const auto& g : *clusters_) best = std::max(best, g.sup_below(t));
  return best;
}

double TimeScale::max_at_most(double x) const {
  double best = -kInf;
  auto it = std::upper_bound(intervals_.begin(), intervals_.end(), x,
                             [](double v, const ClosedInterval& iv) { return v < iv.lo; });
  if (it != intervals_.begin()) best = std::min(std::prev(it)->hi, x);
  auto pt = std::upper_bound(points_.begin(), points_.end(), x);
  if (pt != points_.begin()) best = std::max(best, *std::prev(pt));
  for (const auto& g : *clusters_) best = std::max(best, g.max_at_most(x));
  return best;
}

double TimeScale::min_at_least(double x) const {
  double best = kInf;
  auto it = std::lower_bound(intervals_.begin(), intervals_.end(), x,
                             [](const ClosedInterval& iv, double v) { return iv.hi < v; });
  if (it != intervals_.end()) best = std::max(it->lo, x);
  auto pt = std::lower_bound(points_.begin(), points_.end(), x);
  if (pt != points_.end()) best = std::min(best, *pt);
  for (const auto& g : *clusters_) best = std::min(best, g.min_at_least(x));
  return best;
}

bool TimeScale::contains(double t) const {
  if (!std::isfinite(t)) return false;
  double tol = membership_tolerance(t);
  return max_at_most(t + tol) >= t - tol;
}

double TimeScale::snap(double t) const {
  if (std::isfinite(t)) {
    double below = max_at_most(t);
    if (below == t) return t;
    double above = min_at_least(t);
    double tol = membership_tolerance(t);
    double best = (t - below) <= (above - t) ? below : above;
    if (std::fabs(best - t) <= tol) return best;
  }
  raise(ErrorKind::QueryOutsideScale, "t = " + fmt(t) + " is not a point of the time scale");
}

double TimeScale::sigma(double t) const {
  double s = snap(t);
  if (s >= max_) raise(ErrorKind::UnboundedQuery, "sigma at max T = " + fmt(s) + " is undefined");
  return inf_above(s);
}

double TimeScale::rho(double t) const {
  double s = snap(t);
  if (s <= min_) raise(ErrorKind::UnboundedQuery, "rho at min T = " + fmt(s) + " is undefined");
  return sup_below(s);
}

double TimeScale::mu(double t) const {
  double s = snap(t);
  return sigma(s) - s;
}

PointClass TimeScale::classify(double t) const {
  double s = snap(t);
  PointClass pc;
  // At the extremes sigma(max) = max and rho(min) = min by convention.
  pc.right = (s < max_ && inf_above(s) > s) ? Side::scattered : Side::dense;
  pc.left = (s > min_ && sup_below(s) < s) ? Side::scattered : Side::dense;
  return pc;
}

std::vector<std::pair<double, double>> TimeScale::dense_runs(double lo, double hi) const {
  std::vector<std::pair<double, double>> out;
  for (const auto& iv : intervals_) {
    double l = std::max(iv.lo, lo);
    double h = std::min(iv.hi, hi);
    if (l < h) out.emplace_back(l, h);
  }
  return out;
}

double TimeScale::dense_measure(double lo, double hi) const {
  double total = 0.0;
  auto it = std::upper_bound(intervals_.begin(), intervals_.end(), lo,
                             [](double x, const ClosedInterval& iv) { return x < iv.hi; });
  for (; it != intervals_.end() && it->lo < hi; ++it) {
    double l = std::max(it->lo, lo);
    double h = std::min(it->hi, hi);
    if (l < h) total += h - l;
  }
  return total;
}

std::optional<ClosedInterval> TimeScale::interval_right_of(double t) const {
  auto it = std::upper_bound(intervals_.begin(), intervals_.end(), t,
                             [](double x, const ClosedInterval& iv) { return x < iv.hi; });
  if (it != intervals_.end() && it->lo <= t) return *it;
  return std::nullopt;
}

GapSet TimeScale::enumerate_gaps(double lo, double tau_bound, const GapOptions& opts) const {
  GapSet out;
  if (!(tau_bound > lo)) return out;

  std::vector<double> cand;
  for (const auto& iv : intervals_) {
    if (iv.hi >= lo && iv.hi < tau_bound) cand.push_back(iv.hi);
  }
  auto p0 = std::lower_bound(points_.begin(), points_.end(), lo);
  auto p1 = std::lower_bound(points_.begin(), points_.end(), tau_bound);
  cand.insert(cand.end(), p0, p1);

  std::vector<std::pair<double, double>> tails;
  for (const auto& g : *clusters_) {
    if (g.n_res < g.n0 || g.top() < lo || g.o >= tau_bound) continue;
    if (g.o >= lo) cand.push_back(g.o);
    double floor_lo = std::max(g.o, lo);
    std::size_t count = 0;
    bool truncated = false;
    double last = kInf;
    std::int64_t n = g.first_below(tau_bound);
    for (; n <= g.n_res; ++n) {
      double p = g.point(n);
      if (p < lo) break;
      cand.push_back(p);
      last = p;
      ++count;
      if (count >= opts.max_cluster_terms) {
        truncated = true;
        break;
      }
      if (g.o >= lo) {
        double hole = (p - floor_lo) - dense_measure(floor_lo, p);
        if (hole < opts.tail_eps) {
          truncated = true;
          break;
        }
      }
    }
    if (n > g.n_res && g.o >= lo && count > 0) truncated = true;
    if (truncated && last > floor_lo) tails.emplace_back(floor_lo, last);
  }

  std::sort(tails.begin(), tails.end());
  for (const auto& tl : tails) {
    if (!out.tails.empty() && tl.first <= out.tails.back().second) {
      out.tails.back().second = std::max(out.tails.back().second, tl.second);
    } else {
      out.tails.push_back(tl);
    }
  }
  auto in_tail = [&](double c) {
    auto it = std::upper_bound(out.tails.begin(), out.tails.end(), c,
                               [](double x, const std::pair<double, double>& t) { return x < t.first; });
    return it != out.tails.begin() && c < std::prev(it)->second;
  };

  std::sort(cand.begin(), cand.end());
  cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
  for (double c : cand) {
    if (in_tail(c)) continue;
    double s = inf_above(c);
    if (s > c && std::isfinite(s)) out.gaps.push_back({c, s});
  }
  for (const auto& tl : out.tails) {
    out.truncation_residual += (tl.second - tl.first) - dense_measure(tl.first, tl.second);
  }
  out.truncation_residual = std::max(0.0, out.truncation_residual);
  return out;
}

bool operator==(const TimeScale& x, const TimeScale& y) {
  const auto& a = x.pieces();
  const auto& b = y.pieces();
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!same_piece(a[i], b[i])) return false;
  }
  return true;
}

double GapSet::total_length() const {
  double total = 0.0;
  for (const auto& g : gaps) total += g.length();
  return total;
}

double GapSet::max_length() const {
  double m = 0.0;
  for (const auto& g : gaps) m = std::max(m, g.length());
  return m;
}

GapSet gap_set(const TimeScale& scale, double a, double b, const GapOptions& opts) {
  double sa = scale.snap(a);
  double sb = scale.snap(b);
  if (!(sa < sb)) raise(ErrorKind::DegenerateWindow, "window needs a < b");
  double rb = scale.rho(sb);
  if (!(sa < rb)) raise(ErrorKind::DegenerateWindow, "window needs a < rho(b) = " + fmt(rb));
  return scale.enumerate_gaps(sa, rb, opts);
}

JumpEnvelope::JumpEnvelope(TimeScale scale, double a, double b)
    : scale_(std::move(scale)), a_(scale_.snap(a)), b_(scale_.snap(b)), rho_b_(0.0) {
  if (!(a_ < b_)) raise(ErrorKind::DegenerateWindow, "window needs a < b");
  rho_b_ = scale_.rho(b_);
  if (!(a_ < rho_b_)) raise(ErrorKind::DegenerateWindow, "window needs a < rho(b) = " + fmt(rho_b_));
}

double JumpEnvelope::operator()(double t) const {
  if (!(t >= a_ - membership_tolerance(a_) && t <= b_ + membership_tolerance(b_))) {
    raise(ErrorKind::QueryOutsideWindow,
          "t = " + fmt(t) + " is outside [" + fmt(a_) + ", " + fmt(b_) + "]");
  }
  if (t >= rho_b_) return b_;
  return scale_.inf_above(std::max(t, a_));
}

double jump_envelope(const TimeScale& scale, double a, double b, double t) {
  return JumpEnvelope(scale, a, b)(t);
}

namespace {

// First real point of [lo, hi] missing from `sup`, if any.
std::optional<double> interval_witness(const TimeScale& sup, double lo, double hi) {
  if (!sup.contains(lo)) return lo;
  if (!sup.contains(hi)) return hi;
  double x = lo;
  const auto& ivs = sup.intervals();
  for (int guard = 0; guard < 1000000 && x < hi; ++guard) {
    if (auto iv = sup.interval_right_of(x)) {
      if (iv->hi >= hi) return std::nullopt;
      x = iv->hi;
      continue;
    }
    double s = sup.inf_above(x);
    if (s > x) return 0.5 * (x + std::min(s, hi));
    // Right-dense without an interval: x is an accumulation point of a
    // cluster. Look just right of it, before the next interval starts.
    auto next = std::upper_bound(ivs.begin(), ivs.end(), x,
                                 [](double v, const ClosedInterval& iv) { return v < iv.lo; });
    double u = std::min(hi, next == ivs.end() ? hi : next->lo);
    double m = 0.5 * (x + u);
    double p = sup.max_at_most(m);
    double s2 = sup.inf_above(p);
    if (s2 > p) return 0.5 * (p + std::min(s2, u));
    x = m;
  }
  return std::nullopt;
}

}  // namespace

SubsetEvidence restrict_to(const TimeScale& superscale, const TimeScale& scale) {
  auto missing = [](double w) { return SubsetEvidence{false, w}; };
  for (const Piece& p : scale.pieces()) {
    if (auto* iv = std::get_if<ClosedInterval>(&p.shape)) {
      if (auto w = interval_witness(superscale, iv->lo, iv->hi)) return missing(*w);
    } else if (auto* fp = std::get_if<FinitePoints>(&p.shape)) {
      for (double v : fp->values) {
        if (!superscale.contains(v)) return missing(v);
      }
    } else {
      ClusterGen g = cluster_of(p);
      if (!superscale.contains(g.o)) return missing(g.o);
      bool twin = std::any_of(superscale.pieces().begin(), superscale.pieces().end(),
                              [&](const Piece& q) { return same_piece(p, q); });
      if (twin) continue;
      auto cover = superscale.interval_right_of(g.o);
      std::int64_t limit = std::min<std::int64_t>(g.n_res, g.n0 + (std::int64_t{1} << 20));
      for (std::int64_t n = g.n0; n <= limit; ++n) {
        double pt = g.point(n);
        if (cover && cover->hi >= pt) break;
        if (!superscale.contains(pt)) return missing(pt);
      }
    }
  }
  return {true, std::nullopt};
}

}  // namespace tscale
