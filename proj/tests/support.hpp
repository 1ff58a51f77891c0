#pragma once
// Test-side reference for finitely described scales: a plain list of closed
// intervals and points, queried by brute force. Shares nothing with the
// library's per-piece closed forms.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <vector>

#include "tscale/scale.hpp"

namespace tscale::testing {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}
  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(gen_); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(gen_); }
  bool chance(double p) { return uniform(0.0, 1.0) < p; }
  // Dyadic grid of 1/64 so sums of members stay exact.
  double grid(double lo, double hi) { return std::round(uniform(lo, hi) * 64.0) / 64.0; }

 private:
  std::mt19937_64 gen_;
};

struct BruteScale {
  std::vector<std::pair<double, double>> intervals;
  std::vector<double> points;

  bool member(double t) const {
    for (const auto& [lo, hi] : intervals)
      if (lo <= t && t <= hi) return true;
    return std::find(points.begin(), points.end(), t) != points.end();
  }

  double inf_above(double t) const {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& [lo, hi] : intervals) {
      if (lo <= t && t < hi) return t;
      if (lo > t) best = std::min(best, lo);
    }
    for (double p : points)
      if (p > t) best = std::min(best, p);
    return best;
  }

  double sup_below(double t) const {
    double best = -std::numeric_limits<double>::infinity();
    for (const auto& [lo, hi] : intervals) {
      if (lo < t && t <= hi) return t;
      if (hi < t) best = std::max(best, hi);
    }
    for (double p : points)
      if (p < t) best = std::max(best, p);
    return best;
  }

  double min() const {
    double m = std::numeric_limits<double>::infinity();
    for (const auto& iv : intervals) m = std::min(m, iv.first);
    for (double p : points) m = std::min(m, p);
    return m;
  }

  double max() const {
    double m = -std::numeric_limits<double>::infinity();
    for (const auto& iv : intervals) m = std::max(m, iv.second);
    for (double p : points) m = std::max(m, p);
    return m;
  }

  // Every member that is an endpoint of some gap, sorted.
  std::vector<double> anchors() const {
    std::vector<double> out = points;
    for (const auto& [lo, hi] : intervals) {
      out.push_back(lo);
      out.push_back(hi);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

  std::vector<Piece> pieces() const {
    std::vector<Piece> out;
    for (const auto& [lo, hi] : intervals) out.push_back({ClosedInterval{lo, hi}, 0.0});
    if (!points.empty()) {
      FinitePoints fp{points};
      std::sort(fp.values.begin(), fp.values.end());
      fp.values.erase(std::unique(fp.values.begin(), fp.values.end()), fp.values.end());
      out.push_back({fp, 0.0});
    }
    return out;
  }
};

// 0-4 intervals and 0-8 points inside [0, 4]; at least 3 members.
inline BruteScale random_brute(Rng& r) {
  BruteScale s;
  const int nint = r.integer(0, 4);
  for (int i = 0; i < nint; ++i) {
    const double lo = r.grid(0.0, 3.5);
    s.intervals.push_back({lo, lo + r.grid(1.0 / 64, 0.75)});
  }
  const int npts = r.integer(nint == 0 ? 3 : 0, 8);
  for (int i = 0; i < npts; ++i) s.points.push_back(r.grid(0.0, 4.0));
  std::sort(s.points.begin(), s.points.end());
  s.points.erase(std::unique(s.points.begin(), s.points.end()), s.points.end());
  if (nint == 0 && s.points.size() < 3) return random_brute(r);
  return s;
}

// Members of a random brute scale to use as a window; nullopt-free: falls
// back to the whole scale.
inline std::pair<double, double> random_window(Rng& r, const BruteScale& s) {
  const auto anchors = s.anchors();
  for (int tries = 0; tries < 20; ++tries) {
    const double a = anchors[static_cast<std::size_t>(r.integer(0, static_cast<int>(anchors.size()) - 1))];
    const double b = anchors[static_cast<std::size_t>(r.integer(0, static_cast<int>(anchors.size()) - 1))];
    if (a < b && a < s.sup_below(b)) return {a, b};
  }
  return {s.min(), s.max()};
}

}  // namespace tscale::testing
