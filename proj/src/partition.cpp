#include "tscale/partition.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <cstdio>
#include <iterator>

#include "tscale/error.hpp"

namespace tscale {

namespace {

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

DeltaPartition::DeltaPartition(TimeScale scale, double delta, std::vector<double> points)
    : scale_(std::move(scale)), delta_(delta), points_(std::move(points)) {
  if (points_.size() < 2) raise(ErrorKind::DegenerateWindow, "a partition needs at least two points");
}

CellKind DeltaPartition::cell_kind(std::size_t i) const {
  return points_[i] - points_[i - 1] > delta_ ? CellKind::jump : CellKind::fine;
}

double DeltaPartition::fine_mesh() const {
  double m = 0.0;
  for (std::size_t i = 1; i < points_.size(); ++i) {
    double h = points_[i] - points_[i - 1];
    if (h <= delta_) m = std::max(m, h);
  }
  return m;
}

DeltaPartition build_partition(const TimeScale& scale, double a, double b, double delta,
                               std::size_t max_points) {
  if (!(delta > 0.0) || !std::isfinite(delta)) {
    raise(ErrorKind::DegenerateWindow, "delta must be positive and finite, got " + num(delta));
  }
  const double sa = scale.snap(a);
  const double sb = scale.snap(b);
  if (!(sa < sb)) raise(ErrorKind::DegenerateWindow, "window needs a < b, got [" + num(sa) + ", " + num(sb) + "]");

  std::vector<double> pts{sa};
  auto push = [&](double t) {
    if (pts.size() >= max_points) {
      raise(ErrorKind::NoConvergence,
            "partition with delta=" + num(delta) + " exceeds " + std::to_string(max_points) + " points");
    }
    pts.push_back(t);
  };

  double t = sa;
  while (t < sb) {
    // Inside an interval the greedy choice is t + delta each time; lay the
    // nodes out directly as t0 + k*delta so they do not drift.
    if (auto iv = scale.interval_right_of(t)) {
      const double end = std::min(iv->hi, sb);
      const double t0 = t;
      for (double k = 1.0;; k += 1.0) {
        double next = t0 + k * delta;
        if (!(next <= end)) break;
        push(next);
        t = next;
      }
      if (t >= sb) break;
    }
    const double lim = std::min(t + delta, sb);
    double next = scale.max_at_most(lim);
    if (!(next > t)) next = scale.inf_above(t);
    next = std::min(next, sb);
    push(next);
    t = next;
  }
  return DeltaPartition(scale, delta, std::move(pts));
}

double partition_function(const DeltaPartition& p, double t) {
  const auto& pts = p.points();
  const double a = pts.front();
  const double b = pts.back();
  if (!(t >= a - membership_tolerance(a) && t <= b + membership_tolerance(b))) {
    raise(ErrorKind::QueryOutsideWindow, "t = " + num(t) + " is outside [" + num(a) + ", " + num(b) + "]");
  }
  if (t >= pts[pts.size() - 2]) return b;
  return *std::upper_bound(pts.begin(), pts.end(), t);
}

DeltaPartition refine(const DeltaPartition& p) {
  DeltaPartition finer = build_partition(p.scale(), p.a(), p.b(), p.delta() / 2);
  std::vector<double> merged;
  merged.reserve(finer.size() + p.size());
  std::set_union(finer.points().begin(), finer.points().end(), p.points().begin(), p.points().end(),
                 std::back_inserter(merged));
  return DeltaPartition(p.scale(), p.delta() / 2, std::move(merged));
}

double safe_delta0(const TimeScale& scale, double a, double b) {
  (void)a;
  const double sb = scale.snap(b);
  const double rb = scale.rho(sb);
  if (rb < sb) return std::min(1.0, (sb - rb) / 2);
  return 1.0;
}

std::optional<std::string> validate_partition(const DeltaPartition& p) {
  const auto& pts = p.points();
  const auto& scale = p.scale();
  if (pts.size() < 2) return "fewer than two points";
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (!scale.contains(pts[i])) return "t_" + std::to_string(i) + " = " + num(pts[i]) + " is not in T";
  }
  for (std::size_t i = 1; i < pts.size(); ++i) {
    const double h = pts[i] - pts[i - 1];
    if (!(h > 0.0)) return "points not strictly increasing at index " + std::to_string(i);
    // Nodes t0 + k*delta inside an interval may round a few ulps past delta.
    const double slack = 4 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::fabs(pts[i]));
    if (h <= p.delta() + slack) continue;
    const double s = scale.sigma(pts[i - 1]);
    if (std::fabs(s - pts[i]) > membership_tolerance(pts[i])) {
      return "cell " + std::to_string(i) + " [" + num(pts[i - 1]) + ", " + num(pts[i]) +
             "] is longer than delta and not a jump";
    }
  }
  return std::nullopt;
}

std::string partition_csv(const DeltaPartition& p) {
  std::string out = "index,t,cell_kind\n";
  const auto& pts = p.points();
  for (std::size_t i = 0; i < pts.size(); ++i) {
    out += std::to_string(i) + "," + num(pts[i]) + ",";
    if (i > 0) out += p.cell_kind(i) == CellKind::jump ? "jump" : "fine";
    out += "\n";
  }
  return out;
}

}  // namespace tscale
