#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "tscale/scale.hpp"

namespace tscale {

enum class CellKind { fine, jump };

/// Delta-partition a = t_0 < ... < t_{n-1} = b of [a,b]_T. Every cell is
/// either at most delta long or a forced jump sigma(t_{i-1}) = t_i.
class DeltaPartition {
 public:
  DeltaPartition(TimeScale scale, double delta, std::vector<double> points);

  const TimeScale& scale() const { return scale_; }
  double delta() const { return delta_; }
  const std::vector<double>& points() const { return points_; }
  std::size_t size() const { return points_.size(); }
  double a() const { return points_.front(); }
  double b() const { return points_.back(); }

  /// Kind of the cell [t_{i-1}, t_i], i >= 1.
  CellKind cell_kind(std::size_t i) const;
  /// Longest fine cell.
  double fine_mesh() const;

 private:
  TimeScale scale_;
  double delta_;
  std::vector<double> points_;
};

/// Greedy walk: from t take the largest member of T in (t, min(t+delta, b)],
/// or sigma(t) when there is none. Raises NoConvergence past max_points.
DeltaPartition build_partition(const TimeScale& scale, double a, double b, double delta,
                               std::size_t max_points = std::size_t{1} << 26);

/// S_P(t): t_i on [t_{i-1}, t_i) and b on the last cell [t_{n-2}, b].
double partition_function(const DeltaPartition& p, double t);

/// Partition with delta/2 whose points contain those of p.
DeltaPartition refine(const DeltaPartition& p);

/// min(1, mu(rho(b))/2) when b is left-scattered, else 1.
double safe_delta0(const TimeScale& scale, double a, double b);

/// Checks the partition invariants from scratch; returns a description of
/// the first violation.
std::optional<std::string> validate_partition(const DeltaPartition& p);

/// Debug dump: `index,t,cell_kind`, where the kind belongs to the cell ending
/// at t (empty on row 0).
std::string partition_csv(const DeltaPartition& p);

}  // namespace tscale
