#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <utility>
#include <variant>
#include <vector>

namespace tscale {

namespace detail {
struct ClusterGen;
}

struct ClosedInterval {
  double lo = 0.0;
  double hi = 0.0;
};

struct FinitePoints {
  std::vector<double> values;  // sorted, unique
};

/// {c*q^n : n >= 0} together with its accumulation point 0.
struct GeometricCluster {
  double q = 0.5;
  double c = 1.0;
};

/// {c/n : n >= 1} together with its accumulation point 0.
struct HarmonicCluster {
  double c = 1.0;
};

/// One closed building block of a time scale. `offset` translates the
/// whole piece; canonical form folds it into intervals and points and keeps
/// it only on clusters (where it is the accumulation point).
struct Piece {
  std::variant<ClosedInterval, FinitePoints, GeometricCluster, HarmonicCluster> shape;
  double offset = 0.0;
};

enum class Side { dense, scattered };

struct PointClass {
  Side right = Side::dense;
  Side left = Side::dense;
};

/// [tau, sigma_tau) with tau right-scattered and sigma_tau = sigma(tau).
struct GapInterval {
  double tau = 0.0;
  double sigma_tau = 0.0;

  double length() const { return sigma_tau - tau; }
};

struct GapOptions {
  /// Cluster gaps are enumerated until the gap length left in the tail
  /// drops below this.
  double tail_eps = 1e-10;
  /// Hard cap on enumerated gaps per cluster (harmonic tails decay slowly).
  std::size_t max_cluster_terms = std::size_t{1} << 20;
};

/// Gaps of a window, ordered by tau. Near an accumulation point the
/// enumeration stops; the skipped region is reported in `tails` (each a
/// half-open [lo, hi)) and the total gap length inside them in
/// `truncation_residual`. Tails never overlap listed gaps.
struct GapSet {
  std::vector<GapInterval> gaps;
  std::vector<std::pair<double, double>> tails;
  double truncation_residual = 0.0;

  double total_length() const;
  double max_length() const;
};

/// Result of a subset check: either T is contained in the superscale, or a
/// point of T outside it (or, for intervals, a real point of T that the
/// superscale misses).
struct SubsetEvidence {
  bool subset = true;
  std::optional<double> witness;
};

/// Immutable closed subset of the reals built from pieces. All queries are
/// answered per piece in closed form; there is no sampling. Copies share
/// storage.
class TimeScale {
 public:
  explicit TimeScale(std::vector<Piece> pieces);

  static TimeScale interval(double lo, double hi);
  static TimeScale points(std::vector<double> values);
  static TimeScale geometric(double q, double c, double offset = 0.0);
  static TimeScale harmonic(double c, double offset = 0.0);
  static TimeScale unite(const std::vector<TimeScale>& parts);

  const std::vector<Piece>& pieces() const { return *pieces_; }
  /// Merged interval pieces, sorted.
  const std::vector<ClosedInterval>& intervals() const { return intervals_; }
  /// Isolated points, sorted.
  const std::vector<double>& isolated_points() const { return points_; }

  double min() const { return min_; }
  double max() const { return max_; }

  /// Membership up to 1e-12*max(1,|t|).
  bool contains(double t) const;
  /// Nearest member within the membership tolerance; throws QueryOutsideScale.
  double snap(double t) const;

  double sigma(double t) const;
  double rho(double t) const;
  double mu(double t) const;
  PointClass classify(double t) const;

  // Raw set queries for arbitrary reals (no snapping, no errors).
  /// inf{s in T : s > t}; +inf when empty. Equals t where T is right-dense.
  double inf_above(double t) const;
  /// sup{s in T : s < t}; -inf when empty.
  double sup_below(double t) const;
  /// max{s in T : s <= x}; -inf when empty.
  double max_at_most(double x) const;
  /// min{s in T : s >= x}; +inf when empty.
  double min_at_least(double x) const;

  /// Merged interval pieces clipped to [lo, hi].
  std::vector<std::pair<double, double>> dense_runs(double lo, double hi) const;
  /// Lebesgue measure of T within [lo, hi].
  double dense_measure(double lo, double hi) const;
  /// Interval piece [lo, hi] with lo <= t < hi, if any.
  std::optional<ClosedInterval> interval_right_of(double t) const;

  /// Gaps [tau, sigma(tau)) for right-scattered tau with lo <= tau < tau_bound.
  GapSet enumerate_gaps(double lo, double tau_bound, const GapOptions& opts = {}) const;

  friend bool operator==(const TimeScale& x, const TimeScale& y);

 private:
  std::shared_ptr<const std::vector<Piece>> pieces_;
  std::vector<ClosedInterval> intervals_;
  std::vector<double> points_;
  std::shared_ptr<const std::vector<detail::ClusterGen>> clusters_;
  double min_ = 0.0;
  double max_ = 0.0;
};

double membership_tolerance(double t);

/// The piece list in canonical form: offsets folded, intervals merged,
/// covered points and clusters dropped, pieces sorted.
std::vector<Piece> canonical_pieces(std::vector<Piece> pieces);

/// I(T) over the window [a, b]: gaps with a <= tau < rho(b).
GapSet gap_set(const TimeScale& scale, double a, double b, const GapOptions& opts = {});

/// S(T) on [a, b]: inf{s in [a,b]_T : s > t} below rho(b), and b on [rho(b), b].
class JumpEnvelope {
 public:
  JumpEnvelope(TimeScale scale, double a, double b);

  double operator()(double t) const;
  double a() const { return a_; }
  double b() const { return b_; }
  double rho_b() const { return rho_b_; }
  const TimeScale& scale() const { return scale_; }

 private:
  TimeScale scale_;
  double a_;
  double b_;
  double rho_b_;
};

double jump_envelope(const TimeScale& scale, double a, double b, double t);

/// Checks scale ⊂ superscale.
SubsetEvidence restrict_to(const TimeScale& superscale, const TimeScale& scale);

}  // namespace tscale
