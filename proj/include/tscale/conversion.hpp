#pragma once

#include <cstddef>
#include <vector>

#include "tscale/expr.hpp"
#include "tscale/integral.hpp"
#include "tscale/scale.hpp"

namespace tscale {

// Delta-integrals over [a, b]_T rewritten through the real line or through a
// superscale sup ⊇ T. Jump sums run over right-scattered tau with tau < b.
// Integrals over dense pieces use classical quadrature at opts.quad_tol;
// none of this goes through partitions or Riemann sums.

/// Integral of f over the dense part of [a, b]_T plus sum f(tau) mu(tau).
IntegralReport convert_via_real(const TimeScale& scale, const Expr& f, double a, double b,
                                const IntegrationOptions& opts = {});

/// Integral of f∘sigma_sup over [a, b]_sup, corrected on every gap
/// [tau, sigma_T(tau)) of T by mu_T(tau) f(tau) minus the same integral taken
/// over that gap only.
IntegralReport convert_via_superscale(const TimeScale& scale, const TimeScale& sup, const Expr& f,
                                      double a, double b, const IntegrationOptions& opts = {});

/// b f(b) - a f(a) minus the Delta_sup-integral of S(T) f^Delta_sup, with
/// S(T) the jump envelope of T on [a, b].
IntegralReport by_parts_cross_scale(const TimeScale& scale, const TimeScale& sup, const Expr& f,
                                    double a, double b, const IntegrationOptions& opts = {});

struct MonotoneComparison {
  double lhs = 0.0;  // integral over T
  double rhs = 0.0;  // integral over sup
  bool holds = false;
};

/// For f non-decreasing on [a, b]_sup, the integral over T is at most the
/// one over sup. Raises NotMonotone when sampled f^Delta_sup dips below
/// -1e-12.
MonotoneComparison monotone_compare(const TimeScale& scale, const TimeScale& sup, const Expr& f,
                                    double a, double b, const IntegrationOptions& opts = {});

struct ChainRow {
  std::size_t n = 0;
  double value = 0.0;
  double gap = 0.0;  // |value - limit|
};

struct ChainReport {
  std::vector<ChainRow> rows;
  double limit = 0.0;
  double truncation_residual = 0.0;
  /// Sampled t where S(T_{n+1})(t) > S(T_n)(t), or S(sup)(t) > S(T_last)(t).
  std::size_t envelope_violations = 0;
  std::size_t envelope_samples = 0;
};

/// Integrals over an ascending chain T_0 ⊂ T_1 ⊂ ... inside sup, each via
/// the superscale formula, against the integral over sup itself.
ChainReport chain_convergence(const std::vector<TimeScale>& chain, const TimeScale& sup, const Expr& f,
                              double a, double b, const IntegrationOptions& opts = {});

}  // namespace tscale
