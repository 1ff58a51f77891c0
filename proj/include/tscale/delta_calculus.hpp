#pragma once

#include <span>
#include <utility>

#include "tscale/expr.hpp"
#include "tscale/integral.hpp"
#include "tscale/scale.hpp"

namespace tscale {

/// f^Delta(t): forward difference quotient where t is right-scattered, the
/// classical derivative where it is right-dense.
double delta_derivative(const TimeScale& scale, const Expr& f, double t);

/// Delta-integral over [a, b]_T as the limit of left-endpoint sums over
/// greedy delta-partitions, halving delta until successive sums settle.
/// Shares no code with the conversion formulas.
IntegralReport riemann_delta_integral(const TimeScale& scale, const Expr& f, double a, double b,
                                      const IntegrationOptions& opts = {});

/// Classical integral of f over [a, b], split at the break points of
/// floor/abs nodes.
IntegralReport classical_integral(const Expr& f, double a, double b, double tol = 1e-12);

/// Both sides of summation by parts,
///   sum a_i b_i  and  sum_{i<n} A_i (b_i - b_{i+1}) + A_n b_n,  A_i = a_1 + ... + a_i,
/// each evaluated on its own.
std::pair<double, double> abel_sum(std::span<const double> alpha, std::span<const double> beta);

}  // namespace tscale
