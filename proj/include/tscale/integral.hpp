#pragma once

#include <cstddef>
#include <string_view>

#include "tscale/scale.hpp"

namespace tscale {

enum class Method { riemann_sum, piecewise_closed, convert_real, convert_superscale, by_parts };

std::string_view method_name(Method m) noexcept;

struct IntegralReport {
  double value = 0.0;
  Method method = Method::riemann_sum;
  double est_error = 0.0;
  std::size_t evaluations = 0;
  /// Total gap length skipped near accumulation points.
  double truncation_residual = 0.0;
};

struct IntegrationOptions {
  /// Stopping tolerance of the Riemann halving loop.
  double tol = 1e-8;
  /// Scale tol by max(1, |value|).
  bool relative_tol = false;
  /// Tolerance for classical quadrature on dense pieces.
  double quad_tol = 1e-12;
  int max_halvings = 30;
  /// Largest partition the Riemann loop may build.
  std::size_t max_cells = std::size_t{1} << 23;
  GapOptions gaps;
};

}  // namespace tscale
