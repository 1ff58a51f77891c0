#pragma once

#include <string>
#include <string_view>

#include "tscale/scale.hpp"

namespace tscale {

/// Parses the scale-spec text format, e.g.
///
///   union(interval(0,1), points(2, 3.5), geometric(q=0.5, c=1), harmonic(c=1, offset=2))
///
/// Constructors: interval(lo, hi), points(x, ...), geometric(q, c),
/// harmonic(c), grid(lo, hi, step) and union(...), which nests. Every
/// constructor accepts `offset=`; harmonic also takes `nmax=N`, which yields
/// the finite set {c/k : 1 <= k <= N} without the accumulation point.
/// Arguments are constant expressions, so `1/3` and `pi` work.
TimeScale parse_scale(std::string_view text);

/// Canonical text of a scale. parse_scale(to_spec(T)) == T.
std::string to_spec(const TimeScale& scale);

/// Shortest decimal that reads back to the same double.
std::string format_real(double x);

}  // namespace tscale
