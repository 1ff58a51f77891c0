#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "tscale/expr.hpp"
#include "tscale/integral.hpp"
#include "tscale/scale.hpp"

namespace tscale {

/// One randomly drawn (T, sup, f, [a, b]) with T ⊂ sup.
struct CorpusCase {
  std::size_t id = 0;
  TimeScale scale;
  TimeScale sup;
  Expr f;
  std::string f_text;
  double a = 0.0;
  double b = 0.0;
};

/// Seeded generator. Scales live in [0, 3]: 1-5 intervals, 0-10 points and
/// sometimes one geometric cluster. The superscale is T itself, a real
/// window around T, or T with extra pieces. Integrands are polynomials of
/// degree <= 4, sines, exponentials and sums of these.
std::vector<CorpusCase> generate_corpus(std::uint64_t seed, std::size_t count);

/// Same scales, but every integrand is non-decreasing on the real line.
std::vector<CorpusCase> generate_monotone_corpus(std::uint64_t seed, std::size_t count);

struct CaseResult {
  std::size_t id = 0;
  double riemann = 0.0;
  double by_parts = 0.0;
  double superscale = 0.0;
  double real = 0.0;
  /// Superscale formula with the real window around T as superscale.
  double superscale_real = 0.0;
  double residual = 0.0;
  /// max(1e-6, 1e-6 |riemann|) plus the tail bound.
  double envelope = 0.0;
  bool pass = false;
  std::string error;  // non-empty when a method threw

  double max_conversion_error() const;
  double real_vs_superscale() const;
};

/// Runs every method on every case. With `parallel`, cases fan out over
/// OpenMP threads; results are stored by case index either way.
std::vector<CaseResult> run_corpus(const std::vector<CorpusCase>& cases, const IntegrationOptions& opts,
                                   bool parallel = true);

/// Tail bound 2 (|f|_inf + |b| |f'|_inf) (residual of T + residual of sup),
/// the norms sampled on [a, b].
double truncation_bound(const Expr& f, double a, double b, double residual);

}  // namespace tscale
