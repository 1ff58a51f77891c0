// tscalc: command-line front end for the time-scale integrators.
//
//   tscalc integrate SCALE EXPR A B [--method riemann|real|super|parts|all]
//   tscalc compare SCALE SUPERSCALE EXPR A B
//   tscalc compare --corpus --seed 7 --cases 200
//   tscalc chain FILE EXPR A B
//   tscalc partition SCALE A B --delta D
//   tscalc canon SCALE
//
// Exit codes: 0 ok, 2 invalid input, 3 no convergence, 4 chain not
// ascending, 5 methods disagree beyond the acceptance envelope.

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "tscale/conversion.hpp"
#include "tscale/corpus.hpp"
#include "tscale/delta_calculus.hpp"
#include "tscale/error.hpp"
#include "tscale/partition.hpp"
#include "tscale/report.hpp"
#include "tscale/scale_spec.hpp"

using namespace tscale;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 2;
constexpr int kExitNoConvergence = 3;
constexpr int kExitNotAscending = 4;
constexpr int kExitDeviation = 5;

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NoConvergence: return kExitNoConvergence;
    case ErrorKind::ChainNotAscending: return kExitNotAscending;
    default: return kExitInvalid;
  }
}

struct Output {
  std::string path;

  void write(const std::string& text) const {
    if (path.empty()) {
      std::cout << text;
      return;
    }
    std::ofstream os(path, std::ios::binary);
    if (!os) throw Error(ErrorKind::InvalidScale, "cannot open output file " + path);
    os << text;
  }
};

// SCALE and SUPERSCALE arguments may name a file holding the scale spec.
TimeScale load_scale(const std::string& arg) {
  if (arg.find('(') == std::string::npos) {
    std::ifstream is(arg);
    if (is) {
      std::stringstream ss;
      ss << is.rdbuf();
      return parse_scale(ss.str());
    }
  }
  return parse_scale(arg);
}

std::vector<IntegralReport> run_methods(const std::string& method, const TimeScale& t, const TimeScale& sup,
                                        const Expr& f, double a, double b, const IntegrationOptions& opts) {
  std::vector<IntegralReport> out;
  const bool all = method == "all";
  if (all || method == "riemann") out.push_back(riemann_delta_integral(t, f, a, b, opts));
  if (all || method == "real") out.push_back(convert_via_real(t, f, a, b, opts));
  if (all || method == "super") out.push_back(convert_via_superscale(t, sup, f, a, b, opts));
  if (all || method == "parts") out.push_back(by_parts_cross_scale(t, sup, f, a, b, opts));
  return out;
}

std::vector<TimeScale> read_chain(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw Error(ErrorKind::InvalidScale, "cannot open chain file " + path);
  std::vector<TimeScale> scales;
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      scales.push_back(parse_scale(line));
    } catch (const Error& e) {
      throw Error(e.kind(), path + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
  if (scales.size() < 2) {
    throw Error(ErrorKind::InvalidScale, "chain file needs at least one scale plus the union scale");
  }
  return scales;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Delta-integrals on time scales, directly and through conversion formulas"};
  app.require_subcommand(1);
  Output out;
  IntegrationOptions opts;

  std::string scale_arg, sup_arg, expr_arg, a_arg, b_arg, method = "real", format = "json", chain_file;
  double delta = 0.0;
  bool corpus = false;
  std::uint64_t seed = 7;
  std::size_t cases = 200;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--tol", opts.tol, "Riemann stopping tolerance")->check(CLI::PositiveNumber);
    cmd->add_option("--out", out.path, "Write output to this file instead of stdout");
  };

  auto* integrate = app.add_subcommand("integrate", "Integrate EXPR over [A, B] of SCALE");
  integrate->add_option("scale", scale_arg, "Scale spec")->required();
  integrate->add_option("expr", expr_arg, "Integrand in s")->required();
  integrate->add_option("a", a_arg, "Left end")->required();
  integrate->add_option("b", b_arg, "Right end")->required();
  integrate->add_option("--method", method, "riemann|real|super|parts|all")
      ->check(CLI::IsMember({"riemann", "real", "super", "parts", "all"}));
  integrate->add_option("--superscale", sup_arg, "Superscale for super/parts (default: the scale itself)");
  integrate->add_option("--format", format, "json|csv")->check(CLI::IsMember({"json", "csv"}));
  add_common(integrate);

  auto* compare = app.add_subcommand("compare", "Run every method and check they agree");
  compare->add_option("scale", scale_arg, "Scale spec");
  compare->add_option("superscale", sup_arg, "Superscale spec");
  compare->add_option("expr", expr_arg, "Integrand in s");
  compare->add_option("a", a_arg, "Left end");
  compare->add_option("b", b_arg, "Right end");
  compare->add_flag("--corpus", corpus, "Run the seeded random corpus instead");
  compare->add_option("--seed", seed, "Corpus seed");
  compare->add_option("--cases", cases, "Corpus size");
  add_common(compare);

  auto* chain = app.add_subcommand("chain", "Integrals along an ascending chain of scales");
  chain->add_option("file", chain_file, "One scale spec per line, the union scale last")->required();
  chain->add_option("expr", expr_arg, "Integrand in s")->required();
  chain->add_option("a", a_arg, "Left end")->required();
  chain->add_option("b", b_arg, "Right end")->required();
  add_common(chain);

  auto* partition = app.add_subcommand("partition", "Dump the greedy delta-partition as CSV");
  partition->add_option("scale", scale_arg, "Scale spec")->required();
  partition->add_option("a", a_arg, "Left end")->required();
  partition->add_option("b", b_arg, "Right end")->required();
  partition->add_option("--delta", delta, "Gauge")->required()->check(CLI::PositiveNumber);
  partition->add_option("--out", out.path, "Write output to this file instead of stdout");

  auto* canon = app.add_subcommand("canon", "Print the canonical form of a scale spec");
  canon->add_option("scale", scale_arg, "Scale spec")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::string msg = e.what();
    std::replace(msg.begin(), msg.end(), '\n', ' ');
    std::cerr << "error: Usage: " << msg << "\n";
    return kExitInvalid;
  }

  try {
    if (canon->parsed()) {
      out.write(to_spec(load_scale(scale_arg)) + "\n");
      return kExitOk;
    }

    if (partition->parsed()) {
      const TimeScale t = load_scale(scale_arg);
      const DeltaPartition p = build_partition(t, parse_constant(a_arg), parse_constant(b_arg), delta);
      out.write(partition_csv(p));
      return kExitOk;
    }

    if (integrate->parsed()) {
      const TimeScale t = load_scale(scale_arg);
      const TimeScale sup = sup_arg.empty() ? t : load_scale(sup_arg);
      const Expr f = parse_expr(expr_arg);
      const double a = parse_constant(a_arg);
      const double b = parse_constant(b_arg);
      const auto reports = run_methods(method, t, sup, f, a, b, opts);
      if (format == "json") {
        out.write(reports_json(reports));
      } else {
        out.write(reports_csv(reports, reports.front().value));
      }
      return kExitOk;
    }

    if (compare->parsed()) {
      if (corpus) {
        opts.relative_tol = true;
        const auto results = run_corpus(generate_corpus(seed, cases), opts);
        out.write(corpus_csv(results));
        for (const auto& r : results) {
          if (!r.pass) return kExitDeviation;
        }
        return kExitOk;
      }
      if (scale_arg.empty() || sup_arg.empty() || expr_arg.empty() || a_arg.empty() || b_arg.empty()) {
        throw CLI::ValidationError("compare", "needs SCALE SUPERSCALE EXPR A B, or --corpus");
      }
      const TimeScale t = load_scale(scale_arg);
      const TimeScale sup = load_scale(sup_arg);
      const Expr f = parse_expr(expr_arg);
      const double a = parse_constant(a_arg);
      const double b = parse_constant(b_arg);
      const auto reports = run_methods("all", t, sup, f, a, b, opts);
      const double reference = reports.front().value;
      double max_dev = 0.0;
      double residual = 0.0;
      for (const auto& r : reports) {
        max_dev = std::max(max_dev, std::fabs(r.value - reference));
        residual = std::max(residual, r.truncation_residual);
      }
      const double envelope = std::max(1e-6, 1e-6 * std::fabs(reference)) + truncation_bound(f, a, b, residual);
      const bool ok = max_dev <= envelope;
      out.write(reports_csv(reports, reference) + "# max_abs_err=" + format_g17(max_dev) +
                " envelope=" + format_g17(envelope) + " pass=" + (ok ? "1" : "0") + "\n");
      return ok ? kExitOk : kExitDeviation;
    }

    if (chain->parsed()) {
      std::vector<TimeScale> scales = read_chain(chain_file);
      const TimeScale sup = scales.back();
      scales.pop_back();
      const ChainReport rep =
          chain_convergence(scales, sup, parse_expr(expr_arg), parse_constant(a_arg), parse_constant(b_arg), opts);
      out.write(chain_csv(rep));
      return kExitOk;
    }
  } catch (const SyntaxError& e) {
    std::cerr << "error: SyntaxError: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const Error& e) {
    std::cerr << "error: " << kind_name(e.kind()) << ": " << e.what() << "\n";
    return exit_code(e.kind());
  } catch (const CLI::Error& e) {
    std::cerr << "error: Usage: " << e.what() << "\n";
    return kExitInvalid;
  }
  return kExitOk;
}
