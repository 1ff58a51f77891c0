#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace tscale {

enum class Op : std::uint8_t {
  Num, Var, Add, Sub, Mul, Div, Pow, Neg,
  Sin, Cos, Exp, Log, Sqrt, Floor, Abs,
};

/// One node of the flattened syntax tree. Children always carry smaller
/// indices than their parent, so a forward scan evaluates the tree.
struct ExprNode {
  Op op = Op::Num;
  double value = 0.0;  // literal value for Op::Num
  std::int32_t lhs = -1;
  std::int32_t rhs = -1;
};

/// Value and derivative of an integrand at one point. `smooth_at_point` is
/// false when a floor/abs node sits exactly on its break set.
struct ValDer {
  double value = 0.0;
  double derivative = 0.0;
  bool smooth_at_point = true;
};

/// Affine form alpha + beta*s, when an expression is affine in s.
struct AffineForm {
  double alpha = 0.0;
  double beta = 0.0;
};

/// Immutable parsed integrand in the variable `s`. Copies share the node
/// storage; evaluation is pure and safe from many threads.
class Expr {
 public:
  Expr();  // the constant 0
  Expr(std::vector<ExprNode> nodes);

  static Expr constant(double c);
  static Expr variable();

  double eval(double s) const;
  ValDer eval_vd(double s) const;

  /// Points in [lo, hi] where a floor or abs node changes branch. Affine
  /// arguments are solved exactly; anything else is bracketed on a grid
  /// and bisected.
  std::vector<double> breaks(double lo, double hi) const;

  bool depends_on_variable() const;
  bool has_breaks() const;
  std::optional<AffineForm> affine() const;

  std::string to_string() const;

  const std::vector<ExprNode>& nodes() const { return *nodes_; }
  std::size_t size() const { return nodes_->size(); }

  /// Structural equality of the trees (literal values compared exactly).
  friend bool operator==(const Expr& x, const Expr& y);

 private:
  std::shared_ptr<const std::vector<ExprNode>> nodes_;
};

/// Parses an integrand. Grammar, loosest to tightest binding:
/// `+ -`, `* /`, unary `-`, right-associative `^`. Functions: sin, cos,
/// exp, log, sqrt, floor, abs. `pi` reads as a literal.
/// Throws SyntaxError carrying the 1-based column.
Expr parse_expr(std::string_view text);

/// Parses a constant expression (no `s`) and returns its value.
double parse_constant(std::string_view text);

}  // namespace tscale
