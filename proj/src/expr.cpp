#include "tscale/expr.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <utility>

#include "expr_reader.hpp"
#include "tscale/error.hpp"

namespace tscale {

namespace detail {

std::string_view tok_name(Tok kind) {
  switch (kind) {
    case Tok::Number: return "number";
    case Tok::Ident: return "identifier";
    case Tok::Plus: return "'+'";
    case Tok::Minus: return "'-'";
    case Tok::Star: return "'*'";
    case Tok::Slash: return "'/'";
    case Tok::Caret: return "'^'";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::Comma: return "','";
    case Tok::Equals: return "'='";
    case Tok::End: return "end of input";
  }
  return "?";
}

namespace {

bool is_ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool is_ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }
bool is_digit(char c) { return c >= '0' && c <= '9'; }

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < text.size()) {
    const char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    Token tok;
    tok.column = i + 1;
    if (is_digit(c) || (c == '.' && i + 1 < text.size() && is_digit(text[i + 1]))) {
      std::size_t j = i;
      while (j < text.size() && is_digit(text[j])) ++j;
      if (j < text.size() && text[j] == '.') {
        ++j;
        while (j < text.size() && is_digit(text[j])) ++j;
      }
      if (j < text.size() && (text[j] == 'e' || text[j] == 'E')) {
        std::size_t k = j + 1;
        if (k < text.size() && (text[k] == '+' || text[k] == '-')) ++k;
        if (k < text.size() && is_digit(text[k])) {
          while (k < text.size() && is_digit(text[k])) ++k;
          j = k;
        }
      }
      tok.kind = Tok::Number;
      tok.text = text.substr(i, j - i);
      // from_chars rejects a leading '.', so parse via a small buffer.
      std::string buf(tok.text);
      if (buf.front() == '.') buf.insert(buf.begin(), '0');
      auto [ptr, ec] = std::from_chars(buf.data(), buf.data() + buf.size(), tok.number);
      if (ec != std::errc() || ptr != buf.data() + buf.size()) {
        throw SyntaxError(tok.column, {"number"},
                          "syntax error at column " + std::to_string(tok.column) +
                              ": malformed number '" + buf + "'");
      }
      i = j;
    } else if (is_ident_start(c)) {
      std::size_t j = i;
      while (j < text.size() && is_ident_char(text[j])) ++j;
      tok.kind = Tok::Ident;
      tok.text = text.substr(i, j - i);
      i = j;
    } else {
      switch (c) {
        case '+': tok.kind = Tok::Plus; break;
        case '-': tok.kind = Tok::Minus; break;
        case '*': tok.kind = Tok::Star; break;
        case '/': tok.kind = Tok::Slash; break;
        case '^': tok.kind = Tok::Caret; break;
        case '(': tok.kind = Tok::LParen; break;
        case ')': tok.kind = Tok::RParen; break;
        case ',': tok.kind = Tok::Comma; break;
        case '=': tok.kind = Tok::Equals; break;
        default:
          throw SyntaxError(tok.column, {},
                            "syntax error at column " + std::to_string(tok.column) +
                                ": unexpected character '" + std::string(1, c) + "'");
      }
      tok.text = text.substr(i, 1);
      ++i;
    }
    out.push_back(tok);
  }
  Token end;
  end.kind = Tok::End;
  end.column = text.size() + 1;
  out.push_back(end);
  return out;
}

std::int32_t push(std::vector<ExprNode>& nodes, ExprNode node) {
  nodes.push_back(node);
  return static_cast<std::int32_t>(nodes.size() - 1);
}

std::optional<Op> function_op(std::string_view name) {
  if (name == "sin") return Op::Sin;
  if (name == "cos") return Op::Cos;
  if (name == "exp") return Op::Exp;
  if (name == "log") return Op::Log;
  if (name == "sqrt") return Op::Sqrt;
  if (name == "floor") return Op::Floor;
  if (name == "abs") return Op::Abs;
  return std::nullopt;
}

}  // namespace

Reader::Reader(std::string_view text) : tokens_(tokenize(text)) {}

const Token& Reader::next() {
  const Token& t = tokens_[pos_];
  if (t.kind != Tok::End) ++pos_;
  return t;
}

bool Reader::accept(Tok kind) {
  if (peek().kind != kind) return false;
  next();
  return true;
}

const Token& Reader::expect(Tok kind) {
  if (peek().kind != kind) fail(peek(), {std::string(tok_name(kind))}, "");
  return next();
}

void Reader::fail(const Token& at, std::vector<std::string> expected,
                  const std::string& what) const {
  std::ostringstream msg;
  msg << "syntax error at column " << at.column << ": ";
  if (!what.empty()) {
    msg << what;
  } else {
    msg << "expected ";
    for (std::size_t i = 0; i < expected.size(); ++i) msg << (i ? " or " : "") << expected[i];
    msg << ", found ";
    if (at.kind == Tok::End)
      msg << "end of input";
    else
      msg << "'" << at.text << "'";
  }
  throw SyntaxError(at.column, std::move(expected), msg.str());
}

std::int32_t Reader::expression(std::vector<ExprNode>& nodes) { return sum(nodes); }

std::int32_t Reader::sum(std::vector<ExprNode>& nodes) {
  std::int32_t lhs = product(nodes);
  for (;;) {
    Op op;
    if (peek().kind == Tok::Plus)
      op = Op::Add;
    else if (peek().kind == Tok::Minus)
      op = Op::Sub;
    else
      return lhs;
    next();
    const std::int32_t rhs = product(nodes);
    lhs = push(nodes, {op, 0.0, lhs, rhs});
  }
}

std::int32_t Reader::product(std::vector<ExprNode>& nodes) {
  std::int32_t lhs = unary(nodes);
  for (;;) {
    Op op;
    if (peek().kind == Tok::Star)
      op = Op::Mul;
    else if (peek().kind == Tok::Slash)
      op = Op::Div;
    else
      return lhs;
    next();
    const std::int32_t rhs = unary(nodes);
    lhs = push(nodes, {op, 0.0, lhs, rhs});
  }
}

std::int32_t Reader::unary(std::vector<ExprNode>& nodes) {
  if (accept(Tok::Minus)) {
    const std::int32_t child = unary(nodes);
    return push(nodes, {Op::Neg, 0.0, child, -1});
  }
  return power(nodes);
}

std::int32_t Reader::power(std::vector<ExprNode>& nodes) {
  const std::int32_t base = primary(nodes);
  if (!accept(Tok::Caret)) return base;
  // Right-associative, and the exponent may carry its own sign: 2^-s.
  const std::int32_t exponent = unary(nodes);
  return push(nodes, {Op::Pow, 0.0, base, exponent});
}

std::int32_t Reader::primary(std::vector<ExprNode>& nodes) {
  const Token& tok = peek();
  switch (tok.kind) {
    case Tok::Number:
      next();
      return push(nodes, {Op::Num, tok.number, -1, -1});
    case Tok::LParen: {
      next();
      const std::int32_t inner = expression(nodes);
      expect(Tok::RParen);
      return inner;
    }
    case Tok::Ident: {
      if (tok.text == "s") {
        next();
        return push(nodes, {Op::Var, 0.0, -1, -1});
      }
      if (tok.text == "pi") {
        next();
        return push(nodes, {Op::Num, std::numbers::pi, -1, -1});
      }
      if (auto op = function_op(tok.text)) {
        next();
        expect(Tok::LParen);
        const std::int32_t arg = expression(nodes);
        expect(Tok::RParen);
        return push(nodes, {*op, 0.0, arg, -1});
      }
      fail(tok, {"s", "function"}, "unknown identifier '" + std::string(tok.text) + "'");
    }
    default:
      fail(tok, {"number", "s", "function", "'('"}, "");
  }
}

double read_constant(Reader& reader) {
  const Token& start = reader.peek();
  std::vector<ExprNode> nodes;
  reader.expression(nodes);
  for (const auto& n : nodes)
    if (n.op == Op::Var) reader.fail(start, {"number"}, "constant expected, found an expression in s");
  return Expr(std::move(nodes)).eval(0.0);
}

}  // namespace detail

namespace {

using detail::Reader;
using detail::Tok;

[[noreturn]] void domain_error(const char* what, double s) {
  std::ostringstream msg;
  msg.precision(17);
  msg << what << " at s=" << s;
  throw Error(ErrorKind::DomainError, msg.str());
}

// Dual number carrying the smoothness flag alongside value and derivative.
struct Dual {
  double v = 0.0;
  double d = 0.0;
  bool smooth = true;
};

int precedence(const ExprNode& n) {
  switch (n.op) {
    case Op::Add:
    case Op::Sub: return 1;
    case Op::Mul:
    case Op::Div: return 2;
    case Op::Neg: return 3;
    case Op::Pow: return 4;
    case Op::Num: return n.value < 0.0 || std::signbit(n.value) ? 3 : 5;
    default: return 5;
  }
}

std::string format_number(double v) {
  std::array<char, 64> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  (void)ec;
  return std::string(buf.data(), ptr);
}

const char* function_name(Op op) {
  switch (op) {
    case Op::Sin: return "sin";
    case Op::Cos: return "cos";
    case Op::Exp: return "exp";
    case Op::Log: return "log";
    case Op::Sqrt: return "sqrt";
    case Op::Floor: return "floor";
    case Op::Abs: return "abs";
    default: return "?";
  }
}

void print_node(const std::vector<ExprNode>& nodes, std::int32_t i, std::string& out) {
  const ExprNode& n = nodes[static_cast<std::size_t>(i)];
  auto child = [&](std::int32_t c, bool parens) {
    if (parens) out += '(';
    print_node(nodes, c, out);
    if (parens) out += ')';
  };
  auto prec_of = [&](std::int32_t c) { return precedence(nodes[static_cast<std::size_t>(c)]); };
  switch (n.op) {
    case Op::Num:
      out += format_number(n.value);
      return;
    case Op::Var:
      out += 's';
      return;
    case Op::Add:
    case Op::Sub:
    case Op::Mul:
    case Op::Div: {
      const int p = precedence(n);
      child(n.lhs, prec_of(n.lhs) < p);
      switch (n.op) {
        case Op::Add: out += " + "; break;
        case Op::Sub: out += " - "; break;
        case Op::Mul: out += '*'; break;
        default: out += '/'; break;
      }
      child(n.rhs, prec_of(n.rhs) <= p);
      return;
    }
    case Op::Pow:
      child(n.lhs, prec_of(n.lhs) <= 4);
      out += '^';
      child(n.rhs, prec_of(n.rhs) < 3);
      return;
    case Op::Neg:
      out += '-';
      child(n.lhs, prec_of(n.lhs) < 3);
      return;
    default:
      out += function_name(n.op);
      out += '(';
      print_node(nodes, n.lhs, out);
      out += ')';
      return;
  }
}

bool equal_subtrees(const std::vector<ExprNode>& a, std::int32_t i, const std::vector<ExprNode>& b,
                    std::int32_t j) {
  const ExprNode& x = a[static_cast<std::size_t>(i)];
  const ExprNode& y = b[static_cast<std::size_t>(j)];
  if (x.op != y.op) return false;
  if (x.op == Op::Num) return x.value == y.value;
  if (x.lhs >= 0 && !equal_subtrees(a, x.lhs, b, y.lhs)) return false;
  if (x.rhs >= 0 && !equal_subtrees(a, x.rhs, b, y.rhs)) return false;
  return true;
}

double apply(Op op, double u, double v, double s) {
  switch (op) {
    case Op::Add: return u + v;
    case Op::Sub: return u - v;
    case Op::Mul: return u * v;
    case Op::Div:
      if (v == 0.0) domain_error("division by zero", s);
      return u / v;
    case Op::Pow: {
      const double r = std::pow(u, v);
      if (!std::isfinite(r)) domain_error("power undefined", s);
      return r;
    }
    case Op::Neg: return -u;
    case Op::Sin: return std::sin(u);
    case Op::Cos: return std::cos(u);
    case Op::Exp: {
      const double r = std::exp(u);
      if (!std::isfinite(r)) domain_error("exp overflow", s);
      return r;
    }
    case Op::Log:
      if (!(u > 0.0)) domain_error("log of non-positive argument", s);
      return std::log(u);
    case Op::Sqrt:
      if (u < 0.0) domain_error("sqrt of negative argument", s);
      return std::sqrt(u);
    case Op::Floor: return std::floor(u);
    case Op::Abs: return std::fabs(u);
    default: return 0.0;
  }
}

double eval_subtree(const std::vector<ExprNode>& nodes, std::int32_t i, double s) {
  const ExprNode& n = nodes[static_cast<std::size_t>(i)];
  if (n.op == Op::Num) return n.value;
  if (n.op == Op::Var) return s;
  const double u = eval_subtree(nodes, n.lhs, s);
  const double v = n.rhs >= 0 ? eval_subtree(nodes, n.rhs, s) : 0.0;
  return apply(n.op, u, v, s);
}

std::optional<AffineForm> affine_of(const std::vector<ExprNode>& nodes, std::int32_t i) {
  const ExprNode& n = nodes[static_cast<std::size_t>(i)];
  switch (n.op) {
    case Op::Num: return AffineForm{n.value, 0.0};
    case Op::Var: return AffineForm{0.0, 1.0};
    case Op::Neg: {
      auto u = affine_of(nodes, n.lhs);
      if (!u) return std::nullopt;
      return AffineForm{-u->alpha, -u->beta};
    }
    case Op::Add:
    case Op::Sub: {
      auto u = affine_of(nodes, n.lhs);
      auto v = affine_of(nodes, n.rhs);
      if (!u || !v) return std::nullopt;
      const double sign = n.op == Op::Add ? 1.0 : -1.0;
      return AffineForm{u->alpha + sign * v->alpha, u->beta + sign * v->beta};
    }
    case Op::Mul: {
      auto u = affine_of(nodes, n.lhs);
      auto v = affine_of(nodes, n.rhs);
      if (!u || !v) return std::nullopt;
      if (u->beta == 0.0) return AffineForm{u->alpha * v->alpha, u->alpha * v->beta};
      if (v->beta == 0.0) return AffineForm{v->alpha * u->alpha, v->alpha * u->beta};
      return std::nullopt;
    }
    case Op::Div: {
      auto u = affine_of(nodes, n.lhs);
      auto v = affine_of(nodes, n.rhs);
      if (!u || !v || v->beta != 0.0 || v->alpha == 0.0) return std::nullopt;
      return AffineForm{u->alpha / v->alpha, u->beta / v->alpha};
    }
    default: {
      // A subtree without the variable is constant whatever its operators.
      bool has_var = false;
      for (std::int32_t k = 0; k <= i && !has_var; ++k)
        has_var = nodes[static_cast<std::size_t>(k)].op == Op::Var;
      if (!has_var) {
        try {
          return AffineForm{eval_subtree(nodes, i, 0.0), 0.0};
        } catch (const Error&) {
          return std::nullopt;
        }
      }
      return std::nullopt;
    }
  }
}

// Branch key of a floor/abs node for a given argument value.
double branch_key(Op op, double u) { return op == Op::Floor ? std::floor(u) : (u < 0.0 ? -1.0 : 1.0); }

void scan_breaks(const std::vector<ExprNode>& nodes, std::int32_t arg, Op op, double lo, double hi,
                 std::vector<double>& out) {
  constexpr int kSamples = 1024;
  auto key_at = [&](double s, bool& ok) {
    try {
      ok = true;
      return branch_key(op, eval_subtree(nodes, arg, s));
    } catch (const Error&) {
      ok = false;
      return 0.0;
    }
  };
  bool ok_prev = false;
  double x_prev = lo;
  double k_prev = key_at(lo, ok_prev);
  for (int j = 1; j <= kSamples; ++j) {
    const double x = j == kSamples ? hi : lo + (hi - lo) * j / kSamples;
    bool ok = false;
    const double k = key_at(x, ok);
    if (ok && ok_prev && k != k_prev) {
      double l = x_prev;
      double r = x;
      for (int it = 0; it < 200 && r - l > 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::fabs(r)); ++it) {
        const double m = 0.5 * (l + r);
        bool okm = false;
        const double km = key_at(m, okm);
        if (!okm) break;
        if (km == k_prev)
          l = m;
        else
          r = m;
      }
      out.push_back(r);
    }
    ok_prev = ok;
    k_prev = k;
    x_prev = x;
  }
}

}  // namespace

Expr::Expr() : Expr(std::vector<ExprNode>{{Op::Num, 0.0, -1, -1}}) {}

Expr::Expr(std::vector<ExprNode> nodes)
    : nodes_(std::make_shared<const std::vector<ExprNode>>(std::move(nodes))) {
  if (nodes_->empty()) throw Error(ErrorKind::SyntaxError, "empty expression");
}

Expr Expr::constant(double c) { return Expr(std::vector<ExprNode>{{Op::Num, c, -1, -1}}); }
Expr Expr::variable() { return Expr(std::vector<ExprNode>{{Op::Var, 0.0, -1, -1}}); }

double Expr::eval(double s) const {
  const auto& nodes = *nodes_;
  const std::size_t n = nodes.size();
  std::array<double, 64> small{};
  std::vector<double> large;
  double* v = small.data();
  if (n > small.size()) {
    large.resize(n);
    v = large.data();
  }
  for (std::size_t i = 0; i < n; ++i) {
    const ExprNode& node = nodes[i];
    switch (node.op) {
      case Op::Num: v[i] = node.value; break;
      case Op::Var: v[i] = s; break;
      case Op::Add: v[i] = v[node.lhs] + v[node.rhs]; break;
      case Op::Sub: v[i] = v[node.lhs] - v[node.rhs]; break;
      case Op::Mul: v[i] = v[node.lhs] * v[node.rhs]; break;
      default:
        v[i] = apply(node.op, v[node.lhs], node.rhs >= 0 ? v[node.rhs] : 0.0, s);
        break;
    }
  }
  return v[n - 1];
}

ValDer Expr::eval_vd(double s) const {
  const auto& nodes = *nodes_;
  const std::size_t n = nodes.size();
  std::array<Dual, 64> small{};
  std::vector<Dual> large;
  Dual* v = small.data();
  if (n > small.size()) {
    large.resize(n);
    v = large.data();
  }
  for (std::size_t i = 0; i < n; ++i) {
    const ExprNode& node = nodes[i];
    const Dual u = node.lhs >= 0 ? v[node.lhs] : Dual{};
    const Dual w = node.rhs >= 0 ? v[node.rhs] : Dual{};
    Dual r;
    r.smooth = u.smooth && w.smooth;
    switch (node.op) {
      case Op::Num: r = {node.value, 0.0, true}; break;
      case Op::Var: r = {s, 1.0, true}; break;
      case Op::Add: r.v = u.v + w.v; r.d = u.d + w.d; break;
      case Op::Sub: r.v = u.v - w.v; r.d = u.d - w.d; break;
      case Op::Mul: r.v = u.v * w.v; r.d = u.d * w.v + u.v * w.d; break;
      case Op::Div:
        r.v = apply(Op::Div, u.v, w.v, s);
        r.d = (u.d * w.v - u.v * w.d) / (w.v * w.v);
        break;
      case Op::Pow: {
        r.v = apply(Op::Pow, u.v, w.v, s);
        double d = u.d == 0.0 ? 0.0 : w.v * std::pow(u.v, w.v - 1.0) * u.d;
        if (w.d != 0.0) {
          if (!(u.v > 0.0)) domain_error("power with variable exponent needs a positive base", s);
          d += r.v * std::log(u.v) * w.d;
        }
        r.d = d;
        break;
      }
      case Op::Neg: r.v = -u.v; r.d = -u.d; break;
      case Op::Sin: r.v = std::sin(u.v); r.d = std::cos(u.v) * u.d; break;
      case Op::Cos: r.v = std::cos(u.v); r.d = -std::sin(u.v) * u.d; break;
      case Op::Exp: r.v = apply(Op::Exp, u.v, 0.0, s); r.d = r.v * u.d; break;
      case Op::Log: r.v = apply(Op::Log, u.v, 0.0, s); r.d = u.d / u.v; break;
      case Op::Sqrt:
        r.v = apply(Op::Sqrt, u.v, 0.0, s);
        r.d = u.d == 0.0 ? 0.0 : u.d / (2.0 * r.v);
        break;
      case Op::Floor:
        r.v = std::floor(u.v);
        r.d = 0.0;
        r.smooth = r.smooth && r.v != u.v;
        break;
      case Op::Abs:
        r.v = std::fabs(u.v);
        r.d = u.v > 0.0 ? u.d : (u.v < 0.0 ? -u.d : 0.0);
        r.smooth = r.smooth && u.v != 0.0;
        break;
    }
    if (!std::isfinite(r.d)) r.smooth = false;
    v[i] = r;
  }
  const Dual& out = v[n - 1];
  return {out.v, out.d, out.smooth};
}

std::vector<double> Expr::breaks(double lo, double hi) const {
  std::vector<double> out;
  if (!(hi >= lo)) return out;
  const auto& nodes = *nodes_;
  constexpr double kMaxBreaks = 1e6;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const ExprNode& n = nodes[i];
    if (n.op != Op::Floor && n.op != Op::Abs) continue;
    if (auto aff = affine_of(nodes, n.lhs)) {
      if (aff->beta == 0.0) continue;
      if (n.op == Op::Abs) {
        const double root = -aff->alpha / aff->beta;
        if (root >= lo && root <= hi) out.push_back(root);
        continue;
      }
      const double u0 = aff->alpha + aff->beta * lo;
      const double u1 = aff->alpha + aff->beta * hi;
      const double k0 = std::ceil(std::min(u0, u1));
      const double k1 = std::floor(std::max(u0, u1));
      if (k1 - k0 > kMaxBreaks)
        throw Error(ErrorKind::DomainError, "too many floor breaks in integration window");
      for (double k = k0; k <= k1; k += 1.0) {
        const double root = (k - aff->alpha) / aff->beta;
        if (root >= lo && root <= hi) out.push_back(root);
      }
    } else if (hi > lo) {
      scan_breaks(nodes, n.lhs, n.op, lo, hi, out);
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool Expr::depends_on_variable() const {
  return std::any_of(nodes_->begin(), nodes_->end(), [](const ExprNode& n) { return n.op == Op::Var; });
}

bool Expr::has_breaks() const {
  return std::any_of(nodes_->begin(), nodes_->end(),
                     [](const ExprNode& n) { return n.op == Op::Floor || n.op == Op::Abs; });
}

std::optional<AffineForm> Expr::affine() const {
  return affine_of(*nodes_, static_cast<std::int32_t>(nodes_->size() - 1));
}

std::string Expr::to_string() const {
  std::string out;
  print_node(*nodes_, static_cast<std::int32_t>(nodes_->size() - 1), out);
  return out;
}

bool operator==(const Expr& x, const Expr& y) {
  return equal_subtrees(*x.nodes_, static_cast<std::int32_t>(x.nodes_->size() - 1), *y.nodes_,
                        static_cast<std::int32_t>(y.nodes_->size() - 1));
}

Expr parse_expr(std::string_view text) {
  Reader reader(text);
  std::vector<ExprNode> nodes;
  reader.expression(nodes);
  if (!reader.at_end()) {
    const auto& tok = reader.peek();
    if (tok.kind == Tok::RParen)
      reader.fail(tok, {"operator", "end of input"}, "unbalanced ')'");
    reader.fail(tok, {"operator", "end of input"}, "");
  }
  return Expr(std::move(nodes));
}

double parse_constant(std::string_view text) {
  Reader reader(text);
  const double v = detail::read_constant(reader);
  if (!reader.at_end()) reader.fail(reader.peek(), {"end of input"}, "");
  return v;
}

}  // namespace tscale
