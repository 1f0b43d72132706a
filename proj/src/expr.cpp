#include "crhs/expr.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <unordered_map>

namespace crhs {

Expr make_node(Node n);

namespace {

const Node& zero_node() {
  static const Node n;
  return n;
}

bool try_eval_const(const Expr& e, cplx& out) {
  try {
    out = eval(e, EvalPoint{});
    return true;
  } catch (const EvalError&) {
    return false;
  }
}

Expr unary(Op op, const Expr& a) {
  Node n;
  n.op = op;
  n.a = a;
  Expr e = make_node(n);
  cplx c;
  if (a.is_const() && try_eval_const(e, c)) return Expr(c);
  return e;
}

}  // namespace

Expr make_node(Node n) { return Expr(std::make_shared<const Node>(std::move(n))); }

Expr::Expr() = default;

const Node& Expr::node() const { return p_ ? *p_ : zero_node(); }
Expr::Expr(double c) : Expr(cplx(c, 0.0)) {}
Expr::Expr(cplx c) {
  auto n = std::make_shared<Node>();
  n->op = Op::Const;
  n->value = c;
  p_ = n;
}

Expr Expr::variable(Var v) {
  Node n;
  n.op = Op::Var;
  n.var = v;
  return make_node(n);
}

Op Expr::op() const { return node().op; }
bool Expr::is_const(cplx c) const { return is_const() && node().value == c; }
cplx Expr::const_value() const { return node().value; }

const char* var_name(Var v) {
  static const char* names[] = {"z1", "z2", "w", "zc1", "zc2", "wc"};
  return names[static_cast<int>(v)];
}

Var conj_var(Var v) { return static_cast<Var>((static_cast<int>(v) + 3) % 6); }

Expr operator+(const Expr& a, const Expr& b) {
  if (a.is_const() && b.is_const()) return Expr(a.const_value() + b.const_value());
  if (a.is_const(0.0)) return b;
  if (b.is_const(0.0)) return a;
  Node n;
  n.op = Op::Add;
  n.a = a;
  n.b = b;
  return make_node(n);
}

Expr operator-(const Expr& a, const Expr& b) {
  if (a.is_const() && b.is_const()) return Expr(a.const_value() - b.const_value());
  if (b.is_const(0.0)) return a;
  if (a.is_const(0.0)) return -b;
  Node n;
  n.op = Op::Sub;
  n.a = a;
  n.b = b;
  return make_node(n);
}

Expr operator*(const Expr& a, const Expr& b) {
  if (a.is_const() && b.is_const()) return Expr(a.const_value() * b.const_value());
  if (a.is_const(0.0) || b.is_const(0.0)) return Expr(0.0);
  if (a.is_const(1.0)) return b;
  if (b.is_const(1.0)) return a;
  Node n;
  n.op = Op::Mul;
  n.a = a;
  n.b = b;
  return make_node(n);
}

Expr operator/(const Expr& a, const Expr& b) {
  if (a.is_const() && b.is_const() && b.const_value() != cplx(0.0))
    return Expr(a.const_value() / b.const_value());
  if (b.is_const(1.0)) return a;
  Node n;
  n.op = Op::Div;
  n.a = a;
  n.b = b;
  return make_node(n);
}

Expr operator-(const Expr& a) {
  if (a.is_const()) return Expr(-a.const_value());
  if (a.op() == Op::Neg) return a.node().a;
  Node n;
  n.op = Op::Neg;
  n.a = a;
  return make_node(n);
}

Expr pow(const Expr& base, double exponent) {
  if (exponent == 0.0) return Expr(1.0);
  if (exponent == 1.0) return base;
  Node n;
  n.op = Op::Pow;
  n.a = base;
  n.exponent = exponent;
  Expr e = make_node(n);
  cplx c;
  if (base.is_const() && try_eval_const(e, c)) return Expr(c);
  return e;
}

Expr exp(const Expr& a) { return unary(Op::Exp, a); }
Expr log(const Expr& a) { return unary(Op::Log, a); }
Expr sin(const Expr& a) { return unary(Op::Sin, a); }
Expr cos(const Expr& a) { return unary(Op::Cos, a); }
Expr atan(const Expr& a) { return unary(Op::Atan, a); }

Expr conj(const Expr& e) {
  const Node& n = e.node();
  switch (n.op) {
    case Op::Const: return Expr(std::conj(n.value));
    case Op::Var: return Expr::variable(conj_var(n.var));
    case Op::Add: return conj(n.a) + conj(n.b);
    case Op::Sub: return conj(n.a) - conj(n.b);
    case Op::Mul: return conj(n.a) * conj(n.b);
    case Op::Div: return conj(n.a) / conj(n.b);
    case Op::Neg: return -conj(n.a);
    case Op::Pow: return pow(conj(n.a), n.exponent);
    case Op::Exp: return exp(conj(n.a));
    case Op::Log: return log(conj(n.a));
    case Op::Sin: return sin(conj(n.a));
    case Op::Cos: return cos(conj(n.a));
    case Op::Atan: return atan(conj(n.a));
  }
  return e;
}

Expr real_part(const Expr& a) { return (a + conj(a)) * Expr(0.5); }
Expr imag_part(const Expr& a) { return (a - conj(a)) * Expr(cplx(0.0, -0.5)); }
Expr abs2(const Expr& a) { return a * conj(a); }
Expr sqrt(const Expr& a) { return pow(a, 0.5); }

const char* real_coord_name(RealCoord c) {
  static const char* names[] = {"x1", "y1", "x2", "y2", "u", "v"};
  return names[static_cast<int>(c)];
}

RealCoord real_coord_from_name(const std::string& s) {
  if (s == "x1") return RealCoord::x1;
  if (s == "y1") return RealCoord::y1;
  if (s == "x2") return RealCoord::x2;
  if (s == "y2") return RealCoord::y2;
  if (s == "u" || s == "x3") return RealCoord::u;
  if (s == "v" || s == "y3") return RealCoord::v;
  throw UsageError("unknown real coordinate '" + s + "'");
}

Expr real_coord(RealCoord c) {
  int k = static_cast<int>(c) / 2;
  Expr z = Expr::variable(static_cast<Var>(k));
  return static_cast<int>(c) % 2 == 0 ? real_part(z) : imag_part(z);
}

EvalPoint EvalPoint::real_locus(cplx z1, cplx z2, cplx w) {
  EvalPoint p;
  p.v = {z1, z2, w, std::conj(z1), std::conj(z2), std::conj(w)};
  return p;
}

EvalPoint EvalPoint::real_locus(const std::array<cplx, 3>& z) { return real_locus(z[0], z[1], z[2]); }

EvalPoint EvalPoint::polarized(const std::array<cplx, kNumVars>& vals) {
  EvalPoint p;
  p.v = vals;
  return p;
}

bool EvalPoint::on_real_locus(double tol) const {
  for (int k = 0; k < 3; ++k)
    if (std::abs(v[k + 3] - std::conj(v[k])) > tol * (1.0 + std::abs(v[k]))) return false;
  return true;
}

double EvalPoint::real_coord(RealCoord c) const {
  int k = static_cast<int>(c) / 2;
  cplx z = v[k], zc = v[k + 3];
  return static_cast<int>(c) % 2 == 0 ? (0.5 * (z + zc)).real() : ((z - zc) * cplx(0.0, -0.5)).real();
}

EvalPoint EvalPoint::with_real_coord(RealCoord c, double value) const {
  int k = static_cast<int>(c) / 2;
  cplx z = v[k];
  z = static_cast<int>(c) % 2 == 0 ? cplx(value, z.imag()) : cplx(z.real(), value);
  EvalPoint p = *this;
  p.v[k] = z;
  p.v[k + 3] = std::conj(z);
  return p;
}

bool is_integer(double x) { return std::isfinite(x) && std::floor(x) == x && std::abs(x) < 1e9; }

namespace {

cplx int_pow(cplx b, long n) {
  if (n < 0) {
    if (b == cplx(0.0)) throw EvalError(EvalError::Kind::DivisionByZero, "division by zero in negative power");
    return 1.0 / int_pow(b, -n);
  }
  cplx r = 1.0;
  while (n) {
    if (n & 1) r *= b;
    b *= b;
    n >>= 1;
  }
  return r;
}

cplx eval_rec(const Node& n, const EvalPoint& p) {
  switch (n.op) {
    case Op::Const: return n.value;
    case Op::Var: return p[n.var];
    case Op::Add: return eval_rec(n.a.node(), p) + eval_rec(n.b.node(), p);
    case Op::Sub: return eval_rec(n.a.node(), p) - eval_rec(n.b.node(), p);
    case Op::Mul: return eval_rec(n.a.node(), p) * eval_rec(n.b.node(), p);
    case Op::Div: {
      cplx d = eval_rec(n.b.node(), p);
      if (d == cplx(0.0)) throw EvalError(EvalError::Kind::DivisionByZero, "division by zero");
      return eval_rec(n.a.node(), p) / d;
    }
    case Op::Neg: return -eval_rec(n.a.node(), p);
    case Op::Pow: {
      cplx b = eval_rec(n.a.node(), p);
      if (is_integer(n.exponent)) return int_pow(b, static_cast<long>(n.exponent));
      if (!(b.real() > 0.0))
        throw EvalError(EvalError::Kind::Branch, "non-integer power of a base outside Re > 0");
      return std::pow(b, n.exponent);
    }
    case Op::Exp: return std::exp(eval_rec(n.a.node(), p));
    case Op::Log: {
      cplx a = eval_rec(n.a.node(), p);
      if (!(a.real() > 0.0)) throw EvalError(EvalError::Kind::Branch, "log of an argument outside Re > 0");
      return std::log(a);
    }
    case Op::Sin: return std::sin(eval_rec(n.a.node(), p));
    case Op::Cos: return std::cos(eval_rec(n.a.node(), p));
    case Op::Atan: {
      cplx a = eval_rec(n.a.node(), p);
      if (1.0 + a * a == cplx(0.0)) throw EvalError(EvalError::Kind::Singular, "atan at +-i");
      return std::atan(a);
    }
  }
  return 0.0;
}

}  // namespace

cplx eval(const Expr& e, const EvalPoint& p) { return eval_rec(e.node(), p); }

Expr compose(const Expr& outer, const std::map<Var, Expr>& substitution) {
  std::map<Var, Expr> full = substitution;
  for (const auto& [v, ex] : substitution)
    if (!is_conjugate(v) && !full.count(conj_var(v))) full[conj_var(v)] = conj(ex);
  std::unordered_map<const Node*, Expr> memo;
  std::function<Expr(const Expr&)> rec = [&](const Expr& e) -> Expr {
    const Node& n = e.node();
    auto it = memo.find(&n);
    if (it != memo.end()) return it->second;
    Expr r;
    switch (n.op) {
      case Op::Const: r = e; break;
      case Op::Var: {
        auto s = full.find(n.var);
        r = s == full.end() ? e : s->second;
        break;
      }
      case Op::Add: r = rec(n.a) + rec(n.b); break;
      case Op::Sub: r = rec(n.a) - rec(n.b); break;
      case Op::Mul: r = rec(n.a) * rec(n.b); break;
      case Op::Div: r = rec(n.a) / rec(n.b); break;
      case Op::Neg: r = -rec(n.a); break;
      case Op::Pow: r = pow(rec(n.a), n.exponent); break;
      case Op::Exp: r = exp(rec(n.a)); break;
      case Op::Log: r = log(rec(n.a)); break;
      case Op::Sin: r = sin(rec(n.a)); break;
      case Op::Cos: r = cos(rec(n.a)); break;
      case Op::Atan: r = atan(rec(n.a)); break;
    }
    memo.emplace(&n, r);
    return r;
  };
  return rec(outer);
}

bool uses_var(const Expr& e, Var v) {
  const Node& n = e.node();
  switch (n.op) {
    case Op::Const: return false;
    case Op::Var: return n.var == v;
    case Op::Add:
    case Op::Sub:
    case Op::Mul:
    case Op::Div: return uses_var(n.a, v) || uses_var(n.b, v);
    default: return uses_var(n.a, v);
  }
}

bool uses_conjugates(const Expr& e) {
  return uses_var(e, Var::zc1) || uses_var(e, Var::zc2) || uses_var(e, Var::wc);
}

bool structurally_equal(const Expr& a, const Expr& b) {
  const Node& x = a.node();
  const Node& y = b.node();
  if (&x == &y) return true;
  if (x.op != y.op) return false;
  switch (x.op) {
    case Op::Const: return x.value == y.value;
    case Op::Var: return x.var == y.var;
    case Op::Add:
    case Op::Sub:
    case Op::Mul:
    case Op::Div: return structurally_equal(x.a, y.a) && structurally_equal(x.b, y.b);
    case Op::Pow: return x.exponent == y.exponent && structurally_equal(x.a, y.a);
    default: return structurally_equal(x.a, y.a);
  }
}

namespace {

std::string fmt_real(double x) {
  char buf[40];
  for (int prec = 15; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof buf, "%.*g", prec, x);
    if (std::strtod(buf, nullptr) == x) break;
  }
  return buf;
}

const char* op_name(Op op) {
  switch (op) {
    case Op::Add: return "Add";
    case Op::Sub: return "Sub";
    case Op::Mul: return "Mul";
    case Op::Div: return "Div";
    case Op::Neg: return "Neg";
    case Op::Pow: return "Pow";
    case Op::Exp: return "Exp";
    case Op::Log: return "Log";
    case Op::Sin: return "Sin";
    case Op::Cos: return "Cos";
    case Op::Atan: return "Atan";
    default: return "?";
  }
}

const char* func_name(Op op) {
  switch (op) {
    case Op::Exp: return "exp";
    case Op::Log: return "log";
    case Op::Sin: return "sin";
    case Op::Cos: return "cos";
    case Op::Atan: return "atan";
    default: return "?";
  }
}

}  // namespace

std::string format_complex(cplx c) {
  if (c.imag() == 0.0) return fmt_real(c.real());
  if (c.real() == 0.0) return fmt_real(c.imag()) + "i";
  return "(" + fmt_real(c.real()) + (c.imag() < 0 ? "-" : "+") + fmt_real(std::abs(c.imag())) + "i)";
}

std::string to_string(const Expr& e) {
  const Node& n = e.node();
  switch (n.op) {
    case Op::Const: return format_complex(n.value);
    case Op::Var: return var_name(n.var);
    case Op::Add:
    case Op::Sub:
    case Op::Mul:
    case Op::Div: return std::string(op_name(n.op)) + "(" + to_string(n.a) + ", " + to_string(n.b) + ")";
    case Op::Pow: return "Pow(" + to_string(n.a) + ", " + fmt_real(n.exponent) + ")";
    default: return std::string(op_name(n.op)) + "(" + to_string(n.a) + ")";
  }
}

std::string to_infix(const Expr& e) {
  const Node& n = e.node();
  switch (n.op) {
    case Op::Const: {
      cplx c = n.value;
      if (c.imag() == 0.0) return c.real() < 0 ? "(" + fmt_real(c.real()) + ")" : fmt_real(c.real());
      return "(" + fmt_real(c.real()) + "+(" + fmt_real(c.imag()) + ")*i)";
    }
    case Op::Var: return var_name(n.var);
    case Op::Add: return "(" + to_infix(n.a) + " + " + to_infix(n.b) + ")";
    case Op::Sub: return "(" + to_infix(n.a) + " - " + to_infix(n.b) + ")";
    case Op::Mul: return "(" + to_infix(n.a) + "*" + to_infix(n.b) + ")";
    case Op::Div: return "(" + to_infix(n.a) + "/" + to_infix(n.b) + ")";
    case Op::Neg: return "(-" + to_infix(n.a) + ")";
    case Op::Pow: return "(" + to_infix(n.a) + ")^" + fmt_real(n.exponent);
    default: return std::string(func_name(n.op)) + "(" + to_infix(n.a) + ")";
  }
}

}  // namespace crhs
