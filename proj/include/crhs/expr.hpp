#pragma once

#include <array>
#include <complex>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "crhs/errors.hpp"

namespace crhs {

using cplx = std::complex<double>;

// Polarized coordinates. zc_k stands for conj(z_k) and wc for conj(w).
enum class Var : int { z1 = 0, z2 = 1, w = 2, zc1 = 3, zc2 = 4, wc = 5 };
inline constexpr int kNumVars = 6;

const char* var_name(Var v);
Var conj_var(Var v);
inline bool is_conjugate(Var v) { return static_cast<int>(v) >= 3; }

enum class Op { Const, Var, Add, Sub, Mul, Div, Neg, Pow, Exp, Log, Sin, Cos, Atan };

struct Node;

// Immutable expression handle. Copies share the tree.
class Expr {
 public:
  Expr();
  Expr(double c);  // NOLINT(google-explicit-constructor)
  Expr(cplx c);    // NOLINT(google-explicit-constructor)
  static Expr variable(Var v);

  const Node& node() const;
  Op op() const;
  bool is_const() const { return op() == Op::Const; }
  bool is_const(cplx c) const;
  cplx const_value() const;

 private:
  explicit Expr(std::shared_ptr<const Node> p) : p_(std::move(p)) {}
  std::shared_ptr<const Node> p_;
  friend Expr make_node(Node n);
};

struct Node {
  Op op = Op::Const;
  cplx value{0.0, 0.0};
  Var var = Var::z1;
  double exponent = 0.0;
  Expr a;
  Expr b;
};

Expr operator+(const Expr& a, const Expr& b);
Expr operator-(const Expr& a, const Expr& b);
Expr operator*(const Expr& a, const Expr& b);
Expr operator/(const Expr& a, const Expr& b);
Expr operator-(const Expr& a);
Expr pow(const Expr& base, double exponent);
Expr exp(const Expr& a);
Expr log(const Expr& a);
Expr sin(const Expr& a);
Expr cos(const Expr& a);
Expr atan(const Expr& a);

// Structural conjugation: z_k <-> zc_k, w <-> wc, constants conjugated.
Expr conj(const Expr& a);

// Real-coordinate sugar.
Expr real_part(const Expr& a);
Expr imag_part(const Expr& a);
Expr abs2(const Expr& a);
Expr sqrt(const Expr& a);

enum class RealCoord { x1 = 0, y1, x2, y2, u, v };
const char* real_coord_name(RealCoord c);
RealCoord real_coord_from_name(const std::string& name);  // accepts x3 for u
Expr real_coord(RealCoord c);

// Point in polarized coordinates.
struct EvalPoint {
  std::array<cplx, kNumVars> v{};

  static EvalPoint real_locus(cplx z1, cplx z2, cplx w);
  static EvalPoint real_locus(const std::array<cplx, 3>& z);
  static EvalPoint polarized(const std::array<cplx, kNumVars>& vals);

  cplx operator[](Var x) const { return v[static_cast<int>(x)]; }
  std::array<cplx, 3> holo() const { return {v[0], v[1], v[2]}; }
  bool on_real_locus(double tol = 1e-14) const;
  double real_coord(RealCoord c) const;
  EvalPoint with_real_coord(RealCoord c, double value) const;
};

// Parameter bindings resolved at parse time.
using ParamMap = std::map<std::string, cplx>;

Expr parse(const std::string& text, const ParamMap& params = {});

// Throws EvalError on branch violation, division by zero, singular atan.
cplx eval(const Expr& e, const EvalPoint& p);

Expr compose(const Expr& outer, const std::map<Var, Expr>& substitution);

bool uses_var(const Expr& e, Var v);
bool uses_conjugates(const Expr& e);
bool structurally_equal(const Expr& a, const Expr& b);

// Constructor-style dump, e.g. Add(Mul(z1, zc2), Mul(z2, zc1)).
std::string to_string(const Expr& e);
// Infix form accepted by parse().
std::string to_infix(const Expr& e);
std::string format_complex(cplx c);

bool is_integer(double x);

}  // namespace crhs
