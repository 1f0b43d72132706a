#include <cctype>
#include <cmath>
#include <cstdlib>
#include <numbers>

#include "crhs/expr.hpp"

namespace crhs {

namespace {

class Parser {
 public:
  Parser(const std::string& text, const ParamMap& params) : s_(text), params_(params) {}

  Expr run() {
    Expr e = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected character '" + std::string(1, s_[pos_]) + "'");
    return e;
  }

 private:
  const std::string& s_;
  const ParamMap& params_;
  std::size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& msg) const { throw ParseError("syntax error: " + msg, pos_); }
  [[noreturn]] void fail_at(const std::string& msg, std::size_t at) const { throw ParseError(msg, at); }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  Expr expr() {
    Expr e = term();
    for (;;) {
      if (accept('+')) e = e + term();
      else if (accept('-')) e = e - term();
      else return e;
    }
  }

  Expr term() {
    Expr e = factor();
    for (;;) {
      if (accept('*')) e = e * factor();
      else if (accept('/')) e = e / factor();
      else return e;
    }
  }

  Expr factor() {
    if (accept('-')) return -factor();
    Expr base = atom();
    if (accept('^')) return pow(base, exponent());
    return base;
  }

  double exponent() {
    skip();
    std::size_t at = pos_;
    double sign = 1.0;
    if (accept('-')) sign = -1.0;
    else accept('+');
    skip();
    Expr e;
    if (pos_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '.')) {
      e = Expr(number());
    } else if (pos_ < s_.size() && (std::isalpha(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) {
      std::size_t id_at = pos_;
      std::string id = ident();
      auto it = params_.find(id);
      if (it == params_.end()) fail_at("exponent must be a real constant or parameter, got '" + id + "'", id_at);
      e = Expr(it->second);
    } else if (accept('(')) {
      e = expr();
      expect(')');
    } else {
      fail("expected real exponent");
    }
    if (!e.is_const() || e.const_value().imag() != 0.0) fail_at("exponent must be a real constant", at);
    return sign * e.const_value().real();
  }

  double number() {
    const char* begin = s_.c_str() + pos_;
    char* end = nullptr;
    double x = std::strtod(begin, &end);
    if (end == begin) fail("expected number");
    pos_ += static_cast<std::size_t>(end - begin);
    return x;
  }

  std::string ident() {
    std::size_t b = pos_;
    while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
    return s_.substr(b, pos_ - b);
  }

  Expr atom() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    char c = s_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return Expr(number());
    if (c == '(') {
      ++pos_;
      Expr e = expr();
      expect(')');
      return e;
    }
    if (!(std::isalpha(static_cast<unsigned char>(c)) || c == '_')) fail(std::string("unexpected character '") + c + "'");
    std::size_t at = pos_;
    std::string id = ident();
    skip();
    bool call = pos_ < s_.size() && s_[pos_] == '(';
    if (call) {
      static const char* funcs[] = {"exp", "log", "sin", "cos", "atan", "conj", "Re", "Im", "abs2", "sqrt"};
      bool known = false;
      for (const char* f : funcs) known = known || id == f;
      if (!known) fail_at("unknown function '" + id + "'", at);
      ++pos_;
      Expr a = expr();
      expect(')');
      if (id == "exp") return exp(a);
      if (id == "log") return log(a);
      if (id == "sin") return sin(a);
      if (id == "cos") return cos(a);
      if (id == "atan") return atan(a);
      if (id == "conj") return conj(a);
      if (id == "Re") return real_part(a);
      if (id == "Im") return imag_part(a);
      if (id == "abs2") return abs2(a);
      return sqrt(a);
    }
    if (id == "i") return Expr(cplx(0.0, 1.0));
    if (id == "pi") return Expr(std::numbers::pi);
    if (id == "z1") return Expr::variable(Var::z1);
    if (id == "z2") return Expr::variable(Var::z2);
    if (id == "w" || id == "z3") return Expr::variable(Var::w);
    if (id == "zc1") return Expr::variable(Var::zc1);
    if (id == "zc2") return Expr::variable(Var::zc2);
    if (id == "wc" || id == "zc3") return Expr::variable(Var::wc);
    static const char* reals[] = {"x1", "y1", "x2", "y2", "u", "v", "x3", "y3"};
    for (const char* r : reals)
      if (id == r) return real_coord(real_coord_from_name(id));
    auto it = params_.find(id);
    if (it != params_.end()) return Expr(it->second);
    fail_at("unknown identifier '" + id + "'", at);
  }
};

}  // namespace

Expr parse(const std::string& text, const ParamMap& params) { return Parser(text, params).run(); }

}  // namespace crhs
