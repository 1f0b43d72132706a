#include "crhs/series.hpp"

#include <cmath>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <unordered_map>

namespace crhs {

namespace {

void enumerate(int nvars, int remaining, int var, MultiIndex& cur, std::vector<MultiIndex>& out) {
  if (var == nvars - 1) {
    cur[var] = remaining;
    out.push_back(cur);
    cur[var] = 0;
    return;
  }
  for (int k = remaining; k >= 0; --k) {
    cur[var] = k;
    enumerate(nvars, remaining - k, var + 1, cur, out);
  }
  cur[var] = 0;
}

}  // namespace

SeriesLayout::SeriesLayout(int nvars, int degree) : nvars_(nvars), degree_(degree) {
  for (int d = 0; d <= degree; ++d) {
    starts_.push_back(monos_.size());
    MultiIndex cur{};
    if (nvars == 0) {
      if (d == 0) monos_.push_back(cur);
    } else {
      enumerate(nvars, d, 0, cur, monos_);
    }
    while (degs_.size() < monos_.size()) degs_.push_back(d);
  }
  starts_.push_back(monos_.size());
  std::size_t dense_size = 1;
  for (int k = 0; k < nvars; ++k) dense_size *= static_cast<std::size_t>(degree + 1);
  dense_.assign(dense_size, -1);
  for (std::size_t k = 0; k < monos_.size(); ++k) {
    std::size_t key = 0, mul = 1;
    for (int j = 0; j < nvars; ++j) {
      key += static_cast<std::size_t>(monos_[k][j]) * mul;
      mul *= static_cast<std::size_t>(degree + 1);
    }
    dense_[key] = static_cast<int>(k);
  }
  for (std::size_t a = 0; a < monos_.size(); ++a) {
    std::size_t bend = starts_[static_cast<std::size_t>(degree - degs_[a] + 1)];
    for (std::size_t b = 0; b < bend; ++b) {
      MultiIndex m{};
      for (int j = 0; j < nvars; ++j) m[j] = monos_[a][j] + monos_[b][j];
      products_.push_back({static_cast<int>(a), static_cast<int>(b), static_cast<int>(index(m))});
    }
  }
}

const SeriesLayout& SeriesLayout::get(int nvars, int degree) {
  if (nvars < 0 || nvars > kMaxSeriesVars) throw UsageError("series supports at most 6 variables");
  if (degree < 0 || degree > kMaxSeriesDegree) throw UsageError("series degree must be in [0, 8]");
  static std::mutex mu;
  static std::map<std::pair<int, int>, std::unique_ptr<SeriesLayout>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[{nvars, degree}];
  if (!slot) slot.reset(new SeriesLayout(nvars, degree));
  return *slot;
}

long SeriesLayout::index(const MultiIndex& m) const {
  std::size_t key = 0, mul = 1;
  int total = 0;
  for (int j = 0; j < kMaxSeriesVars; ++j) {
    if (m[j] < 0) return -1;
    if (j >= nvars_) {
      if (m[j] != 0) return -1;
      continue;
    }
    total += m[j];
    key += static_cast<std::size_t>(m[j]) * mul;
    mul *= static_cast<std::size_t>(degree_ + 1);
  }
  if (total > degree_) return -1;
  return dense_[key];
}

TruncatedSeries::TruncatedSeries(int nvars, int degree)
    : layout_(&SeriesLayout::get(nvars, degree)), c_(layout_->size(), cplx(0.0)) {}

TruncatedSeries TruncatedSeries::constant(int nvars, int degree, cplx c) {
  TruncatedSeries s(nvars, degree);
  s.c_[0] = c;
  return s;
}

TruncatedSeries TruncatedSeries::variable(int nvars, int degree, int k, cplx center) {
  TruncatedSeries s = constant(nvars, degree, center);
  if (degree >= 1) {
    MultiIndex m{};
    m[k] = 1;
    s.set_coeff(m, 1.0);
  }
  return s;
}

cplx TruncatedSeries::coeff(const MultiIndex& m) const {
  long k = layout_->index(m);
  return k < 0 ? cplx(0.0) : c_[static_cast<std::size_t>(k)];
}

void TruncatedSeries::set_coeff(const MultiIndex& m, cplx value) {
  long k = layout_->index(m);
  if (k < 0) throw UsageError("multi-index outside series layout");
  c_[static_cast<std::size_t>(k)] = value;
}

TruncatedSeries& TruncatedSeries::operator+=(const TruncatedSeries& o) {
  if (layout_ != o.layout_) throw UsageError("series layout mismatch");
  for (std::size_t k = 0; k < c_.size(); ++k) c_[k] += o.c_[k];
  return *this;
}

TruncatedSeries& TruncatedSeries::operator-=(const TruncatedSeries& o) {
  if (layout_ != o.layout_) throw UsageError("series layout mismatch");
  for (std::size_t k = 0; k < c_.size(); ++k) c_[k] -= o.c_[k];
  return *this;
}

TruncatedSeries& TruncatedSeries::operator*=(cplx s) {
  for (auto& x : c_) x *= s;
  return *this;
}

TruncatedSeries TruncatedSeries::derivative(int k) const {
  int d = degree() > 0 ? degree() - 1 : 0;
  TruncatedSeries r(nvars(), d);
  if (degree() == 0) return r;
  for (std::size_t i = 0; i < r.layout_->size(); ++i) {
    MultiIndex m = r.layout_->mono(i);
    m[k] += 1;
    r.c_[i] = static_cast<double>(m[k]) * coeff(m);
  }
  r.center_ = center_;
  return r;
}

TruncatedSeries TruncatedSeries::truncated(int d) const {
  if (d > degree()) throw UsageError("cannot truncate to a higher degree");
  return with_degree(d);
}

TruncatedSeries TruncatedSeries::with_degree(int d) const {
  TruncatedSeries r(nvars(), d);
  for (std::size_t i = 0; i < r.layout_->size(); ++i) r.c_[i] = coeff(r.layout_->mono(i));
  r.center_ = center_;
  return r;
}

cplx TruncatedSeries::evaluate(const std::vector<cplx>& d) const {
  cplx sum = 0.0;
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == cplx(0.0)) continue;
    cplx t = c_[i];
    const MultiIndex& m = layout_->mono(i);
    for (int j = 0; j < nvars(); ++j)
      for (int e = 0; e < m[j]; ++e) t *= d[static_cast<std::size_t>(j)];
    sum += t;
  }
  return sum;
}

double TruncatedSeries::max_abs_diff(const TruncatedSeries& o) const {
  double m = 0.0;
  for (std::size_t i = 0; i < c_.size(); ++i) m = std::max(m, std::abs(c_[i] - o.coeff(layout_->mono(i))));
  for (std::size_t i = 0; i < o.c_.size(); ++i)
    if (layout_->index(o.layout_->mono(i)) < 0) m = std::max(m, std::abs(o.c_[i]));
  return m;
}

TruncatedSeries operator+(TruncatedSeries a, const TruncatedSeries& b) { return a += b; }
TruncatedSeries operator-(TruncatedSeries a, const TruncatedSeries& b) { return a -= b; }
TruncatedSeries operator-(const TruncatedSeries& a) { return cplx(-1.0) * a; }
TruncatedSeries operator*(cplx s, TruncatedSeries a) { return a *= s; }

TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) {
  if (&a.layout() != &b.layout()) throw UsageError("series layout mismatch");
  TruncatedSeries r(a.nvars(), a.degree());
  const auto& ac = a.coeffs();
  const auto& bc = b.coeffs();
  auto& rc = r.coeffs();
  for (const auto& t : a.layout().products()) {
    const cplx& x = ac[static_cast<std::size_t>(t.a)];
    if (x == cplx(0.0)) continue;
    rc[static_cast<std::size_t>(t.c)] += x * bc[static_cast<std::size_t>(t.b)];
  }
  return r;
}

TruncatedSeries operator/(const TruncatedSeries& a, const TruncatedSeries& b) { return a * reciprocal(b); }

TruncatedSeries apply_univariate(const TruncatedSeries& s, const std::vector<cplx>& c) {
  TruncatedSeries h = s;
  h.coeffs()[0] = 0.0;
  int D = s.degree();
  auto coef = [&](int k) { return k < static_cast<int>(c.size()) ? c[static_cast<std::size_t>(k)] : cplx(0.0); };
  TruncatedSeries r = TruncatedSeries::constant(s.nvars(), D, coef(D));
  for (int k = D - 1; k >= 0; --k) {
    r = r * h;
    r.coeffs()[0] += coef(k);
  }
  return r;
}

namespace {

TruncatedSeries int_pow(const TruncatedSeries& s, long n) {
  if (n < 0) return int_pow(reciprocal(s), -n);
  TruncatedSeries r = TruncatedSeries::constant(s.nvars(), s.degree(), 1.0);
  TruncatedSeries b = s;
  while (n) {
    if (n & 1) r = r * b;
    n >>= 1;
    if (n) b = b * b;
  }
  return r;
}

}  // namespace

TruncatedSeries reciprocal(const TruncatedSeries& s) {
  cplx a = s.constant_term();
  if (a == cplx(0.0)) throw EvalError(EvalError::Kind::DivisionByZero, "division by a series with zero constant term");
  std::vector<cplx> c(static_cast<std::size_t>(s.degree() + 1));
  cplx inv = 1.0 / a, p = inv;
  for (auto& x : c) {
    x = p;
    p *= -inv;
  }
  return apply_univariate(s, c);
}

TruncatedSeries pow(const TruncatedSeries& s, double exponent) {
  if (is_integer(exponent)) return int_pow(s, static_cast<long>(exponent));
  cplx a = s.constant_term();
  if (!(a.real() > 0.0)) throw EvalError(EvalError::Kind::Branch, "non-integer power of a base outside Re > 0");
  std::vector<cplx> c(static_cast<std::size_t>(s.degree() + 1));
  cplx binom = 1.0;
  for (int k = 0; k <= s.degree(); ++k) {
    c[static_cast<std::size_t>(k)] = binom * std::pow(a, exponent - k);
    binom *= (exponent - k) / (k + 1.0);
  }
  return apply_univariate(s, c);
}

TruncatedSeries exp(const TruncatedSeries& s) {
  std::vector<cplx> c(static_cast<std::size_t>(s.degree() + 1));
  cplx v = std::exp(s.constant_term());
  for (int k = 0; k <= s.degree(); ++k) {
    c[static_cast<std::size_t>(k)] = v;
    v /= (k + 1.0);
  }
  return apply_univariate(s, c);
}

TruncatedSeries log(const TruncatedSeries& s) {
  cplx a = s.constant_term();
  if (!(a.real() > 0.0)) throw EvalError(EvalError::Kind::Branch, "log of an argument outside Re > 0");
  std::vector<cplx> c(static_cast<std::size_t>(s.degree() + 1));
  c[0] = std::log(a);
  cplx p = 1.0;
  for (int k = 1; k <= s.degree(); ++k) {
    p /= a;
    c[static_cast<std::size_t>(k)] = (k % 2 ? 1.0 : -1.0) * p / static_cast<double>(k);
  }
  return apply_univariate(s, c);
}

namespace {

TruncatedSeries trig(const TruncatedSeries& s, int phase) {
  cplx a = s.constant_term();
  cplx cyc[4] = {std::sin(a), std::cos(a), -std::sin(a), -std::cos(a)};
  std::vector<cplx> c(static_cast<std::size_t>(s.degree() + 1));
  double fact = 1.0;
  for (int k = 0; k <= s.degree(); ++k) {
    if (k > 0) fact *= k;
    c[static_cast<std::size_t>(k)] = cyc[(k + phase) % 4] / fact;
  }
  return apply_univariate(s, c);
}

}  // namespace

TruncatedSeries sin(const TruncatedSeries& s) { return trig(s, 0); }
TruncatedSeries cos(const TruncatedSeries& s) { return trig(s, 1); }

TruncatedSeries atan(const TruncatedSeries& s) {
  cplx a = s.constant_term();
  cplx q0 = 1.0 + a * a, q1 = 2.0 * a;
  if (q0 == cplx(0.0)) throw EvalError(EvalError::Kind::Singular, "atan at +-i");
  int D = s.degree();
  // 1/(q0 + q1 t + t^2) = sum g_k t^k
  std::vector<cplx> g(static_cast<std::size_t>(D + 1));
  for (int k = 0; k <= D; ++k) {
    cplx num = k == 0 ? cplx(1.0) : cplx(0.0);
    if (k >= 1) num -= q1 * g[static_cast<std::size_t>(k - 1)];
    if (k >= 2) num -= g[static_cast<std::size_t>(k - 2)];
    g[static_cast<std::size_t>(k)] = num / q0;
  }
  std::vector<cplx> c(static_cast<std::size_t>(D + 1));
  c[0] = std::atan(a);
  for (int k = 1; k <= D; ++k) c[static_cast<std::size_t>(k)] = g[static_cast<std::size_t>(k - 1)] / static_cast<double>(k);
  return apply_univariate(s, c);
}

TruncatedSeries substitute(const TruncatedSeries& f, const std::vector<TruncatedSeries>& subs) {
  if (static_cast<int>(subs.size()) != f.nvars()) throw UsageError("substitute: need one series per variable");
  if (subs.empty()) return f;
  int n2 = subs[0].nvars(), D = subs[0].degree();
  for (const auto& s : subs) {
    if (s.nvars() != n2 || s.degree() != D) throw UsageError("substitute: layout mismatch");
    if (s.constant_term() != cplx(0.0)) throw UsageError("substitute: substitution with nonzero constant term");
  }
  if (f.degree() < D) throw UsageError("substitute: outer series degree too low");
  std::vector<std::vector<TruncatedSeries>> powers(subs.size());
  for (std::size_t j = 0; j < subs.size(); ++j) {
    powers[j].push_back(TruncatedSeries::constant(n2, D, 1.0));
    for (int k = 1; k <= D; ++k) powers[j].push_back(powers[j].back() * subs[j]);
  }
  TruncatedSeries r(n2, D);
  const SeriesLayout& L = f.layout();
  for (std::size_t i = 0; i < L.size() && L.total_degree(i) <= D; ++i) {
    cplx c = f.coeffs()[i];
    if (c == cplx(0.0)) continue;
    const MultiIndex& m = L.mono(i);
    TruncatedSeries term = TruncatedSeries::constant(n2, D, c);
    bool first = true;
    for (int j = 0; j < f.nvars(); ++j) {
      if (m[j] == 0) continue;
      if (first) {
        term = c * powers[static_cast<std::size_t>(j)][static_cast<std::size_t>(m[j])];
        first = false;
      } else {
        term = term * powers[static_cast<std::size_t>(j)][static_cast<std::size_t>(m[j])];
      }
    }
    r += term;
  }
  return r;
}

TruncatedSeries jet(const Expr& e, const EvalPoint& center, int degree, int nvars) {
  std::unordered_map<const Node*, TruncatedSeries> memo;
  std::function<TruncatedSeries(const Expr&)> rec = [&](const Expr& x) -> TruncatedSeries {
    const Node& n = x.node();
    auto it = memo.find(&n);
    if (it != memo.end()) return it->second;
    TruncatedSeries r(nvars, degree);
    switch (n.op) {
      case Op::Const: r = TruncatedSeries::constant(nvars, degree, n.value); break;
      case Op::Var: {
        int k = static_cast<int>(n.var);
        r = k < nvars ? TruncatedSeries::variable(nvars, degree, k, center.v[static_cast<std::size_t>(k)])
                      : TruncatedSeries::constant(nvars, degree, center.v[static_cast<std::size_t>(k)]);
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
  TruncatedSeries s = rec(e);
  s.set_center(center);
  return s;
}

cplx wirtinger(const Expr& e, const EvalPoint& p, Var var, int order, Var var2) {
  if (order != 1 && order != 2) throw UsageError("wirtinger order must be 1 or 2");
  TruncatedSeries s = jet(e, p, order);
  MultiIndex m{};
  m[static_cast<std::size_t>(var)] += 1;
  if (order == 1) return s.coeff(m);
  m[static_cast<std::size_t>(var2)] += 1;
  return (var == var2 ? 2.0 : 1.0) * s.coeff(m);
}

}  // namespace crhs
