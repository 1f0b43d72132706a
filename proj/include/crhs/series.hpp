#pragma once

#include <array>
#include <vector>

#include "crhs/expr.hpp"

namespace crhs {

inline constexpr int kMaxSeriesVars = 6;
inline constexpr int kMaxSeriesDegree = 8;

using MultiIndex = std::array<int, kMaxSeriesVars>;

// Graded monomial ordering and product table, shared per (nvars, degree).
class SeriesLayout {
 public:
  static const SeriesLayout& get(int nvars, int degree);

  int nvars() const { return nvars_; }
  int degree() const { return degree_; }
  std::size_t size() const { return monos_.size(); }
  const MultiIndex& mono(std::size_t k) const { return monos_[k]; }
  int total_degree(std::size_t k) const { return degs_[k]; }
  // First index of the block of total degree d (d may be degree+1).
  std::size_t block_start(int d) const { return starts_[static_cast<std::size_t>(d)]; }
  // -1 if the multi-index is out of range.
  long index(const MultiIndex& m) const;

  struct Triple {
    int a, b, c;
  };
  const std::vector<Triple>& products() const { return products_; }

 private:
  SeriesLayout(int nvars, int degree);
  int nvars_;
  int degree_;
  std::vector<MultiIndex> monos_;
  std::vector<int> degs_;
  std::vector<std::size_t> starts_;
  std::vector<int> dense_;
  std::vector<Triple> products_;
  friend struct LayoutCache;
};

class TruncatedSeries {
 public:
  TruncatedSeries(int nvars, int degree);
  static TruncatedSeries constant(int nvars, int degree, cplx c);
  // center + t_k
  static TruncatedSeries variable(int nvars, int degree, int k, cplx center);

  int nvars() const { return layout_->nvars(); }
  int degree() const { return layout_->degree(); }
  const SeriesLayout& layout() const { return *layout_; }
  const std::vector<cplx>& coeffs() const { return c_; }
  std::vector<cplx>& coeffs() { return c_; }

  cplx constant_term() const { return c_[0]; }
  cplx coeff(const MultiIndex& m) const;
  void set_coeff(const MultiIndex& m, cplx value);

  // Taylor center, if the series came from jet().
  const EvalPoint& center() const { return center_; }
  void set_center(const EvalPoint& p) { center_ = p; }

  TruncatedSeries& operator+=(const TruncatedSeries& o);
  TruncatedSeries& operator-=(const TruncatedSeries& o);
  TruncatedSeries& operator*=(cplx s);

  TruncatedSeries derivative(int k) const;  // degree drops by one
  TruncatedSeries truncated(int degree) const;
  TruncatedSeries with_degree(int degree) const;  // pad or truncate
  cplx evaluate(const std::vector<cplx>& displacement) const;
  double max_abs_diff(const TruncatedSeries& o) const;

 private:
  const SeriesLayout* layout_;
  std::vector<cplx> c_;
  EvalPoint center_{};
};

TruncatedSeries operator+(TruncatedSeries a, const TruncatedSeries& b);
TruncatedSeries operator-(TruncatedSeries a, const TruncatedSeries& b);
TruncatedSeries operator-(const TruncatedSeries& a);
TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b);
TruncatedSeries operator*(cplx s, TruncatedSeries a);
TruncatedSeries operator/(const TruncatedSeries& a, const TruncatedSeries& b);

// sum_k c_k (s - s(0))^k
TruncatedSeries apply_univariate(const TruncatedSeries& s, const std::vector<cplx>& c);
TruncatedSeries reciprocal(const TruncatedSeries& s);
TruncatedSeries pow(const TruncatedSeries& s, double exponent);
TruncatedSeries exp(const TruncatedSeries& s);
TruncatedSeries log(const TruncatedSeries& s);
TruncatedSeries sin(const TruncatedSeries& s);
TruncatedSeries cos(const TruncatedSeries& s);
TruncatedSeries atan(const TruncatedSeries& s);

// f(subs_0, ..., subs_{n-1}); each substitution must have zero constant term.
TruncatedSeries substitute(const TruncatedSeries& f, const std::vector<TruncatedSeries>& subs);

// Taylor jet of e at center in the first nvars polarized variables; the
// remaining variables are frozen at their center values.
TruncatedSeries jet(const Expr& e, const EvalPoint& center, int degree, int nvars = kNumVars);

// First or mixed second Wirtinger partial in polarized variables.
cplx wirtinger(const Expr& e, const EvalPoint& p, Var var, int order = 1, Var var2 = Var::z1);

}  // namespace crhs
