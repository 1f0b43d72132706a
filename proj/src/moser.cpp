#include "crhs/moser.hpp"

#include <cmath>
#include <sstream>

#include <Eigen/Eigenvalues>

namespace crhs {

namespace {

constexpr int kDeg = 4;

TruncatedSeries var(int nvars, int k) { return TruncatedSeries::variable(nvars, kDeg, k, 0.0); }

// z_k <-> zc_k and conjugated coefficients. `half` = number of holomorphic
// variables; variables beyond 2*half are real and kept in place.
TruncatedSeries conj_swap(const TruncatedSeries& s, int half) {
  TruncatedSeries r(s.nvars(), s.degree());
  const SeriesLayout& L = s.layout();
  for (std::size_t i = 0; i < L.size(); ++i) {
    MultiIndex m = L.mono(i);
    for (int k = 0; k < half; ++k) std::swap(m[static_cast<std::size_t>(k)], m[static_cast<std::size_t>(k + half)]);
    r.set_coeff(m, std::conj(s.coeffs()[i]));
  }
  return r;
}

std::string fmt(cplx c) { return format_complex(c); }

// Polarized defining series S(z1, z2, w, zc1, zc2, wc).
struct Normalizer {
  TruncatedSeries S{6, kDeg};
  std::vector<std::string> log;

  // old (z1, z2, w) as series in the new holomorphic variables (indices 0..2).
  void apply(const std::array<TruncatedSeries, 3>& old, const std::string& what) {
    std::vector<TruncatedSeries> subs(old.begin(), old.end());
    for (int k = 0; k < 3; ++k) subs.push_back(conj_swap(old[static_cast<std::size_t>(k)], 3));
    S = substitute(S, subs);
    S.coeffs()[0] = 0.0;
    log.push_back(what);
  }

  // v = F(z, zc, u) from S(z, u + iv, zc, u - iv) = 0.
  std::optional<Jet4> solve(double min_kappa) const {
    std::vector<TruncatedSeries> uv = {var(6, 0), var(6, 1), var(6, 4) + cplx(0, 1) * var(6, 5),
                                       var(6, 2), var(6, 3), var(6, 4) - cplx(0, 1) * var(6, 5)};
    TruncatedSeries R = substitute(S, uv);
    MultiIndex ev{};
    ev[5] = 1;
    cplx kappa = R.coeff(ev);
    if (!(std::abs(kappa) > min_kappa)) return std::nullopt;
    // R = sum_k R_k(z, zc, u) v^k
    std::vector<TruncatedSeries> Rk(kDeg + 1, TruncatedSeries(5, kDeg));
    for (std::size_t i = 0; i < R.layout().size(); ++i) {
      const MultiIndex& m = R.layout().mono(i);
      Rk[static_cast<std::size_t>(m[5])].set_coeff(MultiIndex{m[0], m[1], m[2], m[3], m[4], 0}, R.coeffs()[i]);
    }
    TruncatedSeries F(5, kDeg);
    for (int it = 0; it <= kDeg + 1; ++it) {
      TruncatedSeries acc = Rk[kDeg];
      for (int k = kDeg - 1; k >= 0; --k) acc = acc * F + Rk[static_cast<std::size_t>(k)];
      F -= (1.0 / kappa) * acc;
    }
    Jet4 j;
    j.F = F;
    return j;
  }
};

std::array<TruncatedSeries, 3> identity_map() { return {var(6, 0), var(6, 1), var(6, 2)}; }

Eigen::Matrix2cd hermitian_part(const Jet4& j) {
  Eigen::Matrix2cd H;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) H(a, b) = j.coeff(a == 0, a == 1, b == 0, b == 1, 0);
  return 0.5 * (H + H.adjoint());
}

std::string linear_map_string(const char* name, const std::array<cplx, 3>& c) {
  static const char* nv[] = {"Z1", "Z2", "W"};
  std::string s = std::string(name) + " = ";
  bool first = true;
  for (int k = 0; k < 3; ++k) {
    if (std::abs(c[static_cast<std::size_t>(k)]) < 1e-15) continue;
    if (!first) s += " + ";
    s += fmt(c[static_cast<std::size_t>(k)]) + "*" + nv[k];
    first = false;
  }
  if (first) s += "0";
  return s;
}

bool near(const Eigen::Matrix2cd& a, const Eigen::Matrix2cd& b, double tol) { return (a - b).cwiseAbs().maxCoeff() <= tol; }

}  // namespace

Poly zero_poly() { return Poly(4, kDeg); }

cplx poly_coeff(const Poly& p, int a1, int a2, int b1, int b2) { return p.coeff(MultiIndex{a1, a2, b1, b2, 0, 0}); }

void set_poly_coeff(Poly& p, int a1, int a2, int b1, int b2, cplx value) {
  p.set_coeff(MultiIndex{a1, a2, b1, b2, 0, 0}, value);
}

Poly parse_poly(const std::string& text) {
  Expr e = parse(text);
  if (uses_var(e, Var::w) || uses_var(e, Var::wc)) throw UsageError("polynomial must only involve z1, z2 and conjugates");
  EvalPoint origin{};
  TruncatedSeries s = jet(e, origin, kDeg);
  Poly p = zero_poly();
  for (std::size_t i = 0; i < p.layout().size(); ++i) {
    const MultiIndex& m = p.layout().mono(i);
    p.coeffs()[i] = s.coeff(MultiIndex{m[0], m[1], 0, m[2], m[3], 0});
  }
  // Reject non-polynomials by comparing at a probe point.
  EvalPoint q = EvalPoint::polarized({cplx(0.31, -0.17), cplx(-0.23, 0.29), 0.0, cplx(0.13, 0.41), cplx(-0.37, 0.11), 0.0});
  cplx direct = eval(e, q);
  cplx viaPoly = p.evaluate({q.v[0], q.v[1], q.v[3], q.v[4]});
  if (std::abs(direct - viaPoly) > 1e-9 * (1.0 + std::abs(direct)))
    throw UsageError("expression is not a polynomial of degree <= 4 in z, zbar");
  return p;
}

std::string poly_to_string(const Poly& p, double drop) {
  static const char* names[] = {"z1", "z2", "zc1", "zc2", "u"};
  std::string out;
  const SeriesLayout& L = p.layout();
  for (std::size_t i = 0; i < L.size(); ++i) {
    cplx c = p.coeffs()[i];
    if (std::abs(c) <= drop) continue;
    const MultiIndex& m = L.mono(i);
    std::string factors;
    for (int k = 0; k < p.nvars(); ++k) {
      int e = m[static_cast<std::size_t>(k)];
      if (e == 0) continue;
      factors += (factors.empty() ? "" : "*") + std::string(names[k]);
      if (e > 1) factors += "^" + std::to_string(e);
    }
    std::string term;
    if (factors.empty()) term = fmt(c);
    else if (c == cplx(1.0)) term = factors;
    else if (c == cplx(-1.0)) term = "-" + factors;
    else term = fmt(c) + "*" + factors;
    out += (out.empty() ? "" : " + ") + term;
  }
  return out.empty() ? "0" : out;
}

HermitianForm2 HermitianForm2::indefinite_model() {
  HermitianForm2 h;
  h.m << 0, 1, 1, 0;
  return h;
}

HermitianForm2 HermitianForm2::definite_model() {
  HermitianForm2 h;
  h.m = Eigen::Matrix2cd::Identity();
  return h;
}

bool HermitianForm2::is_hermitian(double tol) const { return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol; }

Poly HermitianForm2::as_poly() const {
  Poly p = zero_poly();
  for (int j = 0; j < 2; ++j)
    for (int k = 0; k < 2; ++k) set_poly_coeff(p, j == 0, j == 1, k == 0, k == 1, m(j, k));
  return p;
}

cplx Jet4::coeff(int a1, int a2, int b1, int b2, int m) const { return F.coeff(MultiIndex{a1, a2, b1, b2, m, 0}); }

double Jet4::reality_defect() const {
  double d = 0.0;
  const SeriesLayout& L = F.layout();
  for (std::size_t i = 0; i < L.size(); ++i) {
    const MultiIndex& m = L.mono(i);
    d = std::max(d, std::abs(F.coeffs()[i] - std::conj(coeff(m[2], m[3], m[0], m[1], m[4]))));
  }
  return d;
}

nlohmann::json Jet4::to_json(double drop) const {
  nlohmann::json arr = nlohmann::json::array();
  const SeriesLayout& L = F.layout();
  for (std::size_t i = 0; i < L.size(); ++i) {
    const MultiIndex& m = L.mono(i);
    if (m[0] + m[1] + m[2] + m[3] + 2 * m[4] > 4) continue;
    cplx c = F.coeffs()[i];
    if (std::abs(c) <= drop) continue;
    arr.push_back({{"z", {m[0], m[1]}}, {"zbar", {m[2], m[3]}}, {"u", m[4]}, {"re", c.real()}, {"im", c.imag()}});
  }
  return arr;
}

double N220Coeffs::max_abs() const {
  double m = 0.0;
  for (double x : as_array()) m = std::max(m, std::abs(x));
  return m;
}

GraphJetResult graph_jet(const DefiningFunction& df, const EvalPoint& p) {
  double f0 = df.value(p);
  if (std::abs(f0) > 1e-10) throw DomainError("graph_jet: point is off the surface");
  Normalizer N;
  N.S = jet(df.phi, p, kDeg);
  N.S.coeffs()[0] = 0.0;
  N.log.push_back("translate to the base point");
  GraphJetResult res;

  std::array<cplx, 3> g;
  for (int k = 0; k < 3; ++k) {
    MultiIndex m{};
    m[static_cast<std::size_t>(k)] = 1;
    g[static_cast<std::size_t>(k)] = N.S.coeff(m);
  }
  double gn = std::sqrt(std::norm(g[0]) + std::norm(g[1]) + std::norm(g[2]));
  if (gn < 1e-8) throw DomainError("graph_jet: vanishing gradient");
  res.raw = N.solve(1e-8 * gn);

  // Linear part: make Phi = kappa v + O(2).
  auto Z = identity_map();
  if (std::abs(g[2]) >= 1e-3 * gn) {
    cplx a = cplx(0, -std::abs(g[2])) / g[2];
    std::array<cplx, 3> cw = {-g[0] / g[2], -g[1] / g[2], a};
    N.apply({Z[0], Z[1], cw[0] * Z[0] + cw[1] * Z[1] + a * Z[2]}, linear_map_string("w", cw));
  } else {
    Eigen::Vector3cd gv(g[0], g[1], g[2]);
    Eigen::Matrix3cd M = Eigen::Matrix3cd::Zero();
    M.col(0) = gv.conjugate();
    Eigen::Matrix3cd Q = Eigen::HouseholderQR<Eigen::Matrix3cd>(M).householderQ();
    Eigen::Vector3cd n = cplx(0, -1) * gv.conjugate() / gn;
    std::array<TruncatedSeries, 3> old{TruncatedSeries(6, kDeg), TruncatedSeries(6, kDeg), TruncatedSeries(6, kDeg)};
    std::string desc;
    for (int k = 0; k < 3; ++k) {
      std::array<cplx, 3> c = {Q(k, 1), Q(k, 2), n(k)};
      old[static_cast<std::size_t>(k)] = c[0] * Z[0] + c[1] * Z[1] + c[2] * Z[2];
      static const char* nm[] = {"z1", "z2", "w"};
      desc += (k ? "; " : "") + linear_map_string(nm[k], c);
    }
    N.apply(old, desc);
  }
  auto F = N.solve(0.0);
  if (!F) throw DomainError("graph_jet: cannot solve for v");

  // Weight-2 pluriharmonic terms: w = W + 2i P(Z).
  {
    TruncatedSeries P(6, kDeg);
    std::string ps;
    for (int a1 = 0; a1 <= 2; ++a1) {
      int a2 = 2 - a1;
      cplx c = F->coeff(a1, a2, 0, 0, 0);
      MultiIndex m{};
      m[0] = a1;
      m[1] = a2;
      P.set_coeff(m, c);
    }
    if (P.coeffs() != TruncatedSeries(6, kDeg).coeffs()) {
      TruncatedSeries Pp = P;
      Poly pp = zero_poly();
      for (int a1 = 0; a1 <= 2; ++a1) set_poly_coeff(pp, a1, 2 - a1, 0, 0, cplx(0, 2) * F->coeff(a1, 2 - a1, 0, 0, 0));
      N.apply({Z[0], Z[1], Z[2] + cplx(0, 2) * Pp}, "w = W + " + poly_to_string(pp));
      F = N.solve(0.0);
    }
  }

  // Levi form to a model.
  Eigen::Matrix2cd H = hermitian_part(*F);
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> es(H);
  Eigen::Vector2d d = es.eigenvalues();
  double hn = std::max(std::abs(d(0)), std::abs(d(1)));
  if (hn == 0.0 || std::min(std::abs(d(0)), std::abs(d(1))) <= kLeviTol * hn)
    throw DomainError("graph_jet: Levi form is degenerate");
  if (d(1) < 0) {
    N.apply({Z[0], Z[1], cplx(-1.0) * Z[2]}, "w = -W");
    F = N.solve(0.0);
    H = hermitian_part(*F);
    es.compute(H);
    d = es.eigenvalues();
  }
  bool definite = d(0) > 0;
  HermitianForm2 model = definite ? HermitianForm2::definite_model() : HermitianForm2::indefinite_model();
  Eigen::Matrix2cd A;
  cplx scale = definite ? H(0, 0) : H(0, 1);
  if (scale.real() > 0 && near(H, scale.real() * model.m, 1e-12 * hn)) {
    A = Eigen::Matrix2cd::Identity() / std::sqrt(scale.real());
  } else {
    Eigen::Matrix2cd U = es.eigenvectors();
    Eigen::Matrix2cd A0;
    if (definite) {
      A0.row(0) = U.col(0).adjoint() / std::sqrt(d(0));
      A0.row(1) = U.col(1).adjoint() / std::sqrt(d(1));
      A = A0;
    } else {
      A0.row(0) = U.col(1).adjoint() / std::sqrt(d(1));
      A0.row(1) = U.col(0).adjoint() / std::sqrt(-d(0));
      Eigen::Matrix2cd T;
      T << 1, 1, 1, -1;
      A = T / std::sqrt(2.0) * A0;
    }
  }
  if (!near(A * H * A.adjoint(), model.m, 1e-9 * (1.0 + hn))) throw DomainError("graph_jet: Levi normalization failed");
  {
    Eigen::Matrix2cd At = A.transpose();
    N.apply({At(0, 0) * Z[0] + At(0, 1) * Z[1], At(1, 0) * Z[0] + At(1, 1) * Z[1], Z[2]},
            linear_map_string("z1", {At(0, 0), At(0, 1), 0.0}) + "; " +
                linear_map_string("z2", {At(1, 0), At(1, 1), 0.0}));
    F = N.solve(0.0);
  }

  // Weight-3 z*u terms: z = Z + a W.
  {
    Eigen::Vector2cd dz(F->coeff(1, 0, 0, 0, 1), F->coeff(0, 1, 0, 0, 1));
    if (dz.cwiseAbs().maxCoeff() > 0.0) {
      Eigen::Vector2cd a = -(model.m.inverse() * dz).conjugate();
      N.apply({Z[0] + a(0) * Z[2], Z[1] + a(1) * Z[2], Z[2]},
              linear_map_string("z1", {1.0, 0.0, a(0)}) + "; " + linear_map_string("z2", {0.0, 1.0, a(1)}));
      F = N.solve(0.0);
    }
  }
  res.jet = *F;
  res.levi = model;
  res.model = definite ? "definite" : "indefinite";
  res.substitutions = N.log;
  return res;
}

Poly bidegree(const Jet4& j, int k, int l) {
  if (k < 0 || l < 0 || k + l > 4) throw UsageError("bidegree needs k + l <= 4");
  Poly p = zero_poly();
  const SeriesLayout& L = p.layout();
  for (std::size_t i = 0; i < L.size(); ++i) {
    const MultiIndex& m = L.mono(i);
    if (m[0] + m[1] == k && m[2] + m[3] == l) p.coeffs()[i] = j.coeff(m[0], m[1], m[2], m[3], 0);
  }
  return p;
}

TruncatedSeries real_expansion(const Jet4& j) {
  const cplx I(0, 1);
  std::vector<TruncatedSeries> subs = {var(5, 0) + I * var(5, 1), var(5, 2) + I * var(5, 3),
                                       var(5, 0) - I * var(5, 1), var(5, 2) - I * var(5, 3), var(5, 4)};
  return substitute(j.F, subs);
}

std::array<Poly, 2> solve_f2(const Poly& F21, const HermitianForm2& levi) {
  Eigen::Matrix2cd Mt = levi.m.transpose();
  if (std::abs(Mt.determinant()) < 1e-12) throw DomainError("solve_f2: singular Levi form");
  Eigen::Matrix2cd Minv = Mt.inverse();
  std::array<Poly, 2> f{zero_poly(), zero_poly()};
  for (int a1 = 0; a1 <= 2; ++a1) {
    Eigen::Vector2cd r(poly_coeff(F21, a1, 2 - a1, 1, 0), poly_coeff(F21, a1, 2 - a1, 0, 1));
    Eigen::Vector2cd s = Minv * r;
    set_poly_coeff(f[0], a1, 2 - a1, 0, 0, s(0));
    set_poly_coeff(f[1], a1, 2 - a1, 0, 0, s(1));
  }
  return f;
}

Poly hermitian_pairing(const std::array<Poly, 2>& a, const std::array<Poly, 2>& b, const HermitianForm2& levi) {
  Poly r = zero_poly();
  for (int j = 0; j < 2; ++j)
    for (int k = 0; k < 2; ++k)
      if (levi.m(j, k) != cplx(0.0)) r += levi.m(j, k) * (a[static_cast<std::size_t>(j)] * conj_swap(b[static_cast<std::size_t>(k)], 2));
  return r;
}

Poly h22(const Poly& F22, const std::array<Poly, 2>& f2, const HermitianForm2& levi) {
  return F22 - hermitian_pairing(f2, f2, levi);
}

std::array<Poly, 5> n220_basis(const HermitianForm2& levi) {
  const cplx I(0, 1);
  auto mono = [](int a1, int a2, int b1, int b2) {
    Poly p = zero_poly();
    set_poly_coeff(p, a1, a2, b1, b2, 1.0);
    return p;
  };
  if (near(levi.m, HermitianForm2::indefinite_model().m, 1e-9)) {
    return {mono(2, 0, 2, 0),
            cplx(4.0) * mono(1, 1, 1, 1) - mono(2, 0, 0, 2) - mono(0, 2, 2, 0),
            mono(0, 2, 0, 2),
            I * (mono(2, 0, 1, 1) - mono(1, 1, 2, 0)),
            I * (mono(1, 1, 0, 2) - mono(0, 2, 1, 1))};
  }
  if (near(levi.m, HermitianForm2::definite_model().m, 1e-9)) {
    return {mono(2, 0, 0, 2) + mono(0, 2, 2, 0),
            I * (mono(2, 0, 0, 2) - mono(0, 2, 2, 0)),
            mono(2, 0, 2, 0) - cplx(4.0) * mono(1, 1, 1, 1) + mono(0, 2, 0, 2),
            mono(2, 0, 1, 1) - mono(1, 1, 0, 2) + mono(1, 1, 2, 0) - mono(0, 2, 1, 1),
            I * (mono(2, 0, 1, 1) - mono(1, 1, 0, 2) - mono(1, 1, 2, 0) + mono(0, 2, 1, 1))};
  }
  throw Unsupported("N220 projection needs the Levi form in model shape (z1 zc2 + z2 zc1 or |z1|^2 + |z2|^2)");
}

N220Coeffs n220_project(const Poly& H22, const HermitianForm2& levi) {
  auto basis = n220_basis(levi);
  const SeriesLayout& L = H22.layout();
  double scale = 0.0;
  for (std::size_t i = 0; i < L.size(); ++i) {
    const MultiIndex& m = L.mono(i);
    cplx c = H22.coeffs()[i];
    scale = std::max(scale, std::abs(c));
    if (c != cplx(0.0) && (m[0] + m[1] != 2 || m[2] + m[3] != 2))
      throw UsageError("n220_project: input has terms outside bidegree (2,2)");
  }
  for (std::size_t i = 0; i < L.size(); ++i) {
    const MultiIndex& m = L.mono(i);
    if (std::abs(H22.coeffs()[i] - std::conj(poly_coeff(H22, m[2], m[3], m[0], m[1]))) > 1e-10 * (1.0 + scale))
      throw Unsupported("n220_project: H22 is not real");
  }
  // H22 = sum x_i b_i + <z,z> h(z, zbar), h Hermitian; solved over the reals.
  Poly zz = levi.as_poly();
  auto herm = [](int j, int k) {
    Poly p = zero_poly();
    set_poly_coeff(p, j == 0, j == 1, k == 0, k == 1, 1.0);
    return p;
  };
  const cplx I(0, 1);
  std::array<Poly, 9> cols = {basis[0], basis[1], basis[2], basis[3], basis[4],
                              zz * herm(0, 0), zz * (herm(0, 1) + herm(1, 0)), zz * (I * (herm(0, 1) - herm(1, 0))),
                              zz * herm(1, 1)};
  std::vector<std::array<int, 4>> monos;
  for (int a1 = 0; a1 <= 2; ++a1)
    for (int b1 = 0; b1 <= 2; ++b1) monos.push_back({a1, 2 - a1, b1, 2 - b1});
  Eigen::MatrixXd A(18, 9);
  Eigen::VectorXd rhs(18);
  for (std::size_t r = 0; r < monos.size(); ++r) {
    auto [a1, a2, b1, b2] = monos[r];
    for (int c = 0; c < 9; ++c) {
      cplx v = poly_coeff(cols[static_cast<std::size_t>(c)], a1, a2, b1, b2);
      A(static_cast<Eigen::Index>(2 * r), c) = v.real();
      A(static_cast<Eigen::Index>(2 * r + 1), c) = v.imag();
    }
    cplx h = poly_coeff(H22, a1, a2, b1, b2);
    rhs(static_cast<Eigen::Index>(2 * r)) = h.real();
    rhs(static_cast<Eigen::Index>(2 * r + 1)) = h.imag();
  }
  Eigen::VectorXd x = A.colPivHouseholderQr().solve(rhs);
  if ((A * x - rhs).lpNorm<Eigen::Infinity>() > 1e-9 * (1.0 + scale))
    throw Unsupported("n220_project: decomposition residual too large");
  N220Coeffs n;
  n.lambda1 = x(0), n.lambda2 = x(1), n.lambda3 = x(2), n.mu1 = x(3), n.mu2 = x(4);
  return n;
}

namespace {

nlohmann::json poly_json(const Poly& p) { return poly_to_string(p, 1e-13); }

nlohmann::json point_json(const EvalPoint& p) {
  nlohmann::json j;
  for (int c = 0; c < 6; ++c) j[real_coord_name(static_cast<RealCoord>(c))] = p.real_coord(static_cast<RealCoord>(c));
  return j;
}

}  // namespace

nlohmann::json MoserReport::to_json() const {
  nlohmann::json levi = nlohmann::json::array();
  for (int j = 0; j < 2; ++j)
    for (int k = 0; k < 2; ++k) levi.push_back(format_complex(graph.levi.m(j, k)));
  return {{"base_point", point_json(base)},
          {"levi_model", graph.model},
          {"levi_matrix", levi},
          {"substitutions", graph.substitutions},
          {"jet", graph.jet.to_json(1e-13)},
          {"F21", poly_json(F21)},
          {"F22", poly_json(F22)},
          {"f2", {poly_json(f2[0]), poly_json(f2[1])}},
          {"H22", poly_json(H22)},
          {"n220",
           {{"lambda1", n220.lambda1}, {"lambda2", n220.lambda2}, {"lambda3", n220.lambda3}, {"mu1", n220.mu1}, {"mu2", n220.mu2}}},
          {"umbilic", umbilic},
          {"tol", tol}};
}

MoserReport moser_pipeline(const DefiningFunction& df, const EvalPoint& p, double tol) {
  MoserReport r;
  r.base = p;
  r.tol = tol;
  r.graph = graph_jet(df, p);
  r.F21 = bidegree(r.graph.jet, 2, 1);
  r.F22 = bidegree(r.graph.jet, 2, 2);
  r.f2 = solve_f2(r.F21, r.graph.levi);
  r.H22 = h22(r.F22, r.f2, r.graph.levi);
  r.n220 = n220_project(r.H22, r.graph.levi);
  r.umbilic = r.n220.max_abs() <= tol;
  return r;
}

bool is_umbilic(const DefiningFunction& df, const EvalPoint& p, double tol) { return moser_pipeline(df, p, tol).umbilic; }

}  // namespace crhs
