#include "crhs/hypersurface.hpp"

#include <cmath>
#include <limits>
#include <random>

#include <Eigen/Eigenvalues>

namespace crhs {

Expr parse_equation(const std::string& text, const ParamMap& params) {
  int depth = 0;
  std::size_t eq = std::string::npos;
  for (std::size_t i = 0; i < text.size(); ++i) {
    char ch = text[i];
    if (ch == '(') ++depth;
    else if (ch == ')') --depth;
    else if (ch == '=' && depth == 0) {
      if (eq != std::string::npos) throw ParseError("syntax error: more than one '='", i);
      eq = i;
    }
  }
  if (eq == std::string::npos) return crhs::parse(text, params);
  Expr lhs = crhs::parse(text.substr(0, eq), params);
  Expr rhs;
  try {
    rhs = crhs::parse(text.substr(eq + 1), params);
  } catch (const ParseError& e) {
    throw ParseError(e.message(), e.offset() + eq + 1);
  }
  return lhs - rhs;
}

DefiningFunction DefiningFunction::parse(const std::string& phi, const std::vector<std::string>& domain,
                                         const ParamMap& params) {
  DefiningFunction df;
  df.phi = parse_equation(phi, params);
  for (const auto& d : domain) df.domain.push_back(crhs::parse(d, params));
  return df;
}

double DefiningFunction::domain_margin(const EvalPoint& p) const {
  double m = std::numeric_limits<double>::infinity();
  for (const auto& c : domain) {
    try {
      double v = eval(c, p).real();
      if (std::isnan(v)) return -std::numeric_limits<double>::infinity();
      m = std::min(m, v);
    } catch (const EvalError&) {
      return -std::numeric_limits<double>::infinity();
    }
  }
  return m;
}

double DefiningFunction::value(const EvalPoint& p) const { return eval(phi, p).real(); }

const char* levi_name(LeviKind k) {
  switch (k) {
    case LeviKind::Definite: return "Definite";
    case LeviKind::Indefinite: return "Indefinite";
    case LeviKind::Degenerate: return "Degenerate";
  }
  return "?";
}

namespace {

int holo_index(RealCoord c) { return static_cast<int>(c) / 2; }
bool is_imag_coord(RealCoord c) { return static_cast<int>(c) % 2 == 1; }

// d(Re Phi)/d(coordinate) via Wirtinger partials.
double real_partial(const Expr& phi, const EvalPoint& p, RealCoord c) {
  TruncatedSeries s = jet(phi, p, 1);
  MultiIndex a{}, b{};
  a[static_cast<std::size_t>(holo_index(c))] = 1;
  b[static_cast<std::size_t>(holo_index(c) + 3)] = 1;
  cplx dz = s.coeff(a), dzb = s.coeff(b);
  cplx d = is_imag_coord(c) ? cplx(0, 1) * (dz - dzb) : dz + dzb;
  return d.real();
}

}  // namespace

EvalPoint find_point(const DefiningFunction& df, const EvalPoint& seed, RealCoord solve_var) {
  if (!df.in_domain(seed)) throw DomainError("find_point: seed violates the domain");
  EvalPoint p = seed;
  double f;
  try {
    f = df.value(p);
  } catch (const EvalError& e) {
    throw DomainError(std::string("find_point: cannot evaluate at seed: ") + e.what());
  }
  for (int it = 0; it <= kNewtonMaxIter; ++it) {
    if (std::abs(f) <= kOnSurfaceTol) {
      if (!df.in_domain(p)) throw DomainError("find_point: solution violates the domain");
      return p;
    }
    if (it == kNewtonMaxIter) break;
    double d = real_partial(df.phi, p, solve_var);
    if (d == 0.0 || !std::isfinite(d)) throw ConvergenceError("find_point: zero derivative in solve variable");
    double x = p.real_coord(solve_var);
    double step = -f / d;
    // Damped: halve the step until the iterate stays evaluable, in the domain and |Phi| decreases.
    bool moved = false;
    for (int h = 0; h < 40; ++h, step *= 0.5) {
      EvalPoint q = p.with_real_coord(solve_var, x + step);
      if (!df.in_domain(q)) continue;
      double fq;
      try {
        fq = df.value(q);
      } catch (const EvalError&) {
        continue;
      }
      if (!std::isfinite(fq) || (std::abs(fq) >= std::abs(f) && h < 39)) continue;
      p = q;
      f = fq;
      moved = true;
      break;
    }
    if (!moved) break;
    // Roundoff floor: the last step changed nothing representable.
    if (std::abs(step) <= 4 * std::numeric_limits<double>::epsilon() * (1.0 + std::abs(x)) && std::abs(f) <= 1e-10) {
      if (!df.in_domain(p)) throw DomainError("find_point: solution violates the domain");
      return p;
    }
  }
  throw ConvergenceError("find_point: Newton did not reach |Phi| <= 1e-12 in " + std::to_string(kNewtonMaxIter) +
                         " iterations (|Phi| = " + std::to_string(std::abs(f)) + ")");
}

std::vector<EvalPoint> sample_points(const DefiningFunction& df, const EvalPoint& base, int n, double radius,
                                     unsigned long long rng_seed, RealCoord solve_var) {
  std::vector<EvalPoint> out;
  if (n <= 0) return out;
  std::mt19937_64 rng(rng_seed);
  std::uniform_real_distribution<double> U(-radius, radius);
  const long max_attempts = 10L * n;
  for (long a = 0; a < max_attempts && static_cast<int>(out.size()) < n; ++a) {
    EvalPoint q = base;
    for (int c = 0; c < 6; ++c) {
      double delta = U(rng);
      auto rc = static_cast<RealCoord>(c);
      if (rc == solve_var) continue;
      q = q.with_real_coord(rc, base.real_coord(rc) + delta);
    }
    if (!df.in_domain(q)) continue;
    try {
      out.push_back(find_point(df, q, solve_var));
    } catch (const std::runtime_error&) {
    }
  }
  if (static_cast<int>(out.size()) < n)
    throw ConvergenceError("sample_points: found " + std::to_string(out.size()) + " of " + std::to_string(n) +
                           " points after " + std::to_string(max_attempts) + " attempts");
  return out;
}

double tangency_residual(const HoloVectorField& field, const DefiningFunction& df, const EvalPoint& p) {
  double f = df.value(p);
  if (std::abs(f) > 1e-10) throw DomainError("tangency_residual: point is off the surface (|Phi| = " + std::to_string(std::abs(f)) + ")");
  return std::abs(apply_to(field, df.phi, p).real());
}

FlowDrift flow_drift(const HoloVectorField& field, const DefiningFunction& df, const EvalPoint& p0, double t_end,
                     double step) {
  FlowDrift d;
  Trajectory tr;
  try {
    tr = integrate_flow(field, p0, t_end, step);
  } catch (const FlowError& e) {
    d.t_reached = e.t_reached();
    d.error = e.what();
    return d;
  }
  for (std::size_t k = 0; k < tr.points.size(); ++k) {
    try {
      d.max_abs_phi = std::max(d.max_abs_phi, std::abs(df.value(tr.points[k])));
    } catch (const EvalError& e) {
      d.error = e.what();
      return d;
    }
    d.t_reached = tr.times[k];
  }
  d.completed = true;
  return d;
}

LeviData levi_form(const DefiningFunction& df, const EvalPoint& p, const Eigen::Matrix2cd& rebase) {
  TruncatedSeries s = jet(df.phi, p, 2);
  LeviData d;
  for (int j = 0; j < 3; ++j) {
    MultiIndex m{};
    m[static_cast<std::size_t>(j)] = 1;
    d.gradient(j) = s.coeff(m);
    for (int k = 0; k < 3; ++k) {
      MultiIndex mm{};
      mm[static_cast<std::size_t>(j)] += 1;
      mm[static_cast<std::size_t>(k + 3)] += 1;
      d.H(j, k) = s.coeff(mm);
    }
  }
  if (d.gradient.norm() < 1e-8) throw DomainError("levi_classify: vanishing gradient");
  // ker(t -> g^T t) is the orthogonal complement of conj(g).
  Eigen::Matrix3cd M = Eigen::Matrix3cd::Zero();
  M.col(0) = d.gradient.conjugate();
  Eigen::HouseholderQR<Eigen::Matrix3cd> qr(M);
  Eigen::Matrix3cd Q = qr.householderQ();
  d.kernel = Q.rightCols(2) * rebase;
  d.L = d.kernel.transpose() * d.H * d.kernel.conjugate();
  return d;
}

LeviClass levi_classify(const DefiningFunction& df, const EvalPoint& p, double tol, const Eigen::Matrix2cd& rebase) {
  LeviData d = levi_form(df, p, rebase);
  Eigen::Matrix2cd L = 0.5 * (d.L + d.L.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> es(L, Eigen::EigenvaluesOnly);
  LeviClass c;
  c.eigenvalues = {es.eigenvalues()(0), es.eigenvalues()(1)};
  double norm = std::max(std::abs(c.eigenvalues[0]), std::abs(c.eigenvalues[1]));
  if (norm == 0.0 || std::min(std::abs(c.eigenvalues[0]), std::abs(c.eigenvalues[1])) <= tol * norm)
    c.kind = LeviKind::Degenerate;
  else if ((c.eigenvalues[0] > 0) == (c.eigenvalues[1] > 0))
    c.kind = LeviKind::Definite;
  else
    c.kind = LeviKind::Indefinite;
  return c;
}

double map_image_residual(const HoloMap& map, const DefiningFunction& source, const DefiningFunction& target,
                          const std::vector<EvalPoint>& points) {
  for (const auto& e : map)
    if (uses_conjugates(e)) throw UsageError("map components must be holomorphic");
  double m = 0.0;
  for (const auto& p : points) {
    if (std::abs(source.value(p)) > 1e-9) throw UsageError("map_image_residual: point is not on the source surface");
    std::array<cplx, 3> img;
    try {
      for (int k = 0; k < 3; ++k) img[static_cast<std::size_t>(k)] = eval(map[static_cast<std::size_t>(k)], p);
    } catch (const EvalError& e) {
      throw DomainError(std::string("map is singular at a sample point: ") + e.what());
    }
    m = std::max(m, std::abs(eval(target.phi, EvalPoint::real_locus(img))));
  }
  return m;
}

}  // namespace crhs
