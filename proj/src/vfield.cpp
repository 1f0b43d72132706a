#include "crhs/vfield.hpp"

#include <cmath>
#include <numbers>
#include <random>

namespace crhs {

HoloVectorField::HoloVectorField(Expr f_, Expr g_, Expr h_) : f(std::move(f_)), g(std::move(g_)), h(std::move(h_)) {
  for (const Expr* e : {&f, &g, &h})
    if (uses_conjugates(*e)) throw UsageError("vector field components must not contain conjugate variables");
}

HoloVectorField HoloVectorField::parse(const std::string& f, const std::string& g, const std::string& h,
                                       const ParamMap& params) {
  return HoloVectorField(crhs::parse(f, params), crhs::parse(g, params), crhs::parse(h, params));
}

CVec3 HoloVectorField::at(const EvalPoint& p) const { return {eval(f, p), eval(g, p), eval(h, p)}; }

std::array<std::string, 3> HoloVectorField::to_strings() const { return {to_infix(f), to_infix(g), to_infix(h)}; }

CVec3 holomorphic_gradient(const Expr& phi, const EvalPoint& p) {
  TruncatedSeries s = jet(phi, p, 1);
  CVec3 r;
  for (int k = 0; k < 3; ++k) {
    MultiIndex m{};
    m[static_cast<std::size_t>(k)] = 1;
    r[static_cast<std::size_t>(k)] = s.coeff(m);
  }
  return r;
}

cplx apply_to(const HoloVectorField& field, const Expr& phi, const EvalPoint& p) {
  CVec3 grad = holomorphic_gradient(phi, p);
  CVec3 v = field.at(p);
  return v[0] * grad[0] + v[1] * grad[1] + v[2] * grad[2];
}

std::array<TruncatedSeries, 3> field_jet(const HoloVectorField& X, const EvalPoint& p, int degree) {
  return {jet(X.f, p, degree, 3), jet(X.g, p, degree, 3), jet(X.h, p, degree, 3)};
}

std::array<TruncatedSeries, 3> bracket_series(const std::array<TruncatedSeries, 3>& X,
                                              const std::array<TruncatedSeries, 3>& Y) {
  const int d = X[0].degree() > 0 ? X[0].degree() - 1 : 0;
  std::array<TruncatedSeries, 3> out{TruncatedSeries(3, d), TruncatedSeries(3, d), TruncatedSeries(3, d)};
  std::array<TruncatedSeries, 3> Xd{X[0].with_degree(d), X[1].with_degree(d), X[2].with_degree(d)};
  std::array<TruncatedSeries, 3> Yd{Y[0].with_degree(d), Y[1].with_degree(d), Y[2].with_degree(d)};
  for (int k = 0; k < 3; ++k)
    for (int j = 0; j < 3; ++j) {
      out[k] += Xd[j] * Y[k].derivative(j);
      out[k] -= Yd[j] * X[k].derivative(j);
    }
  return out;
}

CVec3 commutator_at(const HoloVectorField& X, const HoloVectorField& Y, const EvalPoint& p) {
  auto b = bracket_series(field_jet(X, p, 1), field_jet(Y, p, 1));
  return {b[0].constant_term(), b[1].constant_term(), b[2].constant_term()};
}

double jacobi_at(const HoloVectorField& X, const HoloVectorField& Y, const HoloVectorField& Z, const EvalPoint& p) {
  auto jx = field_jet(X, p, 2), jy = field_jet(Y, p, 2), jz = field_jet(Z, p, 2);
  auto trunc = [](const std::array<TruncatedSeries, 3>& a) {
    return std::array<TruncatedSeries, 3>{a[0].with_degree(1), a[1].with_degree(1), a[2].with_degree(1)};
  };
  auto a = bracket_series(bracket_series(jx, jy), trunc(jz));
  auto b = bracket_series(bracket_series(jy, jz), trunc(jx));
  auto c = bracket_series(bracket_series(jz, jx), trunc(jy));
  double m = 0.0;
  for (int k = 0; k < 3; ++k) m = std::max(m, std::abs(a[k].constant_term() + b[k].constant_term() + c[k].constant_term()));
  return m;
}

namespace {

struct PointData {
  std::vector<CVec3> values;
  std::vector<std::vector<CVec3>> brackets;  // i < j
};

PointData point_data(const VectorFieldFrame& frame, const EvalPoint& p, std::size_t nbr) {
  const std::size_t n = frame.size();
  PointData d;
  std::vector<std::array<TruncatedSeries, 3>> jets;
  for (const auto& f : frame.fields) jets.push_back(field_jet(f, p, 1));
  for (std::size_t i = 0; i < n; ++i)
    d.values.push_back({jets[i][0].constant_term(), jets[i][1].constant_term(), jets[i][2].constant_term()});
  d.brackets.assign(nbr, std::vector<CVec3>(nbr));
  for (std::size_t i = 0; i < nbr; ++i)
    for (std::size_t j = i + 1; j < nbr; ++j) {
      auto b = bracket_series(jets[i], jets[j]);
      d.brackets[i][j] = {b[0].constant_term(), b[1].constant_term(), b[2].constant_term()};
    }
  return d;
}

}  // namespace

RealizationReport verify_realization(const VectorFieldFrame& frame, const StructureConstants& sc,
                                     const std::vector<EvalPoint>& points, double tol) {
  const int n = sc.dim();
  if (static_cast<int>(frame.size()) != n) throw UsageError("frame length does not match algebra dimension");
  RealizationReport rep;
  rep.points = points.size();
  for (std::size_t pi = 0; pi < points.size(); ++pi) {
    PointData d = point_data(frame, points[pi], frame.size());
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        CVec3 expect{};
        for (int k = 0; k < n; ++k) {
          double c = sc.c(i, j, k);
          if (c == 0.0) continue;
          for (int q = 0; q < 3; ++q) expect[q] += c * d.values[static_cast<std::size_t>(k)][q];
        }
        double r = 0.0;
        for (int q = 0; q < 3; ++q)
          r = std::max(r, std::abs(d.brackets[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)][q] - expect[q]));
        if (r > rep.max_residual || rep.worst_i < 0) {
          rep.max_residual = r;
          rep.worst_i = i, rep.worst_j = j, rep.worst_point = static_cast<int>(pi);
        }
      }
  }
  rep.pass = rep.max_residual <= tol;
  return rep;
}

ClosureFit fit_structure_constants(const VectorFieldFrame& frame, const std::vector<EvalPoint>& points) {
  const int n = static_cast<int>(frame.size());
  ClosureFit fit{StructureConstants(n), 0.0};
  std::vector<PointData> data;
  for (const auto& p : points) data.push_back(point_data(frame, p, frame.size()));
  const Eigen::Index rows = static_cast<Eigen::Index>(points.size()) * 6;
  Eigen::MatrixXd A(rows, n);
  for (std::size_t pi = 0; pi < points.size(); ++pi)
    for (int k = 0; k < n; ++k)
      for (int q = 0; q < 3; ++q) {
        A(static_cast<Eigen::Index>(pi * 6 + 2 * q), k) = data[pi].values[static_cast<std::size_t>(k)][q].real();
        A(static_cast<Eigen::Index>(pi * 6 + 2 * q + 1), k) = data[pi].values[static_cast<std::size_t>(k)][q].imag();
      }
  auto qr = A.colPivHouseholderQr();
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      Eigen::VectorXd b(rows);
      for (std::size_t pi = 0; pi < points.size(); ++pi)
        for (int q = 0; q < 3; ++q) {
          cplx v = data[pi].brackets[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)][q];
          b(static_cast<Eigen::Index>(pi * 6 + 2 * q)) = v.real();
          b(static_cast<Eigen::Index>(pi * 6 + 2 * q + 1)) = v.imag();
        }
      Eigen::VectorXd c = qr.solve(b);
      for (int k = 0; k < n; ++k) fit.constants.set(i, j, k, c(k));
      fit.max_residual = std::max(fit.max_residual, (A * c - b).lpNorm<Eigen::Infinity>());
    }
  return fit;
}

int real_rank_at(const VectorFieldFrame& frame, const EvalPoint& p) {
  if (frame.size() == 0) return 0;
  Eigen::MatrixXd M(6, static_cast<Eigen::Index>(frame.size()));
  for (std::size_t k = 0; k < frame.size(); ++k) {
    CVec3 v = frame.fields[k].at(p);
    for (int q = 0; q < 3; ++q) {
      M(2 * q, static_cast<Eigen::Index>(k)) = v[q].real();
      M(2 * q + 1, static_cast<Eigen::Index>(k)) = v[q].imag();
    }
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(M);
  const auto& s = svd.singularValues();
  if (s.size() == 0 || s(0) == 0.0) return 0;
  int r = 0;
  for (Eigen::Index k = 0; k < s.size(); ++k)
    if (s(k) > 1e-9 * s(0)) ++r;
  return r;
}

namespace {

EvalPoint from_holo(const CVec3& z) { return EvalPoint::real_locus(z[0], z[1], z[2]); }

}  // namespace

Trajectory integrate_flow(const HoloVectorField& field, const EvalPoint& p0, double t_end, double step) {
  if (!(step > 0.0)) throw UsageError("flow step must be positive");
  if (!(t_end >= 0.0)) throw UsageError("flow end time must be non-negative");
  if (!p0.on_real_locus(1e-12)) throw UsageError("flow start point must lie on the real locus");
  Trajectory tr;
  tr.step = step;
  CVec3 z = p0.holo();
  tr.times.push_back(0.0);
  tr.points.push_back(from_holo(z));
  const long nsteps = std::lround(t_end / step);
  auto rhs = [&](const CVec3& y, double t) {
    CVec3 v;
    try {
      v = field.at(from_holo(y));
    } catch (const EvalError& e) {
      throw FlowError(std::string("flow hit a singularity: ") + e.what(), t);
    }
    for (const auto& c : v)
      if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) throw FlowError("flow produced a non-finite value", t);
    return v;
  };
  auto axpy = [](const CVec3& a, double s, const CVec3& b) {
    return CVec3{a[0] + s * b[0], a[1] + s * b[1], a[2] + s * b[2]};
  };
  for (long n = 0; n < nsteps; ++n) {
    double t = static_cast<double>(n) * step;
    CVec3 k1 = rhs(z, t);
    CVec3 k2 = rhs(axpy(z, step / 2, k1), t);
    CVec3 k3 = rhs(axpy(z, step / 2, k2), t);
    CVec3 k4 = rhs(axpy(z, step, k3), t);
    for (int q = 0; q < 3; ++q) z[q] += step / 6.0 * (k1[q] + 2.0 * k2[q] + 2.0 * k3[q] + k4[q]);
    tr.times.push_back(static_cast<double>(n + 1) * step);
    tr.points.push_back(from_holo(z));
  }
  return tr;
}

std::vector<EvalPoint> polydisc_points(const EvalPoint& center, double radius, int n, unsigned long long seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  std::vector<EvalPoint> out;
  CVec3 c = center.holo();
  for (int k = 0; k < n; ++k) {
    CVec3 z;
    for (int q = 0; q < 3; ++q) {
      double r = radius * std::sqrt(U(rng));
      double th = 2.0 * std::numbers::pi * U(rng);
      z[q] = c[q] + std::polar(r, th);
    }
    out.push_back(from_holo(z));
  }
  return out;
}

}  // namespace crhs
