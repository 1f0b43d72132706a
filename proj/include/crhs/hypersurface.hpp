#pragma once

#include <array>
#include <string>
#include <vector>

#include "crhs/expr.hpp"
#include "crhs/vfield.hpp"

namespace crhs {

// "lhs = rhs" gives lhs - (rhs); text without '=' is Phi itself.
Expr parse_equation(const std::string& text, const ParamMap& params = {});

// Phi real on the real locus; domain constraints must all be positive.
struct DefiningFunction {
  Expr phi;
  std::vector<Expr> domain;

  DefiningFunction() = default;
  explicit DefiningFunction(Expr phi_, std::vector<Expr> domain_ = {}) : phi(std::move(phi_)), domain(std::move(domain_)) {}
  static DefiningFunction parse(const std::string& phi, const std::vector<std::string>& domain = {},
                                const ParamMap& params = {});

  // Smallest constraint value (+inf if unconstrained); -inf if a constraint fails to evaluate.
  double domain_margin(const EvalPoint& p) const;
  bool in_domain(const EvalPoint& p) const { return domain_margin(p) > 0.0; }
  double value(const EvalPoint& p) const;  // Re Phi
};

inline constexpr double kOnSurfaceTol = 1e-12;
inline constexpr int kNewtonMaxIter = 50;

EvalPoint find_point(const DefiningFunction& df, const EvalPoint& seed, RealCoord solve_var);

std::vector<EvalPoint> sample_points(const DefiningFunction& df, const EvalPoint& base, int n, double radius,
                                     unsigned long long rng_seed, RealCoord solve_var = RealCoord::v);

double tangency_residual(const HoloVectorField& field, const DefiningFunction& df, const EvalPoint& p);

// Max |Phi| along the RK4 trajectory of a field; stops early at a singularity.
struct FlowDrift {
  double max_abs_phi = 0.0;
  double t_reached = 0.0;
  bool completed = false;
  std::string error;
};
inline constexpr double kFlowDriftTol = 1e-6;
FlowDrift flow_drift(const HoloVectorField& field, const DefiningFunction& df, const EvalPoint& p0, double t_end,
                     double step);

enum class LeviKind { Definite, Indefinite, Degenerate };
const char* levi_name(LeviKind k);

struct LeviClass {
  LeviKind kind = LeviKind::Degenerate;
  std::array<double, 2> eigenvalues{};  // ascending
};

inline constexpr double kLeviTol = 1e-7;

// Levi form H_jk = d2 Phi / dz_j dzbar_k restricted to the complex tangent,
// L(s) = (Bs)^T H conj(Bs). Kernel basis is orthonormal; `rebase` (2x2
// unitary) is applied to it, which must not change the class.
struct LeviData {
  Eigen::Matrix3cd H;
  Eigen::Vector3cd gradient;
  Eigen::Matrix<cplx, 3, 2> kernel;
  Eigen::Matrix2cd L;
};
LeviData levi_form(const DefiningFunction& df, const EvalPoint& p,
                   const Eigen::Matrix2cd& rebase = Eigen::Matrix2cd::Identity());
LeviClass levi_classify(const DefiningFunction& df, const EvalPoint& p, double tol = kLeviTol,
                        const Eigen::Matrix2cd& rebase = Eigen::Matrix2cd::Identity());

using HoloMap = std::array<Expr, 3>;
double map_image_residual(const HoloMap& map, const DefiningFunction& source, const DefiningFunction& target,
                          const std::vector<EvalPoint>& points);

}  // namespace crhs
