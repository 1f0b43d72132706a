#pragma once

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "crhs/expr.hpp"
#include "crhs/liealg.hpp"
#include "crhs/series.hpp"

namespace crhs {

using CVec3 = std::array<cplx, 3>;

// (1,0)-field f d/dz1 + g d/dz2 + h d/dw.
struct HoloVectorField {
  Expr f, g, h;

  HoloVectorField() = default;
  HoloVectorField(Expr f_, Expr g_, Expr h_);  // throws UsageError on conjugate variables
  static HoloVectorField parse(const std::string& f, const std::string& g, const std::string& h,
                               const ParamMap& params = {});
  const Expr& operator[](int k) const { return k == 0 ? f : k == 1 ? g : h; }
  CVec3 at(const EvalPoint& p) const;
  std::array<std::string, 3> to_strings() const;
};

struct VectorFieldFrame {
  std::vector<HoloVectorField> fields;
  std::string label;
  std::size_t size() const { return fields.size(); }
};

// Holomorphic partials (d/dz1, d/dz2, d/dw) of phi at p, conjugates held fixed.
CVec3 holomorphic_gradient(const Expr& phi, const EvalPoint& p);

cplx apply_to(const HoloVectorField& field, const Expr& phi, const EvalPoint& p);
CVec3 commutator_at(const HoloVectorField& X, const HoloVectorField& Y, const EvalPoint& p);

// Component jets of a field in (z1, z2, w) around p.
std::array<TruncatedSeries, 3> field_jet(const HoloVectorField& X, const EvalPoint& p, int degree);
// [X, Y] as jets; degree drops by one.
std::array<TruncatedSeries, 3> bracket_series(const std::array<TruncatedSeries, 3>& X,
                                              const std::array<TruncatedSeries, 3>& Y);
// Cyclic sum [[X,Y],Z] + [[Y,Z],X] + [[Z,X],Y] at p, infinity norm.
double jacobi_at(const HoloVectorField& X, const HoloVectorField& Y, const HoloVectorField& Z, const EvalPoint& p);

struct RealizationReport {
  double max_residual = 0.0;
  bool pass = false;
  int worst_i = -1, worst_j = -1, worst_point = -1;  // 0-based
  std::size_t points = 0;
};

RealizationReport verify_realization(const VectorFieldFrame& frame, const StructureConstants& sc,
                                     const std::vector<EvalPoint>& points, double tol = 1e-9);

// Real constants c^k_ij fitted jointly over points; residual is the worst
// pointwise misfit. Measures whether the real span of the frame closes.
struct ClosureFit {
  StructureConstants constants;
  double max_residual = 0.0;
};
ClosureFit fit_structure_constants(const VectorFieldFrame& frame, const std::vector<EvalPoint>& points);

int real_rank_at(const VectorFieldFrame& frame, const EvalPoint& p);

struct Trajectory {
  std::vector<double> times;
  std::vector<EvalPoint> points;
  double step = 0.0;
};

class FlowError : public std::runtime_error {
 public:
  FlowError(const std::string& msg, double t_reached)
      : std::runtime_error(msg + " (t = " + std::to_string(t_reached) + ")"), t_(t_reached) {}
  double t_reached() const { return t_; }

 private:
  double t_;
};

Trajectory integrate_flow(const HoloVectorField& field, const EvalPoint& p0, double t_end, double step);

// Random points in the polydisc of the given radius around center (holomorphic coords).
std::vector<EvalPoint> polydisc_points(const EvalPoint& center, double radius, int n, unsigned long long seed);

}  // namespace crhs
