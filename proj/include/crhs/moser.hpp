#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "crhs/hypersurface.hpp"
#include "crhs/series.hpp"

namespace crhs {

// Polynomials in (z1, z2, zc1, zc2), degree <= 4.
using Poly = TruncatedSeries;
Poly zero_poly();
// Coefficient of z1^a1 z2^a2 zc1^b1 zc2^b2.
cplx poly_coeff(const Poly& p, int a1, int a2, int b1, int b2);
void set_poly_coeff(Poly& p, int a1, int a2, int b1, int b2, cplx value);
Poly parse_poly(const std::string& text);  // conjugates allowed; must be polynomial of degree <= 4
std::string poly_to_string(const Poly& p, double drop = 1e-13);

// <a, b> = sum_jk m(j,k) a_j conj(b_k).
struct HermitianForm2 {
  Eigen::Matrix2cd m = Eigen::Matrix2cd::Zero();
  static HermitianForm2 indefinite_model();  // z1 zc2 + z2 zc1
  static HermitianForm2 definite_model();    // |z1|^2 + |z2|^2
  bool is_hermitian(double tol = 1e-12) const;
  Poly as_poly() const;
};

// v = F(z, zbar, u); coefficients with weight |a| + |b| + 2m <= 4.
struct Jet4 {
  TruncatedSeries F{5, 4};  // variables z1, z2, zc1, zc2, u
  cplx coeff(int a1, int a2, int b1, int b2, int m) const;
  double reality_defect() const;
  nlohmann::json to_json(double drop = 1e-14) const;
};

struct N220Coeffs {
  double lambda1 = 0, lambda2 = 0, lambda3 = 0, mu1 = 0, mu2 = 0;
  std::array<double, 5> as_array() const { return {lambda1, lambda2, lambda3, mu1, mu2}; }
  double max_abs() const;
};

struct GraphJetResult {
  Jet4 jet;                   // normalized coordinates
  HermitianForm2 levi;        // model form after normalization
  std::string model;          // "indefinite" or "definite"
  std::vector<std::string> substitutions;
  // Expansion in the original coordinates after translation only; empty if
  // the surface is not a graph over v there.
  std::optional<Jet4> raw;
};

GraphJetResult graph_jet(const DefiningFunction& df, const EvalPoint& p);

// (k, l)-component at u = 0.
Poly bidegree(const Jet4& j, int k, int l);
// Raw jet as a polynomial in (x1, y1, x2, y2, u), degree <= 4.
TruncatedSeries real_expansion(const Jet4& j);

std::array<Poly, 2> solve_f2(const Poly& F21, const HermitianForm2& levi);
Poly hermitian_pairing(const std::array<Poly, 2>& a, const std::array<Poly, 2>& b, const HermitianForm2& levi);
Poly h22(const Poly& F22, const std::array<Poly, 2>& f2, const HermitianForm2& levi);
N220Coeffs n220_project(const Poly& H22, const HermitianForm2& levi);

// Basis polynomials b1..b5 paired with (lambda1, lambda2, lambda3, mu1, mu2).
std::array<Poly, 5> n220_basis(const HermitianForm2& levi);

struct MoserReport {
  EvalPoint base;
  GraphJetResult graph;
  Poly F21 = zero_poly(), F22 = zero_poly(), H22 = zero_poly();
  std::array<Poly, 2> f2{zero_poly(), zero_poly()};
  N220Coeffs n220;
  bool umbilic = false;
  double tol = 1e-8;
  nlohmann::json to_json() const;
};

inline constexpr double kUmbilicTol = 1e-8;

MoserReport moser_pipeline(const DefiningFunction& df, const EvalPoint& p, double tol = kUmbilicTol);
bool is_umbilic(const DefiningFunction& df, const EvalPoint& p, double tol = kUmbilicTol);

}  // namespace crhs
