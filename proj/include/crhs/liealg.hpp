#pragma once

#include <map>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

namespace crhs {

using RealMap = std::map<std::string, double>;

// [e_i, e_j] = sum_k c^k_ij e_k, stored for i < j (0-based).
class StructureConstants {
 public:
  StructureConstants() = default;
  explicit StructureConstants(int dim);

  int dim() const { return dim_; }
  // Antisymmetric access; i == j gives 0.
  double c(int i, int j, int k) const;
  // Sets c^k_ij and implies c^k_ji = -value.
  void set(int i, int j, int k, double value);
  // Adds the vector v to [e_i, e_j].
  void set_bracket(int i, int j, const Eigen::VectorXd& v);

  std::string name;

 private:
  int dim_ = 0;
  std::vector<double> c_;  // dim^3, full antisymmetric tensor
};

Eigen::VectorXd basis_vector(int dim, int i);

// Known labels: g5_19 ... g5_39, g5, su2_g2, sl2_g2, g5_35_ext, abelian_N.
// Parameter names: alpha, beta, gamma, h, p, eps.
StructureConstants table_algebra(const std::string& name, const RealMap& params = {});
std::vector<std::string> known_algebras();
// Parameter names a label accepts, with defaults.
RealMap algebra_defaults(const std::string& name);

Eigen::VectorXd bracket(const StructureConstants& sc, const Eigen::VectorXd& x, const Eigen::VectorXd& y);
double jacobi_defect(const StructureConstants& sc);

// Structure constants in the basis f_a = sum_i P(i, a) e_i.
StructureConstants change_basis(const StructureConstants& sc, const Eigen::MatrixXd& P);

inline constexpr double kRankTol = 1e-10;

// Columns are basis vectors in the e-basis.
struct Subspace {
  Eigen::MatrixXd basis;
  static Subspace span(int dim, const std::vector<int>& indices);  // coordinate span, 0-based
  int dim() const { return static_cast<int>(basis.cols()); }
};

int numeric_rank(const Eigen::MatrixXd& m, double tol = kRankTol);
// Distance of v from the column span of basis (least squares).
double span_residual(const Eigen::MatrixXd& basis, const Eigen::VectorXd& v);

bool is_abelian(const StructureConstants& sc, const Subspace& s);
bool is_subalgebra(const StructureConstants& sc, const Subspace& s);
bool is_ideal(const StructureConstants& sc, const Subspace& s);
bool lemma1_degeneracy_forced(const StructureConstants& sc, const std::vector<Subspace>& candidates = {});

struct AlgebraFingerprint {
  int center_dim = 0;
  std::vector<int> derived_series;       // starts at dim
  std::vector<int> lower_central_series; // starts at dim
  int derived_dim = 0;
  bool solvable = false;
  bool nilpotent = false;
  bool operator==(const AlgebraFingerprint&) const = default;
};

AlgebraFingerprint fingerprint(const StructureConstants& sc);

// Records {i, j, k, value}, 1-based indices, i < j, nonzero entries only.
nlohmann::json to_json(const StructureConstants& sc);
StructureConstants structure_constants_from_json(const nlohmann::json& j, int dim);
nlohmann::json to_json(const AlgebraFingerprint& f);

// Human-readable bracket table, e.g. "[e1,e5] = 2e1".
std::string describe(const StructureConstants& sc);

}  // namespace crhs
