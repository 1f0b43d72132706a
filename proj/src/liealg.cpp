#include "crhs/liealg.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "crhs/errors.hpp"
#include "crhs/expr.hpp"

namespace crhs {

StructureConstants::StructureConstants(int dim) : dim_(dim), c_(static_cast<std::size_t>(dim * dim * dim), 0.0) {
  if (dim < 1 || dim > 6) throw UsageError("algebra dimension must be in [1, 6]");
}

double StructureConstants::c(int i, int j, int k) const {
  return c_[static_cast<std::size_t>((i * dim_ + j) * dim_ + k)];
}

void StructureConstants::set(int i, int j, int k, double value) {
  if (i == j) throw UsageError("bracket [e_i, e_i] is zero");
  c_[static_cast<std::size_t>((i * dim_ + j) * dim_ + k)] = value;
  c_[static_cast<std::size_t>((j * dim_ + i) * dim_ + k)] = -value;
}

void StructureConstants::set_bracket(int i, int j, const Eigen::VectorXd& v) {
  for (int k = 0; k < dim_; ++k)
    if (v(k) != 0.0) set(i, j, k, c(i, j, k) + v(k));
}

Eigen::VectorXd basis_vector(int dim, int i) {
  Eigen::VectorXd v = Eigen::VectorXd::Zero(dim);
  v(i) = 1.0;
  return v;
}

namespace {

struct Builder {
  StructureConstants sc;
  explicit Builder(int dim, const std::string& name) : sc(dim) { sc.name = name; }
  // [e_i, e_j] += coef e_k, 1-based as in the tables
  Builder& b(int i, int j, std::initializer_list<std::pair<double, int>> terms) {
    Eigen::VectorXd v = Eigen::VectorXd::Zero(sc.dim());
    for (auto [coef, k] : terms) v(k - 1) += coef;
    sc.set_bracket(i - 1, j - 1, v);
    return *this;
  }
};

double param(const RealMap& m, const RealMap& defaults, const std::string& key) {
  auto it = m.find(key);
  if (it != m.end()) return it->second;
  return defaults.at(key);
}

const std::vector<std::string>& table_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> n;
    for (int k = 19; k <= 39; ++k) n.push_back("g5_" + std::to_string(k));
    n.insert(n.end(), {"g5", "su2_g2", "sl2_g2", "g5_35_ext"});
    return n;
  }();
  return names;
}

}  // namespace

std::vector<std::string> known_algebras() {
  auto n = table_names();
  n.push_back("abelian_N");
  return n;
}

RealMap algebra_defaults(const std::string& name) {
  static const std::map<std::string, RealMap> d = {
      {"g5_19", {{"alpha", 1.0}, {"beta", 1.0}}},
      {"g5_20", {{"alpha", 1.0}}},
      {"g5_23", {{"beta", 1.0}}},
      {"g5_24", {{"eps", 1.0}}},
      {"g5_25", {{"p", 1.0}, {"beta", 1.0}}},
      {"g5_26", {{"p", 1.0}, {"eps", 1.0}}},
      {"g5_28", {{"alpha", 1.0}}},
      {"g5_30", {{"h", 0.0}}},
      {"g5_32", {{"h", 0.0}}},
      {"g5_33", {{"beta", 1.0}, {"gamma", 1.0}}},
      {"g5_34", {{"alpha", 1.0}}},
      {"g5_35", {{"alpha", 0.0}, {"beta", 1.0}}},
      {"g5_35_ext", {{"alpha", 0.0}, {"beta", 1.0}}},
  };
  auto it = d.find(name);
  return it == d.end() ? RealMap{} : it->second;
}

StructureConstants table_algebra(const std::string& name, const RealMap& params) {
  if (name.rfind("abelian_", 0) == 0) {
    int n = 0;
    try {
      std::size_t used = 0;
      n = std::stoi(name.substr(8), &used);
      if (used != name.size() - 8) n = 0;
    } catch (const std::exception&) {
      n = 0;
    }
    if (n < 1 || n > 6) throw UsageError("abelian_N needs N in [1, 6]");
    StructureConstants sc(n);
    sc.name = name;
    return sc;
  }
  if (std::find(table_names().begin(), table_names().end(), name) == table_names().end()) {
    std::string list;
    for (const auto& k : known_algebras()) list += (list.empty() ? "" : ", ") + k;
    throw UsageError("unknown algebra '" + name + "'; known: " + list);
  }
  const RealMap defaults = algebra_defaults(name);
  for (const auto& [k, v] : params) {
    if (!defaults.count(k)) throw UsageError("algebra " + name + " has no parameter '" + k + "'");
    if (!std::isfinite(v)) throw UsageError("parameter '" + k + "' must be finite");
  }
  auto P = [&](const char* key) { return param(params, defaults, key); };
  auto require_nonzero = [&](const char* key) {
    if (P(key) == 0.0) throw UsageError(name + ": parameter " + key + " must be nonzero");
  };
  auto require_sign = [&](const char* key) {
    if (P(key) != 1.0 && P(key) != -1.0) throw UsageError(name + ": parameter " + key + " must be +1 or -1");
  };

  Builder B(name == "g5_35_ext" ? 6 : 5, name);
  const int n = name.rfind("g5_", 0) == 0 ? std::stoi(name.substr(3, 2)) : 0;
  if (name == "g5") {
    B.b(1, 2, {{2, 1}}).b(1, 3, {{-1, 2}}).b(1, 4, {{1, 5}}).b(2, 3, {{2, 3}}).b(2, 4, {{1, 4}}).b(2, 5, {{-1, 5}})
        .b(3, 5, {{1, 4}});
  } else if (name == "su2_g2") {
    B.b(1, 2, {{1, 3}}).b(1, 3, {{-1, 2}}).b(2, 3, {{1, 1}}).b(4, 5, {{1, 4}});
  } else if (name == "sl2_g2") {
    B.b(1, 2, {{2, 1}}).b(1, 3, {{-1, 2}}).b(2, 3, {{2, 3}}).b(4, 5, {{1, 4}});
  } else if (n >= 19 && n <= 29) {
    B.b(2, 3, {{1, 1}});
    double a = 0, be = 0, p = 0, e = 0;
    switch (n) {
      case 19:
        a = P("alpha"), be = P("beta");
        require_nonzero("beta");
        B.b(1, 5, {{1 + a, 1}}).b(2, 5, {{1, 2}}).b(3, 5, {{a, 3}}).b(4, 5, {{be, 4}});
        break;
      case 20:
        a = P("alpha");
        B.b(1, 5, {{1 + a, 1}}).b(2, 5, {{1, 2}}).b(3, 5, {{a, 3}}).b(4, 5, {{1, 1}, {1 + a, 4}});
        break;
      case 21:
        B.b(1, 5, {{2, 1}}).b(2, 5, {{1, 2}, {1, 3}}).b(3, 5, {{1, 3}, {1, 4}}).b(4, 5, {{1, 4}});
        break;
      case 22:
        B.b(2, 5, {{1, 3}}).b(4, 5, {{1, 4}});
        break;
      case 23:
        be = P("beta");
        require_nonzero("beta");
        B.b(1, 5, {{2, 1}}).b(2, 5, {{1, 2}, {1, 3}}).b(3, 5, {{1, 3}}).b(4, 5, {{be, 4}});
        break;
      case 24:
        e = P("eps");
        require_sign("eps");
        B.b(1, 5, {{2, 1}}).b(2, 5, {{1, 2}, {1, 3}}).b(3, 5, {{1, 3}}).b(4, 5, {{e, 1}, {2, 4}});
        break;
      case 25:
        p = P("p"), be = P("beta");
        require_nonzero("beta");
        B.b(1, 5, {{2 * p, 1}}).b(2, 5, {{p, 2}, {1, 3}}).b(3, 5, {{-1, 2}, {p, 3}}).b(4, 5, {{be, 4}});
        break;
      case 26:
        p = P("p"), e = P("eps");
        require_sign("eps");
        B.b(1, 5, {{2 * p, 1}}).b(2, 5, {{p, 2}, {1, 3}}).b(3, 5, {{-1, 2}, {p, 3}}).b(4, 5, {{e, 1}, {2 * p, 4}});
        break;
      case 27:
        B.b(1, 5, {{1, 1}}).b(3, 5, {{1, 3}, {1, 4}}).b(4, 5, {{1, 1}, {1, 4}});
        break;
      case 28:
        a = P("alpha");
        B.b(1, 5, {{1 + a, 1}}).b(2, 5, {{a, 2}}).b(3, 5, {{1, 3}, {1, 4}}).b(4, 5, {{1, 4}});
        break;
      case 29:
        B.b(1, 5, {{1, 1}}).b(2, 5, {{1, 2}}).b(3, 5, {{1, 4}});
        break;
    }
  } else if (n == 30) {
    double h = P("h");
    B.b(1, 5, {{2 + h, 1}}).b(2, 4, {{1, 1}}).b(2, 5, {{1 + h, 2}}).b(3, 4, {{1, 2}}).b(3, 5, {{h, 3}}).b(4, 5, {{1, 4}});
  } else if (n == 31) {
    B.b(1, 5, {{3, 1}}).b(2, 4, {{1, 1}}).b(2, 5, {{2, 2}}).b(3, 4, {{1, 2}}).b(3, 5, {{1, 3}}).b(4, 5, {{1, 3}, {1, 4}});
  } else if (n == 32) {
    double h = P("h");
    if (h != -1.0 && h != 0.0 && h != 1.0) throw UsageError("g5_32: parameter h must be -1, 0 or 1");
    B.b(1, 5, {{1, 1}}).b(2, 4, {{1, 1}}).b(2, 5, {{1, 2}}).b(3, 4, {{1, 2}}).b(3, 5, {{h, 1}, {1, 3}});
  } else if (n == 33) {
    B.b(1, 4, {{1, 1}}).b(2, 5, {{1, 2}}).b(3, 4, {{P("beta"), 3}}).b(3, 5, {{P("gamma"), 3}});
  } else if (n == 34) {
    B.b(1, 4, {{P("alpha"), 1}}).b(1, 5, {{1, 1}}).b(2, 4, {{1, 2}}).b(3, 4, {{1, 3}}).b(3, 5, {{1, 2}});
  } else if (n == 35) {
    double a = P("alpha"), be = P("beta");
    B.b(1, 4, {{be, 1}}).b(1, 5, {{a, 1}}).b(2, 4, {{1, 2}}).b(2, 5, {{-1, 3}}).b(3, 4, {{1, 3}}).b(3, 5, {{1, 2}});
    if (name == "g5_35_ext") B.b(4, 6, {{be - 2, 6}}).b(5, 6, {{a, 6}});
  } else if (n == 36) {
    B.b(1, 4, {{1, 1}}).b(2, 3, {{1, 1}}).b(2, 4, {{1, 2}}).b(2, 5, {{-1, 2}}).b(3, 5, {{1, 3}});
  } else if (n == 37) {
    B.b(1, 4, {{2, 1}}).b(2, 3, {{1, 1}}).b(2, 4, {{1, 2}}).b(2, 5, {{-1, 3}}).b(3, 4, {{1, 3}}).b(3, 5, {{1, 2}});
  } else if (n == 38) {
    B.b(1, 4, {{1, 1}}).b(2, 5, {{1, 2}}).b(4, 5, {{1, 3}});
  } else if (n == 39) {
    B.b(1, 4, {{1, 1}}).b(1, 5, {{-1, 2}}).b(2, 4, {{1, 2}}).b(2, 5, {{1, 1}}).b(4, 5, {{1, 3}});
  }
  return B.sc;
}

Eigen::VectorXd bracket(const StructureConstants& sc, const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
  const int n = sc.dim();
  if (x.size() != n || y.size() != n) throw UsageError("bracket: dimension mismatch");
  Eigen::VectorXd r = Eigen::VectorXd::Zero(n);
  for (int i = 0; i < n; ++i) {
    if (x(i) == 0.0) continue;
    for (int j = 0; j < n; ++j) {
      double s = x(i) * y(j);
      if (s == 0.0) continue;
      for (int k = 0; k < n; ++k) r(k) += s * sc.c(i, j, k);
    }
  }
  return r;
}

double jacobi_defect(const StructureConstants& sc) {
  const int n = sc.dim();
  double m = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        auto ei = basis_vector(n, i), ej = basis_vector(n, j), ek = basis_vector(n, k);
        Eigen::VectorXd s = bracket(sc, bracket(sc, ei, ej), ek) + bracket(sc, bracket(sc, ej, ek), ei) +
                            bracket(sc, bracket(sc, ek, ei), ej);
        m = std::max(m, s.lpNorm<Eigen::Infinity>());
      }
  return m;
}

StructureConstants change_basis(const StructureConstants& sc, const Eigen::MatrixXd& P) {
  const int n = sc.dim();
  Eigen::MatrixXd Pinv = P.inverse();
  StructureConstants r(n);
  r.name = sc.name;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) {
      Eigen::VectorXd v = Pinv * bracket(sc, P.col(a), P.col(b));
      for (int k = 0; k < n; ++k) r.set(a, b, k, v(k));
    }
  return r;
}

Subspace Subspace::span(int dim, const std::vector<int>& indices) {
  Subspace s;
  s.basis = Eigen::MatrixXd::Zero(dim, static_cast<Eigen::Index>(indices.size()));
  for (std::size_t k = 0; k < indices.size(); ++k) s.basis(indices[k], static_cast<Eigen::Index>(k)) = 1.0;
  return s;
}

int numeric_rank(const Eigen::MatrixXd& m, double tol) {
  if (m.size() == 0) return 0;
  Eigen::FullPivLU<Eigen::MatrixXd> lu(m);
  lu.setThreshold(tol);
  return static_cast<int>(lu.rank());
}

double span_residual(const Eigen::MatrixXd& basis, const Eigen::VectorXd& v) {
  if (basis.cols() == 0) return v.lpNorm<Eigen::Infinity>();
  Eigen::VectorXd x = basis.colPivHouseholderQr().solve(v);
  return (basis * x - v).lpNorm<Eigen::Infinity>();
}

namespace {

void check_subspace(const StructureConstants& sc, const Subspace& s) {
  if (s.basis.rows() != sc.dim()) throw UsageError("subspace dimension mismatch");
  if (numeric_rank(s.basis) != s.dim()) throw UsageError("subspace basis is linearly dependent");
}

}  // namespace

bool is_abelian(const StructureConstants& sc, const Subspace& s) {
  check_subspace(sc, s);
  for (int a = 0; a < s.dim(); ++a)
    for (int b = a + 1; b < s.dim(); ++b)
      if (bracket(sc, s.basis.col(a), s.basis.col(b)).lpNorm<Eigen::Infinity>() > kRankTol) return false;
  return true;
}

bool is_subalgebra(const StructureConstants& sc, const Subspace& s) {
  check_subspace(sc, s);
  for (int a = 0; a < s.dim(); ++a)
    for (int b = a + 1; b < s.dim(); ++b)
      if (span_residual(s.basis, bracket(sc, s.basis.col(a), s.basis.col(b))) > kRankTol) return false;
  return true;
}

bool is_ideal(const StructureConstants& sc, const Subspace& s) {
  check_subspace(sc, s);
  for (int i = 0; i < sc.dim(); ++i)
    for (int a = 0; a < s.dim(); ++a)
      if (span_residual(s.basis, bracket(sc, basis_vector(sc.dim(), i), s.basis.col(a))) > kRankTol) return false;
  return true;
}

bool lemma1_degeneracy_forced(const StructureConstants& sc, const std::vector<Subspace>& candidates) {
  if (sc.dim() != 5) throw UsageError("degeneracy lemma applies to 5-dimensional algebras");
  for (const auto& s : candidates)
    if (s.dim() == 4 && is_abelian(sc, s)) return true;
  for (int skip = 0; skip < 5; ++skip) {
    std::vector<int> idx;
    for (int k = 0; k < 5; ++k)
      if (k != skip) idx.push_back(k);
    if (is_abelian(sc, Subspace::span(5, idx))) return true;
  }
  return false;
}

namespace {

// Orthonormal basis of the column span.
Eigen::MatrixXd span_basis(const Eigen::MatrixXd& m) {
  if (m.cols() == 0) return Eigen::MatrixXd(m.rows(), 0);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeThinU);
  const auto& sv = svd.singularValues();
  int r = 0;
  while (r < sv.size() && sv(r) > kRankTol) ++r;
  return svd.matrixU().leftCols(r);
}

Eigen::MatrixXd brackets_of(const StructureConstants& sc, const Eigen::MatrixXd& A, const Eigen::MatrixXd& B) {
  Eigen::MatrixXd out(sc.dim(), A.cols() * B.cols());
  Eigen::Index c = 0;
  for (Eigen::Index a = 0; a < A.cols(); ++a)
    for (Eigen::Index b = 0; b < B.cols(); ++b) out.col(c++) = bracket(sc, A.col(a), B.col(b));
  return out;
}

}  // namespace

AlgebraFingerprint fingerprint(const StructureConstants& sc) {
  if (jacobi_defect(sc) > kRankTol) throw UsageError("fingerprint: structure constants violate the Jacobi identity");
  const int n = sc.dim();
  AlgebraFingerprint f;
  // center: x with [x, e_j] = 0 for all j
  Eigen::MatrixXd ad(n * n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) ad(j * n + k, i) = sc.c(i, j, k);
  f.center_dim = n - numeric_rank(ad);

  Eigen::MatrixXd I = Eigen::MatrixXd::Identity(n, n);
  Eigen::MatrixXd D = I;
  f.derived_series.push_back(n);
  for (;;) {
    D = span_basis(brackets_of(sc, D, D));
    int d = static_cast<int>(D.cols());
    if (d == f.derived_series.back()) break;
    f.derived_series.push_back(d);
    if (d == 0) break;
  }
  Eigen::MatrixXd C = I;
  f.lower_central_series.push_back(n);
  for (;;) {
    C = span_basis(brackets_of(sc, I, C));
    int d = static_cast<int>(C.cols());
    if (d == f.lower_central_series.back()) break;
    f.lower_central_series.push_back(d);
    if (d == 0) break;
  }
  f.derived_dim = f.derived_series.size() > 1 ? f.derived_series[1] : n;
  f.solvable = f.derived_series.back() == 0;
  f.nilpotent = f.lower_central_series.back() == 0;
  return f;
}

nlohmann::json to_json(const StructureConstants& sc) {
  nlohmann::json arr = nlohmann::json::array();
  for (int i = 0; i < sc.dim(); ++i)
    for (int j = i + 1; j < sc.dim(); ++j)
      for (int k = 0; k < sc.dim(); ++k)
        if (sc.c(i, j, k) != 0.0) arr.push_back({{"i", i + 1}, {"j", j + 1}, {"k", k + 1}, {"value", sc.c(i, j, k)}});
  return arr;
}

StructureConstants structure_constants_from_json(const nlohmann::json& j, int dim) {
  if (!j.is_array()) throw SchemaError("structure_constants: expected an array of {i, j, k, value}");
  StructureConstants sc(dim);
  for (const auto& r : j) {
    for (const char* key : {"i", "j", "k", "value"})
      if (!r.contains(key) || !r[key].is_number())
        throw SchemaError(std::string("structure_constants: missing or non-numeric field '") + key + "'");
    int a = r["i"].get<int>(), b = r["j"].get<int>(), k = r["k"].get<int>();
    if (a < 1 || b < 1 || k < 1 || a > dim || b > dim || k > dim)
      throw SchemaError("structure_constants: index out of range");
    if (a >= b) throw SchemaError("structure_constants: field 'i' must be less than 'j'");
    sc.set(a - 1, b - 1, k - 1, r["value"].get<double>());
  }
  return sc;
}

nlohmann::json to_json(const AlgebraFingerprint& f) {
  return {{"center_dim", f.center_dim},     {"derived_series", f.derived_series},
          {"lower_central_series", f.lower_central_series}, {"derived_dim", f.derived_dim},
          {"solvable", f.solvable},          {"nilpotent", f.nilpotent}};
}

std::string describe(const StructureConstants& sc) {
  std::ostringstream os;
  bool any = false;
  for (int i = 0; i < sc.dim(); ++i)
    for (int j = i + 1; j < sc.dim(); ++j) {
      std::string terms;
      for (int k = 0; k < sc.dim(); ++k) {
        double c = sc.c(i, j, k);
        if (c == 0.0) continue;
        std::string coef = c == 1.0 ? "" : c == -1.0 ? "-" : format_complex(c);
        if (!terms.empty()) terms += (c < 0 ? " " : " + ");
        terms += coef + "e" + std::to_string(k + 1);
      }
      if (terms.empty()) continue;
      os << "[e" << i + 1 << ",e" << j + 1 << "] = " << terms << "\n";
      any = true;
    }
  if (!any) os << "abelian\n";
  return os.str();
}

}  // namespace crhs
