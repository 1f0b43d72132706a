#pragma once

#include <array>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "crhs/hypersurface.hpp"
#include "crhs/liealg.hpp"
#include "crhs/vfield.hpp"

namespace crhs {

struct ParamRange {
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();
  bool lo_open = false, hi_open = false;
  std::vector<double> exclude;
  std::vector<double> allowed;  // non-empty: value must be one of these
  bool contains(double x) const;
  std::string describe() const;
  bool operator==(const ParamRange&) const = default;
};

struct ParamSpec {
  ParamRange range;
  std::vector<double> samples;
  bool operator==(const ParamSpec&) const = default;
};

// Scalar expression in the parameters compared against zero.
struct ParamConstraint {
  std::string expr;
  std::string op;  // ">", ">=", "!="
  bool operator==(const ParamConstraint&) const = default;
};

// [re, im] as expression strings in the parameters.
using PointSpec = std::array<std::array<std::string, 2>, 3>;

struct CatalogEntry {
  std::string id;
  std::string section;
  std::string equation;  // "lhs = rhs" or Phi
  std::map<std::string, ParamSpec> parameters;  // samples are zipped across parameters
  std::vector<ParamConstraint> constraints;
  std::vector<std::string> domain;
  PointSpec base_point;
  std::vector<PointSpec> sample_base_points;  // optional, one per sample
  std::string solve_var = "v";
  std::string expected_levi;  // Definite, Indefinite, Degenerate, Nondegenerate
  std::optional<std::string> algebra;
  std::map<std::string, std::string> algebra_params;
  std::vector<std::array<std::string, 3>> frame;
  std::optional<bool> expected_umbilic;
  std::string notes;

  int sample_count() const;
  bool operator==(const CatalogEntry&) const = default;
};

// The 47 types of the appendix list.
std::vector<CatalogEntry> builtin_catalog();
// Orbits, quadrics and models with printed frames outside that list.
std::vector<CatalogEntry> model_catalog();
const CatalogEntry* find_entry(const std::vector<CatalogEntry>& entries, const std::string& id);

nlohmann::json to_json(const CatalogEntry& e);
CatalogEntry entry_from_json(const nlohmann::json& j, const std::string& path = "entry");
nlohmann::json catalog_to_json(const std::vector<CatalogEntry>& entries);
std::vector<CatalogEntry> catalog_from_json(const nlohmann::json& doc);
std::vector<CatalogEntry> load(const std::string& path);
void save(const std::vector<CatalogEntry>& entries, const std::string& path);

struct VerifyConfig {
  int points = 50;            // tangency sample points
  double radius = 0.3;        // tangency sampling radius
  double tol = 1e-8;          // tangency
  double realization_tol = 1e-9;
  int realization_points = 20;
  double realization_radius = 0.5;
  double levi_tol = kLeviTol;
  unsigned long long seed = 1;
  bool check_umbilic = false;
  std::map<std::string, double> param_override;
};

struct SampleReport {
  std::map<std::string, double> params;
  EvalPoint base;
  std::string levi;
  std::array<double, 2> eigenvalues{};
  std::optional<double> tangency;
  std::optional<double> realization;
  std::optional<double> closure;
  std::optional<int> rank;
  std::string umbilic;  // "", "true", "false", "unsupported"
  std::vector<std::string> failures;
  std::vector<std::string> notes;
  nlohmann::json to_json() const;
};

struct EntryReport {
  std::string id, section, expected_levi;
  std::vector<SampleReport> samples;
  bool pass = true;
  std::vector<std::string> failures;  // "sample k: reason"
  nlohmann::json to_json() const;
};

EntryReport verify_entry(const CatalogEntry& entry, const VerifyConfig& config = {});

struct SectionCount {
  int entries = 0;
  int failed = 0;
};

struct VerifySummary {
  std::vector<EntryReport> entries;
  std::map<std::string, SectionCount> sections;
  std::map<std::string, int> failure_kinds;
  int failed() const;
  nlohmann::json to_json() const;
  std::string table() const;
};

VerifySummary verify_all(const std::vector<CatalogEntry>& entries, const VerifyConfig& config = {});

// Parameter bindings for sample k (or the override), with the range check outcome.
ParamMap sample_params(const CatalogEntry& e, int k, const std::map<std::string, double>& override = {});
DefiningFunction entry_surface(const CatalogEntry& e, const ParamMap& params);
EvalPoint entry_base_point(const CatalogEntry& e, int k, const ParamMap& params);
VectorFieldFrame entry_frame(const CatalogEntry& e, const ParamMap& params);
RealCoord entry_solve_var(const CatalogEntry& e);
std::optional<StructureConstants> entry_algebra(const CatalogEntry& e, const ParamMap& params);

}  // namespace crhs
