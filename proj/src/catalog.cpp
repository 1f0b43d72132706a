#include "crhs/catalog.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "crhs/moser.hpp"

namespace crhs {

using nlohmann::json;

namespace {

std::string fmt_double(double x) {
  char buf[64];
  auto r = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, r.ptr);
}

// Shortest decimal form, or nullopt if s is not a plain number.
std::optional<double> plain_number(const std::string& s) {
  double x = 0;
  auto r = std::from_chars(s.data(), s.data() + s.size(), x);
  if (r.ec != std::errc() || r.ptr != s.data() + s.size()) return std::nullopt;
  if (fmt_double(x) != s) return std::nullopt;
  return x;
}

bool near_value(double a, double b) { return std::abs(a - b) <= 1e-12 * (1.0 + std::abs(b)); }

double eval_const(const std::string& text, const ParamMap& params, const std::string& what) {
  Expr e = parse(text, params);
  for (int k = 0; k < kNumVars; ++k)
    if (uses_var(e, static_cast<Var>(k))) throw SchemaError(what + ": expression '" + text + "' must be constant");
  cplx v = eval(e, EvalPoint{});
  if (std::abs(v.imag()) > 1e-12 * (1.0 + std::abs(v.real())))
    throw SchemaError(what + ": expression '" + text + "' is not real");
  return v.real();
}

std::uint64_t mix_seed(std::uint64_t seed, const std::string& id, int sample) {
  std::uint64_t h = 1469598103934665603ULL;  // FNV-1a
  for (unsigned char ch : id) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  std::uint64_t z = seed + h + 0x9E3779B97F4A7C15ULL * static_cast<std::uint64_t>(sample + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

const std::vector<std::string>& levi_labels() {
  static const std::vector<std::string> l = {"Definite", "Indefinite", "Degenerate", "Nondegenerate"};
  return l;
}

bool levi_matches(const std::string& expected, LeviKind got) {
  if (expected == "Nondegenerate") return got != LeviKind::Degenerate;
  return expected == levi_name(got);
}

bool known_algebra(const std::string& label) {
  if (label.rfind("abelian_", 0) == 0) {
    try {
      table_algebra(label);
      return true;
    } catch (const std::exception&) {
      return false;
    }
  }
  auto k = known_algebras();
  return std::find(k.begin(), k.end(), label) != k.end();
}

}  // namespace

bool ParamRange::contains(double x) const {
  if (!std::isfinite(x)) return false;
  if (!allowed.empty()) {
    bool hit = false;
    for (double a : allowed) hit = hit || near_value(x, a);
    if (!hit) return false;
  }
  if (x < lo || (lo_open && x == lo)) return false;
  if (x > hi || (hi_open && x == hi)) return false;
  for (double e : exclude)
    if (near_value(x, e)) return false;
  return true;
}

std::string ParamRange::describe() const {
  std::string s;
  if (!allowed.empty()) {
    s = "{";
    for (std::size_t k = 0; k < allowed.size(); ++k) s += (k ? ", " : "") + fmt_double(allowed[k]);
    s += "}";
  } else {
    s = std::string(lo_open || std::isinf(lo) ? "(" : "[") + (std::isinf(lo) ? "-inf" : fmt_double(lo)) + ", " +
        (std::isinf(hi) ? "inf" : fmt_double(hi)) + (hi_open || std::isinf(hi) ? ")" : "]");
  }
  if (!exclude.empty()) {
    s += " \\ {";
    for (std::size_t k = 0; k < exclude.size(); ++k) s += (k ? ", " : "") + fmt_double(exclude[k]);
    s += "}";
  }
  return s;
}

int CatalogEntry::sample_count() const {
  std::size_t n = 1;
  for (const auto& [name, spec] : parameters) n = std::max(n, spec.samples.size());
  return static_cast<int>(n);
}

const CatalogEntry* find_entry(const std::vector<CatalogEntry>& entries, const std::string& id) {
  for (const auto& e : entries)
    if (e.id == id) return &e;
  return nullptr;
}

// ---- JSON ----

namespace {

json point_json(const PointSpec& p) {
  json j = json::object();
  const char* names[] = {"z1", "z2", "w"};
  for (int k = 0; k < 3; ++k) {
    json c = json::array();
    for (int q = 0; q < 2; ++q) {
      const std::string& s = p[static_cast<std::size_t>(k)][static_cast<std::size_t>(q)];
      if (auto x = plain_number(s)) c.push_back(*x);
      else c.push_back(s);
    }
    j[names[k]] = c;
  }
  return j;
}

json range_json(const ParamRange& r) {
  json j = json::object();
  if (!std::isinf(r.lo)) j["lo"] = r.lo;
  if (!std::isinf(r.hi)) j["hi"] = r.hi;
  if (r.lo_open) j["lo_open"] = true;
  if (r.hi_open) j["hi_open"] = true;
  if (!r.exclude.empty()) j["exclude"] = r.exclude;
  if (!r.allowed.empty()) j["allowed"] = r.allowed;
  return j;
}

struct Reader {
  const json& j;
  std::string path;

  [[noreturn]] void fail(const std::string& field, const std::string& msg) const {
    throw SchemaError(path + "." + field + ": " + msg);
  }
  const json& req(const std::string& field) const {
    if (!j.is_object()) throw SchemaError(path + ": expected an object");
    auto it = j.find(field);
    if (it == j.end()) fail(field, "missing required field");
    return *it;
  }
  const json* opt(const std::string& field) const {
    auto it = j.find(field);
    return it == j.end() || it->is_null() ? nullptr : &*it;
  }
  std::string str(const std::string& field, const json& v) const {
    if (!v.is_string()) fail(field, "expected a string");
    return v.get<std::string>();
  }
  double num(const std::string& field, const json& v) const {
    if (!v.is_number()) fail(field, "expected a number");
    return v.get<double>();
  }
};

std::vector<double> num_list(const Reader& r, const std::string& field, const json& v) {
  if (!v.is_array()) r.fail(field, "expected an array of numbers");
  std::vector<double> out;
  for (const auto& x : v) out.push_back(r.num(field, x));
  return out;
}

PointSpec point_from_json(const Reader& r, const std::string& field, const json& v) {
  if (!v.is_object()) r.fail(field, "expected {z1, z2, w}");
  PointSpec p;
  const char* names[] = {"z1", "z2", "w"};
  for (int k = 0; k < 3; ++k) {
    auto it = v.find(names[k]);
    std::string f = field + "." + names[k];
    if (it == v.end()) r.fail(f, "missing required field");
    if (!it->is_array() || it->size() != 2) r.fail(f, "expected [re, im]");
    for (int q = 0; q < 2; ++q) {
      const json& c = (*it)[static_cast<std::size_t>(q)];
      std::string s;
      if (c.is_number()) s = fmt_double(c.get<double>());
      else if (c.is_string()) s = c.get<std::string>();
      else r.fail(f, "components must be numbers or expression strings");
      p[static_cast<std::size_t>(k)][static_cast<std::size_t>(q)] = s;
    }
  }
  return p;
}

}  // namespace

json to_json(const CatalogEntry& e) {
  json j;
  j["id"] = e.id;
  j["section"] = e.section;
  j["equation"] = e.equation;
  json params = json::object();
  for (const auto& [name, spec] : e.parameters) params[name] = {{"range", range_json(spec.range)}, {"samples", spec.samples}};
  j["parameters"] = params;
  if (!e.constraints.empty()) {
    json c = json::array();
    for (const auto& k : e.constraints) c.push_back({{"expr", k.expr}, {"op", k.op}});
    j["constraints"] = c;
  }
  j["domain"] = e.domain;
  j["base_point"] = point_json(e.base_point);
  if (!e.sample_base_points.empty()) {
    json s = json::array();
    for (const auto& p : e.sample_base_points) s.push_back(point_json(p));
    j["sample_base_points"] = s;
  }
  j["solve_var"] = e.solve_var;
  j["expected_levi"] = e.expected_levi;
  if (e.algebra) j["algebra"] = *e.algebra;
  if (!e.algebra_params.empty()) j["algebra_params"] = e.algebra_params;
  if (!e.frame.empty()) {
    json f = json::array();
    for (const auto& t : e.frame) f.push_back({t[0], t[1], t[2]});
    j["frame"] = f;
  }
  if (e.expected_umbilic) j["expected_umbilic"] = *e.expected_umbilic;
  j["notes"] = e.notes;
  return j;
}

CatalogEntry entry_from_json(const json& j, const std::string& path) {
  Reader r{j, path};
  CatalogEntry e;
  e.id = r.str("id", r.req("id"));
  r.path = path + "[" + e.id + "]";
  e.section = r.str("section", r.req("section"));
  e.equation = r.str("equation", r.req("equation"));
  if (const json* p = r.opt("parameters")) {
    if (!p->is_object()) r.fail("parameters", "expected an object");
    for (const auto& [name, spec] : p->items()) {
      std::string f = "parameters." + name;
      if (!spec.is_object()) r.fail(f, "expected {range, samples}");
      ParamSpec ps;
      if (auto it = spec.find("range"); it != spec.end()) {
        const json& rg = *it;
        if (!rg.is_object()) r.fail(f + ".range", "expected an object");
        if (rg.contains("lo")) ps.range.lo = r.num(f + ".range.lo", rg["lo"]);
        if (rg.contains("hi")) ps.range.hi = r.num(f + ".range.hi", rg["hi"]);
        if (rg.contains("lo_open")) ps.range.lo_open = rg["lo_open"].get<bool>();
        if (rg.contains("hi_open")) ps.range.hi_open = rg["hi_open"].get<bool>();
        if (rg.contains("exclude")) ps.range.exclude = num_list(r, f + ".range.exclude", rg["exclude"]);
        if (rg.contains("allowed")) ps.range.allowed = num_list(r, f + ".range.allowed", rg["allowed"]);
      }
      auto it = spec.find("samples");
      if (it == spec.end()) r.fail(f + ".samples", "missing required field");
      ps.samples = num_list(r, f + ".samples", *it);
      if (ps.samples.empty()) r.fail(f + ".samples", "needs at least one sample");
      e.parameters[name] = ps;
    }
  }
  const int ns = e.sample_count();
  for (const auto& [name, spec] : e.parameters)
    if (spec.samples.size() != 1 && static_cast<int>(spec.samples.size()) != ns)
      r.fail("parameters." + name + ".samples", "sample lists must have equal length (or length 1)");
  if (const json* c = r.opt("constraints")) {
    if (!c->is_array()) r.fail("constraints", "expected an array");
    for (const auto& k : *c) {
      Reader kr{k, r.path + ".constraints"};
      ParamConstraint pc{kr.str("expr", kr.req("expr")), kr.str("op", kr.req("op"))};
      if (pc.op != ">" && pc.op != ">=" && pc.op != "!=") r.fail("constraints.op", "must be one of >, >=, !=");
      e.constraints.push_back(pc);
    }
  }
  if (const json* d = r.opt("domain")) {
    if (!d->is_array()) r.fail("domain", "expected an array of expression strings");
    for (const auto& x : *d) e.domain.push_back(r.str("domain", x));
  }
  e.base_point = point_from_json(r, "base_point", r.req("base_point"));
  if (const json* s = r.opt("sample_base_points")) {
    if (!s->is_array()) r.fail("sample_base_points", "expected an array");
    for (const auto& p : *s) e.sample_base_points.push_back(point_from_json(r, "sample_base_points", p));
    if (static_cast<int>(e.sample_base_points.size()) != ns)
      r.fail("sample_base_points", "needs one point per parameter sample");
  }
  if (const json* s = r.opt("solve_var")) e.solve_var = r.str("solve_var", *s);
  try {
    real_coord_from_name(e.solve_var);
  } catch (const std::exception&) {
    r.fail("solve_var", "unknown real coordinate '" + e.solve_var + "'");
  }
  e.expected_levi = r.str("expected_levi", r.req("expected_levi"));
  {
    const auto& l = levi_labels();
    if (std::find(l.begin(), l.end(), e.expected_levi) == l.end())
      r.fail("expected_levi", "unknown label '" + e.expected_levi + "'; expected Definite, Indefinite, Degenerate or Nondegenerate");
  }
  if (const json* a = r.opt("algebra")) {
    e.algebra = r.str("algebra", *a);
    if (!known_algebra(*e.algebra)) {
      std::string list;
      for (const auto& k : known_algebras()) list += (list.empty() ? "" : ", ") + k;
      r.fail("algebra", "unknown algebra label '" + *e.algebra + "'; known labels: " + list);
    }
  }
  if (const json* a = r.opt("algebra_params")) {
    if (!a->is_object()) r.fail("algebra_params", "expected an object of expression strings");
    for (const auto& [k, v] : a->items()) e.algebra_params[k] = r.str("algebra_params." + k, v);
  }
  if (const json* f = r.opt("frame")) {
    if (!f->is_array()) r.fail("frame", "expected an array of [f, g, h]");
    for (const auto& t : *f) {
      if (!t.is_array() || t.size() != 3) r.fail("frame", "each field must be [f, g, h]");
      e.frame.push_back({r.str("frame", t[0]), r.str("frame", t[1]), r.str("frame", t[2])});
    }
  }
  if (const json* u = r.opt("expected_umbilic")) {
    if (!u->is_boolean()) r.fail("expected_umbilic", "expected a boolean");
    e.expected_umbilic = u->get<bool>();
  }
  if (const json* n = r.opt("notes")) e.notes = r.str("notes", *n);

  // Expressions must parse with the first sample bound.
  try {
    ParamMap pm = sample_params(e, 0);
    parse_equation(e.equation, pm);
    for (const auto& d : e.domain) parse(d, pm);
    for (const auto& t : e.frame)
      for (const auto& s : t) parse(s, pm);
  } catch (const ParseError& ex) {
    throw SchemaError(r.path + ": expression does not parse: " + ex.what());
  }
  return e;
}

json catalog_to_json(const std::vector<CatalogEntry>& entries) {
  json arr = json::array();
  for (const auto& e : entries) arr.push_back(to_json(e));
  return {{"version", 1}, {"entries", arr}};
}

std::vector<CatalogEntry> catalog_from_json(const json& doc) {
  if (!doc.is_object()) throw SchemaError("catalog: top level must be an object {version, entries}");
  if (!doc.contains("version")) throw SchemaError("catalog.version: missing required field");
  if (!doc.contains("entries")) throw SchemaError("catalog.entries: missing required field");
  if (!doc["entries"].is_array()) throw SchemaError("catalog.entries: expected an array");
  std::vector<CatalogEntry> out;
  std::size_t k = 0;
  for (const auto& e : doc["entries"]) out.push_back(entry_from_json(e, "entries[" + std::to_string(k++) + "]"));
  return out;
}

std::vector<CatalogEntry> load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError("cannot open catalog file '" + path + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw SchemaError(path + ": invalid JSON: " + e.what());
  }
  return catalog_from_json(doc);
}

void save(const std::vector<CatalogEntry>& entries, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write catalog file '" + path + "'");
  out << catalog_to_json(entries).dump(2) << "\n";
}

// ---- evaluation helpers ----

ParamMap sample_params(const CatalogEntry& e, int k, const std::map<std::string, double>& override) {
  ParamMap pm;
  for (const auto& [name, spec] : e.parameters) {
    auto it = override.find(name);
    if (it != override.end()) {
      pm[name] = it->second;
      continue;
    }
    if (spec.samples.empty()) throw SchemaError(e.id + ": parameter " + name + " has no samples");
    std::size_t idx = spec.samples.size() == 1 ? 0 : static_cast<std::size_t>(k);
    pm[name] = spec.samples.at(idx);
  }
  return pm;
}

DefiningFunction entry_surface(const CatalogEntry& e, const ParamMap& params) {
  return DefiningFunction::parse(e.equation, e.domain, params);
}

EvalPoint entry_base_point(const CatalogEntry& e, int k, const ParamMap& params) {
  const PointSpec& ps = e.sample_base_points.empty() ? e.base_point : e.sample_base_points.at(static_cast<std::size_t>(k));
  std::array<cplx, 3> z;
  for (int c = 0; c < 3; ++c)
    z[static_cast<std::size_t>(c)] = {eval_const(ps[static_cast<std::size_t>(c)][0], params, e.id + ".base_point"),
                                      eval_const(ps[static_cast<std::size_t>(c)][1], params, e.id + ".base_point")};
  return EvalPoint::real_locus(z);
}

VectorFieldFrame entry_frame(const CatalogEntry& e, const ParamMap& params) {
  VectorFieldFrame f;
  f.label = e.id;
  for (const auto& t : e.frame) f.fields.push_back(HoloVectorField::parse(t[0], t[1], t[2], params));
  return f;
}

RealCoord entry_solve_var(const CatalogEntry& e) { return real_coord_from_name(e.solve_var); }

std::optional<StructureConstants> entry_algebra(const CatalogEntry& e, const ParamMap& params) {
  if (!e.algebra) return std::nullopt;
  RealMap rm;
  for (const auto& [k, v] : e.algebra_params) rm[k] = eval_const(v, params, e.id + ".algebra_params." + k);
  return table_algebra(*e.algebra, rm);
}

// ---- verification ----

json SampleReport::to_json() const {
  json j;
  j["params"] = params;
  j["base_point"] = {{"x1", base.real_coord(RealCoord::x1)}, {"y1", base.real_coord(RealCoord::y1)},
                     {"x2", base.real_coord(RealCoord::x2)}, {"y2", base.real_coord(RealCoord::y2)},
                     {"u", base.real_coord(RealCoord::u)},   {"v", base.real_coord(RealCoord::v)}};
  j["levi"] = levi;
  j["levi_eigenvalues"] = eigenvalues;
  j["tangency_max_residual"] = tangency ? json(*tangency) : json(nullptr);
  j["realization_max_residual"] = realization ? json(*realization) : json(nullptr);
  if (closure) j["closure_max_residual"] = *closure;
  j["rank"] = rank ? json(*rank) : json(nullptr);
  j["umbilic"] = umbilic.empty() ? json(nullptr) : json(umbilic);
  j["failures"] = failures;
  j["notes"] = notes;
  j["pass"] = failures.empty();
  return j;
}

json EntryReport::to_json() const {
  json s = json::array();
  for (const auto& r : samples) s.push_back(r.to_json());
  return {{"id", id}, {"section", section}, {"expected_levi", expected_levi}, {"pass", pass}, {"failures", failures},
          {"samples", s}};
}

namespace {

void check_params(const CatalogEntry& e, const ParamMap& pm, const std::map<std::string, double>& override,
                  SampleReport& rep) {
  for (const auto& [name, spec] : e.parameters) {
    double x = pm.at(name).real();
    if (spec.range.contains(x)) continue;
    std::string msg = "parameter " + name + " = " + fmt_double(x) + " outside " + spec.range.describe();
    if (override.count(name)) rep.notes.push_back(msg + " (override)");
    else rep.failures.push_back("params: " + msg);
  }
  for (const auto& c : e.constraints) {
    bool ok = false;
    try {
      double v = eval_const(c.expr, pm, e.id + ".constraints");
      ok = c.op == ">" ? v > 0 : c.op == ">=" ? v >= 0 : std::abs(v) > 1e-12;
    } catch (const EvalError&) {
      ok = false;
    }
    if (ok) continue;
    std::string msg = "constraint " + c.expr + " " + c.op + " 0 violated";
    if (!override.empty()) rep.notes.push_back(msg + " (override)");
    else rep.failures.push_back("params: " + msg);
  }
}

SampleReport verify_sample(const CatalogEntry& e, int k, const VerifyConfig& cfg) {
  SampleReport rep;
  ParamMap pm = sample_params(e, k, cfg.param_override);
  for (const auto& [n, v] : pm) rep.params[n] = v.real();
  check_params(e, pm, cfg.param_override, rep);
  const std::uint64_t seed = mix_seed(cfg.seed, e.id, k);

  DefiningFunction df;
  EvalPoint base;
  RealCoord sv = entry_solve_var(e);
  try {
    df = entry_surface(e, pm);
    EvalPoint seedpt = entry_base_point(e, k, pm);
    base = find_point(df, seedpt, sv);
    double moved = std::abs(base.real_coord(sv) - seedpt.real_coord(sv));
    if (moved > 1e-6) rep.failures.push_back("base: listed base point is off the surface (moved " + fmt_double(moved) + ")");
  } catch (const std::exception& ex) {
    rep.failures.push_back(std::string("base: ") + ex.what());
    return rep;
  }
  rep.base = base;

  try {
    LeviClass lc = levi_classify(df, base, cfg.levi_tol);
    rep.levi = levi_name(lc.kind);
    rep.eigenvalues = lc.eigenvalues;
    if (!levi_matches(e.expected_levi, lc.kind))
      rep.failures.push_back("levi: expected " + e.expected_levi + ", got " + rep.levi);
  } catch (const std::exception& ex) {
    rep.failures.push_back(std::string("levi: ") + ex.what());
  }

  if (!e.frame.empty()) {
    VectorFieldFrame frame;
    try {
      frame = entry_frame(e, pm);
    } catch (const std::exception& ex) {
      rep.failures.push_back(std::string("frame: ") + ex.what());
      return rep;
    }
    try {
      auto pts = sample_points(df, base, cfg.points, cfg.radius, seed, sv);
      double m = 0.0;
      for (const auto& p : pts)
        for (const auto& f : frame.fields) m = std::max(m, tangency_residual(f, df, p));
      rep.tangency = m;
      if (!(m <= cfg.tol)) rep.failures.push_back("tangency: max residual " + fmt_double(m) + " > " + fmt_double(cfg.tol));
    } catch (const std::exception& ex) {
      rep.failures.push_back(std::string("tangency: ") + ex.what());
    }
    try {
      rep.rank = real_rank_at(frame, base);
      if (*rep.rank < 5) rep.failures.push_back("rank: frame has real rank " + std::to_string(*rep.rank) + " < 5 at base");
    } catch (const std::exception& ex) {
      rep.failures.push_back(std::string("rank: ") + ex.what());
    }
    try {
      auto sc = entry_algebra(e, pm);
      auto pts = polydisc_points(base, cfg.realization_radius, cfg.realization_points, seed ^ 0x5bd1e995ULL);
      if (sc) {
        VectorFieldFrame head = frame;
        if (static_cast<int>(head.size()) > sc->dim()) head.fields.resize(static_cast<std::size_t>(sc->dim()));
        RealizationReport rr = verify_realization(head, *sc, pts, cfg.realization_tol);
        rep.realization = rr.max_residual;
        if (!rr.pass)
          rep.failures.push_back("realization: max residual " + fmt_double(rr.max_residual) + " at [e" +
                                 std::to_string(rr.worst_i + 1) + ",e" + std::to_string(rr.worst_j + 1) + "]");
      }
      if (!sc || static_cast<int>(frame.size()) > sc->dim()) {
        ClosureFit fit = fit_structure_constants(frame, pts);
        rep.closure = fit.max_residual;
        if (!(fit.max_residual <= cfg.realization_tol))
          rep.failures.push_back("closure: real span of the frame does not close (residual " +
                                 fmt_double(fit.max_residual) + ")");
      }
    } catch (const std::exception& ex) {
      rep.failures.push_back(std::string("realization: ") + ex.what());
    }
  }

  if (e.expected_umbilic || cfg.check_umbilic) {
    try {
      bool u = is_umbilic(df, base);
      rep.umbilic = u ? "true" : "false";
      if (e.expected_umbilic && *e.expected_umbilic != u)
        rep.failures.push_back(std::string("umbilic: expected ") + (*e.expected_umbilic ? "true" : "false"));
    } catch (const Unsupported& ex) {
      rep.umbilic = "unsupported";
      rep.notes.push_back(std::string("umbilicity: unsupported: ") + ex.what());
    } catch (const std::exception& ex) {
      rep.umbilic = "unsupported";
      rep.notes.push_back(std::string("umbilicity: ") + ex.what());
    }
  }
  return rep;
}

}  // namespace

EntryReport verify_entry(const CatalogEntry& entry, const VerifyConfig& config) {
  EntryReport r;
  r.id = entry.id;
  r.section = entry.section;
  r.expected_levi = entry.expected_levi;
  const int n = config.param_override.empty() ? entry.sample_count() : 1;
  for (int k = 0; k < n; ++k) {
    r.samples.push_back(verify_sample(entry, k, config));
    for (const auto& f : r.samples.back().failures) r.failures.push_back("sample " + std::to_string(k) + ": " + f);
  }
  r.pass = r.failures.empty();
  return r;
}

int VerifySummary::failed() const {
  int n = 0;
  for (const auto& e : entries) n += e.pass ? 0 : 1;
  return n;
}

VerifySummary verify_all(const std::vector<CatalogEntry>& entries, const VerifyConfig& config) {
  VerifySummary s;
  for (const auto& e : entries) {
    s.entries.push_back(verify_entry(e, config));
    const auto& r = s.entries.back();
    auto& sec = s.sections[r.section];
    ++sec.entries;
    if (!r.pass) ++sec.failed;
    for (const auto& smp : r.samples)
      for (const auto& f : smp.failures) ++s.failure_kinds[f.substr(0, f.find(':'))];
  }
  return s;
}

json VerifySummary::to_json() const {
  json e = json::array();
  for (const auto& r : entries) e.push_back(r.to_json());
  json sec = json::object();
  for (const auto& [name, c] : sections) sec[name] = {{"entries", c.entries}, {"failed", c.failed}};
  return {{"entries", e},
          {"summary", {{"total", entries.size()}, {"failed", failed()}, {"sections", sec}, {"failure_kinds", failure_kinds}}}};
}

namespace {

std::string sci(std::optional<double> x) {
  if (!x) return "-";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2e", *x);
  return buf;
}

}  // namespace

std::string VerifySummary::table() const {
  std::ostringstream os;
  auto row = [&](const std::string& id, const std::string& sec, const std::string& n, const std::string& exp,
                 const std::string& got, const std::string& tan, const std::string& real, const std::string& umb,
                 const std::string& status) {
    os << std::left << std::setw(20) << id << std::setw(8) << sec << std::setw(4) << n << std::setw(15) << exp
       << std::setw(12) << got << std::setw(10) << tan << std::setw(10) << real << std::setw(12) << umb << status
       << "\n";
  };
  row("id", "section", "n", "expected", "levi", "tangency", "realize", "umbilic", "status");
  for (const auto& r : entries) {
    std::string levi, umb;
    std::optional<double> tan, real;
    for (const auto& s : r.samples) {
      if (levi.empty()) levi = s.levi;
      else if (levi != s.levi) levi = "mixed";
      if (umb.empty()) umb = s.umbilic;
      else if (umb != s.umbilic) umb = "mixed";
      if (s.tangency) tan = std::max(tan.value_or(0.0), *s.tangency);
      if (s.realization) real = std::max(real.value_or(0.0), *s.realization);
    }
    row(r.id, r.section, std::to_string(r.samples.size()), r.expected_levi, levi.empty() ? "-" : levi, sci(tan),
        sci(real), umb.empty() ? "-" : umb, r.pass ? "PASS" : "FAIL");
  }
  for (const auto& r : entries)
    for (const auto& f : r.failures) os << "  " << r.id << ": " << f << "\n";
  os << "sections:";
  for (const auto& [name, c] : sections) os << " " << name << " " << (c.entries - c.failed) << "/" << c.entries;
  os << "\n" << entries.size() << " entries, " << failed() << " failed\n";
  return os.str();
}

}  // namespace crhs
