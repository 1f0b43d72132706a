#include "crhs/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <optional>
#include <ostream>
#include <sstream>

#include "crhs/catalog.hpp"
#include "crhs/moser.hpp"

namespace crhs {

using nlohmann::json;

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

double to_number(const std::string& s, const std::string& what) {
  std::string t = trim(s);
  char* end = nullptr;
  double x = std::strtod(t.c_str(), &end);
  if (t.empty() || end != t.c_str() + t.size()) throw UsageError(what + ": '" + s + "' is not a number");
  return x;
}

std::string num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

std::string sci(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.3e", x);
  return buf;
}

// "re,im,re,im,re,im" or "x,y,z" (real parts only).
EvalPoint parse_at(const std::string& s) {
  auto parts = split(s, ',');
  std::array<cplx, 3> z{};
  if (parts.size() == 6) {
    for (int k = 0; k < 3; ++k)
      z[static_cast<std::size_t>(k)] = {to_number(parts[static_cast<std::size_t>(2 * k)], "--at"),
                                        to_number(parts[static_cast<std::size_t>(2 * k + 1)], "--at")};
  } else if (parts.size() == 3) {
    for (int k = 0; k < 3; ++k) z[static_cast<std::size_t>(k)] = to_number(parts[static_cast<std::size_t>(k)], "--at");
  } else {
    throw UsageError("--at expects 6 numbers re,im per coordinate (or 3 real parts)");
  }
  return EvalPoint::real_locus(z);
}

// "y1=1,y2=0,v=1"; unnamed coordinates are zero.
EvalPoint parse_at_real(const std::string& s) {
  EvalPoint p = EvalPoint::real_locus(0, 0, 0);
  for (const auto& item : split(s, ',')) {
    auto kv = split(item, '=');
    if (kv.size() != 2) throw UsageError("--at-real expects name=value pairs, got '" + item + "'");
    RealCoord c;
    try {
      c = real_coord_from_name(trim(kv[0]));
    } catch (const std::exception&) {
      throw UsageError("--at-real: unknown coordinate '" + trim(kv[0]) + "'");
    }
    p = p.with_real_coord(c, to_number(kv[1], "--at-real"));
  }
  return p;
}

std::map<std::string, double> parse_params(const std::vector<std::string>& items) {
  std::map<std::string, double> m;
  for (const auto& item : items) {
    auto kv = split(item, '=');
    if (kv.size() != 2 || trim(kv[0]).empty()) throw UsageError("--param expects name=value, got '" + item + "'");
    m[trim(kv[0])] = to_number(kv[1], "--param " + trim(kv[0]));
  }
  return m;
}

ParamMap to_param_map(const std::map<std::string, double>& m) {
  ParamMap pm;
  for (const auto& [k, v] : m) pm[k] = v;
  return pm;
}

HoloVectorField parse_field(const std::string& s, const ParamMap& pm) {
  auto parts = split(s, ';');
  if (parts.size() != 3) throw UsageError("field '" + s + "' must be three components 'f;g;h'");
  return HoloVectorField::parse(parts[0], parts[1], parts[2], pm);
}

json point_json(const EvalPoint& p) {
  return {{"x1", p.real_coord(RealCoord::x1)}, {"y1", p.real_coord(RealCoord::y1)}, {"x2", p.real_coord(RealCoord::x2)},
          {"y2", p.real_coord(RealCoord::y2)}, {"u", p.real_coord(RealCoord::u)},   {"v", p.real_coord(RealCoord::v)}};
}

json complex_json(cplx c) { return {{"re", c.real()}, {"im", c.imag()}}; }

struct Options {
  bool json_out = false;
  unsigned long long seed = 1;
  std::optional<double> tol;
  int points = 50;
  double radius = 0.3;
  std::string at, at_real;
  std::vector<std::string> params;
  std::string surface;
  std::vector<std::string> domain;
  std::string solve = "v";
  bool refine = false;
  std::vector<std::string> fields;
  std::string algebra;
  std::optional<double> alpha, beta, gamma, h, p, eps;
  std::vector<std::string> entries;
  std::string expr;
  double t_end = 0.5, step = 1e-3;
  bool models = false, umbilic = false, all = false;
  std::string out_path;
};

class Runner {
 public:
  Runner(std::ostream& out, std::ostream& err) : out_(out), err_(err) {}

  int run(const std::vector<std::string>& args);

 private:
  std::ostream& out_;
  std::ostream& err_;
  Options o_;

  void emit(const json& j) { out_ << j.dump(2) << "\n"; }

  EvalPoint point(bool required = true) const {
    if (!o_.at.empty() && !o_.at_real.empty()) throw UsageError("give either --at or --at-real, not both");
    if (!o_.at.empty()) return parse_at(o_.at);
    if (!o_.at_real.empty()) return parse_at_real(o_.at_real);
    if (required) throw UsageError("a point is required (--at or --at-real)");
    return EvalPoint::real_locus(0, 0, 0);
  }
  ParamMap pmap() const { return to_param_map(parse_params(o_.params)); }
  DefiningFunction surface() const {
    if (o_.surface.empty()) throw UsageError("--surface is required");
    return DefiningFunction::parse(o_.surface, o_.domain, pmap());
  }
  RealCoord solve_var() const {
    try {
      return real_coord_from_name(o_.solve);
    } catch (const std::exception&) {
      throw UsageError("--solve: unknown real coordinate '" + o_.solve + "'");
    }
  }
  // Point on the surface: refined by Newton if asked, otherwise checked.
  EvalPoint surface_point(const DefiningFunction& df) const {
    EvalPoint p = point();
    if (o_.refine) return find_point(df, p, solve_var());
    if (!df.in_domain(p)) throw UsageError("point violates the domain constraints");
    double f = df.value(p);
    if (std::abs(f) > 1e-8) throw UsageError("point is off the surface (|Phi| = " + sci(std::abs(f)) + "); use --refine");
    return p;
  }
  RealMap algebra_params() const {
    RealMap m;
    if (o_.alpha) m["alpha"] = *o_.alpha;
    if (o_.beta) m["beta"] = *o_.beta;
    if (o_.gamma) m["gamma"] = *o_.gamma;
    if (o_.h) m["h"] = *o_.h;
    if (o_.p) m["p"] = *o_.p;
    if (o_.eps) m["eps"] = *o_.eps;
    return m;
  }
  std::vector<CatalogEntry> catalog(bool with_models) const {
    std::vector<CatalogEntry> c;
    if (const char* path = std::getenv("CRHS_CATALOG"); path && *path) {
      c = load(path);
    } else {
      c = builtin_catalog();
      if (with_models) {
        auto m = model_catalog();
        c.insert(c.end(), m.begin(), m.end());
      }
    }
    return c;
  }
  // Frame from the repeated --field options.
  VectorFieldFrame frame_from_options(std::optional<StructureConstants>* sc) {
    VectorFieldFrame f;
    if (!o_.fields.empty()) {
      ParamMap pm = pmap();
      for (const auto& s : o_.fields) f.fields.push_back(parse_field(s, pm));
      if (sc && !o_.algebra.empty()) *sc = table_algebra(o_.algebra, algebra_params());
      return f;
    }
    throw UsageError("give the fields with --field 'f;g;h' (repeatable)");
  }

  int cmd_parse();
  int cmd_eval();
  int cmd_levi();
  int cmd_bracket();
  int cmd_jacobi();
  int cmd_realize();
  int cmd_tangency();
  int cmd_flow();
  int cmd_n220();
  int cmd_catalog_list();
  int cmd_catalog_export();
  int cmd_catalog_verify();
};

int Runner::cmd_parse() {
  Expr e = parse(o_.expr, pmap());
  if (o_.json_out) emit({{"tree", to_string(e)}, {"infix", to_infix(e)}});
  else out_ << to_string(e) << "\n";
  return kExitOk;
}

int Runner::cmd_eval() {
  Expr e = parse_equation(o_.expr, pmap());
  EvalPoint p = point();
  cplx v = eval(e, p);
  if (o_.json_out) emit({{"value", complex_json(v)}, {"point", point_json(p)}});
  else out_ << format_complex(v) << "\n";
  return kExitOk;
}

int Runner::cmd_levi() {
  DefiningFunction df = surface();
  EvalPoint p = surface_point(df);
  double tol = o_.tol.value_or(kLeviTol);
  LeviData d = levi_form(df, p);
  LeviClass c = levi_classify(df, p, tol);
  if (o_.json_out) {
    emit({{"levi", levi_name(c.kind)},
          {"eigenvalues", c.eigenvalues},
          {"tol", tol},
          {"point", point_json(p)},
          {"gradient", {complex_json(d.gradient(0)), complex_json(d.gradient(1)), complex_json(d.gradient(2))}}});
  } else {
    out_ << levi_name(c.kind) << "\n";
    out_ << "eigenvalues: " << num(c.eigenvalues[0]) << " " << num(c.eigenvalues[1]) << "\n";
  }
  return kExitOk;
}

int Runner::cmd_bracket() {
  if (o_.fields.size() != 2) throw UsageError("bracket needs exactly two --field options");
  ParamMap pm = pmap();
  HoloVectorField X = parse_field(o_.fields[0], pm), Y = parse_field(o_.fields[1], pm);
  EvalPoint p = point();
  CVec3 b = commutator_at(X, Y, p);
  if (o_.json_out) {
    emit({{"bracket", {complex_json(b[0]), complex_json(b[1]), complex_json(b[2])}}, {"point", point_json(p)}});
  } else {
    out_ << "(" << format_complex(b[0]) << ", " << format_complex(b[1]) << ", " << format_complex(b[2]) << ")\n";
  }
  return kExitOk;
}

int Runner::cmd_jacobi() {
  std::vector<std::string> names;
  if (o_.all) {
    for (const auto& n : known_algebras())
      if (n != "abelian_N") names.push_back(n);
  } else {
    if (o_.algebra.empty()) throw UsageError("--algebra is required (or --all)");
    names.push_back(o_.algebra);
  }
  const double tol = o_.tol.value_or(1e-12);
  json rows = json::array();
  bool ok = true;
  for (const auto& n : names) {
    StructureConstants sc = table_algebra(n, o_.all ? RealMap{} : algebra_params());
    double d = jacobi_defect(sc);
    ok = ok && d <= tol;
    rows.push_back({{"algebra", n}, {"jacobi_defect", d}, {"pass", d <= tol}});
    if (!o_.json_out) out_ << n << ": jacobi defect " << sci(d) << (d <= tol ? " PASS" : " FAIL") << "\n";
  }
  if (o_.json_out) emit({{"results", rows}, {"tol", tol}, {"pass", ok}});
  return ok ? kExitOk : kExitCheckFailed;
}

int Runner::cmd_realize() {
  std::optional<StructureConstants> sc;
  VectorFieldFrame f = frame_from_options(&sc);
  if (!sc) throw UsageError("--algebra is required");
  const double tol = o_.tol.value_or(1e-9);
  EvalPoint center = point(false);
  auto pts = polydisc_points(center, o_.radius, o_.points, o_.seed);
  RealizationReport r = verify_realization(f, *sc, pts, tol);
  if (o_.json_out) {
    emit({{"algebra", sc->name}, {"max_residual", r.max_residual}, {"tol", tol}, {"points", r.points},
          {"worst", {{"i", r.worst_i + 1}, {"j", r.worst_j + 1}, {"point", r.worst_point}}}, {"pass", r.pass}});
  } else {
    out_ << "realization of " << sc->name << ": max residual " << sci(r.max_residual) << " at [e" << r.worst_i + 1
         << ",e" << r.worst_j + 1 << "] over " << r.points << " points: " << (r.pass ? "PASS" : "FAIL") << "\n";
  }
  return r.pass ? kExitOk : kExitCheckFailed;
}

int Runner::cmd_tangency() {
  DefiningFunction df = surface();
  VectorFieldFrame f = frame_from_options(nullptr);
  EvalPoint base = find_point(df, point(), solve_var());
  const double tol = o_.tol.value_or(1e-8);
  auto pts = sample_points(df, base, o_.points, o_.radius, o_.seed, solve_var());
  std::vector<double> per(f.size(), 0.0);
  for (const auto& p : pts)
    for (std::size_t k = 0; k < f.size(); ++k) per[k] = std::max(per[k], tangency_residual(f.fields[k], df, p));
  double m = per.empty() ? 0.0 : *std::max_element(per.begin(), per.end());
  bool pass = m <= tol;
  if (o_.json_out) {
    emit({{"max_residual", m}, {"per_field", per}, {"tol", tol}, {"points", pts.size()}, {"base_point", point_json(base)},
          {"pass", pass}});
  } else {
    for (std::size_t k = 0; k < per.size(); ++k) out_ << "e" << k + 1 << ": " << sci(per[k]) << "\n";
    out_ << "tangency max residual " << sci(m) << " over " << pts.size() << " points: " << (pass ? "PASS" : "FAIL")
         << "\n";
  }
  return pass ? kExitOk : kExitCheckFailed;
}

int Runner::cmd_flow() {
  DefiningFunction df = surface();
  VectorFieldFrame f = frame_from_options(nullptr);
  EvalPoint base = surface_point(df);
  const double tol = o_.tol.value_or(kFlowDriftTol);
  json rows = json::array();
  bool pass = true;
  for (std::size_t k = 0; k < f.size(); ++k) {
    FlowDrift d = flow_drift(f.fields[k], df, base, o_.t_end, o_.step);
    bool ok = d.completed && d.max_abs_phi <= tol;
    pass = pass && ok;
    rows.push_back({{"field", k + 1}, {"max_abs_phi", d.max_abs_phi}, {"t_reached", d.t_reached},
                    {"completed", d.completed}, {"error", d.error}, {"pass", ok}});
    if (!o_.json_out) {
      out_ << "e" << k + 1 << ": max |Phi| " << sci(d.max_abs_phi) << " up to t = " << num(d.t_reached);
      if (!d.completed) out_ << " (stopped: " << d.error << ")";
      out_ << (ok ? " PASS" : " FAIL") << "\n";
    }
  }
  if (o_.json_out)
    emit({{"fields", rows}, {"tol", tol}, {"t_end", o_.t_end}, {"step", o_.step}, {"base_point", point_json(base)},
          {"pass", pass}});
  return pass ? kExitOk : kExitCheckFailed;
}

int Runner::cmd_n220() {
  DefiningFunction df = surface();
  EvalPoint p = surface_point(df);
  MoserReport r = moser_pipeline(df, p, o_.tol.value_or(kUmbilicTol));
  if (o_.json_out) {
    emit(r.to_json());
  } else {
    out_ << "model: " << r.graph.model << "\n";
    for (const auto& s : r.graph.substitutions) out_ << "  " << s << "\n";
    out_ << "F21 = " << poly_to_string(r.F21) << "\n";
    out_ << "f2 = (" << poly_to_string(r.f2[0]) << ", " << poly_to_string(r.f2[1]) << ")\n";
    out_ << "F22 = " << poly_to_string(r.F22) << "\n";
    out_ << "H22 = " << poly_to_string(r.H22) << "\n";
    auto a = r.n220.as_array();
    out_ << "N220 = (" << num(a[0]) << ", " << num(a[1]) << ", " << num(a[2]) << ", " << num(a[3]) << ", " << num(a[4])
         << ")\n";
    out_ << "umbilic: " << (r.umbilic ? "true" : "false") << "\n";
  }
  return kExitOk;
}

int Runner::cmd_catalog_list() {
  auto c = catalog(o_.models || !o_.entries.empty());
  if (o_.json_out) {
    json rows = json::array();
    for (const auto& e : c)
      rows.push_back({{"id", e.id}, {"section", e.section}, {"equation", e.equation}, {"expected_levi", e.expected_levi},
                      {"algebra", e.algebra ? json(*e.algebra) : json(nullptr)}, {"frame_fields", e.frame.size()}});
    emit({{"entries", rows}, {"count", c.size()}});
  } else {
    for (const auto& e : c)
      out_ << e.id << "  [" << e.expected_levi << (e.algebra ? ", " + *e.algebra : "") << (e.frame.empty() ? "" : ", frame")
           << "]  " << e.equation << "\n";
    out_ << c.size() << " entries\n";
  }
  return kExitOk;
}

int Runner::cmd_catalog_export() {
  auto c = catalog(o_.models);
  if (o_.out_path.empty()) emit(catalog_to_json(c));
  else save(c, o_.out_path);
  return kExitOk;
}

int Runner::cmd_catalog_verify() {
  auto all = catalog(o_.models || !o_.entries.empty());
  std::vector<CatalogEntry> sel;
  if (o_.entries.empty()) {
    sel = all;
  } else {
    for (const auto& id : o_.entries) {
      const CatalogEntry* e = find_entry(all, id);
      if (!e) throw UsageError("unknown catalog entry '" + id + "'");
      sel.push_back(*e);
    }
  }
  VerifyConfig cfg;
  cfg.seed = o_.seed;
  cfg.points = o_.points;
  cfg.radius = o_.radius;
  if (o_.tol) cfg.tol = *o_.tol;
  cfg.check_umbilic = o_.umbilic;
  cfg.param_override = parse_params(o_.params);
  VerifySummary s = verify_all(sel, cfg);
  if (o_.json_out) emit(s.to_json());
  else out_ << s.table();
  return s.failed() == 0 ? kExitOk : kExitCheckFailed;
}

int Runner::run(const std::vector<std::string>& args) {
  CLI::App app{"Holomorphically homogeneous hypersurfaces in C^3: parsing, Levi forms, frames, N220 and the catalog"};
  app.name("crhs");
  app.set_help_flag("--help", "print help");
  app.require_subcommand(1);

  auto common = [&](CLI::App* c) {
    c->add_flag("--json", o_.json_out, "machine-readable output");
    c->add_option("--seed", o_.seed, "random seed");
    c->add_option("--tol", o_.tol, "tolerance of the check");
    c->add_option("--points", o_.points, "number of sample points")->check(CLI::PositiveNumber);
    c->add_option("--radius", o_.radius, "sampling radius")->check(CLI::PositiveNumber);
    c->add_option("--param", o_.params, "parameter binding name=value (repeatable)");
  };
  auto at = [&](CLI::App* c) {
    c->add_option("--at", o_.at, "point: re,im per coordinate z1,z2,w (or three real parts)");
    c->add_option("--at-real", o_.at_real, "point in real coordinates, e.g. y1=1,v=1");
  };
  auto surf = [&](CLI::App* c) {
    c->add_option("--surface", o_.surface, "defining function Phi, or 'lhs = rhs'")->required();
    c->add_option("--domain", o_.domain, "domain constraint expression, must be > 0 (repeatable)");
    c->add_option("--solve", o_.solve, "real coordinate used for Newton refinement");
    c->add_flag("--refine", o_.refine, "project the point onto the surface first");
  };
  auto algebra = [&](CLI::App* c, bool required) {
    auto* opt = c->add_option("--algebra", o_.algebra, "table label, e.g. g5_35");
    if (required) opt->required();
    c->add_option("--alpha", o_.alpha);
    c->add_option("--beta", o_.beta);
    c->add_option("--gamma", o_.gamma);
    c->add_option("--h", o_.h);
    c->add_option("--p", o_.p);
    c->add_option("--eps", o_.eps);
  };
  auto fields = [&](CLI::App* c) { c->add_option("--field", o_.fields, "vector field 'f;g;h' (repeatable)"); };

  auto* p_parse = app.add_subcommand("parse", "parse an expression and print its tree");
  p_parse->add_option("expr", o_.expr)->required();
  common(p_parse);
  auto* p_eval = app.add_subcommand("eval", "evaluate an expression at a point");
  p_eval->add_option("expr", o_.expr)->required();
  common(p_eval);
  at(p_eval);
  auto* p_levi = app.add_subcommand("levi", "classify the Levi form at a point");
  common(p_levi);
  at(p_levi);
  surf(p_levi);
  auto* p_br = app.add_subcommand("bracket", "commutator of two fields at a point");
  common(p_br);
  at(p_br);
  fields(p_br);
  auto* p_jac = app.add_subcommand("jacobi", "Jacobi defect of a table algebra");
  common(p_jac);
  algebra(p_jac, false);
  p_jac->add_flag("--all", o_.all, "every table algebra at default parameters");
  auto* p_real = app.add_subcommand("realize", "check that fields realize an algebra");
  common(p_real);
  at(p_real);
  algebra(p_real, true);
  fields(p_real);
  auto* p_tan = app.add_subcommand("tangency", "check that fields are tangent to a surface");
  common(p_tan);
  at(p_tan);
  surf(p_tan);
  fields(p_tan);
  auto* p_flow = app.add_subcommand("flow", "RK4 flow of fields and drift of |Phi|");
  common(p_flow);
  at(p_flow);
  surf(p_flow);
  fields(p_flow);
  p_flow->add_option("--t", o_.t_end, "end time");
  p_flow->add_option("--step", o_.step, "RK4 step");
  auto* p_n220 = app.add_subcommand("n220", "Moser normalization and N220 at a point");
  common(p_n220);
  at(p_n220);
  surf(p_n220);
  auto* p_cat = app.add_subcommand("catalog", "the hypersurface catalog");
  p_cat->require_subcommand(1);
  auto* p_list = p_cat->add_subcommand("list", "list entries");
  common(p_list);
  p_list->add_flag("--models", o_.models, "include the model surfaces");
  auto* p_export = p_cat->add_subcommand("export", "write the catalog as JSON");
  common(p_export);
  p_export->add_flag("--models", o_.models, "include the model surfaces");
  p_export->add_option("--out", o_.out_path, "output file (default stdout)");
  auto* p_verify = p_cat->add_subcommand("verify", "verify entries");
  common(p_verify);
  p_verify->add_option("--entry", o_.entries, "entry id (repeatable)");
  p_verify->add_flag("--models", o_.models, "include the model surfaces");
  p_verify->add_flag("--umbilic", o_.umbilic, "also run the umbilicity check");

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out_, err_);
    return code == 0 ? kExitOk : kExitUsage;
  }

  if (p_parse->parsed()) return cmd_parse();
  if (p_eval->parsed()) return cmd_eval();
  if (p_levi->parsed()) return cmd_levi();
  if (p_br->parsed()) return cmd_bracket();
  if (p_jac->parsed()) return cmd_jacobi();
  if (p_real->parsed()) return cmd_realize();
  if (p_tan->parsed()) return cmd_tangency();
  if (p_flow->parsed()) return cmd_flow();
  if (p_n220->parsed()) return cmd_n220();
  if (p_list->parsed()) return cmd_catalog_list();
  if (p_export->parsed()) return cmd_catalog_export();
  if (p_verify->parsed()) return cmd_catalog_verify();
  return kExitUsage;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Runner r(out, err);
  try {
    return r.run(args);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const SchemaError& e) {
    err << "schema error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const DomainError& e) {
    err << "domain error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const EvalError& e) {
    err << "evaluation error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ConvergenceError& e) {
    err << "check failed: " << e.what() << "\n";
    return kExitCheckFailed;
  } catch (const Unsupported& e) {
    err << "unsupported: " << e.what() << "\n";
    return kExitCheckFailed;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
}

}  // namespace crhs
