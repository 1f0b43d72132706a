#include <limits>

#include "crhs/catalog.hpp"

namespace crhs {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

PointSpec pt(std::string z1r, std::string z1i, std::string z2r, std::string z2i, std::string wr, std::string wi) {
  return PointSpec{{{std::move(z1r), std::move(z1i)}, {std::move(z2r), std::move(z2i)}, {std::move(wr), std::move(wi)}}};
}

ParamRange any() { return {}; }
ParamRange closed(double lo, double hi) { return {lo, hi, false, false, {}, {}}; }
ParamRange above(double lo, bool open) { return {lo, kInf, open, false, {}, {}}; }
ParamRange open_interval(double lo, double hi) { return {lo, hi, true, true, {}, {}}; }
ParamRange one_of(std::vector<double> v) {
  ParamRange r;
  r.allowed = std::move(v);
  return r;
}
ParamRange except(ParamRange r, std::vector<double> ex) {
  r.exclude = std::move(ex);
  return r;
}
ParamRange sign() { return one_of({-1.0, 1.0}); }

struct E {
  CatalogEntry e;
  E(std::string id, std::string section, std::string eq, std::string levi) {
    e.id = std::move(id);
    e.section = std::move(section);
    e.equation = std::move(eq);
    e.expected_levi = std::move(levi);
    e.base_point = pt("0", "0", "0", "0", "0", "0");
  }
  E& param(const std::string& name, ParamRange r, std::vector<double> samples) {
    e.parameters[name] = ParamSpec{std::move(r), std::move(samples)};
    return *this;
  }
  E& constraint(std::string expr, std::string op) {
    e.constraints.push_back({std::move(expr), std::move(op)});
    return *this;
  }
  E& domain(std::vector<std::string> d) {
    e.domain = std::move(d);
    return *this;
  }
  E& base(PointSpec p) {
    e.base_point = std::move(p);
    return *this;
  }
  E& sample_bases(std::vector<PointSpec> p) {
    e.sample_base_points = std::move(p);
    return *this;
  }
  E& solve(std::string v) {
    e.solve_var = std::move(v);
    return *this;
  }
  E& algebra(std::string label, std::map<std::string, std::string> params = {}) {
    e.algebra = std::move(label);
    e.algebra_params = std::move(params);
    return *this;
  }
  E& frame(std::vector<std::array<std::string, 3>> f) {
    e.frame = std::move(f);
    return *this;
  }
  E& umbilic(bool u) {
    e.expected_umbilic = u;
    return *this;
  }
  E& notes(std::string n) {
    e.notes = std::move(n);
    return *this;
  }
  operator CatalogEntry() const { return e; }
};

const char* kND = "Nondegenerate";
const char* kDeg = "Degenerate";
const char* kInd = "Indefinite";
const char* kDef = "Definite";

}  // namespace

std::vector<CatalogEntry> builtin_catalog() {
  std::vector<CatalogEntry> c;
  // I.1 tubes over affinely homogeneous bases; x3 = u.
  c.push_back(E("I.1.1", "I.1", "u = log(x1) + alpha*log(x2)", kND)
                  .param("alpha", except(closed(-1, 1), {0}), {0.5, -0.5, 1})
                  .domain({"x1", "x2"})
                  .base(pt("1", "0", "1", "0", "0", "0"))
                  .solve("u"));
  c.push_back(E("I.1.2", "I.1", "u = alpha*atan(x2/x1) + log(x1^2 + x2^2)", kInd)
                  .param("alpha", above(0, false), {0, 1, 2.5})
                  .domain({"x1"})
                  .base(pt("1", "0", "0", "0", "0", "0"))
                  .solve("u")
                  .notes("arg written as atan(x2/x1) on x1 > 0"));
  c.push_back(E("I.1.3", "I.1", "u = x2^2 + eps*x1^alpha", kND)
                  .param("eps", sign(), {1, -1, 1})
                  .param("alpha", except(any(), {0, 1}), {2.5, 0.5, -1})
                  .domain({"x1"})
                  .base(pt("1", "0", "0", "0", "eps", "0"))
                  .solve("u"));
  c.push_back(E("I.1.4", "I.1", "u = x2^2 + eps*log(x1)", kND)
                  .param("eps", sign(), {1, -1})
                  .domain({"x1"})
                  .base(pt("1", "0", "0", "0", "0", "0"))
                  .solve("u"));
  c.push_back(E("I.1.5", "I.1", "u = x2^2 + eps*x1*log(x1)", kND)
                  .param("eps", sign(), {1, -1})
                  .domain({"x1"})
                  .base(pt("1", "0", "0", "0", "0", "0"))
                  .solve("u"));
  c.push_back(E("I.1.6", "I.1", "u = x1*x2 + exp(x1)", kND).base(pt("0", "0", "0", "0", "1", "0")).solve("u"));
  c.push_back(E("I.1.7", "I.1", "u = x1*x2 + x1^alpha", kND)
                  .param("alpha", any(), {3, 0.5, -1})
                  .domain({"x1"})
                  .base(pt("1", "0", "0", "0", "1", "0"))
                  .solve("u"));
  c.push_back(E("I.1.8", "I.1", "u = x1*x2 + log(x1)", kND)
                  .domain({"x1"})
                  .base(pt("1", "0", "0", "0", "0", "0"))
                  .solve("u"));
  c.push_back(E("I.1.9", "I.1", "u = x1*x2 + x1*log(x1)", kND)
                  .domain({"x1"})
                  .base(pt("1", "0", "0", "0", "0", "0"))
                  .solve("u"));
  c.push_back(E("I.1.10", "I.1", "u = x1*x2 + x1^2*log(x1)", kND)
                  .domain({"x1"})
                  .base(pt("1", "0", "0", "0", "0", "0"))
                  .solve("u"));
  c.push_back(E("I.1.11", "I.1", "x1*u = x2^2 + eps*x1*log(x1)", kND)
                  .param("eps", sign(), {1, -1})
                  .domain({"x1"})
                  .base(pt("1", "0", "0", "0", "0", "0"))
                  .solve("u"));
  c.push_back(E("I.1.12", "I.1", "eps1*x1^2 + eps2*x2^2 + u^2 = 1", kND)
                  .param("eps1", sign(), {1, 1, -1, -1})
                  .param("eps2", sign(), {1, -1, 1, -1})
                  .base(pt("0", "0", "0", "0", "1", "0"))
                  .solve("u"));

  // I.2 tubes over bases that are not affinely homogeneous.
  c.push_back(E("I.2.1", "I.2", "u = (1 + exp(2*x1))*(x2 + log(1 + exp(2*x1)))", kND)
                  .base(pt("0", "0", "0", "0", "2*log(2)", "0"))
                  .solve("u"));
  c.push_back(E("I.2.2", "I.2", "u = x1*x2 + x1^3*log(x1)", kND)
                  .domain({"x1"})
                  .base(pt("1", "0", "0", "0", "0", "0"))
                  .solve("u"));
  c.push_back(E("I.2.3", "I.2", "u = x2*exp(x1) + exp(alpha*x1)", kND)
                  .param("alpha", except(any(), {-1, 0, 1, 2}), {3, 0.5, -2})
                  .base(pt("0", "0", "0", "0", "1", "0"))
                  .solve("u")
                  .notes("alpha and 1 - alpha give equivalent surfaces"));
  c.push_back(E("I.2.4", "I.2", "u*cos(x1) + x2*sin(x1) = exp(alpha*x1)", kND)
                  .param("alpha", above(0, false), {0, 1, 2})
                  .domain({"cos(x1) - 0.1"})
                  .base(pt("0", "0", "0", "0", "1", "0"))
                  .solve("u"));
  c.push_back(E("I.2.5", "I.2", "u = x1*exp(x2) + x1^2", kND).solve("u"));
  c.push_back(E("I.2.6", "I.2", "u = alpha*log(1 + exp(2*x1)) + log(x2)", kND)
                  .param("alpha", except(closed(-1, 1), {0}), {0.5, -1, 1})
                  .domain({"x2"})
                  .base(pt("0", "0", "1", "0", "alpha*log(2)", "0"))
                  .solve("u"));
  c.push_back(E("I.2.7", "I.2", "u = alpha*log(1 + exp(2*x1)) + log(1 + exp(2*x2))", kND)
                  .param("alpha", except(closed(-1, 1), {0}), {0.5, -0.5, 1})
                  .base(pt("0", "0", "0", "0", "(alpha + 1)*log(2)", "0"))
                  .solve("u"));
  c.push_back(E("I.2.8", "I.2", "u = x2^2 + eps*log(1 + exp(2*x1))", kND)
                  .param("eps", sign(), {1, -1})
                  .base(pt("0", "0", "0", "0", "eps*log(2)", "0"))
                  .solve("u"));

  // I.3 Cartan type, chart xi0 = 1 with z3 = w.
  c.push_back(E("I.3.1", "I.3", "1 + abs2(z1) + abs2(z2) + abs2(w) = a*sqrt(abs2(1 + z1^2 + z2^2 + w^2))", kND)
                  .param("a", above(1, true), {2, 3})
                  .domain({"abs2(1 + z1^2 + z2^2 + w^2)"})
                  .base(pt("0", "0", "0", "0", "0", "sqrt((a - 1)/(a + 1))"))
                  .notes("affine chart xi0 = 1"));
  c.push_back(E("I.3.2", "I.3", "1 + abs2(z1) + abs2(z2) - abs2(w) = a*sqrt(abs2(1 + z1^2 + z2^2 - w^2))", kND)
                  .param("a", except(above(0, true), {1}), {0.5, 2})
                  .domain({"abs2(1 + z1^2 + z2^2 - w^2)"})
                  .base(pt("0", "sqrt(2*a/(a + 1))", "0", "0", "0", "1"))
                  .notes("affine chart xi0 = 1"));
  c.push_back(E("I.3.3", "I.3", "1 - abs2(z1) - abs2(z2) - abs2(w) = a*sqrt(abs2(1 - z1^2 - z2^2 - w^2))", kND)
                  .param("a", open_interval(0, 1), {0.5, 0.2})
                  .domain({"abs2(1 - z1^2 - z2^2 - w^2)"})
                  .base(pt("0", "0", "0", "0", "0", "sqrt((1 - a)/(1 + a))"))
                  .notes("affine chart xi0 = 1"));
  c.push_back(E("I.3.4", "I.3", "1 + abs2(z1) - abs2(z2) - abs2(w) = a*sqrt(abs2(1 + z1^2 - z2^2 - w^2))", kND)
                  .param("a", except(above(0, true), {1}), {0.5, 2})
                  .domain({"abs2(1 + z1^2 - z2^2 - w^2)"})
                  .base(pt("0", "sqrt(2*a/(a + 1))", "0", "0", "0", "1"))
                  .notes("affine chart xi0 = 1"));
  c.push_back(E("I.3.Q", "I.3Q",
                "Im(z2 + conj(z1)*w) = gamma*sqrt(Re(z2 + conj(z1)*w)^2 + abs2(w - z1*z2))", kND)
                  .param("gamma", except(any(), {0}), {1, -0.5, 2})
                  .domain({"Re(z2 + conj(z1)*w)^2 + abs2(w - z1*z2)"})
                  .base(pt("0", "0", "0", "gamma", "1", "0"))
                  .solve("y2")
                  .notes("quaternionic model in the chart xi1 = 1: (xi2, xi3, xi4) = (z1, z2, w)"));

  // I.4 Winkelmann type; A = a_re + i*a_im.
  c.push_back(E("I.4", "I.4", "v = z1*conj(z2) + z2*conj(z1) + abs2(z1)^a_re*exp(-2*a_im*atan(y1/x1))", kInd)
                  .param("a_re", any(), {3, 0.5, 2})
                  .param("a_im", any(), {0, 1, 0.5})
                  .constraint("(a_re + 1)^2 + a_im^2", "!=")
                  .constraint("a_re^2 + a_im^2", "!=")
                  .constraint("(a_re - 1)^2 + a_im^2", "!=")
                  .constraint("(a_re - 2)^2 + a_im^2", "!=")
                  .domain({"x1"})
                  .base(pt("1", "0", "0", "0", "0", "1"))
                  .notes("|z1^A|^2 on x1 > 0; A = 2 gives the Winkelmann surface"));

  // II.1 simply homogeneous tubes.
  c.push_back(E("II.1.1", "II.1", "u = x1^alpha*x2^beta", kND)
                  .param("alpha", except(closed(-1, 1), {0}), {0.5, -0.5, 0.3})
                  .param("beta", except(closed(-1, 1), {0}), {0.8, 1, -0.6})
                  .constraint("sqrt(beta^2) - sqrt(alpha^2)", ">=")
                  .constraint("alpha + beta - 1", "!=")
                  .domain({"x1", "x2"})
                  .base(pt("1", "0", "1", "0", "1", "0"))
                  .solve("u")
                  .algebra("g5_33")
                  .notes("algebra label only"));
  c.push_back(E("II.1.2", "II.1", "u = (x1^2 + x2^2)^alpha*exp(beta*atan(x2/x1))", kND)
                  .param("alpha", except(any(), {0.5}), {2, 0.25, -1})
                  .param("beta", above(0, false), {0, 1, 0.5})
                  .constraint("(alpha - 1)^2 + beta^2", "!=")
                  .domain({"x1"})
                  .base(pt("1", "0", "0", "0", "1", "0"))
                  .solve("u")
                  .algebra("g5_35")
                  .notes("algebra label only"));
  c.push_back(E("II.1.3", "II.1", "u = x1*(alpha*log(x1) + log(x2))", kND)
                  .param("alpha", except(any(), {-1, 0}), {1, 2, -0.5})
                  .domain({"x1", "x2"})
                  .base(pt("1", "0", "1", "0", "0", "0"))
                  .solve("u")
                  .algebra("g5_34")
                  .notes("algebra label only"));
  c.push_back(E("II.1.4", "II.1", "(u - 3*x1*x2 + 2*x1^3)^2 = alpha*(x1^2 - x2)^3", kND)
                  .param("alpha", except(any(), {0, 4}), {1, -1, 8})
                  .base(pt("0", "0", "-1", "0", "1", "0"))
                  .sample_bases({pt("0", "0", "-1", "0", "1", "0"), pt("0", "0", "1", "0", "1", "0"),
                                 pt("0", "0", "-1", "0", "sqrt(8)", "0")})
                  .solve("u")
                  .algebra("g5_30")
                  .notes("algebra label only"));
  c.push_back(E("II.1.5", "II.1", "x1*u = x2^2 + eps*x1^alpha", kND)
                  .param("eps", sign(), {1, -1, 1})
                  .param("alpha", except(any(), {0, 1, 2}), {3, 0.5, -1})
                  .domain({"x1"})
                  .base(pt("1", "0", "0", "0", "eps", "0"))
                  .solve("u")
                  .algebra("g5_30")
                  .notes("algebra label only"));
  c.push_back(E("II.1.6", "II.1", "x1*u = x2^2 + eps*x1^2*log(x1)", kND)
                  .param("eps", sign(), {1, -1})
                  .domain({"x1"})
                  .base(pt("1", "0", "0", "0", "0", "0"))
                  .solve("u")
                  .algebra("g5_32")
                  .notes("algebra label only"));

  // II.2 simply homogeneous, not tubes.
  c.push_back(E("II.2.1", "II.2", "v*(1 + eps*y2*x2) = y1*y2", kInd)
                  .param("eps", sign(), {1, -1})
                  .domain({"1 + eps*y2*x2"})
                  .base(pt("0", "1", "0", "1", "0", "1"))
                  .algebra("g5_32")
                  .notes("normal form of anti-tube type 6; algebra label only"));
  c.push_back(E("II.2.2", "II.2", "(v - x2*y1)^2 + y1^2*y2^2 = y1", kInd)
                  .domain({"y1"})
                  .base(pt("0", "1", "0", "0", "0", "1"))
                  .algebra("g5")
                  .frame({{"1", "0", "0"},
                          {"2*z1", "-z2", "w"},
                          {"-z1^2", "z1*z2 - w", "-z1*w"},
                          {"0", "1", "z1"},
                          {"0", "0", "1"}})
                  .notes("orbit of the g5 frame; normal form of general type 1"));

  // III.1 tubes over surfaces of zero Gauss curvature.
  c.push_back(E("III.1.1", "III.1", "x1^2 + x2^2 = u^2", kDeg)
                  .domain({"u"})
                  .base(pt("1", "0", "0", "0", "1", "0"))
                  .solve("u"));
  c.push_back(E("III.1.2", "III.1", "u = sqrt(x1^2 + x2^2)*exp(omega*atan(x2/x1))", kDeg)
                  .param("omega", above(0, true), {0.5, 2})
                  .domain({"x1"})
                  .base(pt("1", "0", "0", "0", "1", "0"))
                  .solve("u"));
  c.push_back(E("III.1.3", "III.1", "u = x1*(log(x2) - log(x1))", kDeg)
                  .domain({"x1", "x2"})
                  .base(pt("1", "0", "1", "0", "0", "0"))
                  .solve("u"));
  c.push_back(E("III.1.4", "III.1", "u = x1^(1 - theta)*x2^theta", kDeg)
                  .param("theta", any(), {0.3, 2})
                  .domain({"x1", "x2"})
                  .base(pt("1", "0", "1", "0", "1", "0"))
                  .solve("u"));
  c.push_back(E("III.1.5", "III.1", "(u - 3*x1*x2 + 2*x1^3)^2 = 4*(x1^2 - x2)^3", kDeg)
                  .base(pt("0", "0", "-1", "0", "2", "0"))
                  .solve("u"));

  // III.2 products C x (Levi nondegenerate surface in C^2).
  c.push_back(E("III.2.1", "III.2", "x2 = x1^s", kDeg)
                  .param("s", except(open_interval(-1, 1), {0, 0.5}), {-0.5, 0.25, 0.75})
                  .domain({"x1"})
                  .base(pt("1", "0", "1", "0", "0", "0"))
                  .solve("x2"));
  c.push_back(E("III.2.2", "III.2", "x2 = log(x1)", kDeg)
                  .domain({"x1"})
                  .base(pt("1", "0", "0", "0", "0", "0"))
                  .solve("x2"));
  c.push_back(E("III.2.3", "III.2", "x2 = x1*log(x1)", kDeg)
                  .domain({"x1"})
                  .base(pt("1", "0", "0", "0", "0", "0"))
                  .solve("x2"));
  c.push_back(E("III.2.4", "III.2", "0.5*log(x1^2 + x2^2) = a*atan(x2/x1)", kDeg)
                  .param("a", above(0, false), {0, 1})
                  .domain({"x1"})
                  .base(pt("1", "0", "0", "0", "0", "0"))
                  .solve("x1")
                  .notes("r = exp(a*phi) in the (x1, x2) plane"));
  c.push_back(E("III.2.5", "III.2", "1 + abs2(z1) + abs2(z2) = a*sqrt(abs2(1 + z1^2 + z2^2))", kDeg)
                  .param("a", above(1, true), {2, 3})
                  .domain({"abs2(1 + z1^2 + z2^2)"})
                  .base(pt("0", "0", "0", "sqrt((a - 1)/(a + 1))", "0", "0"))
                  .solve("y2"));
  c.push_back(E("III.2.6", "III.2", "1 + abs2(z1) - abs2(z2) = a*sqrt(abs2(1 + z1^2 - z2^2))", kDeg)
                  .param("a", above(1, true), {2, 3})
                  .domain({"abs2(1 + z1^2 - z2^2)"})
                  .base(pt("0", "sqrt((a - 1)/(a + 1))", "0", "0", "0", "0"))
                  .solve("y1"));
  c.push_back(E("III.2.7", "III.2", "abs2(z1) + abs2(z2) - 1 = a*sqrt(abs2(z1^2 + z2^2 - 1))", kDeg)
                  .param("a", except(open_interval(-1, 1), {0}), {0.5, -0.5})
                  .domain({"abs2(z1^2 + z2^2 - 1)"})
                  .base(pt("0", "sqrt((1 + a)/(1 - a))", "0", "0", "0", "0"))
                  .solve("y1"));

  c.push_back(E("III.3", "III.3", "v = 0", kDeg).notes("real hyperplane"));
  return c;
}

std::vector<CatalogEntry> model_catalog() {
  std::vector<CatalogEntry> c;
  c.push_back(E("quadric.definite", "model", "v = abs2(z1) + abs2(z2)", kDef).umbilic(true));
  c.push_back(E("quadric.indefinite", "model", "v = abs2(z1) - abs2(z2)", kInd).umbilic(true));
  c.push_back(E("winkelmann", "model", "v = z1*conj(z2) + z2*conj(z1) + abs2(z1)^2", kInd).umbilic(false));

  c.push_back(E("su2g2.orbit", "model",
                "v*(exp(x1) + exp(-x1))/2 - x2*(exp(x1) - exp(-x1))/2 = alpha*sqrt(abs2(z2))", kND)
                  .param("alpha", above(0, true), {1, 0.5})
                  .domain({"abs2(z2)"})
                  .base(pt("0", "0", "1", "0", "0", "alpha"))
                  .algebra("su2_g2")
                  .frame({{"(exp(z1) + exp(-z1))/2", "z2*(exp(z1) - exp(-z1))/2", "i*z2*(exp(z1) + exp(-z1))/2"},
                          {"-i*(exp(z1) - exp(-z1))/2", "-i*z2*(exp(z1) + exp(-z1))/2", "z2*(exp(z1) - exp(-z1))/2"},
                          {"-i", "0", "0"},
                          {"0", "0", "1"},
                          {"0", "z2", "w"},
                          {"2*i*z2", "2*z2*w", "w^2 - z2^2"}})
                  .notes("su(2)+g2 frame and the sixth field, pushed to v cosh x1 - x2 sinh x1 = alpha|z2|"));

  c.push_back(E("g536.orbit", "model", "v = (y1 - b)*x2 - a*y2 + D*y1*y2", kND)
                  .param("a", any(), {0, 0.3, -1.2})
                  .param("b", any(), {1, -0.7, 0.4})
                  .param("D", any(), {1, 0.5, 2})
                  .base(pt("0", "1", "2", "0.5", "0", "2*(1 - b) - 0.5*a + 0.5*D"))
                  .algebra("g5_36")
                  .frame({{"0", "0", "1"},
                          {"1", "0", "0"},
                          {"0", "1", "z1 - (a + i*b)"},
                          {"z1", "0", "w + (a + i*b)*z2"},
                          {"-z1", "z2", "-(a + i*b)*z2"}})
                  .notes("A4 = a + i*b"));

  c.push_back(E("g537.shape1", "model", "v = x2*(y1 - b) - a*y2 + N*(y1^2 + y2^2)", kND)
                  .param("a", any(), {0, 0.5, -1})
                  .param("b", any(), {1, -0.3, 2})
                  .param("N", any(), {1, -0.7, 0.25})
                  .base(pt("0", "1", "1", "0", "0", "1 - b + N"))
                  .algebra("g5_37")
                  .frame({{"0", "0", "1"},
                          {"1", "0", "0"},
                          {"0", "1", "z1 - (a + i*b)"},
                          {"z1", "z2", "2*w + (a + i*b)*z2"},
                          {"z2", "-z1", "(z2^2 - z1^2)/2 + (a + i*b)*z1"}})
                  .notes("B = a + i*b"));

  c.push_back(E("g537.shape2", "model", "v = y1^2/(2*a2) + N*abs2(z2)*exp(-2*b1/b2*atan(y2/x2))", kND)
                  .param("a2", except(any(), {0}), {1, -1, 1})
                  .param("b1", any(), {0, 0.5, -1})
                  .param("b2", except(any(), {0}), {1, 2, 1})
                  .param("N", except(any(), {0}), {1, 0.7, -0.5})
                  .domain({"x2"})
                  .base(pt("0", "0", "1", "0", "0", "N"))
                  .algebra("g5_37")
                  .frame({{"0", "0", "1"},
                          {"1", "0", "0"},
                          {"i*a2", "0", "z1"},
                          {"z1", "z2", "2*w"},
                          {"-i*a2*z1", "(b1 + i*b2)*z2", "-z1^2/2"}})
                  .notes("A = i*a2, B = b1 + i*b2"));

  c.push_back(E("g535.orbit", "model", "v*sin(lambda*y2) - eps*y1*cos(lambda*y2) = exp(x2 + alpha*eps*y2)", kInd)
                  .param("alpha", any(), {0.5, 1})
                  .param("lambda", except(any(), {0}), {-1, 2})
                  .param("eps", sign(), {1, 1})
                  .domain({"sin(lambda*y2) - 0.1"})
                  .base(pt("0", "0", "0", "pi/(2*lambda)", "0", "exp(alpha*eps*pi/(2*lambda))"))
                  .algebra("g5_35_ext", {{"alpha", "alpha"}, {"beta", "1 - lambda"}})
                  .frame({{"exp(lambda*z2)", "0", "i*eps*exp(lambda*z2)"},
                          {"1", "0", "0"},
                          {"0", "0", "1"},
                          {"z1", "1", "w"},
                          {"w", "(-alpha + i*eps)/lambda", "-z1"},
                          {"exp(-lambda*z2)", "0", "-i*exp(-lambda*z2)"}})
                  .notes("five-field frame plus the sixth tangent field"));

  c.push_back(E("g535.exp", "model", "v*sin(y2) - y1*cos(y2) = exp(m*x2 + n*y2)", kInd)
                  .param("m", except(any(), {0}), {2, -1, 0.5})
                  .param("n", above(0, false), {0, 1, 2})
                  .domain({"sin(y2) - 0.1"})
                  .base(pt("0", "0", "0", "pi/2", "0", "exp(n*pi/2)"))
                  .algebra("g5_35_ext", {{"alpha", "n/m"}, {"beta", "1 - 1/m"}})
                  .frame({{"exp(z2)", "0", "i*exp(z2)"},
                          {"1", "0", "0"},
                          {"0", "0", "1"},
                          {"z1", "1/m", "w"},
                          {"w", "-n/m + i", "-z1"},
                          {"exp(-z2)", "0", "-i*exp(-z2)"}})
                  .notes("orbit family in the normalization lambda = 1"));

  c.push_back(E("g535.spherical-a", "model", "v*y2 + y1*x2 = 0", kInd)
                  .base(pt("0", "0", "1", "0", "0", "0"))
                  .algebra("g5_35", {{"alpha", "0"}, {"beta", "0"}})
                  .frame({{"-z2", "0", "i*z2"}, {"1", "0", "0"}, {"0", "0", "-1"}, {"z1", "z2", "w"}, {"-w", "i*z2", "z1"}})
                  .umbilic(true));
  c.push_back(E("g535.spherical-b", "model", "v*y2 + y1*x2 = abs2(z2)*atan(y2/x2)", kInd)
                  .domain({"x2"})
                  .base(pt("0", "0", "1", "0", "0", "0"))
                  .algebra("g5_35", {{"alpha", "0"}, {"beta", "0"}})
                  .frame({{"-z2", "0", "i*z2"},
                          {"1", "0", "0"},
                          {"0", "0", "-1"},
                          {"z1", "z2", "w"},
                          {"-w + i*z2", "i*z2", "z1 + z2"}})
                  .umbilic(true));
  c.push_back(E("moser.example", "model", "v*x2 - y1*y2 = abs2(z2)*atan(y2/x2)", kInd)
                  .domain({"x2"})
                  .base(pt("0", "0", "1", "0", "0", "0"))
                  .umbilic(true));
  return c;
}

}  // namespace crhs
