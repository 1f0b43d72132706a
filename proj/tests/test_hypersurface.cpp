#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numbers>
#include <random>

#include "crhs/hypersurface.hpp"
#include "frames.hpp"

using namespace crhs;
using namespace crhs::testing;

namespace {

const cplx I(0.0, 1.0);

EvalPoint at_real(double x1, double y1, double x2, double y2, double u, double v) {
  return EvalPoint::real_locus(cplx(x1, y1), cplx(x2, y2), cplx(u, v));
}

Eigen::Matrix2cd random_unitary(std::mt19937_64& rng) {
  std::normal_distribution<double> N;
  Eigen::Matrix2cd m;
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) m(r, c) = cplx(N(rng), N(rng));
  Eigen::HouseholderQR<Eigen::Matrix2cd> qr(m);
  return qr.householderQ() * Eigen::Matrix2cd::Identity();
}

// Surfaces paired by the quadratic map and by the fractional map.
const char* kSl2Orbit = "v*y1 + x2 - alpha*sqrt(abs2(z2))";
const char* kSl2Model = "1 - abs2(z1) - abs2(z2) + abs2(w) - alpha*sqrt(abs2(1 - z1^2 - z2^2 + w^2))";

HoloMap fractional_map() {
  return {parse("(1 + z2)/(w - z1)"), parse("(1 - z1^2 - z2^2 + w^2)/(w - z1)^2"), parse("2*(1 - z2)/(w - z1)")};
}

HoloMap fractional_map_inverse() {
  return {parse("-(z1*w - 2*z2 + 2)/(2*z1 + w)"), parse("(2*z1 - w)/(2*z1 + w)"),
          parse("-(z1*w - 2*z2 - 2)/(2*z1 + w)")};
}

}  // namespace

TEST_CASE("parse_equation") {
  auto a = parse_equation("v = y1*y2");
  auto b = parse("v - (y1*y2)");
  auto p = at_real(0.2, 0.3, -0.4, 0.5, 0.1, 0.7);
  CHECK(std::abs(eval(a, p) - eval(b, p)) <= 1e-15);
  CHECK_THROWS_AS(parse_equation("v = 1 = 2"), ParseError);
  try {
    parse_equation("v = y1^^");
  } catch (const ParseError& e) {
    CHECK(e.offset() == 7);
  }
}

TEST_CASE("find_point examples") {
  auto g = DefiningFunction::parse("v - y1*y2");
  auto p = find_point(g, at_real(0, 1, 0, 1, 0, 0), RealCoord::v);
  CHECK(std::abs(p.real_coord(RealCoord::v) - 1.0) <= 1e-12);
  CHECK(p.real_coord(RealCoord::y1) == 1.0);

  auto q = DefiningFunction::parse("(v - x2*y1)^2 + y1^2*y2^2 - y1", {"y1"});
  auto r = find_point(q, at_real(0, 1, 0, 0, 0, 0.5), RealCoord::v);
  CHECK(std::abs(r.real_coord(RealCoord::v) - 1.0) <= 1e-12);

  CHECK_THROWS_AS(find_point(q, at_real(0, -1, 0, 0, 0, 0.5), RealCoord::v), DomainError);
  CHECK_THROWS_AS(find_point(DefiningFunction::parse("x1 - 1"), EvalPoint{}, RealCoord::v), ConvergenceError);
}

TEST_CASE("find_point is a retraction") {
  auto df = DefiningFunction::parse("(v - x2*y1)^2 + y1^2*y2^2 - y1", {"y1"});
  auto base = find_point(df, at_real(0, 1, 0, 0, 0, 1), RealCoord::v);
  for (const auto& p : sample_points(df, base, 20, 0.3, 5)) {
    auto again = find_point(df, p, RealCoord::v);
    for (int k = 0; k < kNumVars; ++k) CHECK(std::abs(again.v[k] - p.v[k]) <= 1e-12);
  }
}

TEST_CASE("sample_points examples") {
  auto quad = DefiningFunction::parse("v - abs2(z1) - abs2(z2)");
  CHECK(sample_points(quad, EvalPoint{}, 0, 0.3, 1).empty());
  auto pts = sample_points(quad, EvalPoint{}, 50, 0.3, 1);
  CHECK(pts.size() == 50);
  for (const auto& p : pts) CHECK(std::abs(quad.value(p)) <= 1e-12);

  auto orbit = DefiningFunction::parse("v*sin(y2) - y1*cos(y2) - exp(2*x2)", {"sin(y2) - 0.1"});
  auto base = find_point(orbit, at_real(0, 0, 0, std::numbers::pi / 2, 0, 1), RealCoord::v);
  auto op = sample_points(orbit, base, 50, 0.3, 2);
  CHECK(op.size() == 50);
  for (const auto& p : op) CHECK(std::sin(p.real_coord(RealCoord::y2)) > 0.1);

  auto again = sample_points(orbit, base, 50, 0.3, 2);
  for (std::size_t k = 0; k < op.size(); ++k) CHECK(op[k].v == again[k].v);

  // Unreachable: every perturbation leaves the domain.
  auto narrow = DefiningFunction::parse("v - x1", {"1e-9 - abs2(z2)"});
  CHECK_THROWS_AS(sample_points(narrow, EvalPoint{}, 5, 0.3, 1), ConvergenceError);
}

TEST_CASE("tangency examples") {
  auto df = DefiningFunction::parse("v - y1*y2 - x1^2");
  auto p = find_point(df, at_real(0.3, 0.2, 0.1, -0.4, 2.0, 0.0), RealCoord::v);
  CHECK(tangency_residual(F("0", "0", "1"), df, p) <= 1e-14);

  auto g5 = DefiningFunction::parse("(v - x2*y1)^2 + y1^2*y2^2 - y1", {"y1"});
  auto base = find_point(g5, at_real(0, 1, 0, 0, 0, 1), RealCoord::v);
  double worst = 0;
  for (const auto& q : sample_points(g5, base, 50, 0.3, 3))
    for (const auto& f : g5_frame().fields) worst = std::max(worst, tangency_residual(f, g5, q));
  CHECK(worst <= 1e-9);

  CHECK_THROWS_AS(tangency_residual(F("0", "0", "1"), g5, at_real(0, 1, 0, 0, 0, 5)), DomainError);
}

// The su(2)+g2 fields and the sixth field on v cosh y1 - y2 sinh y1 = alpha|z2|.
TEST_CASE("sixth field of the su(2)+g2 frame is tangent") {
  for (double alpha : {1.0, 0.5, 2.0}) {
    ParamMap pm{{"alpha", alpha}};
    auto df = DefiningFunction::parse("v*(exp(y1) + exp(-y1))/2 - y2*(exp(y1) - exp(-y1))/2 - alpha*sqrt(abs2(z2))",
                                      {"abs2(z2)"}, pm);
    auto base = find_point(df, at_real(0, 0, 1, 0, 0, alpha), RealCoord::v);
    double worst = 0;
    for (const auto& q : sample_points(df, base, 50, 0.3, 4))
      for (const auto& f : su2g2_frame(true).fields) worst = std::max(worst, tangency_residual(f, df, q));
    CHECK(worst <= 1e-9);
  }
}

TEST_CASE("sixth field of the g5_35 orbits is tangent") {
  for (double m : {2.0, -1.0, 0.5})
    for (double n : {0.0, 1.0}) {
      ParamMap pm{{"m", m}, {"n", n}};
      auto df = DefiningFunction::parse("v*sin(y2) - y1*cos(y2) - exp(m*x2 + n*y2)", {"sin(y2) - 0.1"}, pm);
      auto base = find_point(df, at_real(0, 0, 0, std::numbers::pi / 2, 0, 1), RealCoord::v);
      auto e6 = F("exp(-z2)", "0", "-i*exp(-z2)");
      double worst = 0;
      for (const auto& q : sample_points(df, base, 50, 0.3, 5)) worst = std::max(worst, tangency_residual(e6, df, q));
      CHECK(worst <= 1e-9);
    }
}

TEST_CASE("tangency residual is homogeneous") {
  auto df = DefiningFunction::parse("v - abs2(z1) - x2^3");
  auto f = F("z2", "1 + z1", "i*z1*w");
  std::mt19937_64 rng(6);
  for (const auto& p : sample_points(df, EvalPoint{}, 20, 0.5, 6)) {
    double r = tangency_residual(f, df, p);
    for (double c : {-3.0, 0.25, 7.0}) {
      auto g = HoloVectorField(f.f * Expr(c), f.g * Expr(c), f.h * Expr(c));
      CHECK(std::abs(tangency_residual(g, df, p) - std::abs(c) * r) <= 1e-13 * (1 + std::abs(c) * r));
    }
  }
}

TEST_CASE("levi examples") {
  CHECK(levi_classify(DefiningFunction::parse("v - abs2(z1) - abs2(z2)"), EvalPoint{}).kind == LeviKind::Definite);
  CHECK(levi_classify(DefiningFunction::parse("v - abs2(z1) + abs2(z2)"), EvalPoint{}).kind == LeviKind::Indefinite);
  CHECK(levi_classify(DefiningFunction::parse("v"), EvalPoint{}).kind == LeviKind::Degenerate);

  auto cone = DefiningFunction::parse("x1^2 + x2^2 - u^2", {"u"});
  auto p = find_point(cone, at_real(1, 0, 0, 0, 1.2, 0), RealCoord::u);
  CHECK(levi_classify(cone, p).kind == LeviKind::Degenerate);

  auto wink = DefiningFunction::parse("v - (z1*conj(z2) + z2*conj(z1)) - abs2(z1)^2");
  auto lw = levi_classify(wink, EvalPoint{});
  CHECK(lw.kind == LeviKind::Indefinite);
  CHECK(lw.eigenvalues[0] < 0);
  CHECK(lw.eigenvalues[1] > 0);

  CHECK_THROWS_AS(levi_classify(DefiningFunction::parse("v^2"), EvalPoint{}), DomainError);
  CHECK(std::string(levi_name(LeviKind::Indefinite)) == "Indefinite");
}

TEST_CASE("levi class is invariant under scaling and rebasing") {
  std::mt19937_64 rng(8);
  const std::vector<std::pair<std::string, EvalPoint>> cases = {
      {"v - abs2(z1) - abs2(z2)", EvalPoint{}},
      {"v - (z1*conj(z2) + z2*conj(z1)) - abs2(z1)^2", EvalPoint{}},
      {"(v - x2*y1)^2 + y1^2*y2^2 - y1", at_real(0, 1, 0, 0, 0, 1)},
      {"v - y1*y2 - y1^2", at_real(0, 1, 0, 1, 0, 2)},
      {"x1^2 + x2^2 - u^2", at_real(1, 0, 0, 0, 1, 0)},
  };
  for (const auto& [eq, p] : cases) {
    auto df = DefiningFunction::parse(eq);
    auto ref = levi_classify(df, p).kind;
    for (double c : {-3.0, -1.0, 0.5, 7.0}) {
      DefiningFunction scaled(df.phi * Expr(c), df.domain);
      CHECK(levi_classify(scaled, p).kind == ref);
    }
    for (int k = 0; k < 5; ++k) CHECK(levi_classify(df, p, kLeviTol, random_unitary(rng)).kind == ref);
  }
}

TEST_CASE("levi form data") {
  auto d = levi_form(DefiningFunction::parse("v - abs2(z1) - 2*abs2(z2)"), EvalPoint{});
  CHECK((d.L - d.L.adjoint()).norm() <= 1e-14);
  CHECK(std::abs(d.gradient(2) - 1.0 / (2.0 * I)) <= 1e-15);
  CHECK((d.kernel.adjoint() * d.kernel - Eigen::Matrix2cd::Identity()).norm() <= 1e-14);
}

TEST_CASE("map image residual: fractional map") {
  for (double alpha : {0.5, 2.0}) {
    INFO("alpha = " << alpha);
    ParamMap pm{{"alpha", alpha}};
    auto orbit = DefiningFunction::parse(kSl2Orbit, {"y1", "abs2(z2)"}, pm);
    auto model = DefiningFunction::parse(kSl2Model, {"abs2(1 - z1^2 - z2^2 + w^2)"}, pm);

    auto ob = find_point(orbit, at_real(0, 1, 1, 0, 0, alpha - 1), RealCoord::v);
    auto opts = sample_points(orbit, ob, 25, 0.3, 7);
    CHECK(map_image_residual(fractional_map_inverse(), orbit, model, opts) <= 1e-9);

    // Independent points on the model surface.
    EvalPoint mb = alpha > 1 ? find_point(model, at_real(0, 0, 0, 0, 0, 1 / std::sqrt(3.0)), RealCoord::v)
                             : find_point(model, at_real(0, 1 / std::sqrt(3.0), 0, 0, 0, 0), RealCoord::y1);
    auto mpts = sample_points(model, mb, 25, 0.2, 8, alpha > 1 ? RealCoord::v : RealCoord::y1);
    CHECK(map_image_residual(fractional_map(), model, orbit, mpts) <= 1e-9);
  }
}

TEST_CASE("map image residual: quadratic map and identity") {
  for (double alpha : {0.5, 2.0}) {
    ParamMap pm{{"alpha", alpha}};
    auto src = DefiningFunction::parse("v*x1 + x2^2 - y2^2 - alpha*abs2(z2)", {"x1", "abs2(z2)"}, pm);
    auto dst = DefiningFunction::parse("v*x1 + x2 - alpha*sqrt(abs2(z2))", {"x1", "abs2(z2)"}, pm);
    auto base = find_point(src, at_real(1, 0, 1, 0, 0, alpha - 1), RealCoord::v);
    auto pts = sample_points(src, base, 25, 0.3, 9);
    HoloMap sq = {parse("z1"), parse("z2^2"), parse("w")};
    CHECK(map_image_residual(sq, src, dst, pts) <= 1e-9);
    HoloMap id = {parse("z1"), parse("z2"), parse("w")};
    CHECK(map_image_residual(id, src, src, pts) <= kOnSurfaceTol);
  }
}

TEST_CASE("map image residual errors") {
  auto src = DefiningFunction::parse("v");
  auto pts = std::vector<EvalPoint>{EvalPoint{}};
  CHECK_THROWS_AS(map_image_residual({parse("zc1"), parse("z2"), parse("w")}, src, src, pts), UsageError);
  CHECK_THROWS_AS(map_image_residual({parse("1/z1"), parse("z2"), parse("w")}, src, src, pts), DomainError);
  CHECK_THROWS_AS(map_image_residual({parse("z1"), parse("z2"), parse("w")}, src, src, {at_real(0, 0, 0, 0, 0, 1)}),
                  UsageError);
}

TEST_CASE("flow drift") {
  auto df = DefiningFunction::parse("(v - x2*y1)^2 + y1^2*y2^2 - y1", {"y1"});
  auto base = find_point(df, at_real(0, 1, 0, 0, 0, 1), RealCoord::v);
  for (const auto& f : g5_frame().fields) {
    auto d = flow_drift(f, df, base, 0.5, 1e-3);
    CHECK(d.completed);
    CHECK(d.max_abs_phi <= kFlowDriftTol);
  }
  // A non-tangent field drifts off.
  auto off = flow_drift(F("0", "0", "i"), df, base, 0.5, 1e-3);
  CHECK(off.max_abs_phi > 0.1);
}
