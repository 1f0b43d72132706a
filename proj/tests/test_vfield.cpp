#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numbers>
#include <random>

#include "crhs/hypersurface.hpp"
#include "crhs/vfield.hpp"
#include "frames.hpp"

using namespace crhs;
using namespace crhs::testing;

namespace {

const cplx I(0.0, 1.0);

double norm_inf(const CVec3& a) { return std::max({std::abs(a[0]), std::abs(a[1]), std::abs(a[2])}); }

CVec3 diff(const CVec3& a, const CVec3& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }

std::vector<VectorFieldFrame> printed_frames() {
  return {g5_frame(),
          su2g2_frame(true),
          g536_frame(I),
          g537_frame1(cplx(0.5, -1.0)),
          g537_frame2(I, cplx(0.5, 2.0)),
          g535_frame(0.5, -1.0, 1.0, true),
          g535_special_frame(1.0, -1.0, cplx(0.3, -0.8))};
}

}  // namespace

TEST_CASE("apply_to examples") {
  auto phi = parse("v - y1*y2");
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> U(-1, 1);
  for (int k = 0; k < 10; ++k) {
    auto p = EvalPoint::real_locus(cplx(U(rng), U(rng)), cplx(U(rng), U(rng)), cplx(U(rng), U(rng)));
    cplx val = apply_to(F("0", "0", "1"), phi, p);
    CHECK(std::abs(val - 1.0 / (2.0 * I)) <= 1e-15);
    CHECK(std::abs(val.real()) <= 1e-15);
  }
  CHECK(std::abs(apply_to(F("1", "0", "0"), parse("x1"), EvalPoint{}) - 0.5) <= 1e-15);
  CHECK(std::abs(apply_to(F("2*z1", "-z2", "w"), parse("w"), EvalPoint::real_locus(0.0, 0.0, 3.0)) - 3.0) <= 1e-15);
}

TEST_CASE("holomorphy is enforced") {
  CHECK_THROWS_AS(F("zc1", "0", "0"), UsageError);
  CHECK_THROWS_AS(F("0", "x1", "0"), UsageError);
  CHECK_NOTHROW(F("exp(z1)", "z2*w", "1"));
}

TEST_CASE("commutator examples") {
  auto p = EvalPoint::real_locus(cplx(0.3), cplx(-0.2), cplx(0, 0.1));
  CHECK(norm_inf(commutator_at(F("1", "0", "0"), F("0", "1", "0"), p)) == 0);
  auto g5 = g5_frame();
  CHECK(norm_inf(commutator_at(g5.fields[3], g5.fields[4], p)) <= 1e-15);
  auto e3 = g5.fields[2].at(p);
  auto br = commutator_at(g5.fields[1], g5.fields[2], p);
  CHECK(norm_inf(diff(br, {2.0 * e3[0], 2.0 * e3[1], 2.0 * e3[2]})) <= 1e-14);
}

TEST_CASE("commutator is antisymmetric") {
  std::mt19937_64 rng(3);
  for (const auto& fr : printed_frames()) {
    auto pts = polydisc_points(EvalPoint{}, 0.5, 10, rng());
    for (const auto& p : pts)
      for (std::size_t a = 0; a < fr.size(); ++a)
        for (std::size_t b = a + 1; b < fr.size(); ++b) {
          auto xy = commutator_at(fr.fields[a], fr.fields[b], p);
          auto yx = commutator_at(fr.fields[b], fr.fields[a], p);
          CHECK(norm_inf({xy[0] + yx[0], xy[1] + yx[1], xy[2] + yx[2]}) <= 1e-12);
        }
  }
}

TEST_CASE("jacobi identity at points") {
  std::mt19937_64 rng(5);
  for (const auto& fr : printed_frames()) {
    INFO(fr.label);
    auto pts = polydisc_points(EvalPoint{}, 0.5, 10, rng());
    double worst = 0;
    for (const auto& p : pts)
      for (std::size_t a = 0; a < fr.size(); ++a)
        for (std::size_t b = a + 1; b < fr.size(); ++b)
          for (std::size_t c = b + 1; c < fr.size(); ++c)
            worst = std::max(worst, jacobi_at(fr.fields[a], fr.fields[b], fr.fields[c], p));
    CHECK(worst <= 1e-8);
  }
}

TEST_CASE("verify_realization examples") {
  auto pts = polydisc_points(EvalPoint{}, 0.5, 20, 1);
  auto r = verify_realization(g5_frame(), table_algebra("g5"), pts);
  CHECK(r.pass);
  CHECK(r.max_residual <= 1e-9);
  CHECK(r.points == 20);

  auto r36 = verify_realization(g536_frame(I), table_algebra("g5_36"), pts);
  CHECK(r36.pass);
  CHECK(r36.max_residual <= 1e-9);

  auto tr = make_frame({F("1", "0", "0"), F("0", "1", "0"), F("0", "0", "1")}, "translations");
  auto rt = verify_realization(tr, table_algebra("abelian_3"), pts);
  CHECK(rt.max_residual == 0);
  CHECK(rt.pass);
}

TEST_CASE("verify_realization detects wrong constants") {
  auto pts = polydisc_points(EvalPoint{}, 0.5, 20, 2);
  auto r = verify_realization(g5_frame(), table_algebra("g5_37"), pts);
  CHECK_FALSE(r.pass);
  CHECK(r.max_residual > 0.1);
  CHECK(r.worst_i >= 0);
  CHECK_THROWS_AS(verify_realization(g5_frame(), table_algebra("abelian_4"), pts), UsageError);
}

TEST_CASE("constants drawn for the free frame parameters") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> U(-2, 2);
  auto pts = polydisc_points(EvalPoint{}, 0.5, 20, 3);
  for (int k = 0; k < 3; ++k) {
    cplx c(U(rng), U(rng));
    CHECK(verify_realization(g536_frame(c), table_algebra("g5_36"), pts).pass);
    CHECK(verify_realization(g537_frame1(c), table_algebra("g5_37"), pts).pass);
    for (double a : {1.0, -1.0}) CHECK(verify_realization(g537_frame2(a * I, c), table_algebra("g5_37"), pts).pass);
  }
}

TEST_CASE("su2 + g2 span with the sixth field closes") {
  auto pts = polydisc_points(EvalPoint{}, 0.5, 20, 4);
  CHECK(verify_realization(su2g2_frame(false), table_algebra("su2_g2"), pts).pass);
  auto fit = fit_structure_constants(su2g2_frame(true), pts);
  CHECK(fit.max_residual <= 1e-9);
  CHECK(fit.constants.dim() == 6);
  // The printed e2 (third component +z2 sin z1) does not close.
  auto bad = su2g2_frame(false);
  bad.fields[1] = F("-i*sin(z1)", "-i*z2*cos(z1)", "z2*sin(z1)");
  CHECK(fit_structure_constants(bad, pts).max_residual > 1e-3);
}

TEST_CASE("real rank examples") {
  CHECK(real_rank_at(g5_frame(), EvalPoint::real_locus(I, 0.0, I)) == 5);
  CHECK(real_rank_at(make_frame({F("1", "0", "0"), F("2", "0", "0")}, ""), EvalPoint{}) == 1);
  CHECK(real_rank_at(make_frame({F("1", "0", "0"), F("i", "0", "0")}, ""), EvalPoint{}) == 2);
}

TEST_CASE("real rank is invariant under real scaling") {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> U(-3, 3);
  for (const auto& fr : printed_frames()) {
    auto pts = polydisc_points(EvalPoint{}, 0.5, 5, rng());
    for (const auto& p : pts) {
      int r0 = real_rank_at(fr, p);
      auto scaled = fr;
      for (auto& f : scaled.fields) {
        double c = U(rng);
        if (std::abs(c) < 0.1) c = 1.5;
        f = HoloVectorField(f.f * Expr(c), f.g * Expr(c), f.h * Expr(c));
      }
      CHECK(real_rank_at(scaled, p) == r0);
    }
  }
}

TEST_CASE("integrate_flow examples") {
  auto tr = integrate_flow(F("0", "0", "1"), EvalPoint{}, 1.0, 1.0 / 64);
  CHECK(tr.points.back()[Var::w] == cplx(1.0));
  auto tr2 = integrate_flow(F("0", "0", "1"), EvalPoint{}, 1.0, 1e-2);
  CHECK(std::abs(tr2.points.back()[Var::w] - 1.0) <= 1e-14);
  CHECK(tr.times.back() == doctest::Approx(1.0).epsilon(1e-15));
  for (std::size_t k = 1; k < tr.times.size(); ++k) CHECK(tr.times[k] > tr.times[k - 1]);
  for (const auto& p : tr.points) CHECK(p.on_real_locus());

  auto lin = integrate_flow(F("2*z1", "-z2", "w"), EvalPoint::real_locus(1.0, 1.0, 1.0), 0.1, 1e-3);
  auto end = lin.points.back().holo();
  CHECK(std::abs(end[0] - std::exp(0.2)) <= 1e-10);
  CHECK(std::abs(end[1] - std::exp(-0.1)) <= 1e-10);
  CHECK(std::abs(end[2] - std::exp(0.1)) <= 1e-10);
}

TEST_CASE("integrate_flow reports singularities") {
  // z1 = 1 - t leaves the branch domain of log(z1) at t = 1.
  try {
    integrate_flow(F("-1", "0", "log(z1)"), EvalPoint::real_locus(1.0, 0.0, 0.0), 2.0, 1e-3);
    FAIL("expected FlowError");
  } catch (const FlowError& err) {
    CHECK(err.t_reached() > 0.99);
    CHECK(err.t_reached() < 1.0);
  }
}

// e4 = (z1, 1, w) of the general g5_35 frame with lambda = 1/2, i.e. the
// m = 2, n = 0 orbit in unscaled coordinates: v sin(y2/2) - y1 cos(y2/2) = e^x2.
TEST_CASE("flow conserves the m = 2 orbit") {
  auto df = DefiningFunction::parse("v*sin(y2/2) - y1*cos(y2/2) - exp(x2)", {"sin(y2/2) - 0.1"});
  auto p0 = find_point(df, EvalPoint::real_locus(0.0, cplx(0, std::numbers::pi), cplx(0, 1)), RealCoord::v);
  auto fr = g535_frame(0.0, 0.5, 1.0);
  for (const auto& f : fr.fields) CHECK(tangency_residual(f, df, p0) <= 1e-12);
  auto drift = flow_drift(fr.fields[3], df, p0, 0.5, 1e-3);
  CHECK(drift.completed);
  CHECK(drift.max_abs_phi <= 1e-6);
}

TEST_CASE("polydisc points are seeded") {
  auto a = polydisc_points(EvalPoint::real_locus(1.0, 0.0, 0.0), 0.5, 10, 42);
  auto b = polydisc_points(EvalPoint::real_locus(1.0, 0.0, 0.0), 0.5, 10, 42);
  for (std::size_t k = 0; k < a.size(); ++k) {
    CHECK(a[k].v == b[k].v);
    CHECK(std::abs(a[k][Var::z1] - 1.0) <= 0.5);
    CHECK(a[k].on_real_locus());
  }
}

TEST_CASE("special g5_35 frame needs lambda = +-1") {
  auto pts = polydisc_points(EvalPoint{}, 0.5, 20, 6);
  for (double l : {1.0, -1.0})
    for (double s : {1.0, -1.0})
      CHECK(verify_realization(g535_special_frame(l, s, cplx(0.3, -0.8)), table_algebra("g5_35", {{"alpha", 0}, {"beta", 1 - l}}), pts).pass);
  for (double l : {0.5, 2.0}) {
    auto fit = fit_structure_constants(g535_special_frame(l, 1.0, cplx(0.3, -0.8)), pts);
    CHECK(fit.max_residual > 0.1);
  }
}
