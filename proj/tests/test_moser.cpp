#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "crhs/moser.hpp"

using namespace crhs;

namespace {

const cplx I(0.0, 1.0);

double max_diff(const Poly& a, const Poly& b) { return a.max_abs_diff(b); }

DefiningFunction spherical_b() { return DefiningFunction::parse("v*x2 - y1*y2 - abs2(z2)*atan(y2/x2)", {"x2"}); }

EvalPoint point_q() { return EvalPoint::real_locus(0.0, 1.0, 0.0); }

DefiningFunction winkelmann() { return DefiningFunction::parse("v - (z1*conj(z2) + z2*conj(z1)) - abs2(z1)^2"); }

}  // namespace

TEST_CASE("graph jet of the spherical argument surface matches the printed expansion") {
  auto g = graph_jet(spherical_b(), point_q());
  REQUIRE(g.raw.has_value());
  auto re = real_expansion(*g.raw);  // variables x1, y1, x2, y2, u
  auto c = [&](int x1, int y1, int x2, int y2, int u) { return re.coeff({x1, y1, x2, y2, u, 0}); };
  std::map<std::array<int, 5>, double> expected = {
      {{0, 0, 0, 1, 0}, 1.0},                                   // y2
      {{0, 1, 0, 1, 0}, 1.0},                                   // y1 y2
      {{0, 1, 1, 1, 0}, -1.0}, {{0, 0, 0, 3, 0}, 2.0 / 3.0},    // -y1 x2 y2 + 2/3 y2^3
      {{0, 1, 2, 1, 0}, 1.0},  {{0, 0, 1, 3, 0}, -4.0 / 3.0},   // y1 x2^2 y2 - 4/3 x2 y2^3
  };
  const auto& L = re.layout();
  for (std::size_t k = 0; k < L.size(); ++k) {
    const auto& m = L.mono(k);
    std::array<int, 5> key{m[0], m[1], m[2], m[3], m[4]};
    double want = expected.count(key) ? expected[key] : 0.0;
    INFO(m[0] << m[1] << m[2] << m[3] << m[4]);
    CHECK(std::abs(re.coeffs()[k] - want) <= 1e-12);
  }
  CHECK(std::abs(c(0, 0, 0, 3, 0) - 2.0 / 3.0) <= 1e-12);
  CHECK(g.model == "indefinite");
  CHECK((g.levi.m - HermitianForm2::indefinite_model().m).norm() <= 1e-12);
}

TEST_CASE("bidegree components of the spherical argument surface") {
  auto g = graph_jet(spherical_b(), point_q());
  auto F21 = bidegree(g.jet, 2, 1);
  auto want21 = parse_poly("-z2^2*zc1 - 2*i*z2^2*zc2");
  CHECK(max_diff(F21, want21) <= 1e-12);

  // The printed (2,2) part reads z2^2 zc1 zc1; the computed part is the real
  // polynomial z2^2 zc1 zc2 + z1 z2 zc2^2.
  auto F22 = bidegree(g.jet, 2, 2);
  CHECK(max_diff(F22, parse_poly("z2^2*zc1*zc2 + z1*z2*zc2^2")) <= 1e-12);
  CHECK(max_diff(F22, parse_poly("z2^2*zc1^2 + z1*z2*zc2^2")) > 0.5);
}

TEST_CASE("solve_f2 examples") {
  auto f2 = solve_f2(parse_poly("-z2^2*zc1 - 2*i*z2^2*zc2"), HermitianForm2::indefinite_model());
  CHECK(max_diff(f2[0], parse_poly("-2*i*z2^2")) <= 1e-13);
  CHECK(max_diff(f2[1], parse_poly("-z2^2")) <= 1e-13);

  auto zero = solve_f2(zero_poly(), HermitianForm2::indefinite_model());
  CHECK(max_diff(zero[0], zero_poly()) == 0);
  CHECK(max_diff(zero[1], zero_poly()) == 0);

  auto d = solve_f2(parse_poly("z1^2*zc1"), HermitianForm2::definite_model());
  CHECK(max_diff(d[0], parse_poly("z1^2")) <= 1e-13);
  CHECK(max_diff(d[1], zero_poly()) <= 1e-13);

  HermitianForm2 singular;
  singular.m(0, 0) = 1.0;
  CHECK_THROWS_AS(solve_f2(parse_poly("z1^2*zc1"), singular), DomainError);
}

TEST_CASE("solve_f2 reproduces its input") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> U(-1, 1);
  for (const auto& levi : {HermitianForm2::indefinite_model(), HermitianForm2::definite_model()}) {
    Poly F21 = zero_poly();
    for (int a1 = 0; a1 <= 2; ++a1)
      for (int b1 = 0; b1 <= 1; ++b1) set_poly_coeff(F21, a1, 2 - a1, b1, 1 - b1, cplx(U(rng), U(rng)));
    auto f2 = solve_f2(F21, levi);
    std::array<Poly, 2> z = {parse_poly("z1"), parse_poly("z2")};
    CHECK(max_diff(hermitian_pairing(f2, z, levi), F21) <= 1e-13);
  }
}

TEST_CASE("h22 examples") {
  auto f2 = std::array<Poly, 2>{parse_poly("-2*i*z2^2"), parse_poly("-z2^2")};
  auto pair = hermitian_pairing(f2, f2, HermitianForm2::indefinite_model());
  CHECK(max_diff(pair, zero_poly()) <= 1e-14);
  auto F22 = parse_poly("z2^2*zc1*zc2 + z1*z2*zc2^2");
  CHECK(max_diff(h22(F22, f2, HermitianForm2::indefinite_model()), F22) <= 1e-14);

  CHECK(max_diff(h22(zero_poly(), {zero_poly(), zero_poly()}, HermitianForm2::indefinite_model()), zero_poly()) == 0);

  auto g = std::array<Poly, 2>{parse_poly("z2^2"), zero_poly()};
  auto H = h22(F22, g, HermitianForm2::definite_model());
  CHECK(max_diff(H, F22 - parse_poly("abs2(z2)^2")) <= 1e-14);
}

TEST_CASE("n220_project examples") {
  auto ind = HermitianForm2::indefinite_model();
  auto n0 = n220_project(parse_poly("z2^2*zc1*zc2 + z1*z2*zc2^2"), ind);
  CHECK(n0.max_abs() <= 1e-12);

  auto n1 = n220_project(parse_poly("abs2(z1)^2"), ind);
  auto a = n1.as_array();
  CHECK(std::abs(a[0] - 1.0) <= 1e-13);
  for (int k = 1; k < 5; ++k) CHECK(std::abs(a[static_cast<std::size_t>(k)]) <= 1e-13);

  CHECK(n220_project(zero_poly(), ind).max_abs() == 0);

  // The literal printed pair z2^2 zc1^2 + z1 z2 zc2^2 is not real: reported, not guessed.
  CHECK_THROWS_AS(n220_project(parse_poly("z2^2*zc1^2 + z1*z2*zc2^2"), ind), Unsupported);
  CHECK_THROWS_AS(n220_project(parse_poly("z1^3*zc1"), ind), UsageError);
}

TEST_CASE("mixed pair rule") {
  // conj(C) z2^2 zc1 zc2 + C z1 z2 zc2^2 projects to i Im C (z1 z2 zc2^2 - z2^2 zc1 zc2).
  auto ind = HermitianForm2::indefinite_model();
  for (cplx C : {cplx(1, 0), cplx(0.7, 0.3), cplx(-2, -1.5)}) {
    Poly H = zero_poly();
    set_poly_coeff(H, 0, 2, 1, 1, std::conj(C));
    set_poly_coeff(H, 1, 1, 0, 2, C);
    auto n = n220_project(H, ind).as_array();
    CHECK(std::abs(n[4] - C.imag()) <= 1e-13);
    for (int k = 0; k < 4; ++k) CHECK(std::abs(n[static_cast<std::size_t>(k)]) <= 1e-13);
  }
}

TEST_CASE("n220 basis maps to unit vectors") {
  for (const auto& levi : {HermitianForm2::indefinite_model(), HermitianForm2::definite_model()}) {
    auto basis = n220_basis(levi);
    for (int k = 0; k < 5; ++k) {
      auto n = n220_project(basis[static_cast<std::size_t>(k)], levi).as_array();
      for (int j = 0; j < 5; ++j) CHECK(std::abs(n[static_cast<std::size_t>(j)] - (j == k ? 1.0 : 0.0)) <= 1e-12);
    }
  }
}

TEST_CASE("n220 projection is linear") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> U(-1, 1);
  auto ind = HermitianForm2::indefinite_model();
  auto random_real = [&] {
    Poly p = zero_poly();
    for (int a1 = 0; a1 <= 2; ++a1)
      for (int b1 = 0; b1 <= 2; ++b1) {
        if (a1 > b1) continue;
        cplx c = a1 == b1 ? cplx(U(rng)) : cplx(U(rng), U(rng));
        set_poly_coeff(p, a1, 2 - a1, b1, 2 - b1, c);
        set_poly_coeff(p, b1, 2 - b1, a1, 2 - a1, std::conj(c));
      }
    return p;
  };
  for (int t = 0; t < 20; ++t) {
    auto p = random_real(), q = random_real();
    double s = U(rng) * 3;
    auto np = n220_project(p, ind).as_array(), nq = n220_project(q, ind).as_array();
    auto sum = n220_project(p + cplx(s) * q, ind).as_array();
    for (int k = 0; k < 5; ++k) {
      auto kk = static_cast<std::size_t>(k);
      CHECK(std::abs(sum[kk] - (np[kk] + s * nq[kk])) <= 1e-12);
    }
  }
}

TEST_CASE("quadric jets") {
  auto g = graph_jet(DefiningFunction::parse("v - abs2(z1) - abs2(z2)"), EvalPoint{});
  CHECK(g.model == "definite");
  const auto& L = g.jet.F.layout();
  for (std::size_t k = 0; k < L.size(); ++k) {
    const auto& m = L.mono(k);
    bool levi_block = m[0] + m[1] == 1 && m[2] + m[3] == 1 && m[4] == 0;
    if (!levi_block) CHECK(std::abs(g.jet.F.coeffs()[k]) <= 1e-13);
  }
  CHECK(std::abs(g.jet.coeff(1, 0, 1, 0, 0) - 1.0) <= 1e-13);
  CHECK(std::abs(g.jet.coeff(0, 1, 0, 1, 0) - 1.0) <= 1e-13);
  CHECK(max_diff(bidegree(g.jet, 2, 2), zero_poly()) <= 1e-13);
}

TEST_CASE("graph jet of the Winkelmann surface") {
  auto g = graph_jet(winkelmann(), EvalPoint{});
  CHECK(g.model == "indefinite");
  CHECK(std::abs(g.jet.coeff(1, 0, 0, 1, 0) - 1.0) <= 1e-13);
  CHECK(std::abs(g.jet.coeff(0, 1, 1, 0, 0) - 1.0) <= 1e-13);
  CHECK(max_diff(bidegree(g.jet, 2, 2), parse_poly("abs2(z1)^2")) <= 1e-13);
  for (auto [k, l] : std::vector<std::pair<int, int>>{{2, 0}, {0, 2}, {2, 1}, {1, 2}, {3, 0}, {3, 1}, {4, 0}})
    CHECK(max_diff(bidegree(g.jet, k, l), zero_poly()) <= 1e-13);
}

TEST_CASE("bidegree parts recombine to a real polynomial") {
  auto g = graph_jet(spherical_b(), point_q());
  for (auto [k, l] : std::vector<std::pair<int, int>>{{2, 1}, {3, 0}, {3, 1}, {2, 0}}) {
    auto sum = bidegree(g.jet, k, l) + bidegree(g.jet, l, k);
    const auto& L = sum.layout();
    for (std::size_t i = 0; i < L.size(); ++i) {
      const auto& m = L.mono(i);
      CHECK(std::abs(sum.coeffs()[i] - std::conj(poly_coeff(sum, m[2], m[3], m[0], m[1]))) <= 1e-12);
    }
  }
  CHECK(g.jet.reality_defect() <= 1e-12);
  CHECK_THROWS_AS(bidegree(g.jet, 3, 2), UsageError);
}

TEST_CASE("graph jet of a Hermitian quadric returns the form") {
  auto g = graph_jet(DefiningFunction::parse("v - (z1*conj(z2) + z2*conj(z1))"), EvalPoint{});
  const auto& L = g.jet.F.layout();
  for (std::size_t k = 0; k < L.size(); ++k) {
    const auto& m = L.mono(k);
    bool levi_block = m[0] + m[1] == 1 && m[2] + m[3] == 1 && m[4] == 0;
    if (!levi_block) CHECK(std::abs(g.jet.F.coeffs()[k]) <= 1e-13);
  }
  CHECK(std::abs(g.jet.coeff(1, 0, 0, 1, 0) - 1.0) <= 1e-13);
}

TEST_CASE("umbilic predicate") {
  CHECK(is_umbilic(spherical_b(), point_q()));
  CHECK(is_umbilic(DefiningFunction::parse("v - abs2(z1) - abs2(z2)"), EvalPoint{}));
  CHECK_FALSE(is_umbilic(winkelmann(), EvalPoint{}));

  auto r = moser_pipeline(winkelmann(), EvalPoint{});
  auto n = r.n220.as_array();
  CHECK(n[0] == doctest::Approx(1.0).epsilon(1e-13));
  for (int k = 1; k < 5; ++k) CHECK(std::abs(n[static_cast<std::size_t>(k)]) <= 1e-13);
  auto j = r.to_json();
  CHECK(j.contains("f2"));
  CHECK(j.contains("substitutions"));
  CHECK(j["umbilic"] == false);

  auto s = moser_pipeline(spherical_b(), point_q());
  CHECK(s.n220.max_abs() <= 1e-9);
  CHECK(max_diff(s.f2[0], parse_poly("-2*i*z2^2")) <= 1e-12);
  CHECK(max_diff(s.f2[1], parse_poly("-z2^2")) <= 1e-12);
}

TEST_CASE("pipeline errors") {
  CHECK_THROWS_AS(graph_jet(DefiningFunction::parse("v - abs2(z1)"), EvalPoint{}), DomainError);
  CHECK_THROWS_AS(graph_jet(winkelmann(), EvalPoint::real_locus(0.0, 0.0, cplx(0, 1))), DomainError);
}
