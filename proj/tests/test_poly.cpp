#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "curvebraid/curve.hpp"
#include "curvebraid/poly.hpp"
#include "curvebraid/roots.hpp"

using namespace cb;

namespace {
const char* kEx1 = "(3x+2y+1)^2(2x+y+1)-(5x+3y+1)^3";
const char* kEx2 = "(x^2-(y+3/4)^2-1)((x-1/2)^2-y^2-1)";

UPoly upoly(std::vector<Rat> asc) { return UPoly(std::move(asc)); }

std::vector<Rat> rats(std::vector<std::pair<long, long>> v) {
  std::vector<Rat> r;
  for (auto [num, den] : v) r.emplace_back(num, den);
  return r;
}
}  // namespace

TEST_CASE("parser expands the first golden curve") {
  BPoly f = parse_poly(kEx1);
  REQUIRE(f.ydeg() == 3);
  CHECK(f.cy[0] == upoly({Rat(0), Rat(-7), Rat(-54), Rat(-107)}));
  CHECK(f.cy[1] == upoly({Rat(-4), Rat(-64), Rat(-192)}));
  CHECK(f.cy[2] == upoly({Rat(-19), Rat(-115)}));
  CHECK(f.cy[3] == upoly({Rat(-23)}));
}

TEST_CASE("parser expands the second golden curve") {
  BPoly f = parse_poly(kEx2);
  REQUIRE(f.ydeg() == 4);
  CHECK(f.cy[0] == UPoly(rats({{75, 64}, {25, 16}, {-37, 16}, {-1, 1}, {1, 1}})));
  CHECK(f.cy[1] == UPoly(rats({{9, 8}, {3, 2}, {-3, 2}})));
  CHECK(f.cy[2] == UPoly(rats({{37, 16}, {1, 1}, {-2, 1}})));
  CHECK(f.cy[3] == upoly({Rat(3, 2)}));
  CHECK(f.cy[4] == upoly({Rat(1)}));
}

TEST_CASE("parser rejects bad input") {
  CHECK_THROWS_AS(parse_poly("(x"), ParseError);
  CHECK_THROWS_AS(parse_poly("x/y"), ParseError);
  CHECK_THROWS_AS(parse_poly("y^-2"), ParseError);
  CHECK_THROWS_AS(parse_poly("x + @"), ParseError);
  CHECK(parse_poly("3.25 x y").cy[1] == upoly({Rat(0), Rat(13, 4)}));
}

TEST_CASE("resultants agree with the product formula") {
  UPoly a = upoly({Rat(-1), Rat(1)});           // x - 1
  UPoly b = upoly({Rat(-2), Rat(1)});           // x - 2
  CHECK(resultant(a, b) == Rat(-1));
  UPoly c = upoly({Rat(-1), Rat(0), Rat(1)});   // x^2 - 1
  CHECK(resultant(c, b) == Rat(3));
  CHECK(resultant(b, c) == Rat(3));
  CHECK(resultant(c, c) == Rat(0));
}

TEST_CASE("discriminant of the golden curves matches the expanded resultant") {
  BPoly f1 = parse_poly(kEx1);
  UPoly d1 = discriminant_x(f1);
  CHECK(d1 == UPoly(rats(
      {{-2576, 1}, {7452, 1}, {-5313, 1}, {-2484, 1}, {3450, 1}, {0, 1}, {-529, 1}})));
  BPoly f2 = parse_poly(kEx2);
  UPoly d2 = discriminant_x(f2);
  CHECK(d2 == UPoly(rats({{1083603, 16384},
                          {505441, 4096},
                          {-2836247, 16384},
                          {-1133601, 4096},
                          {771601, 4096},
                          {13015, 64},
                          {-3405, 32},
                          {-50, 1},
                          {25, 1}})));
}

TEST_CASE("squarefree decomposition and Sturm counting") {
  // (x-1)^2 (x+2)^3 x
  UPoly f = upoly({Rat(1)});
  UPoly xm1 = upoly({Rat(-1), Rat(1)}), xp2 = upoly({Rat(2), Rat(1)}), xx = UPoly::x();
  f = xm1 * xm1 * xp2 * xp2 * xp2 * xx;
  auto dec = squarefree_decomposition(f);
  REQUIRE(dec.size() == 3);
  CHECK(dec[0] == std::pair{xx, 1});
  CHECK(dec[1] == std::pair{xm1, 2});
  CHECK(dec[2] == std::pair{xp2, 3});

  UPoly g = (UPoly::x() * UPoly::x() - upoly({Rat(2)})) * upoly({Rat(-3), Rat(1)});
  SturmChain chain(g);
  CHECK(chain.count(Rat(0), Rat(2)) == 1);
  CHECK(chain.count(Rat(-2), Rat(4)) == 3);
  CHECK(chain.count(Rat(2), Rat(3)) == 1);  // right endpoint is a root: included
  CHECK(chain.count(Rat(3), Rat(4)) == 0);  // left endpoint is a root: excluded
}

TEST_CASE("real root isolation") {
  UPoly g = (UPoly::x() * UPoly::x() - upoly({Rat(2)})) * upoly({Rat(-3), Rat(1)});
  auto boxes = isolate_real_roots(g, Rat(1, 1 << 20));
  REQUIRE(boxes.size() == 3);
  double expect[3] = {-1.4142135623730951, 1.4142135623730951, 3.0};
  for (int i = 0; i < 3; ++i) {
    double mid = (to_double(boxes[i].first) + to_double(boxes[i].second)) / 2;
    CHECK(mid == doctest::Approx(expect[i]).epsilon(1e-6));
  }
  // a rational root is bracketed within the requested width
  auto exact = isolate_real_roots(upoly({Rat(-1, 2), Rat(1)}), Rat(1, 1024));
  REQUIRE(exact.size() == 1);
  CHECK(exact[0].first <= Rat(1, 2));
  CHECK(Rat(1, 2) <= exact[0].second);
  CHECK(exact[0].second - exact[0].first <= Rat(1, 1024));
}

TEST_CASE("random polynomial arithmetic is consistent under evaluation") {
  std::mt19937 rng(5150);
  std::uniform_int_distribution<int> coeff(-9, 9), deg(0, 6);
  for (int t = 0; t < 40; ++t) {
    UPoly a, b;
    for (int i = 0; i <= deg(rng); ++i) a.c.emplace_back(coeff(rng));
    for (int i = 0; i <= deg(rng); ++i) b.c.emplace_back(coeff(rng));
    a.trim();
    b.trim();
    Rat pt(coeff(rng), 7);
    CHECK((a * b).eval(pt) == a.eval(pt) * b.eval(pt));
    CHECK((a + b).eval(pt) == a.eval(pt) + b.eval(pt));
    if (!b.is_zero()) {
      auto [q, r] = divmod(a, b);
      CHECK(q * b + r == a);
      if (r.is_zero() || r.degree() < b.degree()) CHECK(true);
    }
  }
}

TEST_CASE("aberth finds known roots") {
  // y^3 - 7y + 6 = (y-1)(y-2)(y+3)
  auto roots = aberth_roots({cpx(6), cpx(-7), cpx(0), cpx(1)});
  std::vector<double> expect = {-3, 1, 2};
  std::sort(roots.begin(), roots.end(), [](cpx a, cpx b) { return a.real() < b.real(); });
  for (int i = 0; i < 3; ++i) {
    CHECK(roots[i].real() == doctest::Approx(expect[i]).epsilon(1e-10));
    CHECK(roots[i].imag() == doctest::Approx(0.0).scale(1));
  }
  auto ims = aberth_roots({cpx(1), cpx(0), cpx(1)});
  CHECK(std::abs(ims[0] + ims[1]) < 1e-10);
  CHECK(std::abs(std::abs(ims[0]) - 1) < 1e-10);
}

TEST_CASE("fiber continuation keeps root indexing stable") {
  FiberSolver solver(parse_poly(kEx1));
  std::vector<cpx> warm = solver.roots(cpx(2, 0));
  std::vector<cpx> cur = warm;
  for (int k = 1; k <= 50; ++k) cur = solver.roots(cpx(2 + k * 0.02, 0), cur);
  auto direct = solver.roots(cpx(3, 0));
  for (const cpx& d : direct) {
    double best = 1e9;
    for (const cpx& c : cur) best = std::min(best, std::abs(c - d));
    CHECK(best < 1e-9);
  }
}

TEST_CASE("curve analysis of the goldens") {
  Curve c1 = Curve::from_text(kEx1);
  CHECK(c1.n == 3);
  REQUIRE(c1.points.size() == 4);
  double xs1[4] = {-2.320527986983, -1.827651833136, 1.0, 1.148179820120};
  int vs1[4] = {1, 1, 3, 1};
  for (int i = 0; i < 4; ++i) {
    CHECK(c1.points[i].x == doctest::Approx(xs1[i]).epsilon(1e-9));
    CHECK(c1.points[i].valuation == vs1[i]);
  }

  Curve c2 = Curve::from_text(kEx2);
  CHECK(c2.n == 4);
  REQUIRE(c2.points.size() == 6);
  double xs2[6] = {-1.143063171576, -1.0, -0.5, 1.0, 1.5, 1.643063171576};
  int vs2[6] = {2, 1, 1, 1, 1, 2};
  for (int i = 0; i < 6; ++i) {
    CHECK(c2.points[i].x == doctest::Approx(xs2[i]).epsilon(1e-9));
    CHECK(c2.points[i].valuation == vs2[i]);
  }

  CHECK_THROWS_AS(Curve::from_text("(y-x)^2"), DegenerateCurveError);
  CHECK_THROWS_AS(Curve::from_text("x y^2 + 1"), ParseError); // non-constant lead
  CHECK_THROWS_AS(Curve::from_text("x^2-1"), ParseError);     // no y
}
