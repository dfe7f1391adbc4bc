// Tests for the monodromy engine: conjugating prefixes assembled from the
// critical chart, factorization entries read in the base fiber frame, and the
// verification report against the numeric oracle.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <string>
#include <vector>

#include "curvebraid/engine.hpp"
#include "curvebraid/garside.hpp"
#include "curvebraid/oracle.hpp"

using namespace cb;

namespace {

const char* kCuspImage = "(3x+2y+1)^2 (2x+y+1) - (5x+3y+1)^3";
const char* kTwoConics = "(x^2-(y+3/4)^2-1)((x-1/2)^2-y^2-1)";

bool eq(const BraidWord& a, const BraidWord& b) { return equivalent(a, b); }

CurveAnalysis analyzed(const char* text) { return analyze_curve(parse_poly(text)); }

// Sorted cycle lengths of a permutation, fixed points included.
std::vector<int> cycle_type(const std::vector<int>& perm) {
  std::vector<int> out;
  std::vector<bool> seen(perm.size(), false);
  for (std::size_t i = 0; i < perm.size(); ++i) {
    if (seen[i]) continue;
    int len = 0;
    for (std::size_t j = i; !seen[j]; j = perm[j]) {
      seen[j] = true;
      ++len;
    }
    out.push_back(len);
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Cycle type of the local word of a record embedded among n strands.
std::vector<int> local_cycle_type(const SingularityRecord& rec, int n) {
  BraidWord local = local_braid_word(rec);
  std::vector<int> type = cycle_type(local.permutation());
  for (int i = local.strands; i < n; ++i) type.push_back(1);
  std::sort(type.begin(), type.end());
  return type;
}

}  // namespace

TEST_CASE("a branch point gives a single positive half twist") {
  Factorization fac = braid_monodromy(Curve::from_text("y^2 - x"));
  CHECK(fac.n == 2);
  CHECK(fac.base_d == 0);
  REQUIRE(fac.entries.size() == 1);
  CHECK(fac.entries[0].j == 1);
  CHECK(fac.entries[0].x == doctest::Approx(0.0));
  CHECK(fac.entries[0].rec.type == SingType::a1);
  CHECK(eq(fac.entries[0].braid, parse_word("s1", 2)));
}

TEST_CASE("the cusp image curve factors into its four table entries") {
  CurveAnalysis an = analyzed(kCuspImage);
  Factorization fac = braid_monodromy(an);
  CHECK(fac.n == 3);
  CHECK(fac.base_d == 2);
  REQUIRE(fac.entries.size() == 4);
  SingType types[] = {SingType::a2, SingType::d1, SingType::a2, SingType::a1};
  std::pair<int, int> pairs[] = {{2, 3}, {1, 2}, {1, 2}, {2, 3}};
  const char* expected[] = {"s2", "s1^3", "s1", "s1^-2 s2 s1^2"};
  BraidWord prod(3);
  for (std::size_t i = 0; i < fac.entries.size(); ++i) {
    const FactorEntry& e = fac.entries[i];
    CHECK(e.j == static_cast<int>(i) + 1);
    CHECK(e.x == doctest::Approx(an.chart.n_points[i].x));
    CHECK(e.rec.type == types[i]);
    CHECK(e.rec.k == pairs[i].first);
    CHECK(e.rec.l == pairs[i].second);
    CHECK(eq(e.braid, parse_word(expected[i], 3)));
    prod *= e.braid;
  }
  CHECK(fac.entries[1].rec.nu == 3);
  CHECK(eq(prod, full_twist_word(3)));
}

TEST_CASE("the two conic product factors into its six table entries") {
  CurveAnalysis an = analyzed(kTwoConics);
  Factorization fac = braid_monodromy(an);
  CHECK(fac.n == 4);
  CHECK(fac.base_d == 0);
  REQUIRE(fac.entries.size() == 6);
  SingType types[] = {SingType::c,  SingType::a1, SingType::a1,
                      SingType::a2, SingType::a2, SingType::c};
  std::pair<int, int> pairs[] = {{3, 4}, {2, 3}, {1, 2}, {1, 2}, {2, 3}, {1, 2}};
  const char* expected[] = {"s3^2",        "s3^-1 s2 s3",
                            "s2^-1 s1 s2", "s2^-1 s3 s2",
                            "s3^2 s2^-1 s1 s2 s3^-2", "s3^2"};
  for (std::size_t i = 0; i < fac.entries.size(); ++i) {
    const FactorEntry& e = fac.entries[i];
    CHECK(e.rec.type == types[i]);
    CHECK(e.rec.k == pairs[i].first);
    CHECK(e.rec.l == pairs[i].second);
    CHECK(eq(e.braid, parse_word(expected[i], 4)));
  }
  REQUIRE(an.chart.b_points.size() == 1);
  CHECK(an.chart.b_points[0].gap == 3);
  CHECK(an.chart.b_points[0].rec.k == 1);
  CHECK(an.chart.b_points[0].rec.l == 2);
}

TEST_CASE("conjugating prefixes walk from the critical value to the base") {
  CurveAnalysis an = analyzed(kCuspImage);
  CHECK(conjugating_prefix(1, an).empty());

  std::vector<NamedDelta> g2 = conjugating_prefix(2, an);
  REQUIRE(g2.size() == 1);
  CHECK(g2[0].spec.type == SingType::a2);
  CHECK(g2[0].spec.k == 2);
  CHECK(g2[0].spec.l == 3);

  std::vector<NamedDelta> g4 = conjugating_prefix(4, an);
  REQUIRE(g4.size() == 3);
  SingType types[] = {SingType::a2, SingType::d1, SingType::a2};
  std::pair<int, int> pairs[] = {{1, 2}, {1, 2}, {2, 3}};
  std::pair<int, int> dims[] = {{0, 2}, {2, 0}, {0, 2}};
  for (int i = 0; i < 3; ++i) {
    CHECK(g4[i].spec.type == types[i]);
    CHECK(g4[i].spec.k == pairs[i].first);
    CHECK(g4[i].spec.l == pairs[i].second);
    CHECK(g4[i].d_src == dims[i].first);
    CHECK(g4[i].d_tgt == dims[i].second);
  }
}

TEST_CASE("a switching point joins the prefix inside its gap") {
  CurveAnalysis an = analyzed(kTwoConics);
  std::vector<NamedDelta> g5 = conjugating_prefix(5, an);
  REQUIRE(g5.size() == 5);
  SingType types[] = {SingType::a2, SingType::com, SingType::a1, SingType::a1,
                      SingType::c};
  std::pair<int, int> pairs[] = {{1, 2}, {1, 2}, {1, 2}, {2, 3}, {3, 4}};
  for (int i = 0; i < 5; ++i) {
    CHECK(g5[i].spec.type == types[i]);
    CHECK(g5[i].spec.k == pairs[i].first);
    CHECK(g5[i].spec.l == pairs[i].second);
  }
  // The composition carries the gap left of the fifth point to the base gap.
  CHECK(g5[0].d_src == 2);
  for (int i = 0; i + 1 < 5; ++i) CHECK(g5[i].d_tgt == g5[i + 1].d_src);
  CHECK(g5[4].d_tgt == 0);

  std::vector<NamedDelta> g6 = conjugating_prefix(6, an);
  REQUIRE(g6.size() == 6);
  CHECK(g6[0].spec.type == SingType::a2);
  CHECK(g6[0].spec.k == 2);
  CHECK(g6[0].spec.l == 3);
  for (std::size_t i = 0; i + 1 < g6.size(); ++i)
    CHECK(g6[i].d_tgt == g6[i + 1].d_src);
}

TEST_CASE("entry exponent sums match the local valuations") {
  for (const char* text : {kCuspImage, kTwoConics, "(x^2 + y^2 - 1)(5y - x)"}) {
    CAPTURE(text);
    Factorization fac = braid_monodromy(analyzed(text));
    for (const FactorEntry& e : fac.entries)
      CHECK(e.braid.exponent_sum() == e.rec.valuation);
  }
}

TEST_CASE("entry permutations match their local words up to conjugacy") {
  for (const char* text : {kCuspImage, kTwoConics}) {
    CAPTURE(text);
    Factorization fac = braid_monodromy(analyzed(text));
    for (const FactorEntry& e : fac.entries)
      CHECK(cycle_type(e.braid.permutation()) == local_cycle_type(e.rec, fac.n));
  }
}

TEST_CASE("the engine agrees with the oracle entry by entry") {
  for (const char* text :
       {"y^2 - x", "(x^2 + y^2 - 1)(5y - x)", "(y^2 - x)(y + 2x - 3)"}) {
    CAPTURE(text);
    CurveAnalysis an = analyzed(text);
    Factorization fac = braid_monodromy(an);
    OracleFactorization ora = oracle_factorization(an.curve, an.chart);
    REQUIRE(fac.entries.size() == ora.entries.size());
    for (std::size_t i = 0; i < fac.entries.size(); ++i)
      CHECK(eq(fac.entries[i].braid, ora.entries[i].word));
  }
}

TEST_CASE("the verification report passes on the golden curves") {
  CurveAnalysis an = analyzed(kCuspImage);
  Factorization fac = braid_monodromy(an);
  VerifyReport rep = verify_factorization(fac, an.curve);
  CHECK(rep.permutations_ok);
  CHECK(rep.exponents_ok);
  CHECK(rep.product_ok);
  CHECK(rep.oracle_checked);
  CHECK(rep.exponent_total == 6);
  CHECK(rep.ok());
  CHECK(rep.detail.empty());

  CurveAnalysis an2 = analyzed(kTwoConics);
  Factorization fac2 = braid_monodromy(an2);
  VerifyReport rep2 = verify_factorization(fac2, an2.curve);
  CHECK(rep2.ok());
  CHECK(rep2.exponent_total == 8);
}

TEST_CASE("the verification report can skip the oracle") {
  CurveAnalysis an = analyzed("y^2 - x");
  Factorization fac = braid_monodromy(an);
  VerifyReport rep = verify_factorization(fac, an.curve, false);
  CHECK(rep.permutations_ok);
  CHECK(rep.exponents_ok);
  CHECK(rep.product_ok);
  CHECK(!rep.oracle_checked);
  CHECK(rep.ok());
}

TEST_CASE("a tampered factorization fails verification") {
  CurveAnalysis an = analyzed(kCuspImage);
  Factorization fac = braid_monodromy(an);
  fac.entries[0].braid = parse_word("s1^2", 3);
  VerifyReport rep = verify_factorization(fac, an.curve);
  CHECK(!rep.ok());
  CHECK(!rep.detail.empty());
}

TEST_CASE("curves without critical values factor trivially") {
  Factorization fac = braid_monodromy(Curve::from_text("y^2 - 1"));
  CHECK(fac.n == 2);
  CHECK(fac.entries.empty());
  CHECK(verify_factorization(fac, Curve::from_text("y^2 - 1")).ok());
  Factorization line = braid_monodromy(Curve::from_text("y - x^2"));
  CHECK(line.n == 1);
  CHECK(line.entries.empty());
}

TEST_CASE("nonreal critical values are rejected as out of scope") {
  CHECK_THROWS_AS(braid_monodromy(Curve::from_text("y^2 - x^2 - 1")),
                  GenericityError);
}

TEST_CASE("halving the chart radii leaves the factorization unchanged") {
  CurveAnalysis an = analyzed(kCuspImage);
  Factorization a = braid_monodromy(an);
  for (auto& np : an.chart.n_points) np.alpha *= 0.5;
  for (auto& bp : an.chart.b_points) bp.delta *= 0.5;
  Factorization b = braid_monodromy(an);
  REQUIRE(a.entries.size() == b.entries.size());
  for (std::size_t i = 0; i < a.entries.size(); ++i) {
    CHECK(a.entries[i].braid.strands == b.entries[i].braid.strands);
    CHECK(a.entries[i].braid.letters == b.entries[i].braid.letters);
  }
}
