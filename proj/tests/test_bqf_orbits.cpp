#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "thmoon/bqf_orbits.hpp"

using namespace thmoon;

namespace {

double dbl(const MpReal& x) { return x.convert_to<double>(); }

SeriesEvaluator jay_evaluator() {
  return SeriesEvaluator(
      [](long order) { return standard_series(StdSeriesKind::J, order); });
}

// Hauptmodul of Gamma_0(N)+N as u + p/u for an eta quotient u.
SeriesEvaluator fricke_evaluator(std::vector<std::pair<long, long>> factors,
                                 long p) {
  return SeriesEvaluator([factors = std::move(factors), p](long order) {
    FracSeries u = eta_quotient(factors, order + 2);
    return u + u.inverse() * Rat(p);
  });
}

}  // namespace

TEST_CASE("CM points of the classical unit forms") {
  PrecisionScope scope(96);
  MpComplex a = cm_point({1, 0, 1}, 96);
  CHECK(dbl(a.re) == doctest::Approx(0.0));
  CHECK(dbl(a.im) == doctest::Approx(1.0));
  MpComplex b = cm_point({1, 1, 1}, 96);
  CHECK(dbl(b.re) == doctest::Approx(-0.5));
  CHECK(dbl(b.im) == doctest::Approx(std::sqrt(3.0) / 2));
  CHECK_THROWS_AS(cm_point({1, 4, 1}, 96), BadDiscriminant);
}

TEST_CASE("scaled action alongside the CM point") {
  GroupSpec g = GroupSpec::parse("2");
  auto [alpha, image] = cm_point_and_action({2, 2, 3}, 1, 1, 0, 1, 1, g, 96);
  CHECK(image == QuadForm{2, 6, 7});  // [2,2,3] | T
  CHECK(image.disc() == QuadForm{2, 2, 3}.disc());
  // Lower-left entry must vanish mod N for an unscaled matrix.
  CHECK_THROWS_AS(cm_point_and_action({2, 2, 3}, 1, 0, 1, 1, 1, g, 96),
                  MatrixNotInGroup);
  // Determinant must equal the declared scale.
  CHECK_THROWS_AS(cm_point_and_action({2, 2, 3}, 1, 1, 0, 2, 1, g, 96),
                  MatrixNotInGroup);
  // Scale 2 is not adjoined to Gamma_0(2) without the plus.
  CHECK_THROWS_AS(cm_point_and_action({2, 2, 3}, 2, 1, 2, 2, 2, g, 96),
                  MatrixNotInGroup);
  // With the plus, the Fricke representative acts.
  GroupSpec gp = GroupSpec::parse("2+");
  auto [alpha2, image2] = cm_point_and_action({2, 2, 3}, 0, -1, 2, 0, 2, gp, 96);
  CHECK(image2.disc() == -20);
}

TEST_CASE("candidate enumeration is a discriminant-faithful superset") {
  std::vector<QuadForm> c1 = candidate_forms(-3, 1);
  bool saw = false;
  for (const auto& q : c1) {
    CHECK(q.disc() == -3);
    CHECK(q.A >= 1);
    if (q == QuadForm{1, 1, 1}) saw = true;
  }
  CHECK(saw);
  // Level 9 lattice: every A is a positive multiple of 9.
  for (const auto& q : candidate_forms(-15, 9)) CHECK(q.A % 9 == 0);
  CHECK_THROWS_AS(candidate_forms(5, 1), BadDiscriminant);
  CHECK_THROWS_AS(candidate_forms(-6, 1), BadDiscriminant);
}

TEST_CASE("full-level orbits of the small discriminants") {
  SeriesEvaluator jay = jay_evaluator();
  GroupSpec sl2 = GroupSpec::parse("1");
  HauptmodulEval fp = jay.at_bits_reduced(160, 1);

  OrbitDecomposition d3 = enumerate_orbits(-3, sl2, fp, 160);
  REQUIRE(d3.orbits.size() == 1);
  CHECK(d3.orbits[0].rep == QuadForm{1, 1, 1});
  CHECK(d3.orbits[0].stabilizer_order == 3);

  OrbitDecomposition d4 = enumerate_orbits(-4, sl2, fp, 160);
  REQUIRE(d4.orbits.size() == 1);
  CHECK(d4.orbits[0].rep == QuadForm{1, 0, 1});
  CHECK(d4.orbits[0].stabilizer_order == 2);

  OrbitDecomposition d15 = enumerate_orbits(-15, sl2, fp, 160);
  REQUIRE(d15.orbits.size() == 2);
  CHECK(d15.orbits[0].rep == QuadForm{1, 1, 4});
  CHECK(d15.orbits[1].rep == QuadForm{2, 1, 2});
  CHECK(d15.orbits[0].stabilizer_order == 1);
  CHECK(d15.orbits[1].stabilizer_order == 1);

  // Representative independence: any member's fingerprint matches the
  // representative's below the merge threshold.
  MpReal thr = ldexp(MpReal(1), -80);
  for (const auto& orbit : d15.orbits)
    for (const auto& q : orbit.members)
      CHECK(mp_abs(fp(cm_point(q, 160)) - orbit.fingerprint) < thr);
  // Fingerprint soundness: representatives separated beyond doubt.
  CHECK(mp_abs(d15.orbits[0].fingerprint - d15.orbits[1].fingerprint) >
        ldexp(MpReal(1), -40));
}

TEST_CASE("orbit class numbers reproduce Hurwitz numbers through 200") {
  SeriesEvaluator jay = jay_evaluator();
  GroupSpec sl2 = GroupSpec::parse("1");
  HauptmodulEval fp = jay.at_bits_reduced(192, 1);
  for (long d = 3; d <= 200; ++d) {
    if (d % 4 != 0 && d % 4 != 3) continue;
    auto [h, count] = gamma_class_number(sl2, -d, fp, 192);
    INFO("disc -", d);
    CHECK(h == hurwitz_class_number(d));
    CHECK(count >= 1);
  }
}

TEST_CASE("plus-group class numbers behind the genus-zero product table") {
  // Gamma_0(3)+: single orbit at D0 = -3 with a stabilizer of order 6.
  SeriesEvaluator t3 = fricke_evaluator({{1, 12}, {3, -12}}, 729);
  auto [h3, c3] = gamma_class_number(GroupSpec::parse("3+"), -3,
                                     t3.at_bits_reduced(192, 3), 192);
  CHECK(c3 == 1);
  CHECK(h3 == Rat(1, 6));

  // Gamma_0(2)+ at D0 = -4: single orbit, stabilizer 4.
  SeriesEvaluator t2 = fricke_evaluator({{1, 24}, {2, -24}}, 4096);
  auto [h2, c2] = gamma_class_number(GroupSpec::parse("2+"), -4,
                                     t2.at_bits_reduced(192, 2), 192);
  CHECK(c2 == 1);
  CHECK(h2 == Rat(1, 4));

  // Gamma_0(7)+ at D0 = -3: single orbit, stabilizer 3.
  SeriesEvaluator t7 = fricke_evaluator({{1, 4}, {7, -4}}, 49);
  auto [h7, c7] = gamma_class_number(GroupSpec::parse("7+"), -3,
                                     t7.at_bits_reduced(192, 7), 192);
  CHECK(c7 == 1);
  CHECK(h7 == Rat(1, 3));
}

TEST_CASE("ambiguity is reported rather than mis-grouped") {
  GroupSpec sl2 = GroupSpec::parse("1");
  // A constant fingerprint cannot separate the two orbits at -15.
  HauptmodulEval flat = [](const MpComplex&) { return MpComplex(1); };
  CHECK(enumerate_orbits(-15, sl2, flat, 160).orbits.size() == 1);
  // A fingerprint landing in the dead zone between the thresholds.
  long k = 0;
  HauptmodulEval creep = [&k](const MpComplex&) {
    return MpComplex(MpReal(k++) * ldexp(MpReal(1), -60), MpReal(0));
  };
  CHECK_THROWS_AS(enumerate_orbits(-15, sl2, creep, 160), AmbiguousOrbits);
}
