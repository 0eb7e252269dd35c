#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "thmoon/bqf.hpp"

using namespace thmoon;

namespace {
// True when delta is not a discriminant (delta != 0,1 mod 4).
bool not_disc(long delta) {
  long m = ((delta % 4) + 4) % 4;
  return m == 2 || m == 3;
}
}  // namespace

TEST_CASE("reduced form enumeration") {
  auto f3 = reduced_forms(3);
  REQUIRE(f3.size() == 1);
  CHECK(f3[0] == QuadForm{1, 1, 1});

  auto f4 = reduced_forms(4);
  REQUIRE(f4.size() == 1);
  CHECK(f4[0] == QuadForm{1, 0, 1});

  auto f15 = reduced_forms(15);
  REQUIRE(f15.size() == 2);
  CHECK(f15[0] == QuadForm{1, 1, 4});
  CHECK(f15[1] == QuadForm{2, 1, 2});

  CHECK_THROWS_AS(reduced_forms(5), BadDiscriminant);
  CHECK_THROWS_AS(reduced_forms(-3), BadDiscriminant);
}

TEST_CASE("Hurwitz class number anchors") {
  CHECK(hurwitz_class_number(0) == Rat(-1, 12));
  CHECK(hurwitz_class_number(3) == Rat(1, 3));
  CHECK(hurwitz_class_number(4) == Rat(1, 2));
  CHECK(hurwitz_class_number(7) == 1);
  CHECK(hurwitz_class_number(8) == 1);
  CHECK(hurwitz_class_number(11) == 1);
  CHECK(hurwitz_class_number(12) == Rat(4, 3));
  CHECK(hurwitz_class_number(15) == 2);
  CHECK(hurwitz_class_number(16) == Rat(3, 2));
  CHECK(hurwitz_class_number(23) == 3);
  CHECK(hurwitz_class_number(47) == 5);
  CHECK(hurwitz_class_number(1) == 0);
  CHECK(hurwitz_class_number(2) == 0);
  CHECK_THROWS_AS(hurwitz_class_number(-1), BadDiscriminant);
}

TEST_CASE("Hurwitz-Kronecker relation as an independent oracle") {
  // sum_{r in Z} H(4n - r^2) = 2 sigma_1(n) - sum_{d|n} min(d, n/d).
  for (long n = 1; n <= 60; ++n) {
    Rat lhs = hurwitz_class_number(4 * n);
    for (long r = 1; r * r <= 4 * n; ++r)
      lhs += 2 * hurwitz_class_number(4 * n - r * r);
    long rhs = 0;
    for (long d : divisors(n)) rhs += 2 * d - std::min(d, n / d);
    CHECK(lhs == rhs);
  }
}

TEST_CASE("matrix action on forms") {
  QuadForm q{1, 0, 1};
  CHECK(apply_scaled(q, 1, 1, 0, 1, 1) == QuadForm{1, 2, 2});
  CHECK(apply_scaled(q, 0, -1, 1, 0, 1) == q);
  CHECK_THROWS_AS(apply_scaled(q, 1, 1, 1, 1, 1), WrongDiscriminantShape);

  std::mt19937 rng(11);
  std::uniform_int_distribution<int> coin(0, 1), shift(-3, 3);
  for (int trial = 0; trial < 200; ++trial) {
    long d = 3 + 4 * (rng() % 40);
    if (not_disc(-d)) continue;
    auto forms = reduced_forms(d);
    QuadForm f = forms[rng() % forms.size()];
    // Random word in T^k and S.
    long a = 1, b = 0, c = 0, e = 1;
    for (int step = 0; step < 6; ++step) {
      if (coin(rng)) {
        long k = shift(rng);
        b += a * k;
        e += c * k;
      } else {
        std::swap(a, b);
        std::swap(c, e);
        a = -a;
        c = -c;
      }
    }
    QuadForm g = apply_scaled(f, a, b, c, e, 1);
    CHECK(g.disc() == f.disc());
    CHECK(g.A > 0);
  }
}

TEST_CASE("genus character chi_{-3}") {
  CHECK(chi_genus({1, 0, 3}, -3) == 1);
  CHECK(chi_genus({2, 2, 2}, -3) == -1);
  CHECK(chi_genus({1, 1, 1}, -3) == 1);
  CHECK_THROWS_AS(chi_genus({1, 0, 1}, -3), WrongDiscriminantShape);
  CHECK_THROWS_AS(chi_genus({1, 1, 1}, 5), WrongDiscriminantShape);
}

TEST_CASE("genus character is SL2(Z)-invariant on Q_{-3D}") {
  std::mt19937 rng(23);
  std::uniform_int_distribution<int> coin(0, 1), shift(-4, 4);
  int checked = 0;
  for (long d = 3; d <= 120 && checked < 1000; d += 3) {
    if (not_disc(-d)) continue;
    for (const QuadForm& f : reduced_forms(d)) {
      for (int trial = 0; trial < 8; ++trial, ++checked) {
        long a = 1, b = 0, c = 0, e = 1;
        for (int step = 0; step < 5; ++step) {
          if (coin(rng)) {
            long k = shift(rng);
            b += a * k;
            e += c * k;
          } else {
            std::swap(a, b);
            std::swap(c, e);
            a = -a;
            c = -c;
          }
        }
        QuadForm g = apply_scaled(f, a, b, c, e, 1);
        CHECK(chi_genus(g, -3) == chi_genus(f, -3));
      }
    }
  }
  CHECK(checked >= 200);
}

TEST_CASE("twisted character chi~_{-3}") {
  CHECK(chi_tilde_m3({3, 0, 1}) == 1);   // D = 4, leading part prime to 3
  CHECK(chi_tilde_m3({3, 3, 1}) == 1);   // D = 1
  CHECK(chi_tilde_m3({9, 3, 1}) == 1);   // D = 9, C branch, no flip
  CHECK(chi_tilde_m3({9, 3, 2}) == -1);  // D = 21, kron(-3,2) = -1, no flip
  CHECK(chi_tilde_m3({9, 3, 3}) == 0);   // both outer coefficients in 3Z
  CHECK_THROWS_AS(chi_tilde_m3({1, 1, 1}), WrongDiscriminantShape);
}

TEST_CASE("3C character is the r3 difference") {
  CHECK(chi_3c({3, 0, 1}) == chi_genus({3, 0, 1}, -3) - chi_genus({1, 0, 3}, -3));
  CHECK_THROWS_AS(chi_3c({1, 0, 3}), WrongDiscriminantShape);
}

TEST_CASE("group symbol parsing") {
  GroupSpec g1 = GroupSpec::parse("1");
  CHECK(g1.N == 1);
  CHECK(g1.h == 1);
  CHECK(g1.S == std::vector<long>{1});

  GroupSpec g7 = GroupSpec::parse("7+");
  CHECK(g7.S == std::vector<long>({1, 7}));

  GroupSpec g6 = GroupSpec::parse("6+6");
  CHECK(g6.S == std::vector<long>({1, 6}));

  GroupSpec g82 = GroupSpec::parse("8|2+");
  CHECK(g82.N == 8);
  CHECK(g82.h == 2);
  CHECK(g82.S == std::vector<long>({1, 4}));

  GroupSpec gall = GroupSpec::parse("30+");
  CHECK(gall.S.size() == 8);

  CHECK_FALSE(GroupSpec::parse("28|2+~2,~7,14").parseable);
  CHECK(GroupSpec::parse("6+2").S == std::vector<long>({1, 2}));
  CHECK_THROWS_AS(GroupSpec::parse("4+2"), BadGroupSymbol);
  CHECK_THROWS_AS(GroupSpec::parse("9|2"), BadGroupSymbol);
}
