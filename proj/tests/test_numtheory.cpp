#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <numeric>

#include "thmoon/numtheory.hpp"

using namespace thmoon;

namespace {

// Brute-force oracle on odd primes: (D/p) by counting squares mod p.
int legendre_oracle(long D, long p) {
  long r = ((D % p) + p) % p;
  if (r == 0) return 0;
  for (long x = 1; x < p; ++x)
    if ((x * x) % p == r) return 1;
  return -1;
}

}  // namespace

TEST_CASE("kronecker symbol anchors") {
  CHECK(kronecker_symbol(-3, 1) == 1);
  CHECK(kronecker_symbol(-3, 2) == -1);
  CHECK(kronecker_symbol(-3, 7) == 1);
  CHECK(kronecker_symbol(-3, 3) == 0);
  CHECK(kronecker_symbol(-4, 3) == -1);
  CHECK(kronecker_symbol(5, -1) == 1);
  CHECK(kronecker_symbol(-5, -1) == -1);
  CHECK(kronecker_symbol(1, 0) == 1);
  CHECK(kronecker_symbol(2, 0) == 0);
}

TEST_CASE("kronecker matches the prime oracle") {
  const long primes[] = {3, 5, 7, 11, 13, 17, 19, 23};
  for (long D = -30; D <= 30; ++D)
    for (long p : primes) CHECK(kronecker_symbol(D, p) == legendre_oracle(D, p));
}

TEST_CASE("kronecker complete multiplicativity") {
  for (long D = -12; D <= 12; ++D)
    for (long m = -9; m <= 9; ++m)
      for (long n = -9; n <= 9; ++n)
        if (m != 0 && n != 0)
          CHECK(kronecker_symbol(D, m * n) ==
                kronecker_symbol(D, m) * kronecker_symbol(D, n));
}

TEST_CASE("epsilon_d") {
  CHECK_FALSE(epsilon_is_imaginary(1));
  CHECK(epsilon_is_imaginary(3));
  CHECK_FALSE(epsilon_is_imaginary(5));
  CHECK(epsilon_is_imaginary(-1));
}

TEST_CASE("mobius divisors sigma3") {
  CHECK(mobius(6) == 1);
  CHECK(mobius(12) == 0);
  CHECK(mobius(30) == -1);
  CHECK(divisors(6) == std::vector<long>({1, 2, 3, 6}));
  CHECK(sigma3(6) == 252);
  CHECK(sigma3(1) == 1);
}

TEST_CASE("exact divisor groups") {
  ExactDivisorGroup ex12(12);
  CHECK(ex12.elements == std::vector<long>({1, 3, 4, 12}));
  CHECK(ExactDivisorGroup::star(6, 10) == 15);
  ExactDivisorGroup ex30(30);
  CHECK(ex30.elements.size() == 8);
  // Elementary abelian 2-group: closure and involutivity.
  for (long n : ex30.elements) {
    CHECK(ExactDivisorGroup::star(n, n) == 1);
    for (long np : ex30.elements)
      CHECK(ex30.contains(ExactDivisorGroup::star(n, np)));
  }
}

TEST_CASE("a_of residues and the isomorphism to O_m") {
  CHECK(ExactDivisorGroup::a_of(1, 7) == 1);
  for (long m = 1; m <= 60; ++m) {
    ExactDivisorGroup ex(m);
    for (long n : ex.elements) {
      long a = ExactDivisorGroup::a_of(n, m);
      CHECK((a + 1) % (2 * n) == 0);
      CHECK((a - 1) % (2 * (m / n)) == 0);
      // a(n)^2 = 1 mod 4m, so a(n) lands in O_m.
      CHECK((a * a) % (4 * m) == 1 % (4 * m));
      for (long np : ex.elements) {
        long prod = ExactDivisorGroup::a_of(ExactDivisorGroup::star(n, np), m);
        CHECK((ExactDivisorGroup::a_of(n, m) * ExactDivisorGroup::a_of(np, m)) %
                  (2 * m) ==
              prod % (2 * m));
      }
    }
  }
  CHECK_THROWS_AS((void)ExactDivisorGroup::a_of(2, 4), NotExactDivisor);
}
