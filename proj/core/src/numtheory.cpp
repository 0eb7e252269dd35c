#include "thmoon/numtheory.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace thmoon {

int kronecker_symbol(long D, long n) {
  if (n == 0) return (D == 1 || D == -1) ? 1 : 0;
  int result = 1;
  if (n < 0) {
    n = -n;
    if (D < 0) result = -result;
  }
  // Pull out factors of 2 with the mod 8 rule.
  while (n % 2 == 0) {
    n /= 2;
    if (D % 2 == 0) return 0;
    long m8 = ((D % 8) + 8) % 8;
    if (m8 == 3 || m8 == 5) result = -result;
  }
  // Jacobi symbol by quadratic reciprocity on the odd part.
  long a = ((D % n) + n) % n;
  while (a != 0) {
    while (a % 2 == 0) {
      a /= 2;
      long m8 = n % 8;
      if (m8 == 3 || m8 == 5) result = -result;
    }
    std::swap(a, n);
    if (a % 4 == 3 && n % 4 == 3) result = -result;
    a %= n;
  }
  return n == 1 ? result : 0;
}

bool epsilon_is_imaginary(long d) {
  long m4 = ((d % 4) + 4) % 4;
  if (m4 % 2 == 0) throw std::runtime_error("epsilon_d needs odd d");
  return m4 == 3;
}

int mobius(long n) {
  if (n < 1) throw std::runtime_error("mobius needs n >= 1");
  int r = 1;
  for (long p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      n /= p;
      if (n % p == 0) return 0;
      r = -r;
    }
  }
  if (n > 1) r = -r;
  return r;
}

std::vector<long> divisors(long n) {
  std::vector<long> small, large;
  for (long d = 1; d * d <= n; ++d) {
    if (n % d == 0) {
      small.push_back(d);
      if (d != n / d) large.push_back(n / d);
    }
  }
  small.insert(small.end(), large.rbegin(), large.rend());
  return small;
}

long sigma3(long n) {
  long s = 0;
  for (long d : divisors(n)) s += d * d * d;
  return s;
}

ExactDivisorGroup::ExactDivisorGroup(long N) : modulus(N) {
  if (N < 1) throw std::runtime_error("Ex_N needs N >= 1");
  for (long n : divisors(N))
    if (std::gcd(n, N / n) == 1) elements.push_back(n);
}

bool ExactDivisorGroup::contains(long n) const {
  return std::find(elements.begin(), elements.end(), n) != elements.end();
}

long ExactDivisorGroup::star(long n, long np) {
  long g = std::gcd(n, np);
  return n * np / (g * g);
}

long ExactDivisorGroup::a_of(long n, long m) {
  if (m % n != 0 || std::gcd(n, m / n) != 1)
    throw NotExactDivisor(std::to_string(n) + " is not an exact divisor of " +
                          std::to_string(m));
  for (long a = 0; a < 2 * m; ++a)
    if ((a + 1) % (2 * n) == 0 && (a - 1) % (2 * (m / n)) == 0) return a;
  throw std::runtime_error("a_of: CRT residue not found");
}

}  // namespace thmoon
