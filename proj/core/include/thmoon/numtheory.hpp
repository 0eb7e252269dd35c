// Elementary number-theoretic kernels: Kronecker symbol, Moebius and
// divisor functions, and the exact-divisor groups Ex_N with their star
// product and the a(n) residues.

#pragma once

#include <stdexcept>
#include <vector>

namespace thmoon {

struct NotExactDivisor : std::runtime_error {
  explicit NotExactDivisor(const std::string& what) : std::runtime_error(what) {}
};

// Full Kronecker symbol (D/n), completely multiplicative in n, with
// (D/2) given by the mod 8 rule and (D/-1) = sign(D).
int kronecker_symbol(long D, long n);

// epsilon_d for odd d: 1 when d = 1 mod 4, i when d = 3 mod 4.  Returns
// true in the imaginary case.
bool epsilon_is_imaginary(long d);

int mobius(long n);
std::vector<long> divisors(long n);
long sigma3(long n);

// Exact divisors n | N with gcd(n, N/n) = 1; an elementary abelian
// 2-group under n*n' = nn'/gcd(n,n')^2.
struct ExactDivisorGroup {
  long modulus;
  std::vector<long> elements;

  explicit ExactDivisorGroup(long N);
  bool contains(long n) const;
  static long star(long n, long np);
  // The unique residue mod 2m with a = -1 mod 2n and a = 1 mod 2(m/n),
  // for n an exact divisor of m.
  static long a_of(long n, long m);
};

}  // namespace thmoon
