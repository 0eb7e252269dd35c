// Binary quadratic forms of negative discriminant: reduced-form
// enumeration, Hurwitz class numbers, genus characters and their twists,
// and the Gamma_0(N)+S group symbols.  Orbit decomposition under a
// Hauptmodul fingerprint lives in the same module but is declared in
// bqf_orbits.hpp since it pulls in high-precision complex arithmetic.

#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "thmoon/numtheory.hpp"
#include "thmoon/qseries.hpp"

namespace thmoon {

struct BadDiscriminant : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct WrongDiscriminantShape : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct BadGroupSymbol : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Q(x,y) = A x^2 + B xy + C y^2 with B^2 - 4AC < 0 and A > 0.
struct QuadForm {
  long A = 0, B = 0, C = 0;

  long disc() const { return B * B - 4 * A * C; }
  bool operator==(const QuadForm&) const = default;
  bool operator<(const QuadForm& o) const {
    if (A != o.A) return A < o.A;
    if (B != o.B) return B < o.B;
    return C < o.C;
  }
};

// Right action by an integer matrix [[a,b],[c,d]] of determinant n > 0,
// understood as conjugation by the scaled matrix (1/sqrt(n))[[a,b],[c,d]]:
// (Q|gamma)(x,y) = Q(ax+by, cx+dy)/n.  Throws WrongDiscriminantShape when
// the resulting coefficients are not integers.
QuadForm apply_scaled(const QuadForm& q, long a, long b, long c, long d,
                      long n);

// All SL2(Z)-reduced forms of discriminant -d: |B| <= A <= C with B >= 0
// whenever |B| = A or A = C.  Requires d > 0 and -d = 0,1 mod 4.
std::vector<QuadForm> reduced_forms(long d);

// H(0) = -1/12; for d > 0 the class count weighted by 1/|stabilizer|
// (forms equivalent to x^2+y^2 count 1/2, to x^2+xy+y^2 count 1/3).
// Zero when -d = 2,3 mod 4; BadDiscriminant when d < 0.
Rat hurwitz_class_number(long d);

// Genus character for a negative fundamental discriminant D0 on forms of
// discriminant D0*D: (D0'/A)(D0''/C) over any splitting D0 = D0'*D0'' into
// discriminants coprime to A and C respectively, or 0 if none exists.
int chi_genus(const QuadForm& q, long d0);

// The twist of chi_{-3} on forms 3A x^2 + B xy + C y^2 of discriminant
// -3D, D > 0: kronecker(-3, .) of whichever outer coefficient is prime to
// 3, with a sign flip in the C branch for D != 0,1,3,4,6,9 mod 12.
int chi_tilde_m3(const QuadForm& q);

// chi_{-3}(Q) - chi_{-3}(Q|r3) with r3 = (1/sqrt(3))[[1,0],[0,3]], on
// forms with 3 | A.  Takes values in {-2,...,2}.
int chi_3c(const QuadForm& q);

// Gamma_0(N)+S in the paper's notation "N", "N+", "N+e,f", "N|h",
// "N|h+", "N|h+e,f".  S is a subgroup of the exact divisors of N/h.
struct GroupSpec {
  long N = 1;
  long h = 1;
  std::vector<long> S;  // sorted, always contains 1
  std::string raw_symbol;
  bool parseable = true;

  // Parses the symbol; exotic Table-10 decorations that fall outside the
  // grammar are kept verbatim with parseable = false.
  static GroupSpec parse(const std::string& symbol);
};

}  // namespace thmoon
