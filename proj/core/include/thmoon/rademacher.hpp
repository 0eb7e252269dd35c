// Rademacher machinery for the weight-one-half series: the index-1 Weil
// representation through S,T words with branch bookkeeping, effective
// singular vectors and multipliers on Atkin-Lehner cosets, the
// Kloosterman/Bessel summands, truncated coefficient sums with
// stabilization certificates, and assembly of the two weight-one-half
// families with their theta corrections.  This is a secondary coefficient
// source: exact values come from the Borcherds inversion, and these sums
// validate a small class/grade set independently.

#pragma once

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "thmoon/mpcomplex.hpp"
#include "thmoon/tsm.hpp"

namespace thmoon {

struct NonStabilized : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Integer matrix together with the square-root branch bit of the
// metaplectic double cover: branch -1 selects -sqrt(c tau + d).
struct MetaplecticElement {
  long a = 1, b = 0, c = 0, d = 1;
  int branch = 1;
};

// Product in the double cover; the branch of the product is fixed by
// tracking the u cocycle at a generic base point.
MetaplecticElement meta_mul(const MetaplecticElement& g1,
                            const MetaplecticElement& g2);

struct CMat2 {
  MpComplex e[2][2];
};

// rho_m(g): the image of T is diag(1, e(-1/4)) and the image of S is the
// symmetric unitary matrix with entries of modulus 1/sqrt(2); a general
// word is obtained by peeling T^n S prefixes off the matrix (nearest-
// integer Euclid on the bottom row) and carrying the branch through the
// cocycle.  Only the index m = 1 is realized.
CMat2 weil_representation(long m, const MetaplecticElement& g, long prec_bits);

struct RademacherSpec {
  long m = 1;
  long N = 1;
  // chi(gamma) = e(-v c d / (N h)) on Gamma_0(N); h = 1 means trivial.
  long v = 0, h = 1;
  // Exact divisors carrying poles, each with sign +1 or -1 (a subtracted
  // coset, written with a tilde in the bundled symbols).
  std::vector<std::pair<long, int>> cosets;
  std::vector<Rat> mu = {Rat(0), Rat(-3, 4)};
  // sqrt(n)-scaled Atkin-Lehner representative fixing the h-th-root-of-
  // unity ambiguity; only needed when chi is nontrivial on an n > 1 coset.
  std::optional<std::array<long, 4>> al_rep;
  long prec_bits = 128;
};

// Parses a modularity symbol like "2", "3+~3", "8|4_3" or "(12+3)|2_1"
// (a tilde marks a subtracted coset); "?" throws UnparseableSymbol.
RademacherSpec spec_from_symbol(const std::string& symbol, long prec_bits);

// Effective singular vector and multiplier matrix on the w_n coset.
// gamma is handed over as the sqrt(n)-scaled integer matrix
// (a n, b; c, d n) of determinant n; its entries mu^(n)_r land in
// (ceil(mu_r) - 1, ceil(mu_r)] and the matrix carries the n^(1/4)
// prefactor.
std::pair<std::vector<Rat>, CMat2> effective_data(
    const RademacherSpec& spec, long n, const MetaplecticElement& gamma);

// I_{1/2}(x) = sqrt(2 / (pi x)) sinh x.
MpReal bessel_i_half(const MpReal& x);

// One (gamma, s, r) summand: the product B_s K_sr for nu != 0, and the
// inner (sqrt(n)/c)^(3/2) K_sr factor for nu = 0 (whose outer
// (2 pi)^(3/2) sqrt(-mu_s) / Gamma(3/2) prefactor is applied once by
// rademacher_coefficient).
MpComplex kloosterman_bessel_term(const RademacherSpec& spec, long n,
                                  const MetaplecticElement& gamma,
                                  const Rat& nu, long r, long s);

struct CoeffEstimate {
  MpComplex estimate;
  MpComplex at_half;     // the same partial sum truncated at K/2
  MpReal stabilization;  // |estimate at K - estimate at K/2|
};

// Partial sum over the selected cosets: c > 0 with c = 0 mod N and
// c < K, and 0 <= a < c/n with gcd(a n, c/n) = 1, summed over the
// components s with a pole.  Empty coset selections sum to zero.
CoeffEstimate rademacher_coefficient(const RademacherSpec& spec, long r,
                                     const Rat& nu, long K);

struct RademacherRow {
  long D = 0;
  MpReal estimate;
  MpReal stabilization;
  long used_k = 0;
  bool stabilized = false;
  Int rounded;
  double residue = 0;
  std::optional<Int> fixture;
  bool pass = false;
};

// Assembles the family values at the listed grades, doubling K from 256
// until every sum stabilizes below 1/2 or k_cap is reached; rows that
// never stabilize are reported as such, and never rounded into a pass.
// family is "3C" or "penumbral"; the order-27 classes have no 3C-family
// expression and throw ExcludedClass.  With strict set, an unstabilized
// row raises NonStabilized instead.
std::vector<RademacherRow> assemble_mckay_thompson(
    const std::string& cls, const std::string& family,
    const std::vector<long>& d_list, long k_cap, long prec_bits = 128,
    bool strict = false);

}  // namespace thmoon
