// Traces of singular moduli: the auxiliary groups Gamma-hat, the twisted
// traces over orbit representatives, and the conjectural reconstruction of
// the weight-one-half 3C coefficients from weight-zero data (theta and
// kappa corrections included).

#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "thmoon/bqf_orbits.hpp"

namespace thmoon {

struct ExcludedClass : std::runtime_error {
  explicit ExcludedClass(const std::string& cls)
      : std::runtime_error("class " + cls + " is excluded from the conjecture") {}
};

struct UnparseableSymbol : std::runtime_error {
  explicit UnparseableSymbol(const std::string& sym)
      : std::runtime_error("invariance symbol " + sym +
                           " has no group-theoretic reading") {}
};

struct ImaginaryResidue : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Gamma-hat for a class: Gamma_0(N h) + S-hat, where S-hat is the
// preimage of the symbol's S under the exact-divisor map E -> E/gcd(h,E)^2.
GroupSpec hat_gamma(const std::string& cls);

struct TraceSpec {
  GroupSpec group;
  long D0 = -3;
  long D = 0;
  std::function<int(const QuadForm&)> character;
  HauptmodulEval hauptmodul;
  long prec_bits = 256;
  // Form-space level when it differs from group.N (the 9B route runs
  // level-9 forms under Gamma_0(3)); 0 means group.N.
  long level_div = 0;
};

// Sum of chi(Q) T(alpha_Q) / |stab Q| over orbit representatives; exactly
// zero when D is not a positive discriminant.  Throws ImaginaryResidue
// when the numeric sum fails the reality sanity check.
MpReal twisted_trace(const TraceSpec& spec);

struct Conj44Row {
  long D = 0;
  bool evaluated = true;        // false: refused (evaluation floor)
  Int reconstructed;
  double residue = 0;           // distance from the nearest integer
  std::optional<Int> fixture;
  bool pass = false;
};

// Reconstructs the weight-one-half coefficients for D = 1..d_max from the
// theta/kappa terms and 3 D^{-1/2} Tr, rounding within 1e-4 and comparing
// against the bundled table where it has a column.  Precision doubles
// automatically (up to 1024 bits) when rounding or orbit separation fails.
std::vector<Conj44Row> conjecture44_series(const std::string& cls, long d_max,
                                           long precision);

}  // namespace thmoon
