// Exact truncated series in a fractional power of q.
//
// A FracSeries stores coefficients of q^(e/M) for integer exponent
// numerators e with min_exp <= e < trunc.  Exponents at or beyond trunc are
// not guaranteed; reading them is an error, never a silent zero.  All
// coefficients are exact rationals (GMP); there is no floating point in
// this module.

#pragma once

#include <gmpxx.h>

#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace thmoon {

using Int = mpz_class;
using Rat = mpq_class;

struct SeriesError : std::runtime_error {
  explicit SeriesError(const std::string& what) : std::runtime_error(what) {}
};
struct DivisionByZeroSeries : SeriesError {
  DivisionByZeroSeries() : SeriesError("division by a series that is zero to its truncation") {}
};
struct BadLeadingTerm : SeriesError {
  explicit BadLeadingTerm(const std::string& what) : SeriesError(what) {}
};
struct NotAPerfectPower : SeriesError {
  explicit NotAPerfectPower(const std::string& what) : SeriesError(what) {}
};
struct BeyondTruncation : SeriesError {
  explicit BeyondTruncation(const std::string& what) : SeriesError(what) {}
};

class FracSeries {
 public:
  // The zero series, reliable below trunc_num/denom.
  FracSeries(long denom, long trunc_num) : denom_(denom), trunc_(trunc_num) {
    if (denom <= 0) throw SeriesError("denominator must be positive");
  }
  // Constant series c, reliable below trunc_num (denom 1).
  static FracSeries constant(const Rat& c, long trunc_num);

  long denom() const { return denom_; }
  long trunc_num() const { return trunc_; }
  bool is_zero() const { return coeffs_.empty(); }
  // Lowest stored exponent numerator; only valid when !is_zero().
  long min_exp_num() const;
  const std::map<long, Rat>& terms() const { return coeffs_; }

  // Coefficient of q^(e_num/e_den).  Throws BeyondTruncation past trunc.
  Rat at(long e_num, long e_den = 1) const;
  // Set a coefficient (e_num on the denom() lattice); zero erases.
  void set(long e_num, const Rat& c);

  // Re-express on a lattice whose denominator is a multiple of denom().
  FracSeries with_denom(long new_denom) const;
  // Divide out common factors of all exponent numerators and M.
  void canonicalize();
  // Lower the truncation bound (numerator on the denom() lattice).
  FracSeries truncated(long new_trunc_num) const;

  FracSeries operator-() const;
  friend FracSeries operator+(const FracSeries& a, const FracSeries& b);
  friend FracSeries operator-(const FracSeries& a, const FracSeries& b);
  friend FracSeries operator*(const FracSeries& a, const FracSeries& b);
  friend FracSeries operator/(const FracSeries& a, const FracSeries& b);
  FracSeries operator*(const Rat& c) const;

  // Multiply by q^(s_num/s_den).
  FracSeries shifted(long s_num, long s_den = 1) const;
  // Substitute q -> q^b for positive rational b.
  FracSeries rescaled(const Rat& b) const;

  FracSeries inverse() const;
  FracSeries pow_int(long k) const;
  // exp: requires strictly positive exponents.  log: leading term 1*q^0.
  FracSeries exp() const;
  FracSeries log() const;
  // k-th root; leading coefficient must be a rational k-th power.
  FracSeries root(long k) const;

  // True when both series agree coefficient-by-coefficient below the
  // smaller truncation.
  static bool agree(const FracSeries& a, const FracSeries& b);

  std::string to_string(std::size_t max_terms = 12) const;
  std::string to_json() const;

 private:
  long denom_ = 1;
  std::map<long, Rat> coeffs_;  // exponent numerator -> nonzero coefficient
  long trunc_ = 0;              // first unreliable exponent numerator

  static void align(const FracSeries& a, const FracSeries& b, FracSeries& a2,
                    FracSeries& b2);
};

enum class StdSeriesKind { Eta, Theta, E4, J, RR_G, RR_H };

// Standard expansions, reliable to exponent < order (in q, i.e. numerator
// order*denom on the result lattice).  Eta carries its q^{1/24} prefactor.
FracSeries standard_series(StdSeriesKind kind, long order);
// Thetanullwert theta^0_{m,r}(tau) = sum over s = r mod 2m of q^{s^2/4m}.
FracSeries thetanull(long m, long r, long order);
// Product over k >= 0 of (1 - q^{a + k*step}) for a >= 1, step >= 1.
FracSeries pochhammer(long a, long step, long order);
// Eta quotient: product of eta(b*tau)^e for (b, e) pairs.
FracSeries eta_quotient(const std::vector<std::pair<long, long>>& factors,
                        long order);

}  // namespace thmoon
