// Thin complex layer over MPFR (via boost::multiprecision) for CM-point
// evaluation, orbit fingerprints, and the Rademacher sums.  Precision is
// the thread default; use PrecisionScope to pin it for a computation.

#pragma once

#include <boost/multiprecision/mpfr.hpp>

#include "thmoon/qseries.hpp"

namespace thmoon {

using MpReal =
    boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<0>,
                                  boost::multiprecision::et_off>;

// Sets the thread-default precision to at least `bits` for its lifetime.
class PrecisionScope {
 public:
  explicit PrecisionScope(long bits);
  ~PrecisionScope();
  PrecisionScope(const PrecisionScope&) = delete;
  PrecisionScope& operator=(const PrecisionScope&) = delete;

 private:
  unsigned saved_;
};

MpReal mp_pi();
MpReal to_mpreal(const Rat& x);

struct MpComplex {
  MpReal re, im;

  MpComplex() : re(0), im(0) {}
  MpComplex(MpReal r, MpReal i) : re(std::move(r)), im(std::move(i)) {}
  explicit MpComplex(long r) : re(r), im(0) {}

  MpComplex operator-() const { return {-re, -im}; }
  friend MpComplex operator+(const MpComplex& a, const MpComplex& b) {
    return {a.re + b.re, a.im + b.im};
  }
  friend MpComplex operator-(const MpComplex& a, const MpComplex& b) {
    return {a.re - b.re, a.im - b.im};
  }
  friend MpComplex operator*(const MpComplex& a, const MpComplex& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  MpComplex operator*(const MpReal& c) const { return {re * c, im * c}; }
  friend MpComplex operator/(const MpComplex& a, const MpComplex& b) {
    MpReal n = b.re * b.re + b.im * b.im;
    return {(a.re * b.re + a.im * b.im) / n, (a.im * b.re - a.re * b.im) / n};
  }
};

MpReal mp_abs(const MpComplex& z);
// e(x) = exp(2 pi i x) for real x.
MpComplex unit_exp(const MpReal& x);
// q^(e/M) at tau: exp(2 pi i tau e / M).
MpComplex q_power(const MpComplex& tau, long e_num, long e_den);

// Evaluate an exact series at tau (no tail estimate: the caller picks a
// truncation adequate for Im tau and the working precision).
MpComplex eval_series(const FracSeries& f, const MpComplex& tau);

// Truncation order making coefficient-growth-c * q^n tails negligible:
// the least n with 2 pi n Im(tau) - growth*sqrt(n) above (bits+32) ln 2.
long series_order_for(long bits, const MpReal& im_tau, double growth);

}  // namespace thmoon
