#include "thmoon/mpcomplex.hpp"

#include <cmath>

namespace thmoon {

PrecisionScope::PrecisionScope(long bits)
    : saved_(MpReal::default_precision()) {
  // boost counts decimal digits; add guard digits on top of the request.
  unsigned digits10 = static_cast<unsigned>(bits * 0.30103) + 6;
  if (digits10 > saved_) MpReal::default_precision(digits10);
}

PrecisionScope::~PrecisionScope() { MpReal::default_precision(saved_); }

MpReal mp_pi() {
  MpReal p;
  mpfr_const_pi(p.backend().data(), MPFR_RNDN);
  return p;
}

MpReal to_mpreal(const Rat& x) {
  MpReal r;
  mpfr_set_q(r.backend().data(), x.get_mpq_t(), MPFR_RNDN);
  return r;
}

MpReal mp_abs(const MpComplex& z) { return sqrt(z.re * z.re + z.im * z.im); }

MpComplex unit_exp(const MpReal& x) {
  MpReal a = 2 * mp_pi() * x;
  return {cos(a), sin(a)};
}

MpComplex q_power(const MpComplex& tau, long e_num, long e_den) {
  MpReal t = MpReal(e_num) / e_den;
  MpReal mag = exp(-2 * mp_pi() * tau.im * t);
  MpComplex phase = unit_exp(tau.re * t);
  return phase * mag;
}

MpComplex eval_series(const FracSeries& f, const MpComplex& tau) {
  MpComplex sum;
  for (const auto& [e, c] : f.terms())
    sum = sum + q_power(tau, e, f.denom()) * to_mpreal(c);
  return sum;
}

long series_order_for(long bits, const MpReal& im_tau, double growth) {
  double y = im_tau.convert_to<double>();
  if (y <= 0) throw SeriesError("series evaluation needs Im tau > 0");
  double target = (bits + 32) * std::log(2.0);
  double twopiy = 2 * 3.14159265358979 * y;
  long n = 8;
  while (twopiy * n - growth * std::sqrt(static_cast<double>(n)) < target)
    n += n / 4 + 8;
  return n;
}

}  // namespace thmoon
