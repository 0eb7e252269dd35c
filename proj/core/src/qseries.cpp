#include "thmoon/qseries.hpp"

#include <numeric>
#include <sstream>
#include <vector>

namespace thmoon {

namespace {

// Floor division for possibly negative numerators.
long floordiv(long a, long b) {
  long q = a / b, r = a % b;
  return (r != 0 && (r < 0) != (b < 0)) ? q - 1 : q;
}

}  // namespace

FracSeries FracSeries::constant(const Rat& c, long trunc_num) {
  FracSeries s(1, trunc_num);
  s.set(0, c);
  return s;
}

long FracSeries::min_exp_num() const {
  if (coeffs_.empty()) throw SeriesError("min_exp of zero series");
  return coeffs_.begin()->first;
}

Rat FracSeries::at(long e_num, long e_den) const {
  if (e_den <= 0) throw SeriesError("exponent denominator must be positive");
  // Beyond truncation when e_num/e_den >= trunc/denom.
  if (e_num * denom_ >= trunc_ * e_den)
    throw BeyondTruncation("coefficient q^(" + std::to_string(e_num) + "/" +
                           std::to_string(e_den) + ") is past the truncation");
  long scaled = e_num * denom_;
  if (scaled % e_den != 0) return Rat(0);
  auto it = coeffs_.find(scaled / e_den);
  return it == coeffs_.end() ? Rat(0) : it->second;
}

void FracSeries::set(long e_num, const Rat& c) {
  if (c == 0)
    coeffs_.erase(e_num);
  else
    coeffs_[e_num] = c;
}

FracSeries FracSeries::with_denom(long new_denom) const {
  if (new_denom % denom_ != 0)
    throw SeriesError("with_denom target must be a multiple of the current denominator");
  long f = new_denom / denom_;
  FracSeries r(new_denom, trunc_ * f);
  for (const auto& [e, c] : coeffs_) r.coeffs_.emplace(e * f, c);
  return r;
}

void FracSeries::canonicalize() {
  long g = denom_;
  for (const auto& [e, c] : coeffs_) g = std::gcd(g, e);
  if (g <= 1) return;
  std::map<long, Rat> reduced;
  for (const auto& [e, c] : coeffs_) reduced.emplace(e / g, c);
  coeffs_ = std::move(reduced);
  denom_ /= g;
  trunc_ = floordiv(trunc_ - 1, g) + 1;
}

FracSeries FracSeries::truncated(long new_trunc_num) const {
  if (new_trunc_num > trunc_)
    throw SeriesError("cannot raise a truncation bound");
  FracSeries r(denom_, new_trunc_num);
  for (const auto& [e, c] : coeffs_) {
    if (e >= new_trunc_num) break;
    r.coeffs_.emplace(e, c);
  }
  return r;
}

void FracSeries::align(const FracSeries& a, const FracSeries& b, FracSeries& a2,
                       FracSeries& b2) {
  long L = std::lcm(a.denom_, b.denom_);
  a2 = a.with_denom(L);
  b2 = b.with_denom(L);
}

FracSeries FracSeries::operator-() const {
  FracSeries r(*this);
  for (auto& [e, c] : r.coeffs_) c = -c;
  return r;
}

FracSeries operator+(const FracSeries& a, const FracSeries& b) {
  FracSeries a2(1, 0), b2(1, 0);
  FracSeries::align(a, b, a2, b2);
  FracSeries r(a2.denom_, std::min(a2.trunc_, b2.trunc_));
  for (const auto& [e, c] : a2.coeffs_)
    if (e < r.trunc_) r.coeffs_.emplace(e, c);
  for (const auto& [e, c] : b2.coeffs_) {
    if (e >= r.trunc_) break;
    auto [it, inserted] = r.coeffs_.emplace(e, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) r.coeffs_.erase(it);
    }
  }
  r.canonicalize();
  return r;
}

FracSeries operator-(const FracSeries& a, const FracSeries& b) { return a + (-b); }

FracSeries operator*(const FracSeries& a, const FracSeries& b) {
  FracSeries a2(1, 0), b2(1, 0);
  FracSeries::align(a, b, a2, b2);
  // A term q^e of one factor is reliable up to the other's truncation plus
  // e, so the product is reliable below min(ta + lb, tb + la).  A factor
  // that is zero to its truncation contributes its truncation as the lead.
  long la = a2.coeffs_.empty() ? a2.trunc_ : a2.min_exp_num();
  long lb = b2.coeffs_.empty() ? b2.trunc_ : b2.min_exp_num();
  FracSeries r(a2.denom_, std::min(a2.trunc_ + lb, b2.trunc_ + la));
  for (const auto& [ea, ca] : a2.coeffs_) {
    for (const auto& [eb, cb] : b2.coeffs_) {
      long e = ea + eb;
      if (e >= r.trunc_) break;
      auto [it, inserted] = r.coeffs_.emplace(e, ca * cb);
      if (!inserted) {
        it->second += ca * cb;
        if (it->second == 0) r.coeffs_.erase(it);
      }
    }
  }
  r.canonicalize();
  return r;
}

FracSeries FracSeries::operator*(const Rat& c) const {
  if (c == 0) return FracSeries(denom_, trunc_);
  FracSeries r(*this);
  for (auto& [e, v] : r.coeffs_) v *= c;
  return r;
}

FracSeries FracSeries::shifted(long s_num, long s_den) const {
  if (s_den <= 0) throw SeriesError("shift denominator must be positive");
  long L = std::lcm(denom_, s_den);
  FracSeries r = with_denom(L);
  long s = s_num * (L / s_den);
  std::map<long, Rat> moved;
  for (const auto& [e, c] : r.coeffs_) moved.emplace(e + s, c);
  r.coeffs_ = std::move(moved);
  r.trunc_ += s;
  r.canonicalize();
  return r;
}

FracSeries FracSeries::rescaled(const Rat& b) const {
  if (b <= 0) throw SeriesError("rescale factor must be positive");
  long p = b.get_num().get_si();
  long q = b.get_den().get_si();
  FracSeries r(denom_ * q, trunc_ * p);
  for (const auto& [e, c] : coeffs_) r.coeffs_.emplace(e * p, c);
  r.canonicalize();
  return r;
}

FracSeries FracSeries::inverse() const {
  if (coeffs_.empty()) throw DivisionByZeroSeries();
  long lb = min_exp_num();
  // Normalise to u = (this)/q^lb with u(0) != 0, invert u, shift back.
  long n_terms = trunc_ - lb;  // reliable length of u
  std::vector<Rat> b(n_terms, Rat(0));
  for (const auto& [e, c] : coeffs_) b[e - lb] = c;
  std::vector<Rat> u(n_terms, Rat(0));
  u[0] = 1 / b[0];
  for (long n = 1; n < n_terms; ++n) {
    Rat s(0);
    for (const auto& [e, c] : coeffs_) {
      long i = e - lb;
      if (i == 0) continue;
      if (i > n) break;
      s += c * u[n - i];
    }
    if (s != 0) u[n] = -s / b[0];
  }
  FracSeries r(denom_, trunc_ - 2 * lb);
  for (long n = 0; n < n_terms; ++n)
    if (u[n] != 0) r.coeffs_.emplace(n - lb, u[n]);
  r.canonicalize();
  return r;
}

FracSeries operator/(const FracSeries& a, const FracSeries& b) {
  return a * b.inverse();
}

FracSeries FracSeries::pow_int(long k) const {
  if (k < 0) return inverse().pow_int(-k);
  if (k == 0) return constant(Rat(1), trunc_);
  FracSeries base(*this), acc = constant(Rat(1), trunc_);
  bool have_acc = false;
  while (k > 0) {
    if (k & 1) {
      acc = have_acc ? acc * base : base;
      have_acc = true;
    }
    k >>= 1;
    if (k > 0) base = base * base;
  }
  return acc;
}

FracSeries FracSeries::exp() const {
  if (!coeffs_.empty() && min_exp_num() <= 0)
    throw BadLeadingTerm("exp needs strictly positive exponents");
  // f = exp(g) via n f_n = sum_k k g_k f_{n-k} on the exponent lattice.
  long T = trunc_;
  if (T <= 0) throw SeriesError("exp of series truncated at or below q^0");
  std::vector<Rat> f(T, Rat(0));
  f[0] = 1;
  for (long n = 1; n < T; ++n) {
    Rat s(0);
    for (const auto& [k, gk] : coeffs_) {
      if (k > n) break;
      if (f[n - k] != 0) s += Rat(k) * gk * f[n - k];
    }
    if (s != 0) f[n] = s / n;
  }
  FracSeries r(denom_, T);
  for (long n = 0; n < T; ++n)
    if (f[n] != 0) r.coeffs_.emplace(n, f[n]);
  r.canonicalize();
  return r;
}

FracSeries FracSeries::log() const {
  if (coeffs_.empty() || min_exp_num() != 0 || coeffs_.begin()->second != 1)
    throw BadLeadingTerm("log needs leading term 1*q^0");
  long T = trunc_;
  std::vector<Rat> f(T, Rat(0)), g(T, Rat(0));
  for (const auto& [e, c] : coeffs_) f[e] = c;
  std::vector<long> g_support;
  for (long n = 1; n < T; ++n) {
    Rat s(0);
    for (long k : g_support) {
      if (k >= n) break;
      if (f[n - k] != 0) s += Rat(k) * g[k] * f[n - k];
    }
    Rat gn = f[n] - s / n;
    if (gn != 0) {
      g[n] = gn;
      g_support.push_back(n);
    }
  }
  FracSeries r(denom_, T);
  for (long n : g_support) r.coeffs_.emplace(n, g[n]);
  r.canonicalize();
  return r;
}

FracSeries FracSeries::root(long k) const {
  if (k <= 0) throw SeriesError("root index must be positive");
  if (k == 1) return *this;
  if (coeffs_.empty()) throw BadLeadingTerm("root of zero series");
  long l = min_exp_num();
  Rat c = coeffs_.begin()->second;
  if (c < 0 && k % 2 == 0)
    throw NotAPerfectPower("even root of a negative leading coefficient");
  // Exact rational k-th root of the leading coefficient.
  mpz_class num = ::abs(c.get_num()), den = c.get_den(), rn, rd;
  if (!mpz_root(rn.get_mpz_t(), num.get_mpz_t(), static_cast<unsigned long>(k)) ||
      !mpz_root(rd.get_mpz_t(), den.get_mpz_t(), static_cast<unsigned long>(k)))
    throw NotAPerfectPower("leading coefficient is not a rational " +
                           std::to_string(k) + "-th power");
  Rat croot(rn, rd);
  if (c < 0) croot = -croot;
  FracSeries unit = shifted(-l) * (Rat(1) / c);
  FracSeries body = ((unit.log() * Rat(1, k)).exp()) * croot;
  return body.shifted(l, k * denom_);
}

bool FracSeries::agree(const FracSeries& a, const FracSeries& b) {
  FracSeries a2(1, 0), b2(1, 0);
  align(a, b, a2, b2);
  long t = std::min(a2.trunc_, b2.trunc_);
  auto ia = a2.coeffs_.begin(), ib = b2.coeffs_.begin();
  while (true) {
    while (ia != a2.coeffs_.end() && ia->first >= t) ia = a2.coeffs_.end();
    while (ib != b2.coeffs_.end() && ib->first >= t) ib = b2.coeffs_.end();
    bool ea = (ia == a2.coeffs_.end()), eb = (ib == b2.coeffs_.end());
    if (ea && eb) return true;
    if (ea != eb) return false;
    if (ia->first != ib->first || ia->second != ib->second) return false;
    ++ia;
    ++ib;
  }
}

std::string FracSeries::to_string(std::size_t max_terms) const {
  std::ostringstream out;
  if (coeffs_.empty()) out << "0";
  std::size_t shown = 0;
  for (const auto& [e, c] : coeffs_) {
    if (shown == max_terms) {
      out << " + ...";
      break;
    }
    if (shown > 0) out << (c > 0 ? " + " : " - ");
    else if (c < 0) out << "-";
    Rat ac = c > 0 ? c : Rat(-c);
    if (e == 0) {
      out << ac.get_str();
    } else {
      if (ac != 1) out << ac.get_str() << "*";
      out << "q";
      if (e != denom_) {
        if (denom_ == 1)
          out << "^" << e;
        else
          out << "^(" << e << "/" << denom_ << ")";
      }
    }
    ++shown;
  }
  out << " + O(q^";
  if (denom_ == 1)
    out << trunc_ << ")";
  else
    out << "(" << trunc_ << "/" << denom_ << "))";
  return out.str();
}

std::string FracSeries::to_json() const {
  std::ostringstream out;
  out << "{\"denom\":" << denom_ << ",\"trunc\":" << trunc_ << ",\"terms\":[";
  bool first = true;
  for (const auto& [e, c] : coeffs_) {
    if (!first) out << ",";
    first = false;
    out << "[" << e << ",\"" << c.get_str() << "\"]";
  }
  out << "]}";
  return out.str();
}

// ---------------------------------------------------------------------------
// Standard series

namespace {

FracSeries eta_series(long order) {
  // eta = q^{1/24} * sum_k (-1)^k q^{k(3k-1)/2}; on the lattice M = 24 the
  // exponent numerators are 1 + 12k(3k-1).
  FracSeries r(24, 24 * order);
  for (long k = 0;; ++k) {
    long e = 1 + 12 * k * (3 * k - 1);
    if (e >= 24 * order) break;
    r.set(e, (k % 2 == 0) ? Rat(1) : Rat(-1));
  }
  for (long k = -1;; --k) {
    long e = 1 + 12 * k * (3 * k - 1);
    if (e >= 24 * order) break;
    r.set(e, (k % 2 == 0) ? Rat(1) : Rat(-1));
  }
  return r;
}

FracSeries theta_series(long order) {
  FracSeries r(1, order);
  r.set(0, Rat(1));
  for (long n = 1; n * n < order; ++n) r.set(n * n, Rat(2));
  return r;
}

FracSeries e4_series(long order) {
  FracSeries r(1, order);
  r.set(0, Rat(1));
  for (long n = 1; n < order; ++n) {
    Int s3 = 0;
    for (long d = 1; d <= n; ++d)
      if (n % d == 0) s3 += Int(d) * d * d;
    r.set(n, Rat(240) * Rat(s3));
  }
  return r;
}

}  // namespace

FracSeries pochhammer(long a, long step, long order) {
  if (a < 1 || step < 1) throw SeriesError("pochhammer needs a >= 1, step >= 1");
  FracSeries r = FracSeries::constant(Rat(1), order);
  for (long e = a; e < order; e += step) {
    FracSeries f = FracSeries::constant(Rat(1), order);
    f.set(e, Rat(-1));
    r = r * f;
  }
  return r;
}

FracSeries standard_series(StdSeriesKind kind, long order) {
  switch (kind) {
    case StdSeriesKind::Eta:
      return eta_series(order);
    case StdSeriesKind::Theta:
      return theta_series(order);
    case StdSeriesKind::E4:
      return e4_series(order);
    case StdSeriesKind::J: {
      // j = E4^3 / eta^24; compute with one extra order so the quotient by
      // the weight-12 cusp form stays reliable below q^order.
      FracSeries e4 = e4_series(order + 1);
      FracSeries disc = eta_series(order + 2).pow_int(24);
      return (e4.pow_int(3) / disc).truncated(order);
    }
    case StdSeriesKind::RR_G:
      return (pochhammer(1, 5, order) * pochhammer(4, 5, order)).inverse();
    case StdSeriesKind::RR_H:
      return (pochhammer(2, 5, order) * pochhammer(3, 5, order)).inverse();
  }
  throw SeriesError("unknown standard series kind");
}

FracSeries thetanull(long m, long r, long order) {
  if (m < 1) throw SeriesError("thetanull index m must be positive");
  FracSeries s(4 * m, 4 * m * order);
  // s runs over the residue class r mod 2m; exponents s^2/4m.
  long r0 = ((r % (2 * m)) + 2 * m) % (2 * m);
  for (long n = 0;; ++n) {
    long v = r0 + 2 * m * n;
    if (v * v >= 4 * m * order) break;
    s.set(v * v, s.at(v * v, 4 * m) + 1);
  }
  for (long n = -1;; --n) {
    long v = r0 + 2 * m * n;
    if (v * v >= 4 * m * order) break;
    s.set(v * v, s.at(v * v, 4 * m) + 1);
  }
  s.canonicalize();
  return s;
}

FracSeries eta_quotient(const std::vector<std::pair<long, long>>& factors,
                        long order) {
  // Work with enough slack that the truncation algebra leaves the product
  // reliable below q^order, then check it did.
  long slack = 4;
  for (const auto& [b, e] : factors) slack += (std::abs(b * e) + 23) / 24 + 1;
  FracSeries r = FracSeries::constant(Rat(1), order + slack);
  for (const auto& [b, e] : factors) {
    if (b < 1) throw SeriesError("eta_quotient scale must be positive");
    FracSeries f = eta_series(order + slack).rescaled(Rat(b)).pow_int(e);
    r = r * f;
  }
  if (r.trunc_num() < order * r.denom())
    throw SeriesError("eta_quotient slack was insufficient");
  return r.truncated(order * r.denom());
}

}  // namespace thmoon
