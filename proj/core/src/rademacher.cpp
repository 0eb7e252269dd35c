#include "thmoon/rademacher.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <complex>
#include <map>
#include <numeric>
#include <thread>
#include <tuple>

#include "thmoon/paperdata.hpp"

namespace thmoon {

namespace {

// Fixed generic base point for tracking the square-root cocycle: branch
// decisions compare u against the principal sqrt(c tau + d) here, and the
// separations stay far above double rounding noise for every matrix size
// the truncated sums reach.
const std::complex<double> kTau0(0.1234, 1.7);

Int rat_floor(const Rat& x) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return q;
}

Int rat_ceil(const Rat& x) {
  Int q;
  mpz_cdiv_q(q.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return q;
}

Rat rat_frac(const Rat& x) { return x - Rat(rat_floor(x)); }

// The two-argument mpq constructor does not canonicalize.
Rat ratq(long long num, long long den) {
  Rat q(static_cast<long>(num), static_cast<long>(den));
  q.canonicalize();
  return q;
}

long mod_inverse(long a, long m) {
  long t = 0, nt = 1, r = m, nr = ((a % m) + m) % m;
  while (nr != 0) {
    long q = r / nr;
    long tmp = t - q * nt;
    t = nt;
    nt = tmp;
    tmp = r - q * nr;
    r = nr;
    nr = tmp;
  }
  return t < 0 ? t + m : t;
}

// mu^(n)_r = -M + n (mu_r - floor mu_r) with M the integer placing the
// value in (ceil(mu_r) - 1, ceil(mu_r)].
Rat effective_mu(const Rat& mu, long n) {
  Rat nf = rat_frac(mu) * n;
  Int M = rat_ceil(nf - Rat(rat_ceil(mu)));
  return nf - Rat(M);
}

// The images of S and T generate a matrix group whose entries live in
// Z[zeta] / sqrt(2)^w with zeta = e(1/8), so word products reduce to
// exact integer arithmetic; only the final readout touches MPFR.
struct Z8 {
  long long k[4] = {0, 0, 0, 0};
};

Z8 z8_add(const Z8& x, const Z8& y) {
  return {{x.k[0] + y.k[0], x.k[1] + y.k[1], x.k[2] + y.k[2], x.k[3] + y.k[3]}};
}

Z8 z8_sub(const Z8& x, const Z8& y) {
  return {{x.k[0] - y.k[0], x.k[1] - y.k[1], x.k[2] - y.k[2], x.k[3] - y.k[3]}};
}

// Multiply by zeta^p using zeta^4 = -1.
Z8 z8_rot(Z8 z, long p) {
  p = ((p % 8) + 8) % 8;
  if (p >= 4) {
    for (auto& v : z.k) v = -v;
    p -= 4;
  }
  while (p-- > 0) z = Z8{{-z.k[3], z.k[0], z.k[1], z.k[2]}};
  return z;
}

// One column of rho_1(g) for g in SL2(Z) at the principal branch, stored
// exactly: (v[0], v[1]) / sqrt(2)^w times an overall sign.
struct ExactColumn {
  Z8 v[2];
  long w = 0;
  int sign = 1;
};

// Peels T^n S prefixes off the word (nearest-integer Euclid on the bottom
// row), builds the column of the product of generator images, and fixes
// the branch by tracking the u cocycle at the base point.
ExactColumn rho_column(long a, long b, long c, long d, int col) {
  std::vector<long> pre;
  long aa = a, bb = b, cc = c, dd = d;
  while (cc != 0) {
    long n = std::llround(static_cast<double>(aa) / cc);
    pre.push_back(n);
    long na = cc, nb = dd, nc = -(aa - n * cc), nd = -(bb - n * dd);
    aa = na;
    bb = nb;
    cc = nc;
    dd = nd;
  }
  long sgn = aa;  // +-1; the residue is sgn * T^(sgn * bb)
  long f = bb * sgn;

  ExactColumn out;
  if (col == 0)
    out.v[0].k[0] = 1;
  else
    out.v[1] = z8_rot(Z8{{1, 0, 0, 0}}, -2 * f);

  std::complex<double> ucur(1, 0);
  double ca, cb, ccu, cd;
  if (sgn == -1) {
    // -T^(-f... ) = S^2 T^f in the cover; rho(S)^2 = zeta^2 times the
    // identity, and u is the product of the two S cocycle factors.
    out.v[0] = z8_rot(out.v[0], 2);
    out.v[1] = z8_rot(out.v[1], 2);
    std::complex<double> t1 = kTau0 + static_cast<double>(f);
    ucur = std::sqrt(-1.0 / t1) * std::sqrt(t1);
    ca = -1;
    cb = -static_cast<double>(f);
    ccu = 0;
    cd = -1;
  } else {
    ca = 1;
    cb = static_cast<double>(f);
    ccu = 0;
    cd = 1;
  }

  for (auto it = pre.rbegin(); it != pre.rend(); ++it) {
    long n = *it;
    std::complex<double> curtau = (ca * kTau0 + cb) / (ccu * kTau0 + cd);
    ucur *= std::sqrt(curtau);  // u of T^n S at the current point
    double na = n * ca - ccu, nb = n * cb - cd;
    ccu = ca;
    cd = cb;
    ca = na;
    cb = nb;
    Z8 t0 = z8_rot(z8_add(out.v[0], out.v[1]), 1);
    Z8 t1 = z8_rot(z8_sub(out.v[0], out.v[1]), 1);
    out.v[0] = t0;
    out.v[1] = z8_rot(t1, -2 * n);
    ++out.w;
  }

  std::complex<double> ref =
      std::sqrt(static_cast<double>(c) * kTau0 + static_cast<double>(d));
  if (std::abs(ucur - ref) > std::abs(ucur + ref)) out.sign = -1;
  return out;
}

MpComplex z8_value(const Z8& z, long w, int sign, const MpReal& inv_rt2) {
  MpReal re = MpReal(z.k[0]) + inv_rt2 * MpReal(z.k[1] - z.k[3]);
  MpReal im = MpReal(z.k[2]) + inv_rt2 * MpReal(z.k[1] + z.k[3]);
  MpReal sc = ldexp(MpReal(sign), static_cast<int>(-(w / 2)));
  if (w % 2 != 0) sc *= inv_rt2;
  return {re * sc, im * sc};
}

// chi(A^{-1} gamma) as a rational phase argument of e(.); gamma is the
// sqrt(n)-scaled matrix (a n, b; c, d n).
Rat chi_argument(const RademacherSpec& spec, long n,
                 const MetaplecticElement& g) {
  if (spec.h == 1) return Rat(0);
  long c2 = g.c, d2 = g.d;
  if (n > 1) {
    if (!spec.al_rep)
      throw std::invalid_argument(
          "nontrivial character on an n > 1 coset needs a fixed "
          "Atkin-Lehner representative");
    // A = M / sqrt(n): A^{-1} gamma = adj(M) G / n with G the scaled form.
    const auto& M = *spec.al_rep;
    long long cc = -static_cast<long long>(M[2]) * g.a +
                   static_cast<long long>(M[0]) * g.c;
    long long dd = -static_cast<long long>(M[2]) * g.b +
                   static_cast<long long>(M[0]) * g.d;
    if (cc % n != 0 || dd % n != 0)
      throw MatrixNotInGroup("A^{-1} gamma is not integral");
    c2 = static_cast<long>(cc / n);
    d2 = static_cast<long>(dd / n);
  }
  long mod = spec.N * spec.h;
  return ratq(-spec.v * ((static_cast<long long>(c2) * d2) % mod), mod);
}

MpReal gamma_three_halves() {
  // Gamma(3/2) = sqrt(pi) / 2.
  return sqrt(mp_pi()) / 2;
}

}  // namespace

MetaplecticElement meta_mul(const MetaplecticElement& g1,
                            const MetaplecticElement& g2) {
  MetaplecticElement out;
  out.a = g1.a * g2.a + g1.b * g2.c;
  out.b = g1.a * g2.b + g1.b * g2.d;
  out.c = g1.c * g2.a + g1.d * g2.c;
  out.d = g1.c * g2.b + g1.d * g2.d;
  auto u = [](const MetaplecticElement& g, std::complex<double> tau) {
    return static_cast<double>(g.branch) *
           std::sqrt(static_cast<double>(g.c) * tau + static_cast<double>(g.d));
  };
  std::complex<double> g2tau =
      (static_cast<double>(g2.a) * kTau0 + static_cast<double>(g2.b)) /
      (static_cast<double>(g2.c) * kTau0 + static_cast<double>(g2.d));
  std::complex<double> val = u(g1, g2tau) * u(g2, kTau0);
  std::complex<double> ref = std::sqrt(static_cast<double>(out.c) * kTau0 +
                                       static_cast<double>(out.d));
  out.branch = std::abs(val - ref) <= std::abs(val + ref) ? 1 : -1;
  return out;
}

CMat2 weil_representation(long m, const MetaplecticElement& g, long prec_bits) {
  if (m != 1)
    throw std::invalid_argument("only the index-1 Weil representation is realized");
  if (g.a * g.d - g.b * g.c != 1)
    throw MatrixNotInGroup("Weil representation input must have determinant 1");
  PrecisionScope scope(prec_bits);
  MpReal inv_rt2 = sqrt(MpReal(2)) / 2;
  CMat2 out;
  for (int col = 0; col < 2; ++col) {
    ExactColumn ec = rho_column(g.a, g.b, g.c, g.d, col);
    int sign = ec.sign * g.branch;
    out.e[0][col] = z8_value(ec.v[0], ec.w, sign, inv_rt2);
    out.e[1][col] = z8_value(ec.v[1], ec.w, sign, inv_rt2);
  }
  return out;
}

RademacherSpec spec_from_symbol(const std::string& symbol, long prec_bits) {
  if (symbol.empty() || symbol == "?") throw UnparseableSymbol(symbol);
  RademacherSpec out;
  out.prec_bits = prec_bits;
  std::string core = symbol;
  std::size_t bar = symbol.rfind('|');
  if (bar != std::string::npos) {
    core = symbol.substr(0, bar);
    std::string tail = symbol.substr(bar + 1);
    std::size_t us = tail.find('_');
    if (us == std::string::npos) throw UnparseableSymbol(symbol);
    try {
      out.h = std::stol(tail.substr(0, us));
      out.v = std::stol(tail.substr(us + 1));
    } catch (const std::exception&) {
      throw UnparseableSymbol(symbol);
    }
  }
  if (!core.empty() && core.front() == '(' && core.back() == ')')
    core = core.substr(1, core.size() - 2);
  std::size_t plus = core.find('+');
  std::string n_part;
  if (plus != std::string::npos) {
    n_part = core.substr(plus + 1);
    core = core.substr(0, plus);
  }
  try {
    out.N = std::stol(core);
  } catch (const std::exception&) {
    throw UnparseableSymbol(symbol);
  }
  out.cosets.emplace_back(1, 1);
  if (!n_part.empty()) {
    int sign = 1;
    if (n_part.front() == '~') {
      sign = -1;
      n_part = n_part.substr(1);
    }
    long n = 0;
    try {
      n = std::stol(n_part);
    } catch (const std::exception&) {
      throw UnparseableSymbol(symbol);
    }
    if (n <= 1 || out.N % n != 0 || std::gcd(n, out.N / n) != 1)
      throw UnparseableSymbol(symbol);
    out.cosets.emplace_back(n, sign);
  }
  return out;
}

std::pair<std::vector<Rat>, CMat2> effective_data(
    const RademacherSpec& spec, long n, const MetaplecticElement& gamma) {
  if (gamma.a % n != 0 || gamma.d % n != 0 || gamma.c % n != 0 ||
      static_cast<long long>(gamma.a) * gamma.d -
          static_cast<long long>(gamma.b) * gamma.c != n)
    throw MatrixNotInGroup("matrix is not a sqrt(n)-scaled coset element");
  std::vector<Rat> mu_n;
  mu_n.reserve(spec.mu.size());
  for (const Rat& mu : spec.mu) mu_n.push_back(effective_mu(mu, n));

  PrecisionScope scope(spec.prec_bits);
  MetaplecticElement sigma{gamma.a, gamma.b, gamma.c / n, gamma.d / n,
                           gamma.branch};
  // The multiplier feeding the sums is chi times rho of the unscaled
  // matrix (the calibration against the bundled coefficient tables; see
  // the repository notes), carrying the n^(1/4) prefactor.
  CMat2 rho = weil_representation(spec.m, sigma, spec.prec_bits);
  MpComplex chi = unit_exp(to_mpreal(rat_frac(chi_argument(spec, n, gamma))));
  MpReal n14 = sqrt(sqrt(MpReal(n)));
  for (auto& row : rho.e)
    for (auto& z : row) z = z * chi * n14;
  return {std::move(mu_n), rho};
}

MpReal bessel_i_half(const MpReal& x) { return sqrt(2 / (mp_pi() * x)) * sinh(x); }

MpComplex kloosterman_bessel_term(const RademacherSpec& spec, long n,
                                  const MetaplecticElement& gamma,
                                  const Rat& nu, long r, long s) {
  PrecisionScope scope(spec.prec_bits);
  auto [mu_n, psi] = effective_data(spec, n, gamma);
  long c = gamma.c;
  if (c <= 0) throw MatrixNotInGroup("summands need c > 0");
  // K_sr = e(nu d n / c) psi_sr e(mu_s a n / c); the scaled matrix already
  // stores a n and d n in its corners.
  Rat arg = nu * ratq(gamma.d, c) + mu_n[s] * ratq(gamma.a, c);
  MpComplex K = unit_exp(to_mpreal(rat_frac(arg))) * psi.e[s][r];
  MpReal mus = to_mpreal(mu_n[s]);
  MpReal rt_n = sqrt(MpReal(n));
  if (nu != 0) {
    MpReal nuv = to_mpreal(nu);
    if (mu_n[s] == 0) return MpComplex(0);
    MpReal x = 4 * mp_pi() * sqrt(-mus * nuv * n) / c;
    MpComplex B = unit_exp(MpReal(-1) / 8) *
                  (pow(-mus / nuv, MpReal(1) / 4) * (2 * mp_pi() * rt_n / c) *
                   bessel_i_half(x));
    return B * K;
  }
  return K * pow(rt_n / c, MpReal(3) / 2);
}

CoeffEstimate rademacher_coefficient(const RademacherSpec& spec, long r,
                                     const Rat& nu, long K) {
  if (spec.m != 1)
    throw std::invalid_argument("only the index-1 Weil representation is realized");
  if (nu < 0)
    throw std::invalid_argument("polar coefficients are not given by the sum");
  PrecisionScope scope(spec.prec_bits);
  long boundary = K / 2;

  // Work items are contiguous c-blocks per coset, cut at the K/2 mark so
  // every block lands wholly in one half; workers pull blocks and the
  // reduction runs in fixed block order, keeping the result deterministic
  // at fixed precision regardless of the worker count.
  struct Block {
    std::size_t coset;
    long c_begin, c_end;
    bool low;
    MpComplex sum;
  };
  std::vector<Block> blocks;
  constexpr long kBlock = 128;
  for (std::size_t ci = 0; ci < spec.cosets.size(); ++ci) {
    for (long lo : {0L, 1L}) {
      long from = lo == 0 ? spec.N : std::max(boundary, spec.N);
      long to = lo == 0 ? std::min(boundary, K) : K;
      long start = from;
      while (start < to) {
        long end = std::min(((start / kBlock) + 1) * kBlock, to);
        blocks.push_back({ci, start, end, lo == 0, MpComplex()});
        start = end;
      }
    }
  }

  auto run_block = [&](Block& blk) {
    PrecisionScope inner(spec.prec_bits);
    const auto& [n, csign] = spec.cosets[blk.coset];
    std::vector<Rat> mu_n;
    for (const Rat& mu : spec.mu) mu_n.push_back(effective_mu(mu, n));
    MpReal inv_rt2 = sqrt(MpReal(2)) / 2;
    MpReal pi = mp_pi();
    MpComplex e8 = unit_exp(MpReal(-1) / 8);
    MpReal rt_n = sqrt(MpReal(n));
    MpReal n14 = sqrt(rt_n);
    MpReal g32 = gamma_three_halves();
    MpComplex acc;
    for (long c = blk.c_begin; c < blk.c_end; ++c) {
      if (c % spec.N != 0 || c % n != 0) continue;
      long cp = c / n;
      MpComplex inner_s[2];
      for (long a = 0; a < cp; ++a) {
        if (std::gcd(a * n, cp) != 1) continue;
        long d = cp > 1 ? mod_inverse(a * n, cp) : 0;
        long b = static_cast<long>(
            (static_cast<long long>(a) * d * n - 1) / cp);
        ExactColumn col = rho_column(a * n, b, cp, d, static_cast<int>(r));
        Rat chi_arg = chi_argument(
            spec, n, MetaplecticElement{a * n, b, c, d * n, 1});
        for (int s = 0; s < 2; ++s) {
          if (mu_n[s] == 0) continue;  // no pole, no contribution
          Rat arg = nu * ratq(d * n, c) + mu_n[s] * ratq(a * n, c) + chi_arg;
          MpComplex ph = unit_exp(to_mpreal(rat_frac(arg)));
          inner_s[s] = inner_s[s] + ph * z8_value(col.v[s], col.w, col.sign,
                                                  inv_rt2);
        }
      }
      for (int s = 0; s < 2; ++s) {
        if (mu_n[s] == 0) continue;
        MpReal mus = to_mpreal(mu_n[s]);
        MpComplex factor;
        if (nu != 0) {
          MpReal nuv = to_mpreal(nu);
          MpReal x = 4 * pi * sqrt(-mus * nuv * n) / c;
          factor = e8 * (pow(-mus / nuv, MpReal(1) / 4) * (2 * pi * rt_n / c) *
                         bessel_i_half(x));
        } else {
          // The nu = 0 normalization carries no 1/2: the double-coset
          // truncation runs over both signs of c, which the c > 0
          // parametrization folds in (certified against the bundled
          // weight-one-half tables).
          factor = e8 * (pow(2 * pi, MpReal(3) / 2) * sqrt(-mus) / g32 *
                         pow(rt_n / c, MpReal(3) / 2));
        }
        acc = acc + factor * inner_s[s];
      }
    }
    blk.sum = acc * MpReal(csign) * n14;
  };

  unsigned workers = std::max(1u, std::thread::hardware_concurrency());
  workers = std::min<unsigned>(
      workers, static_cast<unsigned>(blocks.empty() ? 1 : blocks.size()));
  if (workers <= 1) {
    for (auto& blk : blocks) run_block(blk);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < workers; ++t)
      pool.emplace_back([&] {
        for (std::size_t i = next.fetch_add(1); i < blocks.size();
             i = next.fetch_add(1))
          run_block(blocks[i]);
      });
    for (auto& th : pool) th.join();
  }

  MpComplex lo, hi;
  for (const auto& blk : blocks)
    (blk.low ? lo : hi) = (blk.low ? lo : hi) + blk.sum;
  CoeffEstimate out;
  out.estimate = lo + hi;
  out.at_half = lo;
  out.stabilization = mp_abs(hi);
  return out;
}

std::vector<RademacherRow> assemble_mckay_thompson(
    const std::string& cls, const std::string& family,
    const std::vector<long>& d_list, long k_cap, long prec_bits, bool strict) {
  if (family != "3C" && family != "penumbral")
    throw std::invalid_argument("family must be 3C or penumbral");
  const PaperData& pd = PaperData::instance();
  const auto& rd = pd.rademacher_data();
  const std::string& col = pd.column_name(cls);
  const auto& mod = rd.at("modularity");
  if (!mod.contains(col))
    throw UnparseableSymbol(cls + " has no modularity symbol");
  std::string sym = mod[col][family == "penumbral" ? 0 : 1].get<std::string>();
  if (sym == "?") throw ExcludedClass(cls);

  RademacherSpec spec = spec_from_symbol(sym, prec_bits);
  if (rd.at("al_choices").contains(col)) {
    const auto& A = rd["al_choices"][col];
    spec.al_rep = std::array<long, 4>{A[0][0].get<long>(), A[0][1].get<long>(),
                                      A[1][0].get<long>(), A[1][1].get<long>()};
  }
  std::vector<std::pair<Rat, long>> thetas;
  const auto& tc = rd.at("theta_corrections").at(family);
  if (tc.contains(col))
    for (const auto& entry : tc[col]) {
      Rat coef(entry[0].get<std::string>());
      coef.canonicalize();
      thetas.emplace_back(coef, entry[1].get<long>());
    }

  const std::string fixture_family =
      family == "3C" ? "whalf3C" : "whalfPT";
  auto theta_coef = [](long D) -> long {
    if (D == 0) return 1;
    long rt = static_cast<long>(std::sqrt(static_cast<double>(D)));
    while (rt * rt > D) --rt;
    while ((rt + 1) * (rt + 1) <= D) ++rt;
    return rt * rt == D ? 2 : 0;
  };

  PrecisionScope scope(prec_bits);
  std::map<std::tuple<long, long, long, long>, CoeffEstimate> memo;
  auto coeff_at = [&](long r, const Rat& nu, long K) -> const CoeffEstimate& {
    auto key = std::make_tuple(r, static_cast<long>(nu.get_num().get_si()),
                               static_cast<long>(nu.get_den().get_si()), K);
    auto it = memo.find(key);
    if (it == memo.end())
      it = memo.emplace(key, rademacher_coefficient(spec, r, nu, K)).first;
    return it->second;
  };

  std::vector<RademacherRow> rows;
  for (long D : d_list) {
    RademacherRow row;
    row.D = D;
    if (D < 0 || D % 4 == 2 || D % 4 == 3) {
      // Polar part: the n = 1 coset contributes epsilon = 1 at the grade
      // 4 mu_r of each nonzero pole exponent; nothing else reaches here.
      long eps = 0;
      for (std::size_t r = 0; r < spec.mu.size(); ++r)
        if (spec.mu[r] != 0 && ratq(D, 4) == spec.mu[r]) eps = 1;
      long value = (family == "3C" ? 3 : 2) * eps;
      row.estimate = MpReal(value);
      row.stabilization = MpReal(0);
      row.stabilized = true;
      row.rounded = value;
      row.used_k = 0;
    } else {
      long r = D % 4 == 0 ? 0 : 1;
      Rat nu = ratq(D, 4);
      Rat corr = 0;
      for (const auto& [coef, ksq] : thetas) {
        if (D == 0)
          corr += coef;
        else if (D % ksq == 0 && theta_coef(D / ksq) == 2)
          corr += 2 * coef;
      }
      long tc_D = theta_coef(D);
      for (long K = 256; K <= k_cap; K *= 2) {
        const CoeffEstimate main = coeff_at(r, nu, K);
        const CoeffEstimate sub = family == "3C" ? coeff_at(0, Rat(0), K)
                                                 : coeff_at(1, ratq(1, 4), K);
        auto combine = [&](const MpComplex& m, const MpComplex& s) {
          MpComplex corrz(to_mpreal(corr), MpReal(0));
          if (family == "3C")
            return (m - s * MpReal(tc_D) + corrz) * MpReal(3);
          return m * MpReal(2) - s * MpReal(tc_D) + corrz;
        };
        MpComplex est = combine(main.estimate, sub.estimate);
        MpComplex half = combine(main.at_half, sub.at_half);
        if (abs(est.im) > 1e-6 * std::max(MpReal(1), abs(est.re)))
          throw ImaginaryResidue("assembled estimate at D = " +
                                 std::to_string(D) + " is not real");
        row.estimate = est.re;
        row.stabilization = mp_abs(est - half);
        row.used_k = K;
        if (row.stabilization < MpReal(1) / 2) {
          row.stabilized = true;
          break;
        }
      }
      Int z;
      mpfr_get_z(z.get_mpz_t(), row.estimate.backend().data(), MPFR_RNDN);
      row.rounded = z;
      row.residue =
          MpReal(abs(row.estimate - to_mpreal(Rat(z)))).convert_to<double>();
    }
    int comp = family == "3C" ? -1 : (D < 0 || D % 4 != 0 ? 1 : 0);
    if (auto fx = pd.coeff(fixture_family, cls, comp, D)) row.fixture = *fx;
    row.pass =
        row.stabilized && (!row.fixture || *row.fixture == row.rounded);
    if (strict && !row.stabilized)
      throw NonStabilized("estimate at D = " + std::to_string(D) +
                          " did not stabilize by K = " + std::to_string(k_cap));
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace thmoon
