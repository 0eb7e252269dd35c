#include "thmoon/bqf_orbits.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

namespace thmoon {

namespace {

long isqrt_ceil(long n) {
  long r = static_cast<long>(std::ceil(std::sqrt(static_cast<double>(n))));
  while (r > 0 && (r - 1) * (r - 1) >= n) --r;
  while (r * r < n) ++r;
  return r;
}

bool rep_before(const QuadForm& a, const QuadForm& b) {
  if (a.A != b.A) return a.A < b.A;
  if (std::labs(a.B) != std::labs(b.B)) return std::labs(a.B) < std::labs(b.B);
  return a.B > b.B;
}

// Does the integer matrix [[a,b],[c,d]] of determinant n fix Q under the
// scaled action?  Non-integral images cannot equal Q, so they just fail.
bool fixes(const QuadForm& q, long a, long b, long c, long d, long n) {
  try {
    return apply_scaled(q, a, b, c, d, n) == q;
  } catch (const WrongDiscriminantShape&) {
    return false;
  }
}

}  // namespace

MpComplex cm_point(const QuadForm& q, long prec_bits) {
  PrecisionScope scope(prec_bits);
  long d = q.disc();
  if (d >= 0 || q.A <= 0)
    throw BadDiscriminant("CM point needs a positive definite form");
  MpReal two_a = MpReal(2) * q.A;
  return {MpReal(-q.B) / two_a, sqrt(MpReal(-d)) / two_a};
}

std::pair<MpComplex, QuadForm> cm_point_and_action(const QuadForm& q, long a,
                                                   long b, long c, long d,
                                                   long n, const GroupSpec& g,
                                                   long prec_bits) {
  if (a * d - b * c != n)
    throw MatrixNotInGroup("determinant is not the declared scale");
  if (n == 1) {
    if (c % g.N != 0) throw MatrixNotInGroup("lower left entry not 0 mod N");
  } else {
    // Scaled Atkin-Lehner representative w_n: n | a, n | d, N | c, and n
    // must be one of the adjoined exact divisors.
    if (std::find(g.S.begin(), g.S.end(), n) == g.S.end())
      throw MatrixNotInGroup("scale is not an adjoined exact divisor");
    if (a % n != 0 || d % n != 0 || c % g.N != 0)
      throw MatrixNotInGroup("matrix is not an Atkin-Lehner representative");
  }
  return {cm_point(q, prec_bits), apply_scaled(q, a, b, c, d, n)};
}

std::vector<QuadForm> candidate_forms(long disc, long L) {
  if (disc >= 0 || ((disc % 4) + 4) % 4 > 1)
    throw BadDiscriminant("candidate enumeration needs disc < 0, 0 or 1 mod 4");
  std::vector<QuadForm> out;
  // Two regimes of minimal representatives: interior orbits have
  // A <= L*sqrt(|disc|/3) up to lattice slack, while orbits pinned near
  // the 0-cusp (small C, |B| <= A) reach A ~ |disc|/4.  Take the max of
  // both with generous slack; completeness is certified downstream by
  // class-number consistency and fixture comparisons.
  long a_max = std::max(L * isqrt_ceil((-disc + 2) / 3) + L,
                        (-disc + L * L) / 4 + 2 * L);
  for (long A = L; A <= a_max; A += L) {
    for (long B = -A; B <= A; ++B) {
      long num = static_cast<long>(B) * B - disc;
      if (num % (4 * A) != 0) continue;
      out.push_back({A, B, num / (4 * A)});
    }
  }
  return out;
}

long stabilizer_order(const QuadForm& q, const GroupSpec& g) {
  long bound = 2 * std::max({std::labs(q.A), std::labs(q.B), std::labs(q.C)});
  long count = 0;  // nonidentity fixing matrices, gamma and -gamma both hit

  // Elliptic elements of Gamma_0(N): trace in {-1, 0, 1}.
  for (long tr = -1; tr <= 1; ++tr) {
    for (long a = -bound; a <= bound; ++a) {
      long d = tr - a;
      if (std::labs(d) > bound) continue;
      for (long c = -bound; c <= bound; ++c) {
        if (c == 0 || c % g.N != 0) continue;
        long num = a * d - 1;
        if (num % c != 0) continue;
        long b = num / c;
        if (std::labs(b) > bound) continue;
        if (fixes(q, a, b, c, d, 1)) ++count;
      }
    }
  }

  // Atkin-Lehner coset elements w_e for adjoined e > 1: det e, e | a,
  // e | d, N | c, elliptic means (a + d)^2 < 4e.
  for (long e : g.S) {
    if (e == 1) continue;
    long be = bound * e;
    long tr_max = isqrt_ceil(4 * e) - 1;
    while ((tr_max + 1) * (tr_max + 1) < 4 * e) ++tr_max;
    for (long a = -be; a <= be; a += e) {
      for (long tr = -tr_max; tr <= tr_max; ++tr) {
        long d = tr - a;
        if (d % e != 0 || std::labs(d) > be) continue;
        for (long c = -be; c <= be; ++c) {
          if (c == 0 || c % g.N != 0) continue;
          long num = a * d - e;
          if (num % c != 0) continue;
          long b = num / c;
          if (std::labs(b) > be) continue;
          if (fixes(q, a, b, c, d, e)) ++count;
        }
      }
    }
  }

  // Projective count: each stabilizing element was seen as both signs.
  return 1 + count / 2;
}

OrbitDecomposition enumerate_orbits(long disc, const GroupSpec& g,
                                    const HauptmodulEval& fingerprint,
                                    long prec_bits, long level_div) {
  PrecisionScope scope(prec_bits);
  long L = level_div > 0 ? level_div : g.N;
  std::vector<QuadForm> cands = candidate_forms(disc, L);

  std::vector<MpComplex> vals;
  vals.reserve(cands.size());
  for (const auto& q : cands) vals.push_back(fingerprint(cm_point(q, prec_bits)));

  // Group by fingerprint with union-find; distances landing between the
  // merge threshold and its fourth root are undecidable at this precision.
  MpReal merge_thr = ldexp(MpReal(1), static_cast<int>(-prec_bits / 2));
  MpReal doubt_thr = ldexp(MpReal(1), static_cast<int>(-prec_bits / 4));
  std::vector<std::size_t> parent(cands.size());
  std::iota(parent.begin(), parent.end(), 0);
  std::function<std::size_t(std::size_t)> find = [&](std::size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  for (std::size_t i = 0; i < cands.size(); ++i) {
    for (std::size_t j = i + 1; j < cands.size(); ++j) {
      MpReal dist = mp_abs(vals[i] - vals[j]);
      if (dist < merge_thr) {
        parent[find(i)] = find(j);
      } else if (dist < doubt_thr) {
        throw AmbiguousOrbits("fingerprint separation below threshold at disc " +
                              std::to_string(disc));
      }
    }
  }

  std::map<std::size_t, Orbit> buckets;
  for (std::size_t i = 0; i < cands.size(); ++i) {
    Orbit& o = buckets[find(i)];
    if (o.members.empty() || rep_before(cands[i], o.rep)) {
      o.rep = cands[i];
      o.fingerprint = vals[i];
    }
    o.members.push_back(cands[i]);
  }

  OrbitDecomposition out;
  out.disc = disc;
  out.group = g;
  for (auto& [root, orbit] : buckets) {
    orbit.stabilizer_order = stabilizer_order(orbit.rep, g);
    out.orbits.push_back(std::move(orbit));
  }
  std::sort(out.orbits.begin(), out.orbits.end(),
            [](const Orbit& a, const Orbit& b) { return rep_before(a.rep, b.rep); });
  return out;
}

Rat OrbitDecomposition::class_number() const {
  Rat sum = 0;
  for (const auto& o : orbits) sum += Rat(1, o.stabilizer_order);
  return sum;
}

std::pair<Rat, long> gamma_class_number(const GroupSpec& g, long D0,
                                        const HauptmodulEval& fingerprint,
                                        long prec_bits) {
  OrbitDecomposition dec = enumerate_orbits(D0, g, fingerprint, prec_bits);
  return {dec.class_number(), static_cast<long>(dec.orbits.size())};
}

SeriesEvaluator::SeriesEvaluator(Factory make, double growth)
    : make_(std::move(make)), growth_(growth) {}

MpComplex SeriesEvaluator::eval(const MpComplex& tau, long bits) {
  PrecisionScope scope(bits);
  long need = series_order_for(bits, tau.im, growth_);
  if (!series_ || need > order_) {
    order_ = need + need / 4;  // headroom against repeated regrowth
    series_ = std::make_unique<FracSeries>(make_(order_));
  }
  return eval_series(*series_, tau);
}

HauptmodulEval SeriesEvaluator::at_bits(long bits) {
  return [this, bits](const MpComplex& tau) { return eval(tau, bits); };
}

HauptmodulEval SeriesEvaluator::at_bits_reduced(long bits, long fricke_N) {
  return [this, bits, fricke_N](const MpComplex& tau0) {
    PrecisionScope scope(bits);
    MpComplex tau = tau0;
    // Alternate recentering and Fricke flips; each flip from |N tau^2|
    // strictly below 1 raises Im tau, so the loop terminates.
    for (int rounds = 0; rounds < 64; ++rounds) {
      tau.re -= round(tau.re);
      if (fricke_N <= 0) break;
      MpReal norm = fricke_N * (tau.re * tau.re + tau.im * tau.im);
      if (norm >= 1) break;
      tau = MpComplex(-tau.re / norm, tau.im / norm);
    }
    return eval(tau, bits);
  };
}

}  // namespace thmoon
