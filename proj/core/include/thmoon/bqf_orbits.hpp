// Orbit decomposition of binary quadratic forms under Gamma_0(N)+S: the
// candidate set is a generous bounded superset, grouping uses a
// group-invariant Hauptmodul fingerprint at CM points, and stabilizer
// orders come from bounded searches over elliptic and Atkin-Lehner
// elements.  Correctness at desk scale is certified by class-number
// consistency and fixture comparisons, not by the bounds themselves.

#pragma once

#include <functional>
#include <memory>

#include "thmoon/bqf.hpp"
#include "thmoon/mpcomplex.hpp"

namespace thmoon {

struct AmbiguousOrbits : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct MatrixNotInGroup : std::runtime_error {
  using std::runtime_error::runtime_error;
};

using HauptmodulEval = std::function<MpComplex(const MpComplex&)>;

// Upper-half-plane root of Q(x,1) = 0: (-B + i sqrt(|disc|)) / 2A.
MpComplex cm_point(const QuadForm& q, long prec_bits);

// alpha_Q together with Q|gamma for a scaled matrix of the group; throws
// MatrixNotInGroup when the matrix is not in Gamma_0(N)+S form.
std::pair<MpComplex, QuadForm> cm_point_and_action(const QuadForm& q, long a,
                                                   long b, long c, long d,
                                                   long n, const GroupSpec& g,
                                                   long prec_bits);

// All forms with L | A and |B| <= A, with A bounded by the larger of
// L*ceil(sqrt(|disc|/3)) + L and the 0-cusp regime |disc|/4 + 2L.
std::vector<QuadForm> candidate_forms(long disc, long L);

struct Orbit {
  QuadForm rep;                  // minimal A, then |B|, then B >= 0
  long stabilizer_order = 1;
  MpComplex fingerprint;         // Hauptmodul value at the representative
  std::vector<QuadForm> members;
};

struct OrbitDecomposition {
  long disc = 0;
  GroupSpec group;
  std::vector<Orbit> orbits;

  Rat class_number() const;
};

// |Gamma-bar_Q| for Gamma_0(N)+S by bounded search: elliptic elements of
// Gamma_0(N) with trace in {-1,0,1} plus Atkin-Lehner coset elements.
long stabilizer_order(const QuadForm& q, const GroupSpec& g);

// level_div defaults to g.N; pass 9 with Gamma_0(3) for the Q^(9) route.
OrbitDecomposition enumerate_orbits(long disc, const GroupSpec& g,
                                    const HauptmodulEval& fingerprint,
                                    long prec_bits, long level_div = 0);

// (H_Gamma(D0), h_Gamma(D0)) from the orbit decomposition at D0 itself.
std::pair<Rat, long> gamma_class_number(const GroupSpec& g, long D0,
                                        const HauptmodulEval& fingerprint,
                                        long prec_bits);

// Adaptive-order numeric evaluation of an exact series family: regrows
// the cached expansion whenever Im tau or the precision demands it.
class SeriesEvaluator {
 public:
  using Factory = std::function<FracSeries(long order)>;
  // growth bounds the coefficient size exp(growth * sqrt(n)); 4 pi covers
  // every series with a single q^{-1}-type pole.
  explicit SeriesEvaluator(Factory make, double growth = 12.567);

  MpComplex eval(const MpComplex& tau, long bits);
  // The fingerprint callback at fixed precision.
  HauptmodulEval at_bits(long bits);
  // Same, but moves tau into a high-Im fundamental region first: integer
  // translations always, and the Fricke flip tau -> -1/(N tau) whenever
  // it raises Im tau.  Only valid when the evaluated function is
  // invariant under Gamma_0(N)+N (any SL2(Z)-invariant function at N=1);
  // pass fricke_N = 0 for translations alone.
  HauptmodulEval at_bits_reduced(long bits, long fricke_N);

 private:
  Factory make_;
  double growth_;
  long order_ = 0;
  std::unique_ptr<FracSeries> series_;
};

}  // namespace thmoon
