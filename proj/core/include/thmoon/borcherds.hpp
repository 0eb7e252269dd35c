// Borcherds products of the squared lift: the generalized class number
// H^W, forward products q^{-H} exp(-sum C(n^2) q^{nk}/k) / eta, and the
// Moebius inversion that recovers the weight-one-half coefficients from
// the weight-zero Hauptmoduln across power-up classes.  The verifiers for
// the weight-zero theorem and Eq-4.15-style identities also live here.

#pragma once

#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "thmoon/qseries.hpp"

namespace thmoon {

struct MissingCoefficient : std::runtime_error {
  MissingCoefficient(const std::string& cls, long D)
      : std::runtime_error("no coefficient for class " + cls + " at D = " +
                           std::to_string(D)) {}
};

struct NonIntegralExponent : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct UnsupportedIndex : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct UnsupportedLevel : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// How a coefficient family resolves power-up classes: the class of g^k
// and the element order (the inversion schedule runs in order of the
// latter).
struct PowerContext {
  std::function<std::string(const std::string&, long)> power;
  std::function<long(const std::string&)> order;

  // Thompson conjugacy classes via the character-table power maps.
  static PowerContext thompson();
  // A single self-powered class (Hauptmodul targets for one group).
  static PowerContext single_class();
};

// Exact integer coefficients C(D) per class, defined on perfect squares
// (and whatever else the source supplies).
class CoeffProvider {
 public:
  CoeffProvider(std::string family, PowerContext ctx)
      : family_(std::move(family)), ctx_(std::move(ctx)) {}

  const std::string& family() const { return family_; }
  std::string power_class(const std::string& cls, long k) const {
    return ctx_.power(cls, k);
  }
  long element_order(const std::string& cls) const { return ctx_.order(cls); }

  bool has(const std::string& cls, long D) const;
  const Int& lookup(const std::string& cls, long D) const;
  void set(const std::string& cls, long D, Int value);
  const std::map<long, Int>& column(const std::string& cls) const;
  std::vector<std::string> classes() const;

 private:
  std::string family_;
  PowerContext ctx_;
  std::map<std::string, std::map<long, Int>> table_;
};

// H^W = sum C * H(|D|) over a singular part given as (D <= 0, r, C),
// with H(0) = -1/12.  Only index 1 is implemented.
Rat generalized_class_number_HW(
    const std::vector<std::tuple<long, long, Rat>>& singular, long index = 1);

// q^{-H} exp(-sum_{n,k>0} C_{g^k}(n^2) q^{nk}/k), divided by eta when
// supplied; exact and reliable below q^order.
FracSeries forward_product(const CoeffProvider& coeffs, const std::string& cls,
                           const Rat& H, const FracSeries* eta, long order);

// Recovers C_g(m^2) from targets with leading term 1*q^0 (q times the
// normalized Hauptmodul): m C_g(m^2) = m [q^m](-log target_g)
// - sum_{d|m, d<m} d C_{g^{m/d}}(d^2), identifying classes of equal
// element order with g.  Throws NonIntegralExponent on non-integer C.
CoeffProvider invert_product(const std::map<std::string, FracSeries>& targets,
                             const std::string& family,
                             PowerContext ctx = PowerContext::thompson());

// The 3C family from the Hauptmodul cubes, covering C(m^2) for m <= order.
CoeffProvider weight_half_3c_provider(long order);
// The penumbral family recovered from the bundled weight-zero tables;
// covers C(m^2) for m <= 30 (the table horizon).
const CoeffProvider& penumbral_provider();

struct CheckItem {
  std::string cls;
  std::string check;
  long grade_num = 0;
  long grade_den = 1;
  std::string expected, got;
  bool pass = false;
};

struct VerifyReport {
  std::vector<CheckItem> items;
  bool all_pass() const;
  std::size_t failures() const;
};

// Per-class weight-zero checks: (a) for 3-regular g the relation
// 3 C_PT(D) = 2 C_3C(D) + 3 tr(g|248) [theta at D] over the bundled
// grades, (b) the forward penumbral product against the bundled series,
// (c) for 3-regular g equality with thompson_series(g)^2.
VerifyReport verify_weight_zero_identities(const std::string& cls, long order);

// Genus-zero product checks for Gamma_0(m)+ at a class-number-one D0:
// (i) h_Gamma(D0) = 1, (ii) the exponents C(n^2) recovered from
// (q (T_Gamma + a))^{1/omega} are integers below q^order, (iii) the
// leading power A H_Gamma(D0) of the bundled product-table row is 1.
// Throws UnsupportedLevel when no Hauptmodul recipe is bundled for m.
VerifyReport prop45_check(long m, long D0, long a, long omega, long order);
// Same, with (D0, a, omega) taken from the bundled parameter table.
VerifyReport prop45_check(long m, long order);

}  // namespace thmoon
