// Thompson-group character machinery: exact quadratic-surd arithmetic over
// the table entries, centralizer orders via column orthogonality, power
// maps, and decomposition of rational trace vectors into irreducible
// multiplicities.

#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "thmoon/paperdata.hpp"

namespace thmoon {

struct NonIntegralOrthogonalitySum : std::runtime_error {
  explicit NonIntegralOrthogonalitySum(const std::string& what)
      : std::runtime_error(what) {}
};

// Exact element of Q(sqrt(m1), sqrt(m2), ...): a rational part plus
// coefficients on sqrt(k) for signed squarefree keys k (negative keys mean
// i*sqrt(|k|)).
class SurdSum {
 public:
  void add_rational(const Rat& r) { rational_ += r; }
  void add(const Surd& v);
  // Accumulate the exact product u*v, splitting sqrt(m)*sqrt(m') into a
  // rational or a new squarefree radicand as appropriate.
  void add_product(const Surd& u, const Surd& v);
  void scale(const Rat& c);
  void merge(const SurdSum& other);

  const Rat& rational_part() const { return rational_; }
  // True when every irrational coefficient is zero.
  bool is_rational() const;

 private:
  Rat rational_ = 0;
  std::map<long, Rat> irr_;
};

class ThompsonTable {
 public:
  static const ThompsonTable& instance();
  explicit ThompsonTable(const PaperData& pd);

  const std::vector<std::string>& classes() const { return pd_.classes(); }
  std::size_t irrep_count() const { return pd_.irrep_count(); }
  const Surd& chi(std::size_t irrep, const std::string& cls) const {
    return pd_.char_value(irrep, cls);
  }
  const std::string& power_class(const std::string& cls, long k) const {
    return pd_.power_class(cls, k);
  }
  long element_order(const std::string& cls) const {
    return pd_.element_order(cls);
  }
  // chi(g^k) for rational-on-twins usage; exact surd value.
  const Surd& chi_power(std::size_t irrep, const std::string& cls, long k) const {
    return chi(irrep, power_class(cls, k));
  }

  // Centralizer order derived from column orthogonality; integral by
  // construction or the load would have failed.
  const Int& centralizer(const std::string& cls) const;

  // Exact verification of both orthogonality relations.  Row: sums over
  // classes weighted by 1/|C(c)|; column: sums over irreducibles.
  bool verify_row_orthogonality() const;
  bool verify_column_orthogonality() const;

  struct Decomposition {
    std::vector<Rat> mult;  // indexed by irrep-1
    bool integral;
  };
  // m_i = sum_c t(c) * conj(chi_i(c)) / |C(c)| for a rational trace vector
  // defined on all 48 classes.
  Decomposition decompose(const std::map<std::string, Rat>& traces) const;

 private:
  const PaperData& pd_;
  std::vector<Int> centralizers_;  // by class index
};

}  // namespace thmoon
