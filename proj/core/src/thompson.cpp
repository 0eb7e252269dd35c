#include "thmoon/thompson.hpp"

namespace thmoon {

namespace {

// Split n > 0 as t^2 * k with k squarefree; returns (t, k).
std::pair<long, long> squarefree_split(long n) {
  long t = 1, k = 1;
  for (long p = 2; p * p <= n; ++p) {
    long e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    for (long i = 0; i + 1 < e; i += 2) t *= p;
    if (e % 2 == 1) k *= p;
  }
  return {t, k * n};
}

}  // namespace

void SurdSum::add(const Surd& v) {
  rational_ += v.re;
  if (v.co != 0) irr_[v.rad] += v.co;
}

void SurdSum::add_product(const Surd& u, const Surd& v) {
  rational_ += u.re * v.re;
  if (v.co != 0) irr_[v.rad] += u.re * v.co;
  if (u.co != 0) irr_[u.rad] += u.co * v.re;
  if (u.co != 0 && v.co != 0) {
    if (u.rad == v.rad) {
      rational_ += u.co * v.co * u.rad;
    } else {
      // sqrt(m)*sqrt(m') for negative m, m' is -sqrt(|mm'|).
      long prod = u.rad * v.rad;  // positive: both radicands negative
      auto [t, k] = squarefree_split(prod);
      Rat c = u.co * v.co * t;
      if (u.rad < 0 && v.rad < 0) c = -c;
      if (k == 1)
        rational_ += c;
      else
        irr_[k] += c;
    }
  }
}

void SurdSum::scale(const Rat& c) {
  rational_ *= c;
  for (auto& [k, v] : irr_) v *= c;
}

void SurdSum::merge(const SurdSum& other) {
  rational_ += other.rational_;
  for (const auto& [k, v] : other.irr_) irr_[k] += v;
}

bool SurdSum::is_rational() const {
  for (const auto& [k, v] : irr_)
    if (v != 0) return false;
  return true;
}

const ThompsonTable& ThompsonTable::instance() {
  static ThompsonTable table(PaperData::instance());
  return table;
}

ThompsonTable::ThompsonTable(const PaperData& pd) : pd_(pd) {
  // Centralizer orders from column orthogonality with the same column.
  for (const auto& cls : pd_.classes()) {
    SurdSum s;
    for (std::size_t i = 1; i <= pd_.irrep_count(); ++i) {
      const Surd& v = pd_.char_value(i, cls);
      s.add_product(v, v.conj());
    }
    if (!s.is_rational() || s.rational_part().get_den() != 1)
      throw NonIntegralOrthogonalitySum("centralizer sum for " + cls);
    centralizers_.push_back(Int(s.rational_part().get_num()));
  }
}

const Int& ThompsonTable::centralizer(const std::string& cls) const {
  return centralizers_.at(pd_.class_index(cls));
}

bool ThompsonTable::verify_row_orthogonality() const {
  const auto& classes = pd_.classes();
  for (std::size_t i = 1; i <= pd_.irrep_count(); ++i) {
    for (std::size_t j = i; j <= pd_.irrep_count(); ++j) {
      SurdSum s;
      for (std::size_t c = 0; c < classes.size(); ++c) {
        SurdSum term;
        term.add_product(pd_.char_value(i, c), pd_.char_value(j, c).conj());
        term.scale(Rat(1) / Rat(centralizers_[c]));
        s.merge(term);
      }
      if (!s.is_rational()) return false;
      if (s.rational_part() != (i == j ? Rat(1) : Rat(0))) return false;
    }
  }
  return true;
}

bool ThompsonTable::verify_column_orthogonality() const {
  const auto& classes = pd_.classes();
  for (std::size_t c1 = 0; c1 < classes.size(); ++c1) {
    for (std::size_t c2 = c1; c2 < classes.size(); ++c2) {
      SurdSum s;
      for (std::size_t i = 1; i <= pd_.irrep_count(); ++i)
        s.add_product(pd_.char_value(i, c1), pd_.char_value(i, c2).conj());
      Rat expect = (c1 == c2) ? Rat(centralizers_[c1]) : Rat(0);
      if (!s.is_rational() || s.rational_part() != expect) return false;
    }
  }
  return true;
}

ThompsonTable::Decomposition ThompsonTable::decompose(
    const std::map<std::string, Rat>& traces) const {
  const auto& classes = pd_.classes();
  Decomposition out;
  out.integral = true;
  for (std::size_t i = 1; i <= pd_.irrep_count(); ++i) {
    SurdSum s;
    for (std::size_t c = 0; c < classes.size(); ++c) {
      auto it = traces.find(classes[c]);
      if (it == traces.end())
        throw std::runtime_error("trace vector missing class " + classes[c]);
      Surd t{it->second, Rat(0), 0};
      SurdSum term;
      term.add_product(t, pd_.char_value(i, c).conj());
      term.scale(Rat(1) / Rat(centralizers_[c]));
      s.merge(term);
    }
    if (!s.is_rational())
      throw NonIntegralOrthogonalitySum(
          "irrational multiplicity: trace vector is not Galois-stable");
    out.mult.push_back(s.rational_part());
    if (s.rational_part().get_den() != 1) out.integral = false;
  }
  return out;
}

}  // namespace thmoon
