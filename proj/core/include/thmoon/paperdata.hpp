// Bundled, checksummed ground-truth data: coefficient tables, decomposition
// tables, Frame shapes, the character table with power maps, Hauptmodul
// recipes, Rademacher/TSM parameters, and the genus-zero product table.
//
// Everything is loaded once, hash-verified against the manifest, and served
// read-only.  Values are exact (GMP) throughout.

#pragma once

#include <gmpxx.h>

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

namespace thmoon {

using Int = mpz_class;
using Rat = mpq_class;

struct CorruptFixture : std::runtime_error {
  explicit CorruptFixture(const std::string& what) : std::runtime_error(what) {}
};

// Character value x + y*sqrt(rad); rad = 0 means rational.
struct Surd {
  Rat re;
  Rat co;
  long rad = 0;

  bool operator==(const Surd&) const = default;
  Surd conj() const { return {re, -co, rad}; }
};

// One row of the genus-zero Borcherds product table.
struct ProductTableRow {
  std::string gamma;   // group symbol for Gamma
  long D0;
  long r0;
  long A;
  std::string inv;     // invariance group of the product
  std::string nZ;      // Thompson class tag or group symbol for n|Z
  std::optional<Int> constant;  // additive constant, when printed
};

class PaperData {
 public:
  // Loads from THMOON_DATA (env) or the built-in default directory and
  // verifies every file hash against the manifest.
  static const PaperData& instance();
  explicit PaperData(const std::string& dir);

  const std::string& dir() const { return dir_; }

  // Coefficient fixtures keyed by (family, class, r, grade); r is -1 for
  // the families without a component column.
  std::optional<Int> coeff(const std::string& family, const std::string& cls,
                           int r, long grade) const;
  // Sorted list of printed grades for one column.
  std::vector<long> grades(const std::string& family, const std::string& cls,
                           int r) const;
  // All classes appearing in one family's table, in first-appearance order.
  std::vector<std::string> coeff_classes(const std::string& family) const;

  // Decomposition fixtures: (family, grade) -> multiplicities indexed by
  // irreducible 1..48 (vector position 0 is irreducible 1).
  std::optional<std::vector<Int>> decomposition(const std::string& family,
                                                long grade) const;
  std::vector<long> decomposition_grades(const std::string& family) const;

  // Frame shape of a class as (b, v_b) pairs with v_b != 0.
  const std::vector<std::pair<long, long>>& frame_shape(
      const std::string& cls) const;

  // Fused column name ("12AB") for a class that shares its table column
  // with Galois twins; the class's own name otherwise.
  const std::string& column_name(const std::string& cls) const;

  // Character table.
  const std::vector<std::string>& classes() const { return classes_; }
  std::size_t class_index(const std::string& cls) const;
  std::size_t irrep_count() const { return char_values_.size(); }
  const Surd& char_value(std::size_t irrep, const std::string& cls) const;
  const Surd& char_value(std::size_t irrep, std::size_t cls_idx) const {
    return char_values_.at(irrep - 1).at(cls_idx);
  }
  // Image class of g^p for prime p dividing some element order.
  const std::string& power_map(long p, const std::string& cls) const;
  // Arbitrary positive power via the prime maps.
  const std::string& power_class(const std::string& cls, long k) const;
  long element_order(const std::string& cls) const;

  const std::vector<ProductTableRow>& product_table() const { return table4_; }

  // Raw JSON documents consumed by the hauptmodul/tsm/rademacher modules.
  const nlohmann::json& recipes() const { return recipes_; }
  const nlohmann::json& rademacher_data() const { return rademacher_; }
  const nlohmann::json& tsm_spec() const { return tsm_spec_; }
  const nlohmann::json& prop45() const { return prop45_; }
  const nlohmann::json& singular_parts() const { return singular_parts_; }

 private:
  std::string dir_;
  std::map<std::tuple<std::string, std::string, int, long>, Int> coeffs_;
  std::map<std::pair<std::string, long>, std::vector<Int>> decomps_;
  std::map<std::string, std::vector<std::pair<long, long>>> frames_;
  std::vector<std::string> classes_;
  std::map<std::string, std::size_t> class_pos_;
  std::vector<std::vector<Surd>> char_values_;  // [irrep-1][class index]
  std::map<std::pair<long, std::string>, std::string> power_maps_;
  std::vector<ProductTableRow> table4_;
  std::map<std::string, std::string> fused_alias_;
  nlohmann::json recipes_, rademacher_, tsm_spec_, prop45_, singular_parts_;

  void verify_manifest() const;
  void load_coeffs();
  void load_decomps();
  void load_frames();
  void load_chars();
  void load_table4();
};

// SHA-256 of a file's bytes as lowercase hex.
std::string sha256_file(const std::string& path);

}  // namespace thmoon
