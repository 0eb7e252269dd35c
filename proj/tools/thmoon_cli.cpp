// Command-line front end: series generation, exact coefficient recovery,
// fixture verification suites, character decompositions, trace-of-singular-
// moduli runs, and Rademacher sums.  Text output by default, stable JSON
// with --format json.  Exit codes: 0 when every requested check passes,
// 1 on check failures (with a JSON diff of the failing items), 2 on usage
// errors.  THMOON_DATA overrides the bundled data directory.

#include <algorithm>
#include <cmath>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "thmoon/borcherds.hpp"
#include "thmoon/bqf.hpp"
#include "thmoon/hauptmodul.hpp"
#include "thmoon/rademacher.hpp"
#include "thmoon/thompson.hpp"
#include "thmoon/tsm.hpp"

using namespace thmoon;

namespace {

using ojson = nlohmann::ordered_json;

std::vector<std::string> resolve_classes(const std::string& arg) {
  const PaperData& pd = PaperData::instance();
  if (arg == "ALL") return pd.classes();
  std::vector<std::string> out;
  std::stringstream ss(arg);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) continue;
    pd.class_index(tok);  // throws on unknown names
    out.push_back(tok);
  }
  if (out.empty()) throw CLI::ValidationError("--classes", "empty class list");
  return out;
}

std::string grade_str(long num, long den) {
  if (den == 1) return std::to_string(num);
  return std::to_string(num) + "/" + std::to_string(den);
}

ojson item_json(const CheckItem& it) {
  ojson j;
  j["class"] = it.cls;
  j["check"] = it.check;
  j["grade"] = grade_str(it.grade_num, it.grade_den);
  j["expected"] = it.expected;
  j["got"] = it.got;
  j["pass"] = it.pass;
  return j;
}

// Prints the report (one line per item in text mode, an array in JSON
// mode) and returns the process exit code.  Failures are always echoed as
// a JSON diff so scripted callers get a machine-readable account.
int emit_report(const VerifyReport& rep, const std::string& format,
                const std::string& heading) {
  if (format == "json") {
    ojson arr = ojson::array();
    for (const auto& it : rep.items) arr.push_back(item_json(it));
    std::cout << arr.dump(2) << "\n";
  } else {
    std::cout << "# " << heading << "\n";
    for (const auto& it : rep.items)
      std::cout << (it.pass ? "pass" : "FAIL") << "  " << it.cls << "  "
                << it.check << "  grade " << grade_str(it.grade_num, it.grade_den)
                << "  expected " << it.expected << "  got " << it.got << "\n";
    std::cout << rep.items.size() - rep.failures() << "/" << rep.items.size()
              << " checks passed\n";
  }
  if (rep.all_pass()) return 0;
  if (format != "json") {
    ojson diff = ojson::array();
    for (const auto& it : rep.items)
      if (!it.pass) diff.push_back(item_json(it));
    std::cout << diff.dump(2) << "\n";
  }
  return 1;
}

FracSeries series_for(const std::string& family, const std::string& cls,
                      long order, bool cubed) {
  if (family == "w0-3C")
    return cubed ? thompson_cubed(cls, order) : thompson_series(cls, order);
  // The bundled penumbral coefficients cover C(m^2) for m <= 30, which
  // bounds the reliable order of the forward product.
  long cap = std::min<long>(order, 30);
  FracSeries eta = frame_eta(cls, 2, cap + 22);
  return forward_product(penumbral_provider(), cls, Rat(-20), &eta, cap);
}

int run_series(const std::string& family, const std::string& cls, long order,
               bool cubed, const std::string& format) {
  FracSeries t = series_for(family, cls, order, cubed);
  if (format == "json")
    std::cout << t.to_json() << "\n";
  else
    std::cout << cls << ": " << t.to_string(40) << "\n";
  return 0;
}

int run_coeffs(const std::string& family, const std::string& classes_arg,
               long d_max, const std::string& format) {
  const PaperData& pd = PaperData::instance();
  bool three_c = family == "3C";
  long m_max = static_cast<long>(std::sqrt(static_cast<double>(d_max)));
  if (!three_c) m_max = std::min<long>(m_max, 30);
  CoeffProvider cp =
      three_c ? weight_half_3c_provider(m_max) : penumbral_provider();
  std::string fixture_family = three_c ? "whalf3C" : "whalfPT";
  VerifyReport rep;
  for (const auto& cls : resolve_classes(classes_arg)) {
    for (long m = 1; m <= m_max; ++m) {
      long D = m * m;
      const Int& got = cp.lookup(cls, D);
      int r = three_c ? -1 : (D % 4 == 0 ? 0 : 1);
      auto fx = pd.coeff(fixture_family, cls, r, D);
      rep.items.push_back({cls, "coeff", D, 1, fx ? fx->get_str() : "-",
                           got.get_str(), !fx || *fx == got});
    }
  }
  return emit_report(rep, format,
                     "inverted product coefficients on square grades, family " +
                         family);
}

VerifyReport suite_thm_whalf(const std::vector<std::string>& classes) {
  const PaperData& pd = PaperData::instance();
  CoeffProvider cp = weight_half_3c_provider(11);
  VerifyReport rep;
  for (const auto& cls : classes) {
    for (long m = 1; m <= 11; ++m) {
      auto fx = pd.coeff("whalf3C", cls, -1, m * m);
      const Int& got = cp.lookup(cls, m * m);
      rep.items.push_back({cls, "whalf3C-table", m * m, 1,
                           fx ? fx->get_str() : "-", got.get_str(),
                           fx && *fx == got});
    }
  }
  return rep;
}

VerifyReport suite_fixtures(const std::vector<std::string>& classes) {
  const PaperData& pd = PaperData::instance();
  VerifyReport rep;
  for (const auto& cls : classes) {
    auto grades = pd.grades("w03C", cls, -1);
    FracSeries t = thompson_series(cls, grades.back() / 3 + 1);
    bool ok = true;
    for (long n : grades)
      ok = ok && t.at(n, 3) == Rat(*pd.coeff("w03C", cls, -1, n));
    rep.items.push_back({cls, "w03C-table", grades.back(), 3, "all match",
                         ok ? "all match" : "mismatch", ok});
    auto polar = pd.coeff("whalf3C", cls, -1, -3);
    rep.items.push_back({cls, "whalf3C-polar", -3, 1, "3",
                         polar ? polar->get_str() : "-", polar && *polar == 3});
  }
  return rep;
}

VerifyReport suite_orthogonality() {
  const ThompsonTable& tt = ThompsonTable::instance();
  VerifyReport rep;
  bool row = tt.verify_row_orthogonality();
  bool col = tt.verify_column_orthogonality();
  rep.items.push_back({"table", "row-orthogonality", 0, 1, "exact",
                       row ? "exact" : "violated", row});
  rep.items.push_back({"table", "column-orthogonality", 0, 1, "exact",
                       col ? "exact" : "violated", col});
  for (const auto& cls : tt.classes()) {
    const Int& z = tt.centralizer(cls);
    bool ok = z > 0 && z % tt.element_order(cls) == 0;
    rep.items.push_back({cls, "centralizer-divisibility",
                         tt.element_order(cls), 1, "order divides |C|",
                         z.get_str(), ok});
  }
  return rep;
}

VerifyReport suite_prop45(long order) {
  const PaperData& pd = PaperData::instance();
  VerifyReport rep;
  std::vector<long> levels;
  for (const auto& [key, rec] : pd.prop45()["supported"].items())
    levels.push_back(std::stol(key));
  std::sort(levels.begin(), levels.end());
  for (long m : levels) {
    VerifyReport one = prop45_check(m, order);
    rep.items.insert(rep.items.end(), one.items.begin(), one.items.end());
  }
  return rep;
}

VerifyReport suite_conj44(const std::vector<std::string>& classes, long d_max,
                          long precision) {
  VerifyReport rep;
  for (const auto& cls : classes) {
    for (const auto& row : conjecture44_series(cls, d_max, precision)) {
      std::string got = row.evaluated ? row.reconstructed.get_str() : "refused";
      rep.items.push_back({cls, "conj44", row.D, 1,
                           row.fixture ? row.fixture->get_str() : "-", got,
                           row.pass});
    }
  }
  return rep;
}

int run_verify(const std::string& suite, const std::string& classes_arg,
               long order, long d_max, long precision,
               const std::string& format) {
  // conj44 runs on the six-class subset with printed nonsquare columns
  // unless the caller names classes explicitly.
  std::vector<std::string> classes =
      (suite == "conj44" && classes_arg == "ALL")
          ? std::vector<std::string>{"1A", "2A", "3B", "5A", "7A", "9B"}
          : resolve_classes(classes_arg);

  if (suite == "thm-w0" || suite == "eq-415") {
    VerifyReport rep;
    for (const auto& cls : classes) {
      VerifyReport one = verify_weight_zero_identities(cls, order);
      for (auto& it : one.items)
        if (suite == "thm-w0" || it.check == "eq-415")
          rep.items.push_back(std::move(it));
    }
    return emit_report(rep, format,
                       suite == "eq-415"
                           ? "3 C_PT(D) = 2 C_3C(D) + 3 tr(g|248) theta(D) on "
                             "3-regular classes"
                           : "weight-zero penumbral products, tables, and "
                             "Hauptmodul squares");
  }
  if (suite == "thm-whalf")
    return emit_report(suite_thm_whalf(classes), format,
                       "weight-one-half coefficients recovered from the "
                       "Hauptmodul cubes");
  if (suite == "prop45")
    return emit_report(suite_prop45(order), format,
                       "genus-zero products (T+a)^(1/omega) with integral "
                       "exponents");
  if (suite == "conj44")
    return emit_report(suite_conj44(classes, d_max, precision), format,
                       "trace-of-singular-moduli reconstruction of nonsquare "
                       "coefficients");
  if (suite == "fixtures")
    return emit_report(suite_fixtures(classes), format,
                       "Hauptmodul expansions and polar terms against the "
                       "bundled tables");
  if (suite == "orthogonality")
    return emit_report(suite_orthogonality(), format,
                       "character table orthogonality and centralizer "
                       "integrality");
  throw CLI::ValidationError("suite", "unknown verification suite " + suite);
}

int run_decompose(const std::string& family, long grade,
                  const std::string& format) {
  const PaperData& pd = PaperData::instance();
  const ThompsonTable& tt = ThompsonTable::instance();
  std::map<std::string, Rat> traces;
  std::string fixture_family;
  if (family == "w0-3C") {
    fixture_family = "w03C";
    long order = grade <= 0 ? 2 : grade / 3 + 2;
    for (const auto& cls : tt.classes())
      traces[cls] = thompson_series(cls, order).at(grade, 3);
  } else {
    fixture_family = family == "w0-PT" ? "w0PT" : "whalf3C";
    for (const auto& cls : tt.classes()) {
      auto c = pd.coeff(fixture_family, cls, -1, grade);
      if (!c)
        throw std::runtime_error("no bundled coefficient for " + cls +
                                 " at grade " + std::to_string(grade));
      traces[cls] = *c;
    }
  }
  auto dec = tt.decompose(traces);
  // The published rows carry the overall sign that makes the graded
  // dimension nonnegative; match that convention for the comparison.
  int sgn = traces.at("1A") < 0 ? -1 : 1;
  auto fixture = pd.decomposition(fixture_family, grade);
  bool matches = true;
  ojson mult = ojson::object();
  for (std::size_t j = 0; j < dec.mult.size(); ++j) {
    Rat m = dec.mult[j] * sgn;
    if (m != 0) mult["chi" + std::to_string(j + 1)] = m.get_str();
    if (fixture && m != (*fixture)[j]) matches = false;
  }
  ojson out;
  out["family"] = family;
  out["grade"] = grade;
  out["multiplicities"] = mult;
  out["integral"] = dec.integral;
  out["sign"] = sgn;
  out["fixture"] = fixture ? (matches ? "match" : "mismatch") : "absent";
  if (format == "json") {
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << family << " grade " << grade << ": ";
    bool first = true;
    for (auto& [k, v] : mult.items()) {
      std::cout << (first ? "" : " + ")
                << (v.get<std::string>() == "1" ? "" : v.get<std::string>() + "*")
                << k;
      first = false;
    }
    if (first) std::cout << "0";
    std::cout << (dec.integral ? "" : "  [NON-INTEGRAL]")
              << (sgn < 0 ? "  (sign-flipped row)" : "") << "  fixture "
              << out["fixture"].get<std::string>() << "\n";
  }
  bool ok = dec.integral && (!fixture || matches);
  if (!ok && format != "json") std::cout << out.dump(2) << "\n";
  return ok ? 0 : 1;
}

int run_tsm(const std::string& cls, long d_max, long precision,
            const std::string& format) {
  VerifyReport rep;
  ojson arr = ojson::array();
  for (const auto& row : conjecture44_series(cls, d_max, precision)) {
    std::string got = row.evaluated ? row.reconstructed.get_str() : "refused";
    rep.items.push_back({cls, "tsm", row.D, 1,
                         row.fixture ? row.fixture->get_str() : "-", got,
                         row.pass || !row.fixture});
    ojson j = item_json(rep.items.back());
    j["residue"] = row.residue;
    arr.push_back(std::move(j));
  }
  if (format == "json") {
    std::cout << arr.dump(2) << "\n";
    return rep.all_pass() ? 0 : 1;
  }
  std::cout << "# twisted traces against the weight-one-half table, class "
            << cls << "\n";
  for (const auto& j : arr)
    std::cout << (j["pass"].get<bool>() ? "pass" : "FAIL") << "  D="
              << j["grade"].get<std::string>() << "  reconstructed "
              << j["got"].get<std::string>() << "  fixture "
              << j["expected"].get<std::string>() << "  residue "
              << j["residue"].get<double>() << "\n";
  if (rep.all_pass()) return 0;
  ojson diff = ojson::array();
  for (const auto& j : arr)
    if (!j["pass"].get<bool>()) diff.push_back(j);
  std::cout << diff.dump(2) << "\n";
  return 1;
}

int run_rademacher(const std::string& family, const std::string& cls,
                   std::vector<long> d_list, long k_max, long precision,
                   const std::string& format) {
  std::string fam = (family == "PT" || family == "penumbral") ? "penumbral"
                                                              : "3C";
  auto rows = assemble_mckay_thompson(cls, fam, d_list, k_max, precision);
  bool hard_fail = false;
  ojson arr = ojson::array();
  for (const auto& row : rows) {
    // Non-convergence at the K cap is reported, not fatal; a stabilized
    // sum disagreeing with the bundled value is a failure.
    std::string verdict = !row.stabilized ? "unstabilized"
                          : row.pass      ? "pass"
                                          : "FAIL";
    if (row.stabilized && !row.pass) hard_fail = true;
    ojson j;
    j["D"] = row.D;
    j["estimate"] = row.estimate.str(20);
    j["stabilization"] = row.stabilization.str(6);
    j["K"] = row.used_k;
    j["rounded"] = row.rounded.get_str();
    j["residue"] = row.residue;
    j["fixture"] = row.fixture ? row.fixture->get_str() : "-";
    j["verdict"] = verdict;
    arr.push_back(std::move(j));
  }
  if (format == "json") {
    std::cout << arr.dump(2) << "\n";
  } else {
    std::cout << "# Rademacher sums, family " << fam << ", class " << cls
              << ", K <= " << k_max << "\n";
    for (const auto& j : arr)
      std::cout << j["verdict"].get<std::string>() << "  D=" << j["D"]
                << "  estimate " << j["estimate"].get<std::string>()
                << "  stab " << j["stabilization"].get<std::string>()
                << "  K=" << j["K"] << "  fixture "
                << j["fixture"].get<std::string>() << "\n";
  }
  return hard_fail ? 1 : 0;
}

int run_classnum(const std::vector<long>& hurwitz, long d_max, bool hw,
                 const std::string& format) {
  ojson out;
  ojson h = ojson::object();
  std::vector<long> ds = hurwitz;
  if (d_max >= 0)
    for (long d = 0; d <= d_max; ++d) ds.push_back(d);
  for (long d : ds) h[std::to_string(d)] = hurwitz_class_number(d).get_str();
  out["hurwitz"] = h;
  if (hw)
    out["HW_penumbral"] =
        generalized_class_number_HW({{0, 0, 248}, {-3, 1, 2}}).get_str();
  if (format == "json") {
    std::cout << out.dump(2) << "\n";
  } else {
    for (auto& [k, v] : h.items())
      std::cout << "H(" << k << ") = " << v.get<std::string>() << "\n";
    if (hw)
      std::cout << "H^W(248, 2) = " << out["HW_penumbral"].get<std::string>()
                << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact-arithmetic toolkit for the Thompson moonshine avatars"};
  app.require_subcommand(1);

  std::string format = "text";
  app.add_option("--format", format, "Output format")
      ->check(CLI::IsMember({"text", "json"}));

  // Each subcommand owns its option storage: CLI11 applies default_val at
  // registration time, so sharing variables across subcommands would let
  // the last registered default win.
  std::string cls = "1A", classes_arg = "ALL", suite;
  std::string ser_family = "w0-3C", coeff_family = "3C";
  std::string dec_family, rad_family = "3C";
  long order = 30, d_max = 24, coeff_dmax = 121, grade = 0;
  long precision = 256, rad_precision = 128, k_max = 4096;
  bool cubed = false, hw = false;
  std::vector<long> d_list, hurwitz;

  auto* c_series = app.add_subcommand("series", "Print a weight-zero series");
  c_series->add_option("--family", ser_family, "Series family")
      ->check(CLI::IsMember({"w0-3C", "w0-PT"}));
  c_series->add_option("--class", cls, "Conjugacy class")->required();
  c_series->add_option("--order", order, "Reliable q-order")
      ->check(CLI::PositiveNumber);
  c_series->add_flag("--cubed", cubed, "Print the cube (w0-3C only)");

  auto* c_coeffs = app.add_subcommand(
      "coeffs", "Recover square-grade weight-one-half coefficients");
  c_coeffs->add_option("--family", coeff_family, "Coefficient family")
      ->check(CLI::IsMember({"3C", "PT"}));
  c_coeffs->add_option("--classes", classes_arg, "ALL or a comma list");
  c_coeffs->add_option("--dmax", coeff_dmax, "Largest grade D")
      ->check(CLI::PositiveNumber);

  auto* c_verify = app.add_subcommand("verify", "Run a verification suite");
  c_verify->add_option("suite", suite, "Suite name")
      ->required()
      ->check(CLI::IsMember({"thm-w0", "thm-whalf", "eq-415", "prop45",
                             "conj44", "fixtures", "orthogonality"}));
  c_verify->add_option("--classes", classes_arg, "ALL or a comma list");
  c_verify->add_option("--order", order, "q-order for series checks")
      ->check(CLI::PositiveNumber);
  c_verify->add_option("--dmax", d_max, "Largest grade D (conj44)")
      ->check(CLI::PositiveNumber);
  c_verify->add_option("--precision", precision, "Working precision in bits")
      ->check(CLI::Range(64L, 4096L));

  auto* c_dec = app.add_subcommand("decompose",
                                   "Decompose a graded trace vector");
  c_dec->add_option("--family", dec_family, "Trace family")
      ->required()
      ->check(CLI::IsMember({"w0-3C", "w0-PT", "whalf-3C"}));
  c_dec->add_option("--grade", grade, "Grade (n or D)")->required();

  auto* c_tsm = app.add_subcommand("tsm", "Traces of singular moduli");
  c_tsm->add_option("--class", cls, "Conjugacy class")->required();
  c_tsm->add_option("--dmax", d_max, "Largest discriminant D")
      ->check(CLI::PositiveNumber);
  c_tsm->add_option("--precision", precision, "Working precision in bits")
      ->check(CLI::Range(64L, 4096L));

  auto* c_rad = app.add_subcommand("rademacher", "Rademacher coefficient sums");
  c_rad->add_option("--family", rad_family, "Form family")
      ->check(CLI::IsMember({"3C", "PT", "penumbral"}));
  c_rad->add_option("--class", cls, "Conjugacy class");
  c_rad->add_option("--D", d_list, "Grades to assemble")->required();
  c_rad->add_option("--K", k_max, "Truncation cap for the c-sum")
      ->check(CLI::PositiveNumber);
  c_rad->add_option("--precision", rad_precision, "Working precision in bits")
      ->check(CLI::Range(64L, 4096L));

  auto* c_cn = app.add_subcommand("classnum", "Hurwitz class numbers");
  c_cn->add_option("--hurwitz", hurwitz, "Discriminant values |D|");
  long cn_dmax = -1;
  c_cn->add_option("--dmax", cn_dmax, "Print H(d) for all d <= dmax");
  c_cn->add_flag("--hw-penumbral", hw,
                 "Generalized class number of the (248, 2) singular part");

  // Let --format (and any future global flag) appear after the subcommand.
  for (CLI::App* sc : app.get_subcommands(nullptr)) sc->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (c_series->parsed())
      return run_series(ser_family, cls, order, cubed, format);
    if (c_coeffs->parsed())
      return run_coeffs(coeff_family, classes_arg, coeff_dmax, format);
    if (c_verify->parsed())
      return run_verify(suite, classes_arg, order, d_max, precision, format);
    if (c_dec->parsed()) return run_decompose(dec_family, grade, format);
    if (c_tsm->parsed()) return run_tsm(cls, d_max, precision, format);
    if (c_rad->parsed())
      return run_rademacher(rad_family, cls, d_list, k_max, rad_precision,
                            format);
    if (c_cn->parsed()) return run_classnum(hurwitz, cn_dmax, hw, format);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
