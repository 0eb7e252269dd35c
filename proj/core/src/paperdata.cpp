#include "thmoon/paperdata.hpp"

#include <openssl/evp.h>

#include <cstdlib>
#include <fstream>
#include <numeric>
#include <sstream>

namespace thmoon {

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CorruptFixture("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  bool quoted = false;
  for (char ch : line) {
    if (ch == '"') {
      quoted = !quoted;
    } else if (ch == ',' && !quoted) {
      out.push_back(cur);
      cur.clear();
    } else if (ch != '\r') {
      cur += ch;
    }
  }
  out.push_back(cur);
  return out;
}

// Iterate data rows of a CSV file, skipping the header.
template <typename F>
void for_csv_rows(const std::string& path, F&& f) {
  std::ifstream in(path);
  if (!in) throw CorruptFixture("cannot open " + path);
  std::string line;
  bool header = true;
  while (std::getline(in, line)) {
    if (header) {
      header = false;
      continue;
    }
    if (line.empty()) continue;
    f(split_csv_line(line));
  }
}

Rat parse_rat(const std::string& s) { return Rat(s); }

}  // namespace

std::string sha256_file(const std::string& path) {
  std::string bytes = read_file(path);
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (!EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr))
    throw CorruptFixture("SHA-256 failed for " + path);
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[digest[i] >> 4];
    out += hex[digest[i] & 15];
  }
  return out;
}

const PaperData& PaperData::instance() {
  static PaperData data([] {
    if (const char* env = std::getenv("THMOON_DATA")) return std::string(env);
    return std::string(THMOON_DEFAULT_DATA_DIR);
  }());
  return data;
}

PaperData::PaperData(const std::string& dir) : dir_(dir) {
  verify_manifest();
  load_coeffs();
  load_decomps();
  load_frames();
  load_chars();
  load_table4();
  recipes_ = nlohmann::json::parse(read_file(dir_ + "/recipes.json"));
  rademacher_ = nlohmann::json::parse(read_file(dir_ + "/rademacher.json"));
  tsm_spec_ = nlohmann::json::parse(read_file(dir_ + "/tsm_spec.json"));
  prop45_ = nlohmann::json::parse(read_file(dir_ + "/prop45.json"));
  singular_parts_ = nlohmann::json::parse(read_file(dir_ + "/singular_parts.json"));
  for (auto& [fused, members] : recipes_["fused"].items())
    for (const auto& m : members) fused_alias_[m.get<std::string>()] = fused;
}

const std::string& PaperData::column_name(const std::string& cls) const {
  auto it = fused_alias_.find(cls);
  return it == fused_alias_.end() ? cls : it->second;
}

void PaperData::verify_manifest() const {
  auto manifest = nlohmann::json::parse(read_file(dir_ + "/manifest.json"));
  for (auto& [name, hash] : manifest.items()) {
    std::string actual = sha256_file(dir_ + "/" + name);
    if (actual != hash.get<std::string>())
      throw CorruptFixture("hash mismatch for " + name + ": " + actual);
  }
}

void PaperData::load_coeffs() {
  for_csv_rows(dir_ + "/coeffs.csv", [&](const std::vector<std::string>& row) {
    int r = row[2].empty() ? -1 : std::stoi(row[2]);
    long grade = std::stol(row[3]);
    auto key = std::make_tuple(row[0], row[1], r, grade);
    if (!coeffs_.emplace(key, Int(row[4])).second)
      throw CorruptFixture("duplicate coefficient cell " + row[0] + "/" +
                           row[1] + "/" + row[3]);
  });
}

void PaperData::load_decomps() {
  for_csv_rows(dir_ + "/decomps.csv", [&](const std::vector<std::string>& row) {
    long grade = std::stol(row[1]);
    std::size_t irrep = std::stoul(row[2]);
    auto& v = decomps_[{row[0], grade}];
    if (v.size() < irrep) v.resize(irrep, Int(0));
    v[irrep - 1] = Int(row[3]);
  });
}

void PaperData::load_frames() {
  for_csv_rows(dir_ + "/frame_shapes.csv", [&](const std::vector<std::string>& row) {
    frames_[row[0]].emplace_back(std::stol(row[1]), std::stol(row[2]));
  });
}

void PaperData::load_chars() {
  auto doc = nlohmann::json::parse(read_file(dir_ + "/char_table.json"));
  classes_ = doc["classes"].get<std::vector<std::string>>();
  for (std::size_t i = 0; i < classes_.size(); ++i) class_pos_[classes_[i]] = i;
  for (auto& [p, images] : doc["power_maps"].items()) {
    long prime = std::stol(p);
    auto vec = images.get<std::vector<std::string>>();
    for (std::size_t i = 0; i < vec.size(); ++i)
      power_maps_[{prime, classes_[i]}] = vec[i];
  }
  for (const auto& row : doc["values"]) {
    std::vector<Surd> vals;
    for (const auto& v : row)
      vals.push_back({parse_rat(v["re"].get<std::string>()),
                      parse_rat(v["surd"].get<std::string>()),
                      v["rad"].get<long>()});
    if (vals.size() != classes_.size())
      throw CorruptFixture("character row width mismatch");
    char_values_.push_back(std::move(vals));
  }
}

void PaperData::load_table4() {
  for_csv_rows(dir_ + "/borcherds_table4.csv", [&](const std::vector<std::string>& row) {
    ProductTableRow r;
    r.gamma = row[0];
    r.D0 = std::stol(row[1]);
    r.r0 = std::stol(row[2]);
    r.A = std::stol(row[3]);
    r.inv = row[4];
    r.nZ = row[5];
    if (!row[6].empty()) r.constant = Int(row[6]);
    table4_.push_back(std::move(r));
  });
}

std::optional<Int> PaperData::coeff(const std::string& family,
                                    const std::string& cls, int r,
                                    long grade) const {
  auto it = coeffs_.find(std::make_tuple(family, cls, r, grade));
  if (it == coeffs_.end()) return std::nullopt;
  return it->second;
}

std::vector<long> PaperData::grades(const std::string& family,
                                    const std::string& cls, int r) const {
  std::vector<long> out;
  for (const auto& [key, value] : coeffs_)
    if (std::get<0>(key) == family && std::get<1>(key) == cls &&
        std::get<2>(key) == r)
      out.push_back(std::get<3>(key));
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::string> PaperData::coeff_classes(const std::string& family) const {
  std::vector<std::string> out;
  for (const auto& [key, value] : coeffs_) {
    if (std::get<0>(key) != family) continue;
    const std::string& cls = std::get<1>(key);
    if (std::find(out.begin(), out.end(), cls) == out.end()) out.push_back(cls);
  }
  return out;
}

std::optional<std::vector<Int>> PaperData::decomposition(
    const std::string& family, long grade) const {
  auto it = decomps_.find({family, grade});
  if (it == decomps_.end()) return std::nullopt;
  return it->second;
}

std::vector<long> PaperData::decomposition_grades(const std::string& family) const {
  std::vector<long> out;
  for (const auto& [key, value] : decomps_)
    if (key.first == family) out.push_back(key.second);
  std::sort(out.begin(), out.end());
  return out;
}

const std::vector<std::pair<long, long>>& PaperData::frame_shape(
    const std::string& cls) const {
  auto it = frames_.find(column_name(cls));
  if (it == frames_.end()) throw CorruptFixture("no frame shape for " + cls);
  return it->second;
}

std::size_t PaperData::class_index(const std::string& cls) const {
  auto it = class_pos_.find(cls);
  if (it == class_pos_.end()) throw CorruptFixture("unknown class " + cls);
  return it->second;
}

const Surd& PaperData::char_value(std::size_t irrep,
                                  const std::string& cls) const {
  return char_values_.at(irrep - 1).at(class_index(cls));
}

const std::string& PaperData::power_map(long p, const std::string& cls) const {
  auto it = power_maps_.find({p, cls});
  if (it == power_maps_.end())
    throw CorruptFixture("no power map for p=" + std::to_string(p) + " at " + cls);
  return it->second;
}

long PaperData::element_order(const std::string& cls) const {
  // Leading digits of the class name give the element order.
  std::size_t i = 0;
  while (i < cls.size() && std::isdigit(static_cast<unsigned char>(cls[i]))) ++i;
  return std::stol(cls.substr(0, i));
}

const std::string& PaperData::power_class(const std::string& cls, long k) const {
  long order = element_order(cls);
  k %= order;
  if (k == 0) k = order;  // g^order = identity lands at 1A via the maps below
  const std::string* cur = &cls;
  // Peel prime factors of k through the stored prime power maps.
  long rem = k;
  for (long p : {2L, 3L, 5L, 7L, 13L, 19L, 31L}) {
    while (rem % p == 0) {
      cur = &power_map(p, *cur);
      rem /= p;
    }
  }
  // Leftover factors coprime to the element order are Galois powers:
  // they preserve the order and (by rationality of the modules) the
  // coefficient column, so they resolve to the class itself.
  if (rem != 1 && std::gcd(rem, element_order(*cur)) != 1)
    throw CorruptFixture("power " + std::to_string(k) +
                         " has a prime outside the stored maps");
  return *cur;
}

}  // namespace thmoon
