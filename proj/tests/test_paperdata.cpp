#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <fstream>

#include "thmoon/paperdata.hpp"

using namespace thmoon;

TEST_CASE("manifest verifies and tables load") {
  const PaperData& pd = PaperData::instance();
  CHECK(pd.classes().size() == 48);
  CHECK(pd.irrep_count() == 48);
}

TEST_CASE("coefficient fixture anchors") {
  const PaperData& pd = PaperData::instance();
  CHECK(pd.coeff("whalf3C", "2A", -1, 4) == Int(384));
  CHECK(pd.coeff("w03C", "3B", -1, 2) == Int(5));
  CHECK(pd.coeff("w0PT", "1A", -1, 1) == Int(496));
  CHECK(pd.coeff("whalf3C", "1A", -1, -3) == Int(3));
  CHECK(pd.coeff("whalf3C", "1A", -1, 1) == Int(-744));
  CHECK_FALSE(pd.coeff("whalf3C", "1A", -1, 2).has_value());
  CHECK_FALSE(pd.coeff("nosuch", "1A", -1, 1).has_value());
}

TEST_CASE("grades and classes enumerate printed cells") {
  const PaperData& pd = PaperData::instance();
  auto g = pd.grades("w03C", "1A", -1);
  CHECK(g.front() == -1);
  CHECK(g.back() >= 89);
  CHECK(pd.coeff_classes("w03C").size() == 48);
  CHECK(pd.coeff_classes("whalf3C").size() == 48);
}

TEST_CASE("weight half tables are plus-space supported") {
  const PaperData& pd = PaperData::instance();
  for (long d : pd.grades("whalf3C", "1A", -1)) {
    long m4 = ((d % 4) + 4) % 4;
    CHECK((m4 == 0 || m4 == 1));
  }
  // D = -3 column is constantly 3.
  for (const auto& cls : pd.coeff_classes("whalf3C"))
    CHECK(pd.coeff("whalf3C", cls, -1, -3) == Int(3));
}

TEST_CASE("decomposition anchors") {
  const PaperData& pd = PaperData::instance();
  auto d8 = pd.decomposition("w03C", 8);
  REQUIRE(d8.has_value());
  CHECK((*d8)[0] == 1);
  CHECK((*d8)[2] == 1);
  CHECK((*d8)[5] == 1);
  Int total = 0;
  for (const auto& m : *d8) total += m;
  CHECK(total == 3);
  auto gm1 = pd.decomposition("w03C", -1);
  REQUIRE(gm1.has_value());
  CHECK((*gm1)[0] == 1);
}

TEST_CASE("frame shapes") {
  const PaperData& pd = PaperData::instance();
  auto& f1a = pd.frame_shape("1A");
  REQUIRE(f1a.size() == 1);
  CHECK(f1a[0] == std::pair<long, long>(1, 248));
  // Frame shape degree sums to 248 for every class.
  for (const auto& cls : pd.classes()) {
    long deg = 0;
    for (auto [b, v] : pd.frame_shape(cls)) deg += b * v;
    CHECK(deg == 248);
  }
}

TEST_CASE("character table basics and power maps") {
  const PaperData& pd = PaperData::instance();
  for (const auto& cls : pd.classes()) {
    const Surd& v = pd.char_value(1, cls);
    CHECK(v.re == 1);
    CHECK(v.co == 0);
  }
  CHECK(pd.char_value(2, "1A").re == 248);
  CHECK(pd.power_map(2, "2A") == "1A");
  CHECK(pd.power_map(2, "4A") == "2A");
  CHECK(pd.power_class("6A", 2) == pd.power_map(2, "6A"));
  CHECK(pd.power_class("6A", 6) == "1A");
  CHECK(pd.power_class("6A", 7) == "6A");
  CHECK(pd.element_order("36C") == 36);
}

TEST_CASE("product table rows") {
  const PaperData& pd = PaperData::instance();
  REQUIRE(pd.product_table().size() > 10);
  const auto& first = pd.product_table()[0];
  CHECK(first.D0 == -3);
  bool found744 = false;
  for (const auto& row : pd.product_table())
    if (row.constant && *row.constant == 744) found744 = true;
  CHECK(found744);
}

TEST_CASE("corruption is detected") {
  // Copy the data directory, flip one byte, expect a hash failure.
  std::string src = PaperData::instance().dir();
  std::string tmp = "/tmp/thmoon_corrupt_data";
  std::system(("rm -rf " + tmp + " && cp -r " + src + " " + tmp).c_str());
  {
    std::ofstream f(tmp + "/coeffs.csv", std::ios::app);
    f << "w03C,1A,,999,12345\n";
  }
  CHECK_THROWS_AS(PaperData pd(tmp), CorruptFixture);
  std::system(("rm -rf " + tmp).c_str());
}
