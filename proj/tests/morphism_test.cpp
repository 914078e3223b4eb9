#include <gtest/gtest.h>

#include <sstream>

#include "fewpal/known_words.hpp"
#include "fewpal/morphism.hpp"
#include "oracles.hpp"

using namespace fewpal;

TEST(Morphism, ApplyMatchesOracle) {
  const auto mu = known::mu();
  const std::string w = "0120210";
  EXPECT_EQ(mu.apply(Word::parse(w, 3)).str(), oracle::apply({"011001", "1001", "0"}, w));
  EXPECT_EQ(known::phi().apply_n(Word::parse("0", 3), 4).str(), oracle::p_prefix(12));
}

TEST(Morphism, FixedPointOfPhi) {
  const auto p = known::phi().fixed_point_prefix(0, 1000);
  EXPECT_EQ(p.str(), oracle::p_prefix(1000));
}

TEST(Morphism, ImagePrefixes) {
  const std::string p = oracle::p_prefix(500);
  EXPECT_EQ(known::nu_p_prefix(600).str(), oracle::apply({"011", "0", "01"}, p).substr(0, 600));
  EXPECT_EQ(known::mu_p_prefix(600).str(), oracle::apply({"011001", "1001", "0"}, p).substr(0, 600));
}

TEST(Morphism, ParseTextFormat) {
  std::istringstream in("# a 3-uniform test\n0 -> 001\n1 -> 101\n");
  const auto m = Morphism::parse("t", in);
  EXPECT_EQ(m.uniform_length(), 3u);
  EXPECT_EQ(m.image(1).str(), "101");
  std::istringstream bad("0 -> 001\n0 -> 101\n");
  EXPECT_THROW(Morphism::parse("bad", bad), std::invalid_argument);
}

TEST(Morphism, UniformAndSynchronizing) {
  for (const auto& d : known::transfer_instances()) {
    EXPECT_TRUE(d.morphism.uniform_length().has_value()) << d.id;
    EXPECT_TRUE(d.morphism.synchronizing().synchronizing()) << d.id;
  }
  // 0 -> 01, 1 -> 10: h(c) = 10 sits inside h(00) = 0101 at offset 1
  const Morphism tm("tm", {Word::parse("01", 2), Word::parse("10", 2)});
  EXPECT_FALSE(tm.synchronizing().synchronizing());
  EXPECT_THROW(known::phi().synchronizing(), std::logic_error);
}

TEST(Morphism, Injectivity) {
  EXPECT_TRUE(known::mu().injective());
  EXPECT_TRUE(known::nu().injective());
  const Morphism code("c", {Word::parse("0", 2), Word::parse("01", 2), Word::parse("10", 2)});
  EXPECT_FALSE(code.injective());  // 0·10 = 01·0
}

TEST(Morphism, IncidenceAndCharacteristicPolynomial) {
  const auto m = known::phi().incidence_matrix();
  const auto poly = characteristic_polynomial(m);
  // x^3 - 2x^2 + x - 1
  ASSERT_EQ(poly.size(), 4u);
  EXPECT_EQ(poly, (std::vector<std::int64_t>{1, -2, 1, -1}));
}

TEST(Morphism, DataFilesMatchBuiltins) {
  for (const auto& d : known::transfer_instances()) {
    const auto m = Morphism::load(d.id, std::string(FEWPAL_DATA_DIR) + "/morphisms/" + d.id + ".txt");
    EXPECT_EQ(m.images(), d.morphism.images()) << d.id;
  }
}
