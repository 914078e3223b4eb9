#include <gtest/gtest.h>

#include "fewpal/known_words.hpp"
#include "fewpal/rauzy.hpp"
#include "oracles.hpp"

#include <fstream>

using namespace fewpal;

namespace {

std::set<Word> words_of(std::initializer_list<const char*> l) {
  std::set<Word> out;
  for (auto s : l) out.insert(Word::parse(s, 2));
  return out;
}

}  // namespace

TEST(Rauzy, BuildGraph) {
  const auto g = build_rauzy(words_of({"001", "010", "100"}));
  EXPECT_EQ(g.order, 3u);
  EXPECT_EQ(g.vertices, words_of({"00", "01", "10"}));
  EXPECT_EQ(g.source(Word::parse("001", 2)).str(), "00");
  EXPECT_EQ(g.target(Word::parse("001", 2)).str(), "01");
  EXPECT_EQ(g.to_text(), "001\n010\n100\n");
  EXPECT_THROW(build_rauzy(words_of({"001", "01"})), std::invalid_argument);
}

TEST(Rauzy, WeakVersusStrongComponents) {
  // a cycle 00 -> 01 -> 10 -> 00 plus a one-way arc 11 -> 10 via 110
  const auto g = build_rauzy(words_of({"001", "010", "100", "110"}));
  EXPECT_EQ(components(g, Connectivity::weak).size(), 1u);
  const auto strong = components(g, Connectivity::strong);
  ASSERT_EQ(strong.size(), 1u);  // the arc 110 lies on no cycle
  EXPECT_EQ(strong[0].arcs, words_of({"001", "010", "100"}));
}

TEST(Rauzy, SymmetryOrbits) {
  // two complementary cycles on disjoint vertices
  const auto g = build_rauzy(words_of({"0001", "0010", "0100", "1000", "1110", "1101", "1011", "0111"}));
  const auto comps = components(g, Connectivity::weak);
  ASSERT_EQ(comps.size(), 2u);
  const auto orb = symmetry_orbits(comps);
  EXPECT_EQ(orb.orbits.size(), 1u);
  EXPECT_EQ(orb.under_complement[0], std::optional<std::size_t>(1));
}

TEST(Rauzy, ComponentAvoiding) {
  const auto g = build_rauzy(words_of({"0001", "0010", "0100", "1000", "1110", "1101", "1011", "0111"}));
  const auto comps = components(g, Connectivity::strong);
  const auto i = component_avoiding(comps, Word::parse("11", 2));
  ASSERT_TRUE(i.has_value());
  EXPECT_EQ(comps[*i].arcs, words_of({"0001", "0010", "0100", "1000"}));
}

TEST(Rauzy, SurvivorSetMatchesBruteForce) {
  const auto c = survivor_constraints(parse_bound("7/3+"), 12);
  SurvivorOptions so;
  so.margin = 4;
  so.split_depth = 2;
  const auto r = survivor_set(c, 6, so);
  std::set<std::string> want;
  for (const auto& w : oracle::all_words(14, 2)) {
    if (oracle::free_of(w, 7, 3, true) && oracle::palindromes(w).size() <= 12) want.insert(w.substr(4, 6));
  }
  std::set<std::string> got;
  for (const auto& w : r.words) got.insert(w.str());
  EXPECT_EQ(got, want);
}

TEST(Rauzy, CheckpointResumeGivesSameSet) {
  const auto c = survivor_constraints(parse_bound("13/5"), 18);
  const std::string path = ::testing::TempDir() + "/survivors.ckpt";
  SurvivorOptions so;
  so.margin = 20;
  so.checkpoint = path;
  so.split_depth = 4;
  const auto full = survivor_set(c, 12, so);
  // keep only the first half of the checkpoint lines, then resume
  std::vector<std::string> lines;
  {
    std::ifstream in(path);
    std::string l;
    while (std::getline(in, l)) lines.push_back(l);
  }
  {
    std::ofstream out(path, std::ios::trunc);
    for (std::size_t i = 0; i < lines.size() / 2; ++i) out << lines[i] << '\n';
  }
  so.resume = true;
  const auto resumed = survivor_set(c, 12, so);
  EXPECT_EQ(resumed.words, full.words);
  EXPECT_GT(resumed.resumed_roots, 0u);
}

TEST(Rauzy, MuComponentAtOrderTwenty) {
  const auto c = survivor_constraints(parse_bound("13/5"), 18);
  SurvivorOptions so;
  so.margin = 46;
  const auto r = survivor_set(c, 20, so);
  const auto g = build_rauzy(r.words);
  const auto comps = components(g, Connectivity::weak);
  ASSERT_EQ(comps.size(), 4u);
  EXPECT_EQ(symmetry_orbits(comps).orbits.size(), 1u);
  const auto i = component_avoiding(comps, Word::parse("1101", 2));
  ASSERT_TRUE(i.has_value());
  const auto mu = known::mu_p_prefix(200'000);
  EXPECT_EQ(comps[*i].arcs, factors(mu, 20));
}
