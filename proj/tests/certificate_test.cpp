#include <gtest/gtest.h>

#include "fewpal/tasks.hpp"

using namespace fewpal;

TEST(Certificate, JsonRoundTrip) {
  Certificate c;
  c.command = "growth";
  c.params = {{"budget", 11}};
  c.outcome = Outcome::pass;
  c.summary = "ok";
  c.evidence = {{"counts", {1, 2, 4}}};
  c.seconds = 1.5;
  c.nodes = 42;
  const auto back = Certificate::from_json(Json::parse(c.dump()));
  EXPECT_EQ(back.command, "growth");
  EXPECT_EQ(back.params, c.params);
  EXPECT_TRUE(same_evidence(c, back));
  EXPECT_EQ(back.nodes, 42u);
}

TEST(Certificate, RejectsForeignSchemaAndVersion) {
  EXPECT_THROW(Certificate::from_json(Json{{"schema", "other"}}), std::invalid_argument);
  Json j = Certificate{}.to_json();
  j["version"] = 99;
  EXPECT_THROW(Certificate::from_json(j), std::invalid_argument);
}

TEST(Certificate, OutcomeCombination) {
  EXPECT_EQ(combine(Outcome::pass, Outcome::inconclusive), Outcome::inconclusive);
  EXPECT_EQ(combine(Outcome::inconclusive, Outcome::fail), Outcome::fail);
  EXPECT_EQ(exit_code(Outcome::pass), 0);
  EXPECT_EQ(exit_code(Outcome::fail), 1);
  EXPECT_EQ(exit_code(Outcome::inconclusive), 2);
}

TEST(Certificate, TimingIgnoredByReplayComparison) {
  Certificate a, b;
  a.evidence = b.evidence = {{"x", 1}};
  a.outcome = b.outcome = Outcome::pass;
  a.seconds = 1;
  b.seconds = 2;
  EXPECT_TRUE(same_evidence(a, b));
  b.evidence["x"] = 2;
  EXPECT_FALSE(same_evidence(a, b));
}

TEST(Tasks, ReplayReproducesEvidence) {
  const std::vector<std::pair<std::string, Json>> runs{
      {"verify-morphism", transfer_params("thm3d")},
      {"optimality", {{"budget", 8}, {"exp", ""}}},
      {"growth", {{"budget", 11}, {"n", 40}}},
      {"exponent", {{"word", "nu_p"}, {"method", "closed-form"}}},
      {"table1", {{"p", 9}, {"beta", "inf"}}}};
  for (const auto& [cmd, p] : runs) {
    const Certificate c = run_command(cmd, p);
    const Certificate r = replay(Certificate::from_json(Json::parse(c.dump())));
    EXPECT_TRUE(same_evidence(c, r)) << cmd;
  }
}

TEST(Tasks, Table1Classification) {
  EXPECT_EQ(classify_cell(15, "8/3").label, "thm3d");
  EXPECT_EQ(classify_cell(18, "28/11").label, "7a");
  EXPECT_EQ(classify_cell(20, "5/2").label, "7b");
  EXPECT_EQ(classify_cell(9, "inf").kind, "red");
  EXPECT_EQ(classify_cell(std::nullopt, "2").label, "thue-morse");
  EXPECT_EQ(classify_cell(11, "10/3").label, "thm3a");
  EXPECT_EQ(classify_cell(12, "10/3").label, "thm3a");  // dominated
  EXPECT_EQ(classify_cell(17, "28/11").kind, "empty");
  EXPECT_EQ(classify_cell(8, "inf").kind, "empty");
  EXPECT_EQ(classify_cell(12, "11/4").kind, "unclassified");
}

TEST(Tasks, UnclassifiedCellIsInconclusive) {
  const auto c = run_table1({{"p", 12}, {"beta", "11/4"}});
  EXPECT_EQ(c.outcome, Outcome::inconclusive);
  EXPECT_EQ(c.evidence["classification"], "unclassified");
}

TEST(Tasks, EmptyCellSearches) {
  const auto c = run_table1({{"p", 8}, {"beta", "inf"}});
  EXPECT_EQ(c.outcome, Outcome::pass);
  EXPECT_EQ(c.evidence["parts"][0]["evidence"]["result"], "exhausted");
}

TEST(Tasks, MemoryCapMakesPrefixWorkInconclusive) {
  Limits lim;
  lim.prefix_cap = 1000;
  const auto c = run_structure({{"word", "nu_p"}, {"report", "palindromes"}}, lim);
  EXPECT_EQ(c.outcome, Outcome::inconclusive);
  const auto e = run_exponent({{"word", "nu_p"}, {"method", "prefix"}}, lim);
  EXPECT_EQ(e.outcome, Outcome::inconclusive);
}

TEST(Tasks, NodeCapMakesSearchInconclusive) {
  Limits lim;
  lim.node_cap = 500;
  const auto c = run_optimality({{"budget", 14}, {"exp", "3"}, {"depth_cap", 400}}, lim);
  EXPECT_EQ(c.outcome, Outcome::inconclusive);
}
