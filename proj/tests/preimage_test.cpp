#include <gtest/gtest.h>

#include "fewpal/known_words.hpp"
#include "fewpal/preimage.hpp"

#include <fstream>

using namespace fewpal;

namespace {

PreimageProblem problem(bool mu) {
  return {mu ? known::mu() : known::nu(), mu ? known::forbidden_mu_image() : known::forbidden_nu_image(),
          parse_bound("3"), {}};
}

}  // namespace

TEST(Preimage, ForbiddenSetsMatchDataFiles) {
  auto read = [](const std::string& name) {
    std::ifstream in(std::string(FEWPAL_DATA_DIR) + "/forbidden/" + name + ".txt");
    return read_words(in);
  };
  auto strs = [](const std::vector<Word>& ws) {
    std::vector<std::string> out;
    for (const auto& w : ws) out.push_back(w.str());
    return out;
  };
  EXPECT_EQ(strs(read("F")), strs(known::forbidden_ternary()));
  EXPECT_EQ(strs(read("F18")), strs(known::forbidden_mu_image()));
  EXPECT_EQ(strs(read("F20")), strs(known::forbidden_nu_image()));
}

TEST(Preimage, ImmediateRefutation) {
  // a short target refuted from the image set alone
  const auto r = prove_preimage_forbidden(problem(true), Word::parse("00", 3));
  ASSERT_TRUE(r.proof.has_value());
  EXPECT_TRUE(r.proof->replay(problem(true)));
}

TEST(Preimage, SequencesCompleteAndReplay) {
  for (bool mu : {true, false}) {
    const auto prob = problem(mu);
    const auto order = mu ? known::forbidden_order_mu() : known::forbidden_order_nu();
    const auto sp = prove_sequence(prob, order);
    ASSERT_TRUE(sp.complete());
    ASSERT_EQ(sp.steps.size(), 10u);
    PreimageProblem at = prob;
    for (std::size_t i = 0; i < order.size(); ++i) {
      std::string why;
      EXPECT_TRUE(sp.steps[i].proof->replay(at, &why)) << why;
      at.known_forbidden.push_back(order[i]);
    }
  }
}

TEST(Preimage, ProofReplayRejectsMissingLemma) {
  const auto prob = problem(true);
  const auto order = known::forbidden_order_mu();
  const auto sp = prove_sequence(prob, order);
  ASSERT_TRUE(sp.complete());
  // some later step must lean on an earlier refutation
  bool some_rejected = false;
  for (std::size_t i = 1; i < order.size(); ++i) {
    if (!sp.steps[i].proof->replay(prob)) some_rejected = true;
  }
  EXPECT_TRUE(some_rejected);
}

TEST(Preimage, FactorOfFixedPointCannotBeRefuted) {
  // 01 occurs in p, so no proof can exist
  const auto r = prove_preimage_forbidden(problem(true), Word::parse("01", 3), 20'000);
  EXPECT_FALSE(r.proof.has_value());
}
