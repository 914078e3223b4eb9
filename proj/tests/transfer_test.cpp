#include <gtest/gtest.h>

#include "fewpal/known_words.hpp"
#include "fewpal/transfer.hpp"
#include "oracles.hpp"

using namespace fewpal;

namespace {

TransferInstance instance(const std::string& id) {
  for (const auto& d : known::transfer_instances()) {
    if (d.id == id) return {d.id, d.morphism, d.source, d.target, d.palindromes};
  }
  throw std::invalid_argument(id);
}

}  // namespace

TEST(Transfer, ThresholdFormula) {
  // max(2b/(b-a), 2(q-1)(2b-1)/(q(b-1)))
  EXPECT_EQ(mrs_threshold(Rational(7, 3), Rational(8, 3), 3), Rational(16));
  EXPECT_EQ(mrs_threshold(Rational(7, 3), Rational(13, 5), 72), Rational(39, 2));
  EXPECT_THROW(mrs_threshold(Rational(3), Rational(2), 3), HypothesisError);
}

TEST(Transfer, SmallInstancePassesWithExactPalindromes) {
  const auto inst = instance("thm3d");
  const auto tr = verify_transfer(inst);
  EXPECT_TRUE(tr.passed());
  EXPECT_EQ(tr.q, 3u);
  EXPECT_EQ(tr.threshold, Rational(16));
  EXPECT_EQ(tr.max_source_length, 16u);
  const auto pr = verify_palindrome_budget(inst);
  EXPECT_TRUE(pr.cut_reached);
  EXPECT_EQ(pr.count(), 15u);
  EXPECT_TRUE(pr.exact());
}

TEST(Transfer, PalindromeCensusMatchesOracle) {
  // union of palindromes over images of all 7/3+-free binary words of the window
  const auto inst = instance("thm3c");
  const auto pr = verify_palindrome_budget(inst);
  std::set<std::string> want;
  for (const auto& w : oracle::all_words(pr.window, 2)) {
    if (!oracle::free_of(w, 7, 3, true)) continue;
    for (const auto& p : oracle::palindromes(oracle::apply({"0001011", "1001011"}, w))) want.insert(p);
  }
  std::set<std::string> got;
  for (const auto& p : pr.palindromes) got.insert(p.str());
  EXPECT_EQ(got, want);
  EXPECT_EQ(pr.count(), 13u);
}

TEST(Transfer, NonSynchronizingIsRejectedByName) {
  TransferInstance inst{"tm", Morphism("tm", {Word::parse("01", 2), Word::parse("10", 2)}), parse_bound("7/3+"),
                        parse_bound("3+"), 10};
  try {
    verify_transfer(inst);
    FAIL() << "expected a hypothesis error";
  } catch (const HypothesisError& e) {
    EXPECT_EQ(e.hypothesis(), "synchronizing");
  }
}

TEST(Transfer, TamperedImageFails) {
  auto inst = instance("thm3d");
  inst.h = Morphism("bad", {Word::parse("000", 2), Word::parse("101", 2)});
  // not synchronizing either way: report failure rather than pass
  bool failed = false;
  try {
    failed = !verify_transfer(inst).passed();
  } catch (const HypothesisError&) {
    failed = true;
  }
  EXPECT_TRUE(failed);
}

TEST(Transfer, TooWeakTargetFindsViolation) {
  auto inst = instance("thm3d");
  inst.target_bound = parse_bound("5/2+");
  bool failed = false;
  try {
    const auto tr = verify_transfer(inst);
    failed = !tr.passed();
    if (failed) {
      ASSERT_TRUE(tr.violation.has_value());
      EXPECT_TRUE(inst.target_bound.forbids(tr.violation->exponent));
    }
  } catch (const HypothesisError&) {
    failed = true;
  }
  EXPECT_TRUE(failed);
}
