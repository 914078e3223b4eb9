// Randomized properties across modules.

#include <gtest/gtest.h>

#include <random>

#include "fewpal/fewpal.hpp"
#include "oracles.hpp"

using namespace fewpal;

namespace {

std::string random_word(std::mt19937& rng, std::size_t n, unsigned k) {
  std::string s;
  for (std::size_t i = 0; i < n; ++i) s += char('0' + rng() % k);
  return s;
}

}  // namespace

TEST(Property, ReversalPreservesPalindromesAndExponent) {
  std::mt19937 rng(21);
  for (int t = 0; t < 200; ++t) {
    const Word w = Word::parse(random_word(rng, 1 + rng() % 40, 2), 2);
    EXPECT_EQ(palindrome_set(w).size(), palindrome_set(reverse(w)).size());
    EXPECT_EQ(critical_exponent(w), critical_exponent(reverse(w)));
    EXPECT_EQ(critical_exponent(w), critical_exponent(complement(w)));
  }
}

TEST(Property, PalindromeCountAtMostLengthPlusOne) {
  std::mt19937 rng(22);
  for (int t = 0; t < 200; ++t) {
    const Word w = Word::parse(random_word(rng, rng() % 60, 3), 3);
    EXPECT_LE(palindrome_set(w).size(), w.size() + 1);
  }
}

TEST(Property, FreenessIsFactorClosed) {
  std::mt19937 rng(23);
  const auto b = parse_bound("5/2+");
  for (int t = 0; t < 100; ++t) {
    const Word w = Word::parse(random_word(rng, 30, 2), 2);
    if (!is_free(w, b).free()) continue;
    for (std::size_t i = 0; i < w.size(); i += 3) EXPECT_TRUE(is_free(w.substr(i, 11), b).free());
  }
}

TEST(Property, ExponentBoundMonotone) {
  std::mt19937 rng(24);
  for (int t = 0; t < 200; ++t) {
    const Word w = Word::parse(random_word(rng, 25, 2), 2);
    // 7/3+-free implies 5/2+-free implies 3-free
    if (is_free(w, parse_bound("7/3+")).free()) {
      EXPECT_TRUE(is_free(w, parse_bound("5/2+")).free());
    }
    if (is_free(w, parse_bound("5/2+")).free()) {
      EXPECT_TRUE(is_free(w, parse_bound("3")).free());
    }
  }
}

TEST(Property, MorphismIsAHomomorphism) {
  std::mt19937 rng(25);
  for (const auto& d : known::transfer_instances()) {
    const unsigned k = static_cast<unsigned>(d.morphism.images().size());
    const Word u = Word::parse(random_word(rng, 5, k), k), v = Word::parse(random_word(rng, 4, k), k);
    EXPECT_EQ(d.morphism.apply(u + v), d.morphism.apply(u) + d.morphism.apply(v)) << d.id;
  }
}

TEST(Property, CountsMonotoneInBudget) {
  std::uint64_t prev = 0;
  for (std::size_t budget = 8; budget <= 14; ++budget) {
    SearchConstraints c;
    c.palindrome_budget = budget;
    const auto counts = count_words(c, 24);
    EXPECT_GE(counts[24], prev);
    prev = counts[24];
  }
}

TEST(Property, SearchWitnessesSatisfyConstraints) {
  std::mt19937 rng(26);
  for (int t = 0; t < 10; ++t) {
    SearchConstraints c;
    c.palindrome_budget = 10 + rng() % 8;
    c.exponent = parse_bound(t % 2 ? "3" : "8/3+");
    const auto r = search(c, 40);
    if (auto* w = std::get_if<Reached>(&r)) {
      const auto l = w->witness.letters();
      EXPECT_TRUE(satisfies(c, l)) << c.describe();
      EXPECT_EQ(w->witness.size(), 40u);
    }
  }
}

TEST(Property, SurvivorsAreFactorsOfLongerSurvivors) {
  // every survivor of length l extends to a survivor of length l + 1
  const auto c = survivor_constraints(parse_bound("7/3+"), 12);
  SurvivorOptions so;
  so.margin = 6;
  so.split_depth = 3;
  const auto s8 = survivor_set(c, 8, so);
  so.margin = 6;
  const auto s9 = survivor_set(c, 9, so);
  std::set<Word> pre;
  for (const auto& w : s9.words) pre.insert(w.prefix(8));
  for (const auto& w : pre) EXPECT_TRUE(s8.words.count(w)) << w.str();
}

TEST(Property, StreamPrefixesAreConsistent) {
  for (const char* name : {"p", "nu_p", "mu_p"}) {
    const auto a = known::stream_letters(name, 1000), b = known::stream_letters(name, 3000);
    EXPECT_TRUE(std::equal(a.begin(), a.end(), b.begin())) << name;
  }
}

TEST(Property, TransferImagesOfRandomFreeWordsRespectTargets) {
  std::mt19937 rng(27);
  for (const auto& d : known::transfer_instances()) {
    SearchConstraints c;
    c.alphabet_size = static_cast<unsigned>(d.morphism.images().size());
    c.exponent = d.source;
    // random free source word by randomized greedy extension
    ConstraintChecker ck(c);
    for (int step = 0; step < 400 && ck.size() < 60; ++step) {
      const auto x = static_cast<Letter>(rng() % c.alphabet_size);
      if (!ck.try_push(x) && ck.size() > 0 && rng() % 4 == 0) ck.pop();
    }
    const Word img = d.morphism.apply(Word(ck.letters(), c.alphabet_size));
    EXPECT_TRUE(is_free(img, d.target).free()) << d.id;
    EXPECT_LE(palindrome_set(img).size(), d.palindromes) << d.id;
  }
}
