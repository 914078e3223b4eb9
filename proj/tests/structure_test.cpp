#include <gtest/gtest.h>

#include <random>

#include "fewpal/known_words.hpp"
#include "fewpal/structure.hpp"
#include "oracles.hpp"

using namespace fewpal;

namespace {

std::vector<Letter> letters(const std::string& s) {
  std::vector<Letter> out;
  for (char c : s) out.push_back(static_cast<Letter>(c - '0'));
  return out;
}

std::string str(const std::vector<Letter>& l) {
  std::string s;
  for (Letter c : l) s += char('0' + c);
  return s;
}

}  // namespace

TEST(SuffixArray, SortedAndLcpMatchesNaive) {
  std::mt19937 rng(9);
  for (int trial = 0; trial < 50; ++trial) {
    std::string s;
    const int n = 1 + static_cast<int>(rng() % 60);
    for (int i = 0; i < n; ++i) s += char('0' + rng() % 3);
    const auto sa = build_suffix_array(letters(s));
    for (std::size_t i = 1; i < sa.sa.size(); ++i) {
      const auto a = s.substr(sa.sa[i - 1]), b = s.substr(sa.sa[i]);
      ASSERT_LT(a, b);
      std::size_t l = 0;
      while (l < a.size() && l < b.size() && a[l] == b[l]) ++l;
      ASSERT_EQ(sa.lcp[i], l);
    }
  }
}

TEST(SuffixArray, ComplexityMatchesNaive) {
  const std::string s = oracle::p_prefix(2000);
  const auto c = factor_complexity(build_suffix_array(letters(s)), s.size(), 40);
  for (std::size_t n = 0; n <= 40; ++n) EXPECT_EQ(c[n], oracle::factors(s, n).size()) << n;
}

TEST(Structure, ComplexityOfP) {
  const auto c = complexity(WordStream::named("p"), 500);
  for (std::size_t n = 0; n <= 500; ++n) ASSERT_EQ(c.value[n], 2 * n + 1) << n;
}

TEST(Structure, ExtensionProfileMatchesNaive) {
  const std::string s = oracle::p_prefix(20'000);
  const auto t = letters(s);
  for (const char* w : {"", "1", "10", "101", "0102"}) {
    const auto prof = extension_profile_in(t, Word::parse(w, 3));
    std::set<std::pair<Letter, Letter>> bi;
    const std::string ws = w;
    for (std::size_t i = 1; i + ws.size() + 1 <= s.size(); ++i) {
      if (s.compare(i, ws.size(), ws) == 0) {
        bi.insert({static_cast<Letter>(s[i - 1] - '0'), static_cast<Letter>(s[i + ws.size()] - '0')});
      }
    }
    EXPECT_EQ(prof.bi, bi) << w;
  }
}

TEST(Structure, ReturnWordsOfP) {
  const auto s = WordStream::named("p");
  auto strs = [](const ReturnWordSet& r) {
    std::set<std::string> out;
    for (const auto& w : r.returns) out.insert(w.str());
    return out;
  };
  EXPECT_EQ(strs(return_words(Word::parse("1", 3), s)), (std::set<std::string>{"10", "102", "12"}));
  EXPECT_EQ(strs(return_words(Word::parse("10", 3), s)), (std::set<std::string>{"10", "1012", "102"}));
}

TEST(Structure, ReturnWordsMatchNaive) {
  const std::string s = oracle::p_prefix(5000);
  const std::string w = "0102";
  std::set<std::string> want;
  std::size_t last = s.find(w);
  for (std::size_t i = s.find(w, last + 1); i != std::string::npos; i = s.find(w, i + 1)) {
    want.insert(s.substr(last, i - last));
    last = i;
  }
  std::set<std::string> got;
  for (const auto& r : return_words_in(letters(s), Word::parse(w, 3), 3)) got.insert(r.str());
  EXPECT_EQ(got, want);
}

TEST(Structure, BispecialsOfPMatchNaive) {
  const std::string s = oracle::p_prefix(20'000);
  const auto found = bispecials_in(letters(s), 30, 3);
  std::set<std::string> want;
  for (std::size_t n = 0; n <= 30; ++n) {
    for (const auto& f : oracle::factors(s.substr(1, s.size() - 2), n)) {
      std::set<char> l, r;
      for (std::size_t i = s.find(f, 1); i != std::string::npos && i + n < s.size(); i = s.find(f, i + 1)) {
        if (i == 0) continue;
        l.insert(s[i - 1]);
        r.insert(s[i + n]);
      }
      if (l.size() >= 2 && r.size() >= 2) want.insert(f);
    }
  }
  std::set<std::string> got;
  for (const auto& e : found) got.insert(e.profile.w.str());
  EXPECT_EQ(got, want);
}

TEST(Structure, FamiliesOfP) {
  const auto rep = classify_bispecials("p", 200);
  EXPECT_EQ(rep.items.size(), 17u);
  EXPECT_TRUE(rep.all_ordinary());
  EXPECT_TRUE(rep.all_matched());
  EXPECT_TRUE(rep.all_returns_match());
}

TEST(Structure, FamilyWordsAreBispecialInTheImages) {
  for (const char* name : {"nu_p", "mu_p"}) {
    const auto rep = classify_bispecials(name, 300);
    EXPECT_TRUE(rep.all_matched()) << name;
    EXPECT_TRUE(rep.all_returns_match()) << name;
  }
}

TEST(Structure, BispecialExponents) {
  const auto nu = critical_exponent_via_bispecials(WordStream::named("nu_p"), 500);
  EXPECT_EQ(nu.exponent, Rational(5, 2));
  EXPECT_EQ(nu.witness.str(), "100110");
  const auto mu = critical_exponent_via_bispecials(WordStream::named("mu_p"), 500);
  EXPECT_EQ(mu.exponent, Rational(28, 11));
  EXPECT_EQ(mu.witness.str(), "01100101001011001");
  EXPECT_EQ(mu.shortest_return.size(), 11u);
}

TEST(Structure, PeriodicStreamRejectedByBispecialFormula) {
  EXPECT_THROW(critical_exponent_via_bispecials(WordStream::periodic(Word::parse("01", 2)), 20),
               std::invalid_argument);
}

TEST(Structure, StabilizationFailsBelowCap) {
  // counts keep changing: the number of distinct factors of length 12 in
  // prefixes of p grows until every factor has appeared
  StabilizationPolicy pol{16, 64};
  EXPECT_THROW(complexity(WordStream::named("p"), 12, pol), NotStabilized);
}

TEST(Structure, PeriodicStream) {
  const auto s = WordStream::periodic(Word::parse("001011", 2));
  EXPECT_EQ(str(s.prefix(9)), "001011001");
}
