#include <gtest/gtest.h>

#include <random>

#include "fewpal/known_words.hpp"
#include "fewpal/repetition.hpp"
#include "oracles.hpp"

using namespace fewpal;

TEST(Repetition, SmallestPeriod) {
  auto per = [](const char* s) {
    auto l = Word::parse(s).letters();
    return smallest_period(l);
  };
  EXPECT_EQ(per("0101010"), 2u);
  EXPECT_EQ(per("0010010"), 3u);
  EXPECT_EQ(per("0112"), 4u);
}

TEST(Repetition, ExponentOf) {
  auto [e, p] = exponent_of(Word::parse("0110110", 2));
  EXPECT_EQ(e, Rational(7, 3));
  EXPECT_EQ(p.str(), "011");
}

TEST(Repetition, MaxRepetitionMatchesOracle) {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    std::string s;
    const int n = 1 + static_cast<int>(rng() % 30);
    for (int i = 0; i < n; ++i) s += char('0' + rng() % 2);
    const auto [num, den] = oracle::max_exponent(s);
    ASSERT_EQ(critical_exponent(Word::parse(s, 2)), Rational(static_cast<std::int64_t>(num), static_cast<std::int64_t>(den))) << s;
  }
}

TEST(Repetition, IsFreeMatchesOracle) {
  std::mt19937 rng(5);
  const std::vector<std::tuple<const char*, std::size_t, std::size_t, bool>> bounds{
      {"2", 2, 1, false}, {"7/3+", 7, 3, true}, {"5/2+", 5, 2, true}, {"3", 3, 1, false}};
  for (int trial = 0; trial < 300; ++trial) {
    std::string s;
    const int n = 1 + static_cast<int>(rng() % 25);
    for (int i = 0; i < n; ++i) s += char('0' + rng() % 2);
    for (const auto& [text, num, den, strict] : bounds) {
      const auto r = is_free(Word::parse(s, 2), parse_bound(text));
      ASSERT_EQ(r.free(), oracle::free_of(s, num, den, strict)) << s << " " << text;
      if (!r.free()) {
        EXPECT_TRUE(parse_bound(text).forbids(r.violation->exponent));
        EXPECT_EQ(s.substr(r.violation->start, r.violation->factor.size()), r.violation->factor.str());
      }
    }
  }
}

TEST(Repetition, ThueMorseIsOverlapFree) {
  std::vector<Letter> tm(2048);
  for (std::size_t i = 0; i < tm.size(); ++i) tm[i] = static_cast<Letter>(std::popcount(i) & 1);
  EXPECT_TRUE(is_free(std::span<const Letter>(tm), parse_bound("2+"), 2).free());
  EXPECT_EQ(critical_exponent(std::span<const Letter>(tm)), Rational(2));
}

TEST(Repetition, LastPositionChecker) {
  // grow random 7/3+-free words; the checker must agree with a full check
  LastPositionChecker ck(parse_bound("7/3+"));
  std::mt19937 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<Letter> w;
    std::string s;
    for (int step = 0; step < 200 && w.size() < 50; ++step) {
      const Letter c = static_cast<Letter>(rng() % 2);
      w.push_back(c);
      s += char('0' + c);
      const bool full = oracle::free_of(s, 7, 3, true);
      ASSERT_EQ(ck.violation_at_end(w) == 0, full) << s;
      if (!full) {
        w.pop_back();
        s.pop_back();
      }
    }
  }
}

TEST(Repetition, KnownCriticalExponentsOnPrefixes) {
  const auto nu = known::stream_letters("nu_p", 20'000);
  const auto mu = known::stream_letters("mu_p", 20'000);
  EXPECT_EQ(critical_exponent(std::span<const Letter>(nu)), Rational(5, 2));
  EXPECT_EQ(critical_exponent(std::span<const Letter>(mu)), Rational(28, 11));
}
