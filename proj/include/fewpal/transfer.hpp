#pragma once

// Freeness transfer through synchronizing uniform morphisms: if h(w) is
// b-free for every a-free source word w with |w| <= t, then h maps every
// a-free word to a b-free word. Also bounds the palindromes of the image
// language.

#include <algorithm>
#include <atomic>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "fewpal/morphism.hpp"
#include "fewpal/rational.hpp"
#include "fewpal/repetition.hpp"
#include "fewpal/search.hpp"
#include "fewpal/word.hpp"

namespace fewpal {

struct TransferInstance {
  std::string id;
  Morphism h;
  ExponentBound source_bound;
  ExponentBound target_bound;
  std::size_t claimed_palindromes = 0;
};

// Raised when a hypothesis of the transfer lemma fails; names the hypothesis.
class HypothesisError : public std::invalid_argument {
 public:
  HypothesisError(std::string hypothesis, const std::string& detail)
      : std::invalid_argument("hypothesis \"" + hypothesis + "\" violated: " + detail),
        hypothesis_(std::move(hypothesis)) {}
  const std::string& hypothesis() const noexcept { return hypothesis_; }

 private:
  std::string hypothesis_;
};

// t = max(2b/(b-a), 2(q-1)(2b-1)/(q(b-1)))
inline Rational mrs_threshold(const Rational& a, const Rational& b, std::int64_t q) {
  if (!(Rational(1) < a && a < b)) throw HypothesisError("1 < a < b", "a = " + a.str() + ", b = " + b.str());
  if (q < 1) throw std::invalid_argument("q must be positive");
  Rational first = Rational(2) * b / (b - a);
  Rational second = Rational(2) * Rational(q - 1) * (Rational(2) * b - Rational(1)) / (Rational(q) * (b - Rational(1)));
  return max(first, second);
}

struct TransferReport {
  std::size_t q = 0;
  bool synchronizing = false;
  Rational threshold;
  std::size_t max_source_length = 0;
  std::vector<std::uint64_t> words_per_length;  // α-free source words checked, by length
  std::optional<Word> failing_source;
  std::optional<Violation> violation;

  bool passed() const { return !failing_source.has_value(); }
  std::uint64_t words_checked() const {
    std::uint64_t s = 0;
    for (auto c : words_per_length) s += c;
    return s;
  }
};

inline std::size_t to_size(const BigInt& v) { return v.convert_to<std::size_t>(); }

inline void check_hypotheses(const TransferInstance& inst) {
  const auto& a = inst.source_bound.threshold;
  const auto& b = inst.target_bound.threshold;
  if (!(Rational(1) < a && a < b)) throw HypothesisError("1 < a < b", "a = " + a.str() + ", b = " + b.str());
  if (!inst.h.uniform_length()) throw HypothesisError("uniform", inst.h.name() + " is not uniform");
  auto sync = inst.h.synchronizing();
  if (!sync.synchronizing()) {
    const auto& ce = *sync.counterexample;
    throw HypothesisError("synchronizing", inst.h.name() + "(" + std::to_string(ce.c) + ") occurs in " +
                                               inst.h.name() + "(" + std::to_string(ce.a) + std::to_string(ce.b) +
                                               ") at offset " + std::to_string(ce.offset));
  }
}

namespace detail {

// Source words of length split, by DFS, for partitioning the source tree.
inline SearchConstraints source_constraints(const TransferInstance& inst) {
  SearchConstraints c;
  c.alphabet_size = inst.h.source_alphabet();
  c.exponent = inst.source_bound;
  return c;
}

}  // namespace detail

inline TransferReport verify_transfer(const TransferInstance& inst, const SearchOptions& opt = {}) {
  check_hypotheses(inst);
  TransferReport rep;
  rep.q = *inst.h.uniform_length();
  rep.synchronizing = true;
  rep.threshold = mrs_threshold(inst.source_bound.threshold, inst.target_bound.threshold,
                                static_cast<std::int64_t>(rep.q));
  rep.max_source_length = to_size(rep.threshold.ceil());
  const std::size_t L = rep.max_source_length;
  rep.words_per_length.assign(L + 1, 0);
  rep.words_per_length[0] = 1;

  SearchConstraints c = detail::source_constraints(inst);
  const std::size_t split = std::min<std::size_t>(opt.split_depth, std::min<std::size_t>(L, 6));
  SplitRoots sr = split_roots(c, split);
  {
    ConstraintChecker ck(c);
    traverse(ck, split, [&](ConstraintChecker& k) {
      ++rep.words_per_length[k.size()];
      return Visit::go();
    });
  }
  struct Part {
    std::vector<std::uint64_t> counts;
    std::optional<Word> fail;
  };
  std::vector<Part> parts(sr.roots.size() + 1);
  std::atomic<bool> failed{false};

  // walks the subtree under `prefix`, checking image letters incrementally;
  // words shorter than `count_from` are not counted (counted above)
  auto walk = [&](const std::vector<Letter>& prefix, std::size_t count_from, Part& part) {
    part.counts.assign(L + 1, 0);
    LastPositionChecker img_check(inst.target_bound);
    std::vector<Letter> img;
    img.reserve((L + 1) * rep.q);
    auto push_image = [&](Letter a) {
      const Word& im = inst.h.image(a);
      for (std::size_t i = 0; i < im.size(); ++i) {
        img.push_back(im[i]);
        if (img_check.violation_at_end(img) != 0) return false;
      }
      return true;
    };
    ConstraintChecker ck(c);
    for (Letter a : prefix) {
      ck.try_push(a);
      if (!push_image(a)) {
        part.fail = Word(ck.letters(), c.alphabet_size);
        return;
      }
    }
    if (prefix.size() >= L) return;
    traverse(ck, L, [&](ConstraintChecker& k) {
      if (failed.load()) return Visit::halt();
      img.resize((k.size() - 1) * rep.q);
      if (k.size() >= count_from) ++part.counts[k.size()];
      if (!push_image(k.letters().back())) {
        part.fail = Word(k.letters(), c.alphabet_size);
        failed = true;
        return Visit::halt();
      }
      return Visit::go();
    });
  };

  // the tree above the split, then each subtree
  {
    // prefixes of length < split: check their images directly (they are few)
    ConstraintChecker ck(c);
    traverse(ck, split, [&](ConstraintChecker& k) {
      Word w(k.letters(), c.alphabet_size);
      if (!is_free(inst.h.apply(w), inst.target_bound).free()) {
        parts.back().fail = w;
        return Visit::halt();
      }
      return Visit::go();
    });
  }
  if (!parts.back().fail) {
    parallel_for(sr.roots.size(), opt.workers ? opt.workers : default_workers(),
                 [&](std::size_t i) { walk(sr.roots[i], split + 1, parts[i]); });
  }
  for (auto& p : parts) {
    for (std::size_t k = 0; k < p.counts.size(); ++k) rep.words_per_length[k] += p.counts[k];
  }
  // report the lexicographically least failing word among those found
  for (auto& p : parts) {
    if (p.fail && (!rep.failing_source || *p.fail < *rep.failing_source)) rep.failing_source = p.fail;
  }
  if (rep.failing_source) rep.violation = is_free(inst.h.apply(*rep.failing_source), inst.target_bound).violation;
  return rep;
}

struct PalindromeReport {
  std::size_t window = 0;                 // source length W
  std::size_t covered_length = 0;         // every image factor this long lies in h(w), |w| = W
  std::size_t longest = 0;                // longest palindrome found
  std::set<Word> palindromes;             // includes ε
  std::vector<std::size_t> windows_tried;
  bool cut_reached = false;               // no palindrome of length longest+1, longest+2 within coverage
  std::size_t claimed = 0;

  std::size_t count() const { return palindromes.size(); }
  bool within_budget() const { return count() <= claimed; }
  bool exact() const { return count() == claimed; }
};

// Palindromes of h(w) over all α-free w of length exactly W. Any factor of
// the image of an infinite α-free word of length ≤ (W-1)q + 1 lies inside
// h(w) for one of these w. The window grows by 2 until the longest
// palindrome found is at least 2 shorter than that coverage length.
inline PalindromeReport verify_palindrome_budget(const TransferInstance& inst, std::optional<std::size_t> window = {},
                                                 std::size_t cap = 64) {
  check_hypotheses(inst);
  const std::size_t q = *inst.h.uniform_length();
  const Rational t = mrs_threshold(inst.source_bound.threshold, inst.target_bound.threshold,
                                   static_cast<std::int64_t>(q));
  std::size_t W = window.value_or(to_size(t.ceil()) + 2);
  SearchConstraints c = detail::source_constraints(inst);
  PalindromeReport rep;
  rep.claimed = inst.claimed_palindromes;
  while (true) {
    rep.windows_tried.push_back(W);
    std::set<Word> pals;
    std::size_t longest = 0;
    ConstraintChecker ck(c);
    std::vector<Letter> img;
    traverse(ck, W, [&](ConstraintChecker& k) {
      if (k.size() < W) return Visit::go();
      img.clear();
      inst.h.apply_to(k.letters(), img);
      for (const auto& p : palindrome_set(img, inst.h.target_alphabet())) {
        longest = std::max(longest, p.size());
        pals.insert(p);
      }
      return Visit::skip();
    });
    rep.window = W;
    rep.covered_length = (W - 1) * q + 1;
    rep.longest = longest;
    rep.palindromes = std::move(pals);
    rep.cut_reached = longest + 2 <= rep.covered_length;
    if (rep.cut_reached || window || W + 2 > cap) break;
    W += 2;
  }
  return rep;
}

}  // namespace fewpal
