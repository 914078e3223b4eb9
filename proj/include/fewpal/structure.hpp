#pragma once

// Special factors, return words and critical exponents of uniformly
// recurrent words given as prefix generators. Every quantity read off a
// prefix is accepted only when the prefix of twice the length agrees.

#include <algorithm>
#include <array>
#include <bit>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "fewpal/known_words.hpp"
#include "fewpal/morphism.hpp"
#include "fewpal/rational.hpp"
#include "fewpal/suffix_array.hpp"
#include "fewpal/word.hpp"

namespace fewpal {

struct WordStream {
  std::string name;
  unsigned alphabet = 2;
  std::function<std::vector<Letter>(std::size_t)> prefix;

  // "p", "nu_p" or "mu_p"
  static WordStream named(const std::string& name) {
    known::stream_letters(name, 1);  // validates the name
    return {name, known::stream_alphabet(name), [name](std::size_t n) { return known::stream_letters(name, n); }};
  }

  static WordStream periodic(const Word& period) {
    if (period.empty()) throw std::invalid_argument("empty period");
    auto l = period.letters();
    return {"(" + period.str() + ")^w", period.alphabet_size(), [l](std::size_t n) {
              std::vector<Letter> out(n);
              for (std::size_t i = 0; i < n; ++i) out[i] = l[i % l.size()];
              return out;
            }};
  }
};

struct StabilizationPolicy {
  std::size_t initial = 10'000;
  std::size_t cap = 10'000'000;
};

class NotStabilized : public std::runtime_error {
 public:
  explicit NotStabilized(const std::string& what) : std::runtime_error(what + " did not stabilize below the prefix cap") {}
};

template <class T>
struct Stabilized {
  T value;
  std::size_t prefix_length = 0;  // L; the value at 2L agreed
};

// Evaluates f on prefixes L, 2L, 4L, ... until two consecutive values agree.
template <class F>
auto stabilize(const WordStream& s, const StabilizationPolicy& pol, const std::string& what, F&& f)
    -> Stabilized<decltype(f(std::vector<Letter>{}))> {
  std::size_t L = pol.initial;
  auto cur = f(s.prefix(L));
  while (2 * L <= pol.cap) {
    auto next = f(s.prefix(2 * L));
    if (next == cur) return {std::move(cur), L};
    cur = std::move(next);
    L *= 2;
  }
  throw NotStabilized(what);
}

namespace detail {

inline std::vector<std::size_t> occurrences(const std::vector<Letter>& text, const Word& w) {
  std::vector<std::size_t> out;
  const auto needle = w.letters();
  if (needle.empty()) {
    for (std::size_t i = 0; i <= text.size(); ++i) out.push_back(i);
    return out;
  }
  auto it = text.begin();
  std::boyer_moore_horspool_searcher searcher(needle.begin(), needle.end());
  while (true) {
    auto hit = std::search(it, text.end(), searcher);
    if (hit == text.end()) break;
    out.push_back(static_cast<std::size_t>(hit - text.begin()));
    it = hit + 1;
  }
  return out;
}

inline Word slice(const std::vector<Letter>& text, std::size_t pos, std::size_t len, unsigned alphabet) {
  return Word(std::span<const Letter>(text.data() + pos, len), alphabet);
}

}  // namespace detail

// Left, right and two-sided extensions of a factor; b = #B - #L - #R + 1.
struct ExtensionProfile {
  Word w;
  std::set<Letter> left;
  std::set<Letter> right;
  std::set<std::pair<Letter, Letter>> bi;

  int b() const {
    return static_cast<int>(bi.size()) - static_cast<int>(left.size()) - static_cast<int>(right.size()) + 1;
  }
  bool left_special() const { return left.size() >= 2; }
  bool right_special() const { return right.size() >= 2; }
  bool bispecial() const { return left_special() && right_special(); }
  bool ordinary() const { return b() == 0; }
  const char* kind() const { return b() == 0 ? "ordinary" : b() < 0 ? "weak" : "strong"; }

  friend bool operator==(const ExtensionProfile&, const ExtensionProfile&) = default;
};

inline ExtensionProfile extension_profile_in(const std::vector<Letter>& text, const Word& w) {
  ExtensionProfile e;
  e.w = w;
  const auto occ = detail::occurrences(text, w);
  if (occ.empty()) throw std::invalid_argument("factor " + w.str() + " does not occur in the prefix");
  for (std::size_t pos : occ) {
    const bool has_left = pos > 0;
    const bool has_right = pos + w.size() < text.size();
    if (has_left) e.left.insert(text[pos - 1]);
    if (has_right) e.right.insert(text[pos + w.size()]);
    if (has_left && has_right) e.bi.insert({text[pos - 1], text[pos + w.size()]});
  }
  return e;
}

inline Stabilized<ExtensionProfile> extension_profile(const Word& w, const WordStream& s,
                                                      const StabilizationPolicy& pol = {}) {
  return stabilize(s, pol, "extension profile of " + w.str(),
                   [&](const std::vector<Letter>& t) { return extension_profile_in(t, w); });
}

struct ReturnWordSet {
  Word base;
  std::set<Word> returns;
  std::size_t stabilized_at = 0;

  // shortest, ties broken lexicographically
  Word shortest() const {
    return *std::min_element(returns.begin(), returns.end(), [](const Word& a, const Word& b) {
      return a.size() != b.size() ? a.size() < b.size() : a < b;
    });
  }
};

inline std::set<Word> return_words_in(const std::vector<Letter>& text, const Word& w, unsigned alphabet) {
  const auto occ = detail::occurrences(text, w);
  if (occ.size() < 2) throw std::invalid_argument("factor " + w.str() + " occurs fewer than twice in the prefix");
  std::set<Word> out;
  for (std::size_t i = 0; i + 1 < occ.size(); ++i) out.insert(detail::slice(text, occ[i], occ[i + 1] - occ[i], alphabet));
  return out;
}

inline ReturnWordSet return_words(const Word& w, const WordStream& s, const StabilizationPolicy& pol = {}) {
  auto r = stabilize(s, pol, "return words of " + w.str(),
                     [&](const std::vector<Letter>& t) { return return_words_in(t, w, s.alphabet); });
  return {w, std::move(r.value), r.prefix_length};
}

inline Stabilized<std::vector<std::size_t>> complexity(const WordStream& s, std::size_t max_len,
                                                        const StabilizationPolicy& pol = {}) {
  return stabilize(s, pol, "factor complexity", [&](const std::vector<Letter>& t) {
    return factor_complexity(build_suffix_array(t), t.size(), max_len);
  });
}

// Number of distinct return words of every factor of length 1..max_len.
struct ReturnCountSummary {
  std::size_t factors = 0;
  std::size_t min_returns = 0;
  std::size_t max_returns = 0;
  std::optional<Word> first_outlier;  // a factor whose count differs from the most common count

  friend bool operator==(const ReturnCountSummary&, const ReturnCountSummary&) = default;
};

inline Stabilized<ReturnCountSummary> return_word_counts(const WordStream& s, std::size_t max_len,
                                                         const StabilizationPolicy& pol = {}) {
  return stabilize(s, pol, "return word counts", [&](const std::vector<Letter>& t) {
    const auto sa = build_suffix_array(t);
    const std::string_view text(reinterpret_cast<const char*>(t.data()), t.size());
    ReturnCountSummary out;
    std::map<std::size_t, std::size_t> histogram;
    std::vector<std::pair<std::size_t, Word>> counts;
    std::vector<std::uint32_t> pos;
    for (std::size_t n = 1; n <= max_len; ++n) {
      for_each_factor_class(sa, t.size(), n, [&](std::size_t b, std::size_t e) {
        pos.assign(sa.sa.begin() + static_cast<std::ptrdiff_t>(b), sa.sa.begin() + static_cast<std::ptrdiff_t>(e));
        std::sort(pos.begin(), pos.end());
        std::unordered_set<std::string_view> ret;
        for (std::size_t i = 0; i + 1 < pos.size(); ++i) ret.insert(text.substr(pos[i], pos[i + 1] - pos[i]));
        ++histogram[ret.size()];
        counts.push_back({ret.size(), detail::slice(t, pos[0], n, s.alphabet)});
      });
    }
    out.factors = counts.size();
    if (histogram.empty()) return out;
    out.min_returns = histogram.begin()->first;
    out.max_returns = histogram.rbegin()->first;
    const auto mode = std::max_element(histogram.begin(), histogram.end(), [](auto& a, auto& b) {
                        return a.second < b.second;
                      })->first;
    for (auto& [c, w] : counts) {
      if (c != mode) {
        out.first_outlier = w;
        break;
      }
    }
    return out;
  });
}

// A bispecial factor with its shortest return word.
struct BispecialEntry {
  ExtensionProfile profile;
  Word shortest_return;

  friend bool operator==(const BispecialEntry&, const BispecialEntry&) = default;
};

inline std::vector<BispecialEntry> bispecials_in(const std::vector<Letter>& t, std::size_t max_len, unsigned alphabet) {
  const auto sa = build_suffix_array(t);
  std::vector<BispecialEntry> out;
  std::vector<std::uint32_t> pos;
  for (std::size_t n = 0; n <= max_len; ++n) {
    for_each_factor_class(sa, t.size(), n, [&](std::size_t b, std::size_t e) {
      unsigned left = 0, right = 0;
      for (std::size_t k = b; k < e; ++k) {
        const std::size_t p = sa.sa[k];
        if (p > 0) left |= 1U << t[p - 1];
        if (p + n < t.size()) right |= 1U << t[p + n];
      }
      if (std::popcount(left) < 2 || std::popcount(right) < 2) return;
      BispecialEntry entry;
      entry.profile.w = detail::slice(t, sa.sa[b], n, alphabet);
      pos.assign(sa.sa.begin() + static_cast<std::ptrdiff_t>(b), sa.sa.begin() + static_cast<std::ptrdiff_t>(e));
      std::sort(pos.begin(), pos.end());
      for (std::size_t p : pos) {
        const bool hl = p > 0, hr = p + n < t.size();
        if (hl) entry.profile.left.insert(t[p - 1]);
        if (hr) entry.profile.right.insert(t[p + n]);
        if (hl && hr) entry.profile.bi.insert({t[p - 1], t[p + n]});
      }
      std::size_t best = 0;
      for (std::size_t i = 1; i < pos.size(); ++i) {
        const std::size_t gap = pos[i] - pos[i - 1], cur = pos[best] - (best ? pos[best - 1] : 0);
        if (best == 0 || gap < cur) {
          best = i;
        } else if (gap == cur) {
          Word a = detail::slice(t, pos[i - 1], gap, alphabet), c = detail::slice(t, pos[best - 1], cur, alphabet);
          if (a < c) best = i;
        }
      }
      if (best == 0) throw std::invalid_argument("bispecial " + entry.profile.w.str() + " occurs once in the prefix");
      entry.shortest_return = detail::slice(t, pos[best - 1], pos[best] - pos[best - 1], alphabet);
      out.push_back(std::move(entry));
    });
  }
  return out;
}

// All bispecial factors of length ≤ max_len, shortest first.
inline Stabilized<std::vector<BispecialEntry>> bispecial_enumerate(const WordStream& s, std::size_t max_len,
                                                                    const StabilizationPolicy& pol = {}) {
  return stabilize(s, pol, "bispecial factors",
                   [&](const std::vector<Letter>& t) { return bispecials_in(t, max_len, s.alphabet); });
}

// Families of bispecial factors of p and of its images under nu and mu,
// built from the closed forms, with the length of the shortest return word
// that the Parikh-equivalent forms predict.
enum class Family { A, B, C, D };

inline char family_tag(Family f) { return "ABCD"[static_cast<int>(f)]; }

struct FamilyMember {
  Family family = Family::A;
  std::size_t n = 0;
  Word word;
  std::size_t return_length = 0;
};

namespace detail {

struct PhiPowers {
  std::vector<Word> of0, of1;
  std::vector<std::size_t> len012, len01;  // |h(φ^k(012))|, |h(φ^k(01))|

  // words φ^k(0), φ^k(1) up to the first k with |φ^k(1)| > word_cap, plus two
  PhiPowers(std::size_t word_cap, const std::optional<Morphism>& h) {
    const Morphism phi = known::phi();
    Word a = Word::parse("0", 3), b = Word::parse("1", 3);
    std::size_t extra = 2;
    while (true) {
      of0.push_back(a);
      of1.push_back(b);
      if (b.size() > word_cap && extra-- == 0) break;
      a = phi.apply(a);
      b = phi.apply(b);
    }
    // lengths through Parikh vectors: φ maps (n0, n1, n2) to (n0 + n2, n0 + n1, n1)
    std::array<std::size_t, 3> l{1, 1, 1};
    if (h) l = {h->image(0).size(), h->image(1).size(), h->image(2).size()};
    std::array<std::size_t, 3> p012{1, 1, 1}, p01{1, 1, 0};
    for (std::size_t k = 0; k < of1.size() + 2; ++k) {
      len012.push_back(p012[0] * l[0] + p012[1] * l[1] + p012[2] * l[2]);
      len01.push_back(p01[0] * l[0] + p01[1] * l[1] + p01[2] * l[2]);
      p012 = {p012[0] + p012[2], p012[0] + p012[1], p012[1]};
      p01 = {p01[0] + p01[2], p01[0] + p01[1], p01[1]};
    }
  }
};

// The families of p.
inline Word p_family_word(const PhiPowers& ph, Family f, std::size_t n) {
  Word w(std::vector<Letter>{}, 3);
  const bool odd_ones = f == Family::B || f == Family::D;
  for (std::size_t k = 0; k <= n; ++k) w = w + ph.of1[2 * k + (odd_ones ? 1 : 0)];
  switch (f) {
    case Family::A:
      for (std::size_t k = n; k-- > 0;) w = w + ph.of0[2 * k + 1];
      break;
    case Family::B:
    case Family::C:
      for (std::size_t k = n + 1; k-- > 0;) w = w + ph.of0[2 * k];
      break;
    case Family::D:
      for (std::size_t k = n + 1; k-- > 0;) w = w + ph.of0[2 * k + 1];
      break;
  }
  return w;
}

inline std::size_t p_family_return(const PhiPowers& ph, Family f, std::size_t n) {
  switch (f) {
    case Family::A: return n == 0 ? 2 : ph.len012[2 * n - 1];
    case Family::B: return ph.len012[2 * n];
    case Family::C: return ph.len01[2 * n];
    case Family::D: return ph.len01[2 * n + 1];
  }
  return 0;
}

}  // namespace detail

// Members of the four families with word length ≤ max_len.
inline std::vector<FamilyMember> family_members(const std::string& name, std::size_t max_len) {
  std::optional<Morphism> h;
  if (name == "nu_p") h = known::nu();
  if (name == "mu_p") h = known::mu();
  if (!h && name != "p") throw std::invalid_argument("no bispecial families known for '" + name + "'");
  // a member of index n contains φ^{2n}(1), so it is longer than max_len
  // once that power is
  const detail::PhiPowers ph(max_len, h);
  const std::size_t k_max = (ph.of1.size() - 2) / 2;
  const Word pre1 = Word::parse("1", 2), suf0 = Word::parse("0", 2), suf01 = Word::parse("01", 2);
  const Word mu0 = Word::parse("011001", 2);
  std::vector<FamilyMember> out;
  for (Family f : {Family::A, Family::B, Family::C, Family::D}) {
    for (std::size_t n = 0; n <= k_max; ++n) {
      const Word w = detail::p_family_word(ph, f, n);
      FamilyMember m{f, n, w, detail::p_family_return(ph, f, n)};
      if (name == "nu_p") {
        const Word v = h->apply(w);
        switch (f) {
          case Family::A: m.word = pre1 + v + suf01; break;
          case Family::B: m.word = v + suf0; break;
          case Family::C: m.word = pre1 + v + suf0; break;
          case Family::D: m.word = v + suf01; break;
        }
        if (f == Family::A && n == 0) m.return_length = 3;  // 1001 returns after 100
      } else if (name == "mu_p") {
        if (f == Family::A && n == 0) continue;  // 100101 is one of the short bispecials
        const Word v = h->apply(w);
        switch (f) {
          case Family::A: m.word = v + suf01; break;
          case Family::B: m.word = mu0 + v; break;
          case Family::C: m.word = v; break;
          case Family::D: m.word = mu0 + v + suf01; break;
        }
      }
      if (m.word.size() > max_len) break;
      out.push_back(std::move(m));
    }
  }
  std::sort(out.begin(), out.end(), [](const FamilyMember& a, const FamilyMember& b) {
    return a.word.size() != b.word.size() ? a.word.size() < b.word.size() : a.word < b.word;
  });
  return out;
}

// Bispecials too short for the family description, with their shortest
// return words as catalogued for each word.
struct ShortBispecial {
  Word word;
  Word shortest_return;
};

inline std::vector<ShortBispecial> short_bispecials(const std::string& name) {
  auto mk = [](std::initializer_list<std::pair<const char*, const char*>> l, unsigned alphabet) {
    std::vector<ShortBispecial> out;
    for (auto [w, r] : l) out.push_back({Word::parse(w, alphabet), Word::parse(r, alphabet)});
    return out;
  };
  if (name == "p") return mk({{"", "0"}}, 3);
  if (name == "nu_p") return mk({{"", "0"}, {"0", "0"}, {"1", "1"}, {"01", "010"}, {"10", "10"}}, 2);
  if (name == "mu_p") {
    return mk({{"", "0"},
               {"0", "0"},
               {"1", "1"},
               {"01", "01"},
               {"10", "10"},
               {"010", "01"},
               {"1001", "1001"},
               {"011001", "0110"},
               {"100101", "10010"},
               {"01100101", "011001"}},
              2);
  }
  throw std::invalid_argument("no short bispecial catalogue for '" + name + "'");
}

struct ClassifiedBispecial {
  BispecialEntry entry;
  std::optional<FamilyMember> member;  // empty for the short ones
  bool in_short_catalogue = false;
  bool return_matches = false;  // measured shortest return agrees with the prediction

  bool matched() const { return member.has_value() || in_short_catalogue; }
};

struct FamilyReport {
  std::vector<ClassifiedBispecial> items;
  std::size_t stabilized_at = 0;

  bool all_ordinary() const {
    return std::all_of(items.begin(), items.end(), [](auto& c) { return c.entry.profile.ordinary(); });
  }
  bool all_matched() const {
    return std::all_of(items.begin(), items.end(), [](auto& c) { return c.matched(); });
  }
  bool all_returns_match() const {
    return std::all_of(items.begin(), items.end(), [](auto& c) { return c.return_matches; });
  }
};

inline FamilyReport classify_bispecials(const std::string& name, std::size_t max_len,
                                        const StabilizationPolicy& pol = {}) {
  const auto found = bispecial_enumerate(WordStream::named(name), max_len, pol);
  const auto members = family_members(name, max_len);
  const auto shorts = short_bispecials(name);
  FamilyReport rep;
  rep.stabilized_at = found.prefix_length;
  for (const auto& e : found.value) {
    ClassifiedBispecial c{e, std::nullopt, false, false};
    for (const auto& m : members) {
      if (m.word == e.profile.w) {
        c.member = m;
        c.return_matches = e.shortest_return.size() == m.return_length;
      }
    }
    // the empty word's return words are the letters, all of length one
    for (const auto& s : shorts) {
      if (s.word == e.profile.w) {
        c.in_short_catalogue = true;
        if (!c.member) c.return_matches = e.shortest_return.size() == s.shortest_return.size();
      }
    }
    rep.items.push_back(std::move(c));
  }
  return rep;
}

// E(u) = 1 + sup |w| / |shortest return to w| over bispecial factors w.
struct BispecialExponent {
  Rational exponent;
  Rational ratio;
  Word witness;
  Word shortest_return;
  std::size_t bispecials = 0;
  std::size_t stabilized_at = 0;
};

inline BispecialExponent critical_exponent_via_bispecials(const WordStream& s, std::size_t max_bs_len,
                                                          const StabilizationPolicy& pol = {}) {
  // contract: aperiodic (Morse-Hedlund: C(n+1) = C(n) for some n means
  // eventually periodic)
  {
    const auto t = s.prefix(pol.initial);
    const auto c = factor_complexity(build_suffix_array(t), t.size(), std::min<std::size_t>(64, t.size() / 4));
    for (std::size_t n = 1; n + 1 < c.size(); ++n) {
      if (c[n + 1] <= c[n]) throw std::invalid_argument(s.name + " looks eventually periodic; the bispecial formula needs an aperiodic word");
    }
  }
  const auto found = bispecial_enumerate(s, max_bs_len, pol);
  BispecialExponent out;
  out.bispecials = found.value.size();
  out.stabilized_at = found.prefix_length;
  bool have = false;
  for (const auto& e : found.value) {
    Rational r(static_cast<std::int64_t>(e.profile.w.size()), static_cast<std::int64_t>(e.shortest_return.size()));
    // ties: keep the shortest maximizer
    if (!have || out.ratio < r) {
      out.ratio = r;
      out.witness = e.profile.w;
      out.shortest_return = e.shortest_return;
      have = true;
    }
  }
  out.exponent = Rational(1) + out.ratio;
  return out;
}

}  // namespace fewpal
