#pragma once

// Finite words over alphabets of at most four letters, stored two bits per
// symbol, plus the elementary operations on them: factors, palindromes,
// reversal, bit complement and Parikh vectors.

#include <algorithm>
#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <istream>
#include <map>
#include <ostream>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace fewpal {

using Letter = std::uint8_t;

inline constexpr unsigned max_alphabet_size = 4;

class Word {
  static constexpr std::size_t per_block = 32;

 public:
  Word() = default;

  // alphabet == 0 infers the alphabet as {0, .., max(1, largest letter)}.
  explicit Word(std::span<const Letter> letters, unsigned alphabet = 0) {
    unsigned top = 1;
    for (Letter c : letters) {
      if (c >= max_alphabet_size) {
        throw std::invalid_argument("letter " + std::to_string(c) +
                                    " outside the four-letter range");
      }
      top = std::max<unsigned>(top, c);
    }
    alphabet_ = alphabet == 0 ? top + 1 : alphabet;
    if (alphabet_ > max_alphabet_size || (!letters.empty() && top >= alphabet_)) {
      throw std::invalid_argument("letter outside alphabet of size " +
                                  std::to_string(alphabet_));
    }
    blocks_.assign((letters.size() + per_block - 1) / per_block, 0);
    for (std::size_t i = 0; i < letters.size(); ++i) {
      blocks_[i / per_block] |= std::uint64_t{letters[i]} << shift(i);
    }
    size_ = letters.size();
  }

  Word(std::initializer_list<Letter> letters, unsigned alphabet = 0)
      : Word(std::span<const Letter>(letters.begin(), letters.size()), alphabet) {}

  // Plain-text form: letters as ASCII digits, e.g. "01210".
  static Word parse(std::string_view digits, unsigned alphabet = 0) {
    std::vector<Letter> letters;
    letters.reserve(digits.size());
    for (char ch : digits) {
      if (ch < '0' || ch > '3') {
        throw std::invalid_argument("invalid letter '" + std::string(1, ch) +
                                    "' in word");
      }
      letters.push_back(static_cast<Letter>(ch - '0'));
    }
    return Word(letters, alphabet);
  }

  std::size_t size() const noexcept { return size_; }
  bool empty() const noexcept { return size_ == 0; }
  unsigned alphabet_size() const noexcept { return alphabet_; }

  Letter operator[](std::size_t i) const noexcept {
    return static_cast<Letter>((blocks_[i / per_block] >> shift(i)) & 3U);
  }

  Letter at(std::size_t i) const {
    if (i >= size_) throw std::out_of_range("word index out of range");
    return (*this)[i];
  }

  std::vector<Letter> letters() const {
    std::vector<Letter> out(size_);
    for (std::size_t i = 0; i < size_; ++i) out[i] = (*this)[i];
    return out;
  }

  std::string str() const {
    std::string out(size_, '0');
    for (std::size_t i = 0; i < size_; ++i) out[i] = static_cast<char>('0' + (*this)[i]);
    return out;
  }

  Word substr(std::size_t pos, std::size_t len) const {
    if (pos > size_) throw std::out_of_range("factor start beyond word end");
    len = std::min(len, size_ - pos);
    std::vector<Letter> out(len);
    for (std::size_t i = 0; i < len; ++i) out[i] = (*this)[pos + i];
    return Word(out, alphabet_);
  }

  Word prefix(std::size_t len) const { return substr(0, len); }
  Word suffix(std::size_t len) const {
    return substr(size_ - std::min(len, size_), len);
  }

  Word with_alphabet(unsigned alphabet) const { return Word(letters(), alphabet); }

  friend Word operator+(const Word& a, const Word& b) {
    auto out = a.letters();
    auto tail = b.letters();
    out.insert(out.end(), tail.begin(), tail.end());
    return Word(out, std::max(a.alphabet_, b.alphabet_));
  }

  // Equality and ordering look at the symbols only; the alphabet is metadata.
  friend bool operator==(const Word& a, const Word& b) noexcept {
    return a.size_ == b.size_ && a.blocks_ == b.blocks_;
  }

  // Lexicographic order with a proper prefix sorting first.
  friend std::strong_ordering operator<=>(const Word& a, const Word& b) noexcept {
    const std::size_t common = std::min(a.size_, b.size_);
    const std::size_t full = common / per_block;
    for (std::size_t k = 0; k <= full && k < a.blocks_.size() && k < b.blocks_.size(); ++k) {
      std::uint64_t x = a.blocks_[k];
      std::uint64_t y = b.blocks_[k];
      if (k == full) {
        const std::size_t rest = common - full * per_block;
        if (rest == 0) break;
        const std::uint64_t mask = ~std::uint64_t{0} << (64 - 2 * rest);
        x &= mask;
        y &= mask;
      }
      if (x != y) return x <=> y;
    }
    return a.size_ <=> b.size_;
  }

  std::size_t hash() const noexcept {
    std::size_t h = size_ * 0x9e3779b97f4a7c15ULL;
    for (std::uint64_t b : blocks_) h = (h ^ b) * 0x100000001b3ULL + (h >> 29);
    return h;
  }

 private:
  static constexpr unsigned shift(std::size_t i) noexcept {
    return static_cast<unsigned>(62 - 2 * (i % per_block));
  }

  std::vector<std::uint64_t> blocks_;
  std::size_t size_ = 0;
  unsigned alphabet_ = 2;
};

inline std::ostream& operator<<(std::ostream& os, const Word& w) {
  return os << (w.empty() ? std::string("ε") : w.str());
}

struct WordHash {
  std::size_t operator()(const Word& w) const noexcept { return w.hash(); }
};

inline Word word(std::string_view digits, unsigned alphabet = 0) {
  return Word::parse(digits, alphabet);
}

inline Word power(const Word& w, std::size_t k) {
  std::vector<Letter> out;
  auto base = w.letters();
  for (std::size_t i = 0; i < k; ++i) out.insert(out.end(), base.begin(), base.end());
  return Word(out, w.alphabet_size());
}

inline Word reverse(const Word& w) {
  auto l = w.letters();
  std::reverse(l.begin(), l.end());
  return Word(l, w.alphabet_size());
}

inline Word complement(const Word& w) {
  if (w.alphabet_size() != 2) {
    throw std::invalid_argument("bit complement needs a binary alphabet, got size " +
                                std::to_string(w.alphabet_size()));
  }
  auto l = w.letters();
  for (auto& c : l) c ^= 1U;
  return Word(l, 2);
}

inline bool is_palindrome(const Word& w) {
  for (std::size_t i = 0, j = w.size(); i + 1 < j; ++i, --j) {
    if (w[i] != w[j - 1]) return false;
  }
  return true;
}

inline bool is_factor(const Word& needle, std::span<const Letter> hay) {
  if (needle.size() > hay.size()) return false;
  auto n = needle.letters();
  return std::search(hay.begin(), hay.end(), n.begin(), n.end()) != hay.end();
}

inline bool is_factor(const Word& needle, const Word& hay) {
  auto h = hay.letters();
  return is_factor(needle, std::span<const Letter>(h));
}

// ---------------------------------------------------------------------------
// Parikh vectors

struct ParikhVector {
  std::vector<std::uint64_t> counts;

  std::uint64_t total() const {
    std::uint64_t s = 0;
    for (auto c : counts) s += c;
    return s;
  }

  friend ParikhVector operator+(ParikhVector a, const ParikhVector& b) {
    if (a.counts.size() < b.counts.size()) a.counts.resize(b.counts.size(), 0);
    for (std::size_t i = 0; i < b.counts.size(); ++i) a.counts[i] += b.counts[i];
    return a;
  }

  friend bool operator==(const ParikhVector&, const ParikhVector&) = default;
};

inline ParikhVector parikh(const Word& w, unsigned alphabet = 0) {
  ParikhVector v;
  v.counts.assign(alphabet == 0 ? w.alphabet_size() : alphabet, 0);
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (w[i] >= v.counts.size()) throw std::invalid_argument("letter outside Parikh alphabet");
    ++v.counts[w[i]];
  }
  return v;
}

// ---------------------------------------------------------------------------
// Factors

namespace detail {

inline std::string as_bytes(const Word& w) {
  std::string s(w.size(), '\0');
  for (std::size_t i = 0; i < w.size(); ++i) s[i] = static_cast<char>(w[i]);
  return s;
}

inline Word from_bytes(std::string_view s, unsigned alphabet) {
  std::vector<Letter> l(s.begin(), s.end());
  return Word(l, alphabet);
}

}  // namespace detail

// All distinct length-n factors of w, in lexicographic order.
inline std::set<Word> factors(const Word& w, std::size_t n) {
  std::set<Word> out;
  if (n > w.size()) return out;
  const std::string s = detail::as_bytes(w);
  std::unordered_set<std::string_view> seen;
  std::string_view view(s);
  for (std::size_t i = 0; i + n <= s.size(); ++i) seen.insert(view.substr(i, n));
  for (auto f : seen) out.insert(detail::from_bytes(f, w.alphabet_size()));
  return out;
}

inline std::set<Word> factors(std::span<const Letter> w, std::size_t n, unsigned alphabet) {
  std::set<Word> out;
  if (n > w.size()) return out;
  std::string_view view(reinterpret_cast<const char*>(w.data()), w.size());
  std::unordered_set<std::string_view> seen;
  for (std::size_t i = 0; i + n <= w.size(); ++i) seen.insert(view.substr(i, n));
  for (auto f : seen) out.insert(detail::from_bytes(f, alphabet));
  return out;
}

// Factors grouped by length, built from one or more source words.
class FactorSet {
 public:
  FactorSet() = default;

  void add_source(const Word& w, std::size_t max_len) {
    for (std::size_t n = 0; n <= std::min(max_len, w.size()); ++n) {
      auto f = factors(w, n);
      by_length_[n].insert(f.begin(), f.end());
    }
  }

  const std::set<Word>& of_length(std::size_t n) const {
    static const std::set<Word> none;
    auto it = by_length_.find(n);
    return it == by_length_.end() ? none : it->second;
  }

  bool contains(const Word& w) const { return of_length(w.size()).count(w) > 0; }

  const std::map<std::size_t, std::set<Word>>& by_length() const { return by_length_; }

 private:
  std::map<std::size_t, std::set<Word>> by_length_;
};

// ---------------------------------------------------------------------------
// Palindromes

// Direct scanner: expands around every centre and records each palindromic
// factor once. Always contains the empty word.
inline std::set<Word> palindrome_set(std::span<const Letter> w, unsigned alphabet) {
  std::string_view view(reinterpret_cast<const char*>(w.data()), w.size());
  std::unordered_set<std::string_view> seen;
  seen.insert(std::string_view{});
  const std::size_t n = w.size();
  for (std::size_t centre = 0; centre < 2 * n; ++centre) {
    // centre 2i is letter i, centre 2i+1 is the gap after letter i
    std::size_t lo = centre / 2;
    std::size_t hi = lo + (centre % 2);
    if (centre % 2 == 1 && hi >= n) break;
    if (centre % 2 == 0) {
      seen.insert(view.substr(lo, 1));
      if (lo == 0 || hi + 1 >= n) continue;
      --lo;
      ++hi;
    }
    while (w[lo] == w[hi]) {
      seen.insert(view.substr(lo, hi - lo + 1));
      if (lo == 0 || hi + 1 >= n) break;
      --lo;
      ++hi;
    }
  }
  std::set<Word> out;
  for (auto p : seen) out.insert(detail::from_bytes(p, alphabet));
  return out;
}

inline std::set<Word> palindrome_set(const Word& w) {
  auto l = w.letters();
  return palindrome_set(std::span<const Letter>(l), w.alphabet_size());
}

// Palindromic tree (eertree) supporting push and pop of the last letter.
// Every push creates at most one new palindrome node, so pop only has to
// undo the most recent node.
class PalindromeTree {
 public:
  PalindromeTree() { clear(); }

  void clear() {
    nodes_.clear();
    text_.clear();
    history_.clear();
    nodes_.push_back(Node{-1, 0});  // imaginary root
    nodes_.push_back(Node{0, 0});   // empty palindrome
    last_ = 1;
  }

  // Returns true when the new letter created a new distinct palindrome.
  bool push(Letter c) {
    text_.push_back(c);
    const std::size_t i = text_.size() - 1;
    std::uint32_t cur = find_extendable(last_, i, c);
    std::uint32_t existing = nodes_[cur].next[c];
    if (existing != 0) {
      history_.push_back(Step{last_, 0, 0});
      last_ = existing;
      return false;
    }
    Node fresh{nodes_[cur].len + 2, 1};
    if (fresh.len > 1) {
      std::uint32_t link_from = find_extendable(nodes_[cur].link, i, c);
      fresh.link = nodes_[link_from].next[c];
    }
    nodes_.push_back(fresh);
    const auto id = static_cast<std::uint32_t>(nodes_.size() - 1);
    nodes_[cur].next[c] = id;
    history_.push_back(Step{last_, cur + 1, c});
    last_ = id;
    return true;
  }

  void pop() {
    Step s = history_.back();
    history_.pop_back();
    if (s.parent_plus_one != 0) {
      nodes_[s.parent_plus_one - 1].next[s.letter] = 0;
      nodes_.pop_back();
    }
    last_ = s.prev_last;
    text_.pop_back();
  }

  // Number of distinct palindromic factors, the empty word included.
  std::size_t distinct_count() const noexcept { return nodes_.size() - 1; }
  std::size_t size() const noexcept { return text_.size(); }
  std::size_t longest_suffix_palindrome() const noexcept {
    return static_cast<std::size_t>(nodes_[last_].len);
  }

 private:
  struct Node {
    int len;
    std::uint32_t link;
    std::uint32_t next[max_alphabet_size] = {0, 0, 0, 0};
  };
  struct Step {
    std::uint32_t prev_last;
    std::uint32_t parent_plus_one;
    Letter letter;
  };

  std::uint32_t find_extendable(std::uint32_t v, std::size_t i, Letter c) const {
    while (true) {
      const int len = nodes_[v].len;
      const auto j = static_cast<std::ptrdiff_t>(i) - 1 - len;
      if (j >= 0 && text_[static_cast<std::size_t>(j)] == c) return v;
      if (len == -1) return v;
      v = nodes_[v].link;
    }
  }

  std::vector<Node> nodes_;
  std::vector<Letter> text_;
  std::vector<Step> history_;
  std::uint32_t last_ = 1;
};

inline std::size_t palindrome_count(std::span<const Letter> w) {
  PalindromeTree t;
  for (Letter c : w) t.push(c);
  return t.distinct_count();
}

// Text format: one word per line as ASCII digits; blank lines and lines
// starting with '#' are skipped. "-" alone stands for the empty word.
inline std::vector<Word> read_words(std::istream& in, unsigned alphabet = 0) {
  std::vector<Word> out;
  std::string line;
  while (std::getline(in, line)) {
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    out.push_back(line == "-" ? Word() : Word::parse(line, alphabet));
  }
  return out;
}

inline void write_words(std::ostream& out, const std::vector<Word>& ws) {
  for (const auto& w : ws) out << (w.empty() ? "-" : w.str()) << '\n';
}

}  // namespace fewpal

template <>
struct std::hash<fewpal::Word> {
  std::size_t operator()(const fewpal::Word& w) const noexcept { return w.hash(); }
};
