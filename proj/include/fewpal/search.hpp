#pragma once

// Backtracking over words satisfying prefix-monotone constraints: an
// exponent bound, a palindrome budget and a set of forbidden factors.
// Constraints are checked incrementally at the last letter only.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <queue>
#include <set>
#include <shared_mutex>
#include <string>
#include <thread>
#include <unordered_set>
#include <variant>
#include <vector>

#include "fewpal/rational.hpp"
#include "fewpal/repetition.hpp"
#include "fewpal/word.hpp"

namespace fewpal {

// Multi-pattern matcher over the trie of forbidden words.
class AhoCorasick {
 public:
  AhoCorasick() = default;

  AhoCorasick(const std::vector<Word>& patterns, unsigned alphabet) : alphabet_(alphabet) {
    nodes_.emplace_back();
    for (const auto& p : patterns) {
      if (p.empty()) throw std::invalid_argument("forbidden factor must be non-empty");
      std::uint32_t v = 0;
      for (std::size_t i = 0; i < p.size(); ++i) {
        if (p[i] >= alphabet_) throw std::invalid_argument("forbidden factor " + p.str() + " outside alphabet");
        if (nodes_[v].next[p[i]] == none) {
          nodes_[v].next[p[i]] = static_cast<std::uint32_t>(nodes_.size());
          nodes_.emplace_back();
        }
        v = nodes_[v].next[p[i]];
      }
      nodes_[v].terminal = true;
    }
    // breadth-first completion of the goto function
    std::queue<std::uint32_t> q;
    for (unsigned c = 0; c < alphabet_; ++c) {
      auto& t = nodes_[0].next[c];
      if (t == none) {
        t = 0;
      } else {
        nodes_[t].link = 0;
        q.push(t);
      }
    }
    while (!q.empty()) {
      auto v = q.front();
      q.pop();
      nodes_[v].terminal = nodes_[v].terminal || nodes_[nodes_[v].link].terminal;
      for (unsigned c = 0; c < alphabet_; ++c) {
        auto t = nodes_[v].next[c];
        if (t == none) {
          nodes_[v].next[c] = nodes_[nodes_[v].link].next[c];
        } else {
          nodes_[t].link = nodes_[nodes_[v].link].next[c];
          q.push(t);
        }
      }
    }
  }

  std::uint32_t step(std::uint32_t state, Letter c) const noexcept { return nodes_[state].next[c]; }
  bool terminal(std::uint32_t state) const noexcept { return nodes_[state].terminal; }
  bool empty() const noexcept { return nodes_.size() <= 1; }

 private:
  static constexpr std::uint32_t none = UINT32_MAX;
  struct Node {
    std::uint32_t next[max_alphabet_size] = {none, none, none, none};
    std::uint32_t link = 0;
    bool terminal = false;
  };
  std::vector<Node> nodes_;
  unsigned alphabet_ = 2;
};

struct SearchConstraints {
  unsigned alphabet_size = 2;
  std::optional<ExponentBound> exponent;
  std::optional<std::size_t> palindrome_budget;
  std::vector<Word> forbidden;
  bool fix_first_letter = false;  // symmetry reduction, opt-in

  std::string describe() const {
    std::string s = "alphabet=" + std::to_string(alphabet_size);
    if (exponent) s += " exp=" + exponent->str();
    if (palindrome_budget) s += " pal<=" + std::to_string(*palindrome_budget);
    if (!forbidden.empty()) {
      s += " avoid={";
      for (std::size_t i = 0; i < forbidden.size(); ++i) s += (i ? "," : "") + forbidden[i].str();
      s += "}";
    }
    if (fix_first_letter) s += " first=0";
    return s;
  }

  // True when the constraint set is invariant under exchanging 0 and 1.
  bool complement_closed() const {
    if (alphabet_size != 2) return false;
    std::set<Word> f(forbidden.begin(), forbidden.end());
    for (const auto& w : forbidden) {
      if (!f.count(complement(w.with_alphabet(2)))) return false;
    }
    return true;
  }
};

// Incrementally maintained word with constraint state per position.
class ConstraintChecker {
 public:
  explicit ConstraintChecker(const SearchConstraints& c)
      : constraints_(c),
        matcher_(c.forbidden, c.alphabet_size),
        use_matcher_(!c.forbidden.empty()) {
    if (c.alphabet_size < 1 || c.alphabet_size > max_alphabet_size) {
      throw std::invalid_argument("alphabet size must be in 1..4");
    }
    if (c.exponent) rep_ = LastPositionChecker(*c.exponent);
    states_.push_back(0);
  }

  const SearchConstraints& constraints() const noexcept { return constraints_; }
  std::size_t size() const noexcept { return word_.size(); }
  const std::vector<Letter>& letters() const noexcept { return word_; }
  std::size_t palindromes() const noexcept { return pal_.distinct_count(); }

  bool try_push(Letter c) {
    std::uint32_t st = 0;
    if (use_matcher_) {
      st = matcher_.step(states_.back(), c);
      if (matcher_.terminal(st)) return false;
    }
    word_.push_back(c);
    if (constraints_.exponent && rep_.violation_at_end(word_) != 0) {
      word_.pop_back();
      return false;
    }
    if (constraints_.palindrome_budget) {
      pal_.push(c);
      if (pal_.distinct_count() > *constraints_.palindrome_budget) {
        pal_.pop();
        word_.pop_back();
        return false;
      }
    }
    states_.push_back(st);
    return true;
  }

  void pop() {
    if (constraints_.palindrome_budget) pal_.pop();
    states_.pop_back();
    word_.pop_back();
  }

  bool push_all(std::span<const Letter> w) {
    for (std::size_t i = 0; i < w.size(); ++i) {
      if (!try_push(w[i])) {
        for (std::size_t j = 0; j < i; ++j) pop();
        return false;
      }
    }
    return true;
  }

  void reset() {
    while (!word_.empty()) pop();
  }

 private:
  SearchConstraints constraints_;
  AhoCorasick matcher_;
  bool use_matcher_;
  LastPositionChecker rep_;
  PalindromeTree pal_;
  std::vector<Letter> word_;
  std::vector<std::uint32_t> states_;
};

// Does the whole word satisfy the constraints? Non-incremental reference.
inline bool satisfies(const SearchConstraints& c, std::span<const Letter> w) {
  for (Letter x : w) {
    if (x >= c.alphabet_size) return false;
  }
  if (c.exponent && !is_free(w, *c.exponent, c.alphabet_size).free()) return false;
  if (c.palindrome_budget && palindrome_set(w, c.alphabet_size).size() > *c.palindrome_budget) return false;
  for (const auto& f : c.forbidden) {
    if (is_factor(f, w)) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Depth-first traversal

struct Visit {
  enum Kind { descend, prune, stop, unwind } kind = descend;
  std::size_t depth = 0;  // for unwind: the ancestor depth whose subtree is finished

  static Visit go() { return {descend, 0}; }
  static Visit skip() { return {prune, 0}; }
  static Visit halt() { return {stop, 0}; }
  static Visit finish(std::size_t d) { return {unwind, d}; }
};

// Visits every word extending the checker's current contents (the root) in
// lexicographic order, up to max_depth letters. visit(checker) is called
// after each successful push. Returns false when stopped by the visitor.
template <class Visitor>
bool traverse(ConstraintChecker& ck, std::size_t max_depth, Visitor&& visit) {
  const std::size_t root = ck.size();
  if (root >= max_depth) return true;
  const unsigned d = ck.constraints().alphabet_size;
  std::vector<unsigned> next(max_depth + 1, 0);
  std::size_t depth = root;
  auto limit = [&](std::size_t pos) -> unsigned {
    return (pos == 0 && ck.constraints().fix_first_letter) ? 1U : d;
  };
  while (true) {
    if (next[depth] >= limit(depth)) {
      if (depth == root) return true;
      ck.pop();
      --depth;
      continue;
    }
    const auto c = static_cast<Letter>(next[depth]++);
    if (!ck.try_push(c)) continue;
    Visit v = visit(ck);
    switch (v.kind) {
      case Visit::descend:
        if (depth + 1 < max_depth) {
          ++depth;
          next[depth] = 0;
          continue;
        }
        ck.pop();
        break;
      case Visit::prune:
        ck.pop();
        break;
      case Visit::stop:
        return false;
      case Visit::unwind: {
        const std::size_t keep = std::max(v.depth, root + 1) - 1;
        while (ck.size() > keep) ck.pop();
        depth = keep;
        break;
      }
    }
  }
}

// ---------------------------------------------------------------------------
// Worker pool

inline unsigned default_workers() {
  if (const char* env = std::getenv("FEWPAL_WORKERS")) {
    int n = std::atoi(env);
    if (n > 0) return static_cast<unsigned>(n);
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

// Runs job(i) for i in [0, n) on a pool of workers, handing out indices in
// increasing order.
template <class Job>
void parallel_for(std::size_t n, unsigned workers, Job&& job) {
  workers = std::max(1U, std::min<unsigned>(workers, static_cast<unsigned>(std::max<std::size_t>(n, 1))));
  std::atomic<std::size_t> next{0};
  auto run = [&] {
    for (std::size_t i = next++; i < n; i = next++) job(i);
  };
  if (workers == 1) {
    run();
    return;
  }
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w) pool.emplace_back(run);
  for (auto& t : pool) t.join();
}

// Subtree roots: every constrained word of length split, in lexicographic
// order, plus the node count of the tree above the split.
struct SplitRoots {
  std::vector<std::vector<Letter>> roots;
  std::uint64_t nodes_above = 0;
  std::size_t deepest_above = 0;
  std::vector<std::vector<Letter>> dead_ends_at_deepest;  // when no root exists
};

inline SplitRoots split_roots(const SearchConstraints& c, std::size_t split) {
  SplitRoots out;
  ConstraintChecker ck(c);
  traverse(ck, split, [&](ConstraintChecker& k) {
    ++out.nodes_above;
    if (k.size() > out.deepest_above) {
      out.deepest_above = k.size();
      out.dead_ends_at_deepest.clear();
    }
    if (k.size() == out.deepest_above) out.dead_ends_at_deepest.push_back(k.letters());
    if (k.size() == split) {
      out.roots.push_back(k.letters());
      return Visit::skip();
    }
    return Visit::go();
  });
  if (!out.roots.empty()) out.dead_ends_at_deepest.clear();
  return out;
}

// ---------------------------------------------------------------------------
// Existence search

struct SearchStats {
  std::uint64_t nodes = 0;
  std::size_t max_depth = 0;
  std::vector<Word> longest;  // lexicographically least words at max_depth

  void absorb(const SearchStats& o, std::size_t keep) {
    nodes += o.nodes;
    if (o.max_depth > max_depth) {
      max_depth = o.max_depth;
      longest.clear();
    }
    if (o.max_depth == max_depth) {
      for (const auto& w : o.longest) {
        if (longest.size() < keep) longest.push_back(w);
      }
    }
  }
};

struct Exhausted {
  SearchStats stats;
};
struct Reached {
  Word witness;
  SearchStats stats;
};
struct Inconclusive {
  std::vector<Letter> frontier;   // first root not fully explored
  std::size_t completed_roots = 0;
  SearchStats stats;
};
using SearchOutcome = std::variant<Exhausted, Reached, Inconclusive>;

struct SearchOptions {
  std::size_t split_depth = 12;
  std::uint64_t node_cap = 0;  // 0: unlimited
  unsigned workers = 0;        // 0: default_workers()
  std::size_t keep_longest = 8;
  std::size_t resume_from = 0;  // skip roots already completed
};

inline SearchOutcome search(const SearchConstraints& c, std::size_t depth_cap, const SearchOptions& opt = {}) {
  if (depth_cap < 1) throw std::invalid_argument("depth cap must be at least 1");
  const std::size_t split = std::min(opt.split_depth, depth_cap);
  SplitRoots sr = split_roots(c, split);
  SearchStats above;
  above.nodes = sr.nodes_above;
  above.max_depth = sr.deepest_above;
  for (const auto& w : sr.dead_ends_at_deepest) {
    if (above.longest.size() < opt.keep_longest) above.longest.push_back(Word(w, c.alphabet_size));
  }
  if (sr.roots.empty()) return Exhausted{above};
  if (split == depth_cap) return Reached{Word(sr.roots.front(), c.alphabet_size), above};

  const std::size_t n = sr.roots.size();
  struct RootResult {
    SearchStats stats;
    std::optional<Word> witness;
    bool complete = false;
  };
  std::vector<RootResult> results(n);
  std::atomic<std::uint64_t> spent{0};
  std::atomic<std::size_t> first_witness{n};
  parallel_for(n, opt.workers ? opt.workers : default_workers(), [&](std::size_t i) {
    if (i < opt.resume_from || i > first_witness.load()) return;
    ConstraintChecker ck(c);
    ck.push_all(sr.roots[i]);
    RootResult& r = results[i];
    r.stats.max_depth = split;
    r.stats.longest.push_back(Word(sr.roots[i], c.alphabet_size));
    bool capped = false;
    bool done = traverse(ck, depth_cap, [&](ConstraintChecker& k) {
      ++r.stats.nodes;
      if (opt.node_cap && ++spent > opt.node_cap) {
        capped = true;
        return Visit::halt();
      }
      if (k.size() > r.stats.max_depth) {
        r.stats.max_depth = k.size();
        r.stats.longest.clear();
      }
      if (k.size() == r.stats.max_depth && r.stats.longest.size() < opt.keep_longest) {
        r.stats.longest.push_back(Word(k.letters(), c.alphabet_size));
      }
      if (k.size() == depth_cap) {
        r.witness = Word(k.letters(), c.alphabet_size);
        return Visit::halt();
      }
      return Visit::go();
    });
    r.complete = done || r.witness.has_value();
    (void)capped;
    if (r.witness) {
      std::size_t cur = first_witness.load();
      while (i < cur && !first_witness.compare_exchange_weak(cur, i)) {
      }
    }
  });

  SearchStats total = above;
  const std::size_t w = first_witness.load();
  for (std::size_t i = opt.resume_from; i < n && i <= w; ++i) {
    if (!results[i].complete) {
      total.absorb(results[i].stats, opt.keep_longest);
      return Inconclusive{sr.roots[i], i, total};
    }
    total.absorb(results[i].stats, opt.keep_longest);
  }
  if (w < n) return Reached{*results[w].witness, total};
  return Exhausted{total};
}

// Number of constrained words of each length 0..n.
inline std::vector<std::uint64_t> count_words(const SearchConstraints& c, std::size_t n,
                                              const SearchOptions& opt = {}) {
  std::vector<std::uint64_t> counts(n + 1, 0);
  counts[0] = 1;
  if (n == 0) return counts;
  const std::size_t split = std::min(opt.split_depth, n);
  SplitRoots sr = split_roots(c, split);
  {
    ConstraintChecker ck(c);
    traverse(ck, split, [&](ConstraintChecker& k) {
      ++counts[k.size()];
      return Visit::go();
    });
  }
  std::vector<std::vector<std::uint64_t>> part(sr.roots.size());
  parallel_for(sr.roots.size(), opt.workers ? opt.workers : default_workers(), [&](std::size_t i) {
    part[i].assign(n + 1, 0);
    ConstraintChecker ck(c);
    ck.push_all(sr.roots[i]);
    traverse(ck, n, [&](ConstraintChecker& k) {
      ++part[i][k.size()];
      return Visit::go();
    });
  });
  for (const auto& p : part) {
    for (std::size_t k = split + 1; k <= n && !p.empty(); ++k) counts[k] += p[k];
  }
  return counts;
}

// Growth-rate estimate (c_N / c_M)^(1/(N-M)) over the window [M, N] with
// M = floor(N/2), the longest stretch free of the short-length transient.
inline double estimate_growth(const std::vector<std::uint64_t>& counts) {
  if (counts.size() < 3) throw std::invalid_argument("need counts for at least three lengths");
  const std::size_t n = counts.size() - 1;
  const std::size_t m = n / 2;
  if (counts[n] == 0 || counts[m] == 0) return 0.0;
  return std::pow(static_cast<double>(counts[n]) / static_cast<double>(counts[m]),
                  1.0 / static_cast<double>(n - m));
}

// All constrained words of length ≤ max_len, shortest first and
// lexicographic within a length.
inline std::vector<Word> enumerate_free_words(const SearchConstraints& c, std::size_t max_len) {
  std::map<std::size_t, std::vector<Word>> by_len;
  by_len[0].push_back(Word(std::vector<Letter>{}, c.alphabet_size));
  ConstraintChecker ck(c);
  traverse(ck, max_len, [&](ConstraintChecker& k) {
    by_len[k.size()].push_back(Word(k.letters(), c.alphabet_size));
    return Visit::go();
  });
  std::vector<Word> out;
  for (auto& [len, ws] : by_len) out.insert(out.end(), ws.begin(), ws.end());
  return out;
}

// ---------------------------------------------------------------------------
// Two-sided extendability

struct ExtendableOptions {
  std::size_t split_depth = 12;
  unsigned workers = 0;
  bool use_complement_symmetry = true;  // applied only to complement-closed constraints
  // called after each root with (root index, middles found there)
  std::function<void(std::size_t, const std::set<Word>&)> on_root_done;
  std::set<std::size_t> skip_roots;  // roots completed in an earlier run
  std::set<Word> preloaded;          // middles those roots produced
};

struct ExtendableResult {
  std::set<Word> words;
  std::size_t roots = 0;
  bool symmetry_used = false;
};

// Every word v of the given length for which some p·v·s with
// |p| = |s| = margin satisfies the constraints.
inline ExtendableResult two_sided_extendable(SearchConstraints c, std::size_t length, std::size_t margin,
                                             const ExtendableOptions& opt = {}) {
  ExtendableResult out;
  out.symmetry_used = opt.use_complement_symmetry && c.complement_closed() && !c.fix_first_letter;
  if (out.symmetry_used) c.fix_first_letter = true;
  const std::size_t mid_end = margin + length;
  const std::size_t full = mid_end + margin;
  const std::size_t split = std::min(opt.split_depth, margin);
  SplitRoots sr = split_roots(c, std::max<std::size_t>(split, 1));
  out.roots = sr.roots.size();
  // middles found so far, shared by all roots
  std::set<Word> known = opt.preloaded;
  std::shared_mutex known_mutex;
  std::mutex done_mutex;
  parallel_for(sr.roots.size(), opt.workers ? opt.workers : default_workers(), [&](std::size_t i) {
    if (opt.skip_roots.count(i)) return;
    ConstraintChecker ck(c);
    ck.push_all(sr.roots[i]);
    std::set<Word> mine;
    auto middle = [&](const ConstraintChecker& k) {
      return Word(std::span<const Letter>(k.letters().data() + margin, length), c.alphabet_size);
    };
    auto seen = [&](const Word& w) {
      if (mine.count(w)) return true;
      std::shared_lock lock(known_mutex);
      return known.count(w) > 0;
    };
    traverse(ck, full, [&](ConstraintChecker& k) {
      if (k.size() == mid_end && seen(middle(k))) return Visit::skip();
      if (k.size() == full) {
        Word m = middle(k);
        mine.insert(m);
        {
          std::unique_lock lock(known_mutex);
          known.insert(m);
        }
        return Visit::finish(mid_end);
      }
      return Visit::go();
    });
    if (opt.on_root_done) {
      std::lock_guard<std::mutex> lock(done_mutex);
      opt.on_root_done(i, mine);
    }
  });
  out.words = std::move(known);
  if (out.symmetry_used) {
    std::vector<Word> comp;
    for (const auto& w : out.words) comp.push_back(complement(w));
    out.words.insert(comp.begin(), comp.end());
  }
  return out;
}

}  // namespace fewpal
