#pragma once

// Rauzy graphs of factorial languages given by their words of one length,
// weak and strong components, and symmetry orbits of components under
// reversal and bit complement.

#include <algorithm>
#include <fstream>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "fewpal/search.hpp"
#include "fewpal/word.hpp"

namespace fewpal {

struct RauzyGraph {
  std::size_t order = 0;
  std::set<Word> vertices;  // words of length order - 1
  std::set<Word> arcs;      // words of length order

  Word source(const Word& arc) const { return arc.prefix(order - 1); }
  Word target(const Word& arc) const { return arc.suffix(order - 1); }

  friend bool operator==(const RauzyGraph& a, const RauzyGraph& b) {
    return a.order == b.order && a.vertices == b.vertices && a.arcs == b.arcs;
  }

  // One arc word per line.
  std::string to_text() const {
    std::ostringstream os;
    for (const auto& a : arcs) os << a.str() << '\n';
    return os.str();
  }
};

inline RauzyGraph build_rauzy(const std::set<Word>& words) {
  RauzyGraph g;
  if (words.empty()) return g;
  g.order = words.begin()->size();
  if (g.order < 1) throw std::invalid_argument("Rauzy graph needs words of length at least 1");
  for (const auto& w : words) {
    if (w.size() != g.order) throw std::invalid_argument("Rauzy graph words must share one length");
    g.arcs.insert(w);
    g.vertices.insert(g.source(w));
    g.vertices.insert(g.target(w));
  }
  return g;
}

inline RauzyGraph build_rauzy(const std::vector<Word>& words) {
  return build_rauzy(std::set<Word>(words.begin(), words.end()));
}

enum class Connectivity { weak, strong };

namespace detail {

inline RauzyGraph subgraph(const RauzyGraph& g, const std::set<Word>& arcs) {
  RauzyGraph s;
  s.order = g.order;
  s.arcs = arcs;
  for (const auto& a : arcs) {
    s.vertices.insert(g.source(a));
    s.vertices.insert(g.target(a));
  }
  return s;
}

}  // namespace detail

// Components as subgraphs, each keeping only the arcs with both ends inside
// it; components without arcs are dropped. Sorted by least arc.
inline std::vector<RauzyGraph> components(const RauzyGraph& g, Connectivity mode) {
  std::vector<Word> verts(g.vertices.begin(), g.vertices.end());
  auto index = [&](const Word& v) {
    return static_cast<std::size_t>(std::lower_bound(verts.begin(), verts.end(), v) - verts.begin());
  };
  const std::size_t n = verts.size();
  std::vector<std::size_t> comp(n);

  if (mode == Connectivity::weak) {
    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    for (const auto& a : g.arcs) parent[find(index(g.source(a)))] = find(index(g.target(a)));
    for (std::size_t i = 0; i < n; ++i) comp[i] = find(i);
  } else {
    // iterative Tarjan
    std::vector<std::vector<std::size_t>> adj(n);
    for (const auto& a : g.arcs) adj[index(g.source(a))].push_back(index(g.target(a)));
    const std::size_t unset = SIZE_MAX;
    std::vector<std::size_t> idx(n, unset), low(n, 0), stack;
    std::vector<bool> on_stack(n, false);
    std::size_t counter = 0;
    for (std::size_t s = 0; s < n; ++s) {
      if (idx[s] != unset) continue;
      std::vector<std::pair<std::size_t, std::size_t>> call{{s, 0}};
      idx[s] = low[s] = counter++;
      stack.push_back(s);
      on_stack[s] = true;
      while (!call.empty()) {
        auto& [v, e] = call.back();
        if (e < adj[v].size()) {
          std::size_t w = adj[v][e++];
          if (idx[w] == unset) {
            idx[w] = low[w] = counter++;
            stack.push_back(w);
            on_stack[w] = true;
            call.push_back({w, 0});
          } else if (on_stack[w]) {
            low[v] = std::min(low[v], idx[w]);
          }
          continue;
        }
        if (low[v] == idx[v]) {
          while (true) {
            std::size_t w = stack.back();
            stack.pop_back();
            on_stack[w] = false;
            comp[w] = v;
            if (w == v) break;
          }
        }
        std::size_t done = v;
        call.pop_back();
        if (!call.empty()) low[call.back().first] = std::min(low[call.back().first], low[done]);
      }
    }
  }

  std::map<std::size_t, std::set<Word>> arcs_by_comp;
  for (const auto& a : g.arcs) {
    std::size_t cs = comp[index(g.source(a))];
    if (cs == comp[index(g.target(a))]) arcs_by_comp[cs].insert(a);
  }
  std::vector<RauzyGraph> out;
  for (auto& [c, arcs] : arcs_by_comp) out.push_back(detail::subgraph(g, arcs));
  std::sort(out.begin(), out.end(),
            [](const RauzyGraph& a, const RauzyGraph& b) { return *a.arcs.begin() < *b.arcs.begin(); });
  return out;
}

inline RauzyGraph reversed(const RauzyGraph& g) {
  std::set<Word> arcs;
  for (const auto& a : g.arcs) arcs.insert(reverse(a));
  return detail::subgraph(g, arcs);
}

inline RauzyGraph complemented(const RauzyGraph& g) {
  std::set<Word> arcs;
  for (const auto& a : g.arcs) arcs.insert(complement(a));
  return detail::subgraph(g, arcs);
}

struct SymmetryOrbits {
  // image index of each component under reversal and complement, if the
  // image is one of the components
  std::vector<std::optional<std::size_t>> under_reversal;
  std::vector<std::optional<std::size_t>> under_complement;
  std::vector<std::vector<std::size_t>> orbits;  // sorted component indices
};

inline SymmetryOrbits symmetry_orbits(const std::vector<RauzyGraph>& comps) {
  SymmetryOrbits out;
  auto find_equal = [&](const RauzyGraph& g) -> std::optional<std::size_t> {
    for (std::size_t i = 0; i < comps.size(); ++i) {
      if (comps[i].arcs == g.arcs) return i;
    }
    return std::nullopt;
  };
  const std::size_t n = comps.size();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t i = 0; i < n; ++i) {
    out.under_reversal.push_back(find_equal(reversed(comps[i])));
    out.under_complement.push_back(find_equal(complemented(comps[i])));
    if (out.under_reversal.back()) parent[find(i)] = find(*out.under_reversal.back());
    if (out.under_complement.back()) parent[find(i)] = find(*out.under_complement.back());
  }
  std::map<std::size_t, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < n; ++i) groups[find(i)].push_back(i);
  for (auto& [r, members] : groups) out.orbits.push_back(members);
  std::sort(out.orbits.begin(), out.orbits.end());
  return out;
}

// The first component none of whose arcs contains the given factor.
inline std::optional<std::size_t> component_avoiding(const std::vector<RauzyGraph>& comps, const Word& f) {
  for (std::size_t i = 0; i < comps.size(); ++i) {
    bool hit = false;
    for (const auto& a : comps[i].arcs) {
      if (is_factor(f, a)) {
        hit = true;
        break;
      }
    }
    if (!hit) return i;
  }
  return std::nullopt;
}

// Words v of length ell such that p·v·s satisfies the constraints for some
// p, s of length ell (the margin).
struct SurvivorOptions {
  std::optional<std::size_t> margin;  // defaults to ell
  std::string checkpoint;             // file of completed roots; empty to disable
  bool resume = false;
  unsigned workers = 0;
  std::size_t split_depth = 12;
};

struct SurvivorResult {
  std::set<Word> words;
  std::size_t margin = 0;
  std::size_t roots = 0;
  std::size_t resumed_roots = 0;
  bool symmetry_used = false;
};

inline SearchConstraints survivor_constraints(const ExponentBound& bound, std::optional<std::size_t> budget) {
  SearchConstraints c;
  c.alphabet_size = 2;
  c.exponent = bound;
  c.palindrome_budget = budget;
  return c;
}

inline SurvivorResult survivor_set(const SearchConstraints& c, std::size_t ell, const SurvivorOptions& opt = {}) {
  if (ell < 2) throw std::invalid_argument("survivor set needs ell >= 2");
  SurvivorResult out;
  out.margin = opt.margin.value_or(ell);
  ExtendableOptions eo;
  eo.workers = opt.workers;
  eo.split_depth = opt.split_depth;
  // checkpoint lines: "root <index>" followed by the middles found there
  if (!opt.checkpoint.empty() && opt.resume) {
    std::ifstream in(opt.checkpoint);
    std::string tok;
    while (in >> tok) {
      if (tok == "root") {
        std::size_t i;
        in >> i;
        eo.skip_roots.insert(i);
      } else {
        eo.preloaded.insert(Word::parse(tok, c.alphabet_size));
      }
    }
    out.resumed_roots = eo.skip_roots.size();
  }
  std::ofstream log;
  if (!opt.checkpoint.empty()) {
    log.open(opt.checkpoint, opt.resume ? std::ios::app : std::ios::trunc);
    eo.on_root_done = [&](std::size_t i, const std::set<Word>& found) {
      for (const auto& w : found) log << w.str() << '\n';
      log << "root " << i << '\n';
      log.flush();
    };
  }
  auto r = two_sided_extendable(c, ell, out.margin, eo);
  out.words = std::move(r.words);
  out.roots = r.roots;
  out.symmetry_used = r.symmetry_used;
  return out;
}

}  // namespace fewpal
