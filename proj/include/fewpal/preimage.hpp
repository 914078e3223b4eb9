#pragma once

// Proof search showing that a word cannot occur in the pre-image v of a
// bi-infinite word w = m(v) that avoids a set of factors and satisfies an
// exponent bound. A node u is refuted when m(u) already breaks a constraint
// on w, when u contains a factor refuted earlier, or when every one-letter
// extension of u on one side is refuted (v is bi-infinite, so u extends on
// both sides).

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "fewpal/morphism.hpp"
#include "fewpal/repetition.hpp"
#include "fewpal/word.hpp"

namespace fewpal {

struct ProofNode {
  enum class Kind { image_forbidden, image_repetition, known_forbidden, extend_left, extend_right };
  Word word;  // pre-image word
  Kind kind = Kind::image_forbidden;
  Word witness;  // forbidden factor of the image, repetition in the image, or refuted factor
  std::vector<ProofNode> children;  // one per letter for extension nodes

  std::size_t size() const {
    std::size_t n = 1;
    for (const auto& c : children) n += c.size();
    return n;
  }
  std::size_t depth() const {
    std::size_t d = 0;
    for (const auto& c : children) d = std::max(d, c.depth());
    return children.empty() ? 0 : d + 1;
  }
};

inline const char* kind_name(ProofNode::Kind k) {
  switch (k) {
    case ProofNode::Kind::image_forbidden: return "image-forbidden";
    case ProofNode::Kind::image_repetition: return "image-repetition";
    case ProofNode::Kind::known_forbidden: return "known-forbidden";
    case ProofNode::Kind::extend_left: return "extend-left";
    case ProofNode::Kind::extend_right: return "extend-right";
  }
  return "?";
}

struct PreimageProblem {
  Morphism morphism;
  std::vector<Word> image_forbidden;
  ExponentBound image_bound;
  std::vector<Word> known_forbidden;  // pre-image factors refuted earlier
};

struct ProofLog {
  Word target;
  ProofNode root;

  // Re-checks every step against the problem without searching.
  bool replay(const PreimageProblem& prob, std::string* why = nullptr) const {
    if (root.word != target) return fail(why, "root word differs from target");
    return check(prob, root, why);
  }

  // Indented text rendering, one node per line.
  std::string to_text() const {
    std::ostringstream os;
    render(os, root, 0);
    return os.str();
  }

 private:
  static bool fail(std::string* why, const std::string& msg) {
    if (why) *why = msg;
    return false;
  }

  static bool check(const PreimageProblem& prob, const ProofNode& n, std::string* why) {
    const Word img = prob.morphism.apply(n.word);
    switch (n.kind) {
      case ProofNode::Kind::image_forbidden: {
        bool listed = false;
        for (const auto& f : prob.image_forbidden) listed = listed || f == n.witness;
        if (!listed) return fail(why, n.witness.str() + " is not a forbidden image factor");
        if (!is_factor(n.witness, img)) return fail(why, n.witness.str() + " does not occur in the image of " + n.word.str());
        return true;
      }
      case ProofNode::Kind::image_repetition: {
        if (!is_factor(n.witness, img)) return fail(why, "repetition not in the image of " + n.word.str());
        if (!prob.image_bound.forbids(exponent_of(n.witness).first)) {
          return fail(why, n.witness.str() + " does not violate " + prob.image_bound.str());
        }
        return true;
      }
      case ProofNode::Kind::known_forbidden: {
        bool listed = false;
        for (const auto& f : prob.known_forbidden) listed = listed || f == n.witness;
        if (!listed) return fail(why, n.witness.str() + " was not refuted earlier");
        if (!is_factor(n.witness, n.word)) return fail(why, n.witness.str() + " not in " + n.word.str());
        return true;
      }
      case ProofNode::Kind::extend_left:
      case ProofNode::Kind::extend_right: {
        const unsigned d = prob.morphism.source_alphabet();
        if (n.children.size() != d) return fail(why, "extension of " + n.word.str() + " misses letters");
        for (unsigned a = 0; a < d; ++a) {
          Word letter({static_cast<Letter>(a)}, n.word.alphabet_size());
          Word expect = n.kind == ProofNode::Kind::extend_left ? letter + n.word : n.word + letter;
          if (n.children[a].word != expect) return fail(why, "bad child " + n.children[a].word.str());
          if (!check(prob, n.children[a], why)) return false;
        }
        return true;
      }
    }
    return fail(why, "unknown node kind");
  }

  static void render(std::ostream& os, const ProofNode& n, std::size_t indent) {
    os << std::string(2 * indent, ' ') << n.word.str() << ' ' << kind_name(n.kind);
    if (!n.witness.empty()) os << ' ' << n.witness.str();
    os << '\n';
    for (const auto& c : n.children) render(os, c, indent + 1);
  }
};

struct PreimageResult {
  std::optional<ProofLog> proof;  // empty: inconclusive within the budget
  std::size_t depth_used = 0;
  std::uint64_t nodes = 0;
};

namespace detail {

class PreimageProver {
 public:
  PreimageProver(const PreimageProblem& prob, std::uint64_t budget) : prob_(prob), budget_(budget) {}

  std::optional<ProofNode> prove(const Word& u, std::size_t depth) {
    if (++nodes_ > budget_) return std::nullopt;
    if (auto leaf = immediate(u)) return leaf;
    if (depth == 0) return std::nullopt;
    auto fk = failed_.find(u);
    if (fk != failed_.end() && fk->second >= depth) return std::nullopt;
    const unsigned d = prob_.morphism.source_alphabet();
    for (auto kind : {ProofNode::Kind::extend_right, ProofNode::Kind::extend_left}) {
      ProofNode n{u, kind, Word{}, {}};
      bool all = true;
      for (unsigned a = 0; a < d && all; ++a) {
        Word letter({static_cast<Letter>(a)}, u.alphabet_size());
        auto child = prove(kind == ProofNode::Kind::extend_left ? letter + u : u + letter, depth - 1);
        if (!child) {
          all = false;
        } else {
          n.children.push_back(std::move(*child));
        }
      }
      if (all) return n;
    }
    failed_[u] = std::max(failed_[u], depth);
    return std::nullopt;
  }

  std::uint64_t nodes() const noexcept { return nodes_; }
  bool exhausted() const noexcept { return nodes_ > budget_; }

 private:
  std::optional<ProofNode> immediate(const Word& u) const {
    for (const auto& f : prob_.known_forbidden) {
      if (is_factor(f, u)) return ProofNode{u, ProofNode::Kind::known_forbidden, f, {}};
    }
    const Word img = prob_.morphism.apply(u);
    for (const auto& f : prob_.image_forbidden) {
      if (is_factor(f, img)) return ProofNode{u, ProofNode::Kind::image_forbidden, f, {}};
    }
    if (auto v = is_free(img, prob_.image_bound).violation) {
      return ProofNode{u, ProofNode::Kind::image_repetition, v->factor, {}};
    }
    return std::nullopt;
  }

  const PreimageProblem& prob_;
  std::uint64_t budget_;
  std::uint64_t nodes_ = 0;
  std::map<Word, std::size_t> failed_;
};

}  // namespace detail

// Iterative deepening on the number of extension steps; the first depth that
// yields a proof gives the shallowest proof tree.
inline PreimageResult prove_preimage_forbidden(const PreimageProblem& prob, const Word& target,
                                               std::uint64_t budget = 1'000'000, std::size_t max_depth = 40) {
  if (!prob.morphism.injective()) throw std::invalid_argument("pre-image proofs need an injective morphism");
  PreimageResult out;
  const Word source = target.with_alphabet(prob.morphism.source_alphabet());
  detail::PreimageProver prover(prob, budget);
  for (std::size_t d = 0; d <= max_depth; ++d) {
    auto root = prover.prove(source, d);
    out.nodes = prover.nodes();
    if (root) {
      out.proof = ProofLog{source, std::move(*root)};
      out.depth_used = d;
      return out;
    }
    if (prover.exhausted()) break;
  }
  return out;
}

// Refutes the words of `order` one after another, each proof allowed to use
// the ones before it.
struct SequentialProof {
  std::vector<PreimageResult> steps;
  bool complete() const {
    for (const auto& s : steps) {
      if (!s.proof) return false;
    }
    return true;
  }
};

inline SequentialProof prove_sequence(PreimageProblem prob, const std::vector<Word>& order,
                                      std::uint64_t budget = 1'000'000) {
  SequentialProof out;
  for (const auto& f : order) {
    out.steps.push_back(prove_preimage_forbidden(prob, f, budget));
    if (!out.steps.back().proof) break;
    prob.known_forbidden.push_back(f);
  }
  return out;
}

}  // namespace fewpal
