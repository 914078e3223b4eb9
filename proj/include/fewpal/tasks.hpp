#pragma once

// One entry point per verification command. Each takes JSON parameters,
// fills in defaults, runs the check and returns a certificate whose
// parameters are complete, so replaying it needs nothing else.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <bit>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "fewpal/certificate.hpp"
#include "fewpal/cubic.hpp"
#include "fewpal/known_words.hpp"
#include "fewpal/morphism.hpp"
#include "fewpal/preimage.hpp"
#include "fewpal/rauzy.hpp"
#include "fewpal/repetition.hpp"
#include "fewpal/search.hpp"
#include "fewpal/structure.hpp"
#include "fewpal/transfer.hpp"
#include "fewpal/word.hpp"

namespace fewpal {

// Resource caps from the environment: FEWPAL_NODE_CAP bounds search nodes,
// FEWPAL_MEMORY_MB bounds stream prefixes (about 32 bytes per letter).
struct Limits {
  std::uint64_t node_cap = 0;  // 0: unlimited
  std::size_t prefix_cap = 10'000'000;

  static Limits from_env() {
    Limits l;
    if (const char* v = std::getenv("FEWPAL_NODE_CAP")) l.node_cap = std::strtoull(v, nullptr, 10);
    if (const char* v = std::getenv("FEWPAL_MEMORY_MB")) {
      const std::size_t mb = std::strtoull(v, nullptr, 10);
      if (mb > 0) l.prefix_cap = std::min<std::size_t>(l.prefix_cap, mb * 1'000'000 / 32);
    }
    return l;
  }
};

// Operational settings that do not change the evidence.
struct RunContext {
  std::string checkpoint;
  bool resume = false;
  unsigned workers = 0;
  std::string graph_out;  // rauzy: arc list export
};

inline std::string default_data_dir() {
  if (const char* v = std::getenv("FEWPAL_DATA")) return v;
#ifdef FEWPAL_DATA_DIR
  return FEWPAL_DATA_DIR;
#else
  return "data";
#endif
}

namespace detail {

inline Json words_json(const std::set<Word>& ws) {
  Json a = Json::array();
  for (const auto& w : ws) a.push_back(w.str());
  return a;
}

inline Json letters_json(const std::set<Letter>& s) {
  std::string out;
  for (Letter c : s) out += static_cast<char>('0' + c);
  return out;
}

template <class T>
T param(Json& p, const char* key, T fallback) {
  if (!p.contains(key) || p[key].is_null()) p[key] = fallback;
  return p[key].get<T>();
}

inline StabilizationPolicy policy(Json& p, const Limits& lim, std::size_t initial = 10'000) {
  StabilizationPolicy pol;
  pol.initial = param<std::size_t>(p, "prefix", initial);
  pol.cap = param<std::size_t>(p, "prefix_cap", lim.prefix_cap);
  // the environment's memory cap overrides, leaving the result inconclusive
  pol.cap = std::min(pol.cap, lim.prefix_cap);
  if (2 * pol.initial > pol.cap) throw NotStabilized("prefix needed (" + std::to_string(2 * pol.initial) + " letters)");
  return pol;
}

inline std::optional<Rational> expected_exponent(const std::string& word) {
  if (word == "nu_p") return Rational(5, 2);
  if (word == "mu_p") return Rational(28, 11);
  return std::nullopt;
}

inline std::vector<Word> forbidden_set(const std::string& name) {
  if (name == "F18") return known::forbidden_mu_image();
  if (name == "F20") return known::forbidden_nu_image();
  if (name == "F") return known::forbidden_ternary();
  if (name.empty()) return {};
  std::ifstream in(name);
  if (!in) throw std::invalid_argument("unknown forbidden set '" + name + "' (F, F18, F20 or a word file)");
  return read_words(in, 2);
}

}  // namespace detail

// Parameters of a built-in transfer instance, with the images read from the
// data directory when one is given.
inline Json transfer_params(const std::string& id, const std::string& data_dir = "") {
  for (const auto& d : known::transfer_instances()) {
    if (d.id != id) continue;
    Morphism m = d.morphism;
    if (!data_dir.empty()) m = Morphism::load(id, (std::filesystem::path(data_dir) / "morphisms" / (id + ".txt")).string());
    Json p;
    p["id"] = id;
    p["images"] = Json::array();
    for (const auto& w : m.images()) p["images"].push_back(w.str());
    p["source"] = d.source.str();
    p["target"] = d.target.str();
    p["palindromes"] = d.palindromes;
    return p;
  }
  throw std::invalid_argument("unknown transfer instance '" + id + "'");
}

inline std::vector<std::string> transfer_ids() {
  std::vector<std::string> out;
  for (const auto& d : known::transfer_instances()) out.push_back(d.id);
  return out;
}

// verify-morphism: transfer lemma plus palindrome budget of the image language.
inline Certificate run_verify_morphism(Json p, const RunContext& ctx = {}) {
  Stopwatch sw;
  Certificate cert;
  cert.command = "verify-morphism";
  const std::string id = p.at("id").get<std::string>();
  std::vector<Word> images;
  for (const auto& s : p.at("images")) images.push_back(Word::parse(s.get<std::string>()));
  TransferInstance inst{id, Morphism(id, images), parse_bound(p.at("source").get<std::string>()),
                        parse_bound(p.at("target").get<std::string>()), p.at("palindromes").get<std::size_t>()};
  Json& ev = cert.evidence;
  try {
    SearchOptions so;
    so.workers = ctx.workers;
    const TransferReport tr = verify_transfer(inst, so);
    ev["q"] = tr.q;
    ev["synchronizing"] = tr.synchronizing;
    ev["threshold"] = tr.threshold.str();
    ev["max_source_length"] = tr.max_source_length;
    ev["words_per_length"] = tr.words_per_length;
    ev["words_checked"] = tr.words_checked();
    ev["transfer_passed"] = tr.passed();
    if (tr.failing_source) {
      ev["failing_source"] = tr.failing_source->str();
      if (tr.violation) {
        ev["violation"] = {{"factor", tr.violation->factor.str()},
                           {"exponent", tr.violation->exponent.str()},
                           {"start", tr.violation->start}};
      }
    }
    std::optional<std::size_t> window;
    if (p.contains("window") && !p["window"].is_null()) window = p["window"].get<std::size_t>();
    const PalindromeReport pr = verify_palindrome_budget(inst, window);
    ev["palindromes"] = {{"window", pr.window},
                         {"covered_length", pr.covered_length},
                         {"longest", pr.longest},
                         {"count", pr.count()},
                         {"claimed", pr.claimed},
                         {"exact", pr.exact()},
                         {"cut_reached", pr.cut_reached},
                         {"list", detail::words_json(pr.palindromes)}};
    const bool ok = tr.passed() && pr.cut_reached && pr.within_budget();
    cert.outcome = ok ? Outcome::pass : Outcome::fail;
    cert.summary = id + ": t = " + tr.threshold.str() + ", " + std::to_string(tr.words_checked()) +
                   " source words, " + std::to_string(pr.count()) + "/" + std::to_string(pr.claimed) + " palindromes";
    if (!tr.passed()) cert.summary = id + ": image of " + tr.failing_source->str() + " breaks " + inst.target_bound.str();
  } catch (const HypothesisError& e) {
    ev["hypothesis"] = e.hypothesis();
    ev["detail"] = e.what();
    cert.outcome = Outcome::fail;
    cert.summary = id + ": " + e.what();
  }
  cert.params = std::move(p);
  cert.seconds = sw.seconds();
  return cert;
}

// optimality: exhaustive search for long words under a palindrome budget and
// an optional exponent bound.
inline Certificate run_optimality(Json p, const Limits& lim = {}, const RunContext& ctx = {}) {
  Stopwatch sw;
  Certificate cert;
  cert.command = "optimality";
  SearchConstraints c;
  c.alphabet_size = detail::param<unsigned>(p, "alphabet", 2);
  c.palindrome_budget = p.at("budget").get<std::size_t>();
  const std::string exp = detail::param<std::string>(p, "exp", "");
  if (!exp.empty()) c.exponent = parse_bound(exp);
  const auto depth_cap = detail::param<std::size_t>(p, "depth_cap", 200);
  SearchOptions so;
  so.node_cap = detail::param<std::uint64_t>(p, "node_cap", lim.node_cap);
  so.split_depth = detail::param<std::size_t>(p, "split_depth", 12);
  so.workers = ctx.workers;
  const SearchOutcome r = search(c, depth_cap, so);
  Json& ev = cert.evidence;
  ev["constraints"] = c.describe();
  const SearchStats* st = nullptr;
  if (auto* e = std::get_if<Exhausted>(&r)) {
    ev["result"] = "exhausted";
    st = &e->stats;
    cert.outcome = Outcome::pass;
  } else if (auto* w = std::get_if<Reached>(&r)) {
    ev["result"] = "reached depth cap";
    ev["witness"] = w->witness.str();
    st = &w->stats;
    cert.outcome = Outcome::fail;
  } else {
    auto& i = std::get<Inconclusive>(r);
    ev["result"] = "node cap";
    ev["completed_roots"] = i.completed_roots;
    st = &i.stats;
    cert.outcome = Outcome::inconclusive;
  }
  ev["nodes"] = st->nodes;
  ev["max_depth"] = st->max_depth;
  Json longest = Json::array();
  for (const auto& w : st->longest) longest.push_back(w.str());
  ev["longest"] = longest;
  cert.nodes = st->nodes;
  cert.summary = c.describe() + ": " + ev["result"].get<std::string>() + ", longest " + std::to_string(st->max_depth) +
                 ", " + std::to_string(st->nodes) + " nodes";
  cert.params = std::move(p);
  cert.seconds = sw.seconds();
  return cert;
}

// growth: exact counts of words under a palindrome budget and the growth
// estimate against a reference constant.
inline Certificate run_growth(Json p, const RunContext& ctx = {}) {
  Stopwatch sw;
  Certificate cert;
  cert.command = "growth";
  SearchConstraints c;
  c.palindrome_budget = detail::param<std::size_t>(p, "budget", 11);
  const auto n = detail::param<std::size_t>(p, "n", 60);
  const double kappa = std::stod(detail::param<std::string>(p, "kappa", "1.1127756842787"));
  const double tol = detail::param<double>(p, "tolerance", 0.01);
  SearchOptions so;
  so.workers = ctx.workers;
  const auto counts = count_words(c, n, so);
  const double est = estimate_growth(counts);
  Json& ev = cert.evidence;
  ev["counts"] = counts;
  ev["window"] = {n / 2, n};
  ev["estimate"] = est;
  ev["difference"] = std::abs(est - kappa);
  cert.outcome = std::abs(est - kappa) <= tol ? Outcome::pass : Outcome::fail;
  cert.summary = "growth estimate " + std::to_string(est) + " vs " + std::to_string(kappa);
  cert.params = std::move(p);
  cert.seconds = sw.seconds();
  return cert;
}

// preimage-prove: refutes the ternary forbidden factors one by one in the
// pre-image under mu or nu.
inline Certificate run_preimage(Json p) {
  Stopwatch sw;
  Certificate cert;
  cert.command = "preimage-prove";
  const std::string which = detail::param<std::string>(p, "morphism", "mu");
  if (which != "mu" && which != "nu") throw std::invalid_argument("pre-image proofs are set up for mu and nu");
  const auto budget = detail::param<std::uint64_t>(p, "budget", 1'000'000);
  PreimageProblem prob{which == "mu" ? known::mu() : known::nu(),
                       which == "mu" ? known::forbidden_mu_image() : known::forbidden_nu_image(), parse_bound("3"), {}};
  const auto order = which == "mu" ? known::forbidden_order_mu() : known::forbidden_order_nu();
  const SequentialProof sp = prove_sequence(prob, order, budget);
  Json steps = Json::array();
  bool all_replay = true;
  for (std::size_t i = 0; i < sp.steps.size(); ++i) {
    const auto& s = sp.steps[i];
    Json st{{"target", order[i].str()}, {"proved", s.proof.has_value()}, {"depth", s.depth_used}, {"search_nodes", s.nodes}};
    cert.nodes += s.nodes;
    if (s.proof) {
      PreimageProblem at = prob;
      at.known_forbidden.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(i));
      std::string why;
      const bool ok = s.proof->replay(at, &why);
      all_replay = all_replay && ok;
      st["proof_nodes"] = s.proof->root.size();
      st["replays"] = ok;
      if (!ok) st["replay_error"] = why;
      st["proof"] = s.proof->to_text();
    }
    steps.push_back(st);
  }
  cert.evidence["image_forbidden"] = Json::array();
  for (const auto& f : prob.image_forbidden) cert.evidence["image_forbidden"].push_back(f.str());
  cert.evidence["image_bound"] = prob.image_bound.str();
  cert.evidence["steps"] = steps;
  cert.evidence["complete"] = sp.complete();
  cert.outcome = sp.complete() && all_replay ? Outcome::pass : Outcome::fail;
  cert.summary = which + ": " + std::to_string(sp.steps.size()) + "/" + std::to_string(order.size()) + " refuted" +
                 (all_replay ? ", all proofs replay" : ", replay failed");
  cert.params = std::move(p);
  cert.seconds = sw.seconds();
  return cert;
}

// Set of factors of length n of a named stream, stabilized.
inline Stabilized<std::set<Word>> stream_factors(const std::string& word, std::size_t n, const StabilizationPolicy& pol) {
  const auto s = WordStream::named(word);
  return stabilize(s, pol, "factors of " + word,
                   [&](const std::vector<Letter>& t) { return factors(std::span<const Letter>(t), n, s.alphabet); });
}

// rauzy: survivor set of a palindrome budget and exponent bound, its Rauzy
// graph, components, symmetry orbits, and comparison with a morphic word.
inline Certificate run_rauzy(Json p, const Limits& lim = {}, const RunContext& ctx = {}) {
  Stopwatch sw;
  Certificate cert;
  cert.command = "rauzy";
  const auto budget = p.at("budget").get<std::size_t>();
  const ExponentBound bound = parse_bound(p.at("exp").get<std::string>());
  const auto ell = p.at("ell").get<std::size_t>();
  const auto margin = detail::param<std::size_t>(p, "margin", ell);
  const auto mode_name = detail::param<std::string>(p, "connectivity", "weak");
  const auto avoid = detail::param<std::string>(p, "avoid", "");
  const auto word = detail::param<std::string>(p, "word", "");
  const auto forbidden = detail::param<std::string>(p, "forbidden", "");
  const int expected = detail::param<int>(p, "expected_components", 0);
  const Connectivity mode = mode_name == "strong" ? Connectivity::strong : Connectivity::weak;

  SurvivorOptions so;
  so.margin = margin;
  so.checkpoint = ctx.checkpoint;
  so.resume = ctx.resume;
  so.workers = ctx.workers;
  const SurvivorResult sr = survivor_set(survivor_constraints(bound, budget), ell, so);
  const RauzyGraph g = build_rauzy(sr.words);
  if (!ctx.graph_out.empty()) {
    std::ofstream out(ctx.graph_out);
    if (!out) throw std::runtime_error("cannot write " + ctx.graph_out);
    out << g.to_text();
  }
  const auto comps = components(g, mode);
  const auto orb = symmetry_orbits(comps);
  Json& ev = cert.evidence;
  ev["survivors"] = sr.words.size();
  ev["arcs"] = g.arcs.size();
  ev["vertices"] = g.vertices.size();
  Json cj = Json::array();
  for (const auto& c : comps) {
    cj.push_back({{"arcs", c.arcs.size()}, {"vertices", c.vertices.size()}, {"least_arc", c.arcs.begin()->str()}});
  }
  ev["components"] = cj;
  ev["orbits"] = orb.orbits.size();
  bool inconclusive = false;
  bool ok = orb.orbits.size() == 1 && (expected == 0 || comps.size() == static_cast<std::size_t>(expected));
  if (!forbidden.empty()) {
    std::size_t longest = 0;
    for (const auto& f : detail::forbidden_set(forbidden)) longest = std::max(longest, f.size());
    ev["bridge"] = {{"longest_forbidden", longest}, {"ell", ell}, {"holds", longest <= ell}};
    ok = ok && longest <= ell;
  }
  if (!avoid.empty() && !word.empty()) {
    const auto idx = component_avoiding(comps, Word::parse(avoid, 2));
    ev["avoiding_component"] = idx ? Json(*idx) : Json();
    try {
      const auto ref = stream_factors(word, ell, detail::policy(p, lim, 200'000));
      const RauzyGraph wg = build_rauzy(ref.value);
      const bool equal = idx && comps[*idx].arcs == wg.arcs;
      ev["word_arcs"] = wg.arcs.size();
      ev["equals_word_graph"] = equal;
      ok = ok && equal;
    } catch (const NotStabilized& e) {
      ev["reason"] = e.what();
      inconclusive = true;
    }
  }
  cert.outcome = inconclusive ? (ok ? Outcome::inconclusive : Outcome::fail) : (ok ? Outcome::pass : Outcome::fail);
  cert.summary = "S(" + std::to_string(budget) + ", " + bound.str() + ", ell " + std::to_string(ell) + ", margin " +
                 std::to_string(margin) + "): " + std::to_string(g.arcs.size()) + " arcs, " +
                 std::to_string(comps.size()) + " " + mode_name + " components, " + std::to_string(orb.orbits.size()) +
                 " orbit(s)";
  cert.params = std::move(p);
  cert.seconds = sw.seconds();
  return cert;
}

// Palindromes of a stream (including ε), stabilized.
inline Stabilized<std::set<Word>> stream_palindromes(const WordStream& s, const StabilizationPolicy& pol) {
  return stabilize(s, pol, "palindromes of " + s.name,
                   [&](const std::vector<Letter>& t) { return palindrome_set(std::span<const Letter>(t), s.alphabet); });
}

inline Json closed_form_json(const std::string& word, Outcome* outcome) {
  Json out;
  const Interval e = asymptotic_exponent();
  const CubicRoots roots = cubic_roots();
  out["beta"] = {roots.beta.lo, roots.beta.hi};
  out["lambda"] = {{"re", {roots.lambda.re.lo, roots.lambda.re.hi}}, {"im", {roots.lambda.im.lo, roots.lambda.im.hi}}};
  out["asymptotic_exponent"] = {e.lo, e.hi};
  const auto expected = detail::expected_exponent(word);
  const Rational target = expected ? *expected - Rational(1) : Rational(3, 2);
  Json fams = Json::array();
  Rational best(0);
  bool bounded = true;
  double precision = 0;
  for (const auto& spec : family_ratio_specs(word)) {
    const auto r = family_ratio_analysis(spec, target);
    fams.push_back({{"family", std::string(1, spec.family)},
                    {"max_exact", r.max_exact.str()},
                    {"witness_n", r.witness_n},
                    {"tail_from_n", r.tail_from_n ? Json(*r.tail_from_n) : Json()},
                    {"tail_margin", r.tail_margin},
                    {"verdict", r.verdict()}});
    best = max(best, r.max_exact);
    bounded = bounded && r.bounded();
    precision = std::max(precision, r.precision);
  }
  out["target_ratio"] = target.str();
  out["families"] = fams;
  out["precision"] = precision;
  // bispecials below the family description, from the catalogue
  Rational f(0);
  for (const auto& s : short_bispecials(word)) {
    if (!s.word.empty()) {
      f = max(f, Rational(static_cast<std::int64_t>(s.word.size()), static_cast<std::int64_t>(s.shortest_return.size())));
    }
  }
  out["short_ratio"] = f.str();
  best = max(best, f);
  out["exponent"] = (Rational(1) + best).str();
  if (outcome) {
    const bool ok = bounded && precision <= 1e-12 && (!expected || Rational(1) + best == *expected);
    *outcome = ok ? Outcome::pass : (bounded ? Outcome::fail : Outcome::inconclusive);
  }
  return out;
}

// exponent: critical exponent of p, nu(p) or mu(p) by bispecials, by the
// closed-form family analysis, or directly on a prefix.
inline Certificate run_exponent(Json p, const Limits& lim = {}) {
  Stopwatch sw;
  Certificate cert;
  cert.command = "exponent";
  const auto word = detail::param<std::string>(p, "word", "nu_p");
  const auto method = detail::param<std::string>(p, "method", "bispecial");
  const auto expected = detail::expected_exponent(word);
  Json& ev = cert.evidence;
  try {
    if (method == "bispecial") {
      const auto max_bs = detail::param<std::size_t>(p, "max_bs", 500);
      const auto pol = detail::policy(p, lim);
      const auto r = critical_exponent_via_bispecials(WordStream::named(word), max_bs, pol);
      ev["exponent"] = r.exponent.str();
      ev["ratio"] = r.ratio.str();
      ev["witness"] = r.witness.str();
      ev["shortest_return"] = r.shortest_return.str();
      ev["bispecials"] = r.bispecials;
      ev["stabilized_at"] = r.stabilized_at;
      for (const auto& m : family_members(word, max_bs)) {
        if (m.word == r.witness) ev["witness_family"] = {{"family", std::string(1, family_tag(m.family))}, {"n", m.n}};
      }
      cert.outcome = !expected || r.exponent == *expected ? Outcome::pass : Outcome::fail;
      cert.summary = word + ": E = " + r.exponent.str() + " at " + r.witness.str() + " / " + r.shortest_return.str();
    } else if (method == "closed-form") {
      ev = closed_form_json(word, &cert.outcome);
      cert.summary = word + ": E = " + ev["exponent"].get<std::string>() + " from the family analysis";
    } else if (method == "prefix") {
      const auto n = detail::param<std::size_t>(p, "length", 100'000);
      const auto check_len = detail::param<std::size_t>(p, "check_length", 0);
      if (std::max(n, check_len) > lim.prefix_cap) {
        cert.outcome = Outcome::inconclusive;
        ev["reason"] = "prefix exceeds the memory cap";
      } else {
        const auto t = known::stream_letters(word, n);
        const Repetition rep = max_repetition(std::span<const Letter>(t));
        ev["length"] = n;
        ev["exponent"] = rep.exponent().str();
        ev["repetition"] = {{"start", rep.start}, {"length", rep.length}, {"period", rep.period}};
        bool ok = !expected || rep.exponent() == *expected;
        if (check_len > 0 && expected) {
          const auto big = known::stream_letters(word, check_len);
          const auto fr = is_free(std::span<const Letter>(big), ExponentBound::plus(*expected), 2);
          ev["check"] = {{"length", check_len}, {"bound", ExponentBound::plus(*expected).str()}, {"free", fr.free()}};
          ok = ok && fr.free();
        }
        cert.outcome = ok ? Outcome::pass : Outcome::fail;
      }
      cert.summary = word + ": prefix exponent " + ev.value("exponent", std::string("?"));
    } else {
      throw std::invalid_argument("unknown method '" + method + "' (bispecial, closed-form or prefix)");
    }
  } catch (const NotStabilized& e) {
    cert.outcome = Outcome::inconclusive;
    ev["reason"] = e.what();
    cert.summary = word + ": " + e.what();
  }
  cert.params = std::move(p);
  cert.seconds = sw.seconds();
  return cert;
}

// structure: complexity, bispecial families, return words and palindromes.
inline Certificate run_structure(Json p, const Limits& lim = {}) {
  Stopwatch sw;
  Certificate cert;
  cert.command = "structure";
  const auto word = detail::param<std::string>(p, "word", "p");
  const auto max_bs = detail::param<std::size_t>(p, "max_bs", 200);
  const auto report = detail::param<std::string>(p, "report", "all");
  const auto max_c = detail::param<std::size_t>(p, "max_complexity", 500);
  const auto max_r = detail::param<std::size_t>(p, "max_return", 50);
  const auto s = WordStream::named(word);
  const bool all = report == "all";
  Json& ev = cert.evidence;
  bool ok = true;
  try {
    const auto pol = detail::policy(p, lim);
    if (all || report == "families") {
      const auto rep = classify_bispecials(word, max_bs, pol);
      Json items = Json::array();
      for (const auto& c : rep.items) {
        Json it{{"word", c.entry.profile.w.str()},
                {"left", detail::letters_json(c.entry.profile.left)},
                {"right", detail::letters_json(c.entry.profile.right)},
                {"b", c.entry.profile.b()},
                {"shortest_return", c.entry.shortest_return.str()}};
        if (c.member) {
          it["family"] = std::string(1, family_tag(c.member->family));
          it["n"] = c.member->n;
          it["predicted_return_length"] = c.member->return_length;
        } else if (c.in_short_catalogue) {
          it["family"] = "short";
        }
        items.push_back(it);
      }
      ev["bispecials"] = items;
      ev["all_ordinary"] = rep.all_ordinary();
      ev["all_classified"] = rep.all_matched();
      ev["returns_match"] = rep.all_returns_match();
      ok = ok && rep.all_matched() && rep.all_returns_match() && (word != "p" || rep.all_ordinary());
    }
    if (all || report == "complexity") {
      const auto c = complexity(s, max_c, pol);
      bool linear = true;
      for (std::size_t n = 0; n <= max_c; ++n) linear = linear && c.value[n] == 2 * n + 1;
      ev["complexity"] = {{"max_len", max_c}, {"c_max", c.value.back()}, {"equals_2n_plus_1", linear}};
      if (word == "p") ok = ok && linear;
    }
    if (all || report == "returns") {
      const auto rc = return_word_counts(s, max_r, pol);
      ev["return_counts"] = {{"max_len", max_r},
                             {"factors", rc.value.factors},
                             {"min", rc.value.min_returns},
                             {"max", rc.value.max_returns}};
      if (word == "p") {
        ok = ok && rc.value.min_returns == 3 && rc.value.max_returns == 3;
        const auto r1 = return_words(Word::parse("1", 3), s, pol);
        const auto r10 = return_words(Word::parse("10", 3), s, pol);
        ev["returns_to_1"] = detail::words_json(r1.returns);
        ev["returns_to_10"] = detail::words_json(r10.returns);
        const auto f2 = stream_factors(word, 2, pol);
        ev["has_02"] = f2.value.count(Word::parse("02", 3)) > 0;
        ev["has_20"] = f2.value.count(Word::parse("20", 3)) > 0;
        ok = ok && ev["has_02"].get<bool>() && !ev["has_20"].get<bool>();
      }
    }
    if (all || report == "palindromes") {
      const auto pals = stream_palindromes(s, pol);
      ev["palindromes"] = {{"count", pals.value.size()}, {"list", detail::words_json(pals.value)}};
    }
    cert.outcome = ok ? Outcome::pass : Outcome::fail;
  } catch (const NotStabilized& e) {
    cert.outcome = Outcome::inconclusive;
    ev["reason"] = e.what();
  }
  cert.summary = word + " structure (" + report + "): " + outcome_name(cert.outcome);
  cert.params = std::move(p);
  cert.seconds = sw.seconds();
  return cert;
}

// ---------------------------------------------------------------------------
// Table of existence results for binary words by palindrome budget and
// exponent bound.

struct CellClass {
  std::string kind;   // green, red, empty, unclassified
  std::string label;  // thm3a.., 7a, 7b, thue-morse, periodic
};

inline const std::vector<std::string>& table_columns() {
  static const std::vector<std::string> cols{"2", "7/3", "5/2", "28/11", "13/5", "8/3", "3", "23/7", "10/3", "inf"};
  return cols;
}

// Budget nullopt is infinite; beta "inf" means no exponent bound.
inline CellClass classify_cell(std::optional<long> p, const std::string& beta) {
  const auto& cols = table_columns();
  if ((p && *p < 0) || std::find(cols.begin(), cols.end(), beta) == cols.end()) return {"unclassified", ""};
  const bool inf = beta == "inf";
  if (!p) return {inf || beta != "2" ? "green" : "red", "thue-morse"};
  if (inf && (*p == 9 || *p == 10)) return {"red", "periodic"};
  const std::optional<Rational> b = inf ? std::nullopt : std::optional<Rational>(Rational::parse(beta));
  if (b && *p == 18 && *b == Rational(28, 11)) return {"red", "7a"};
  if (b && *p == 20 && *b == Rational(5, 2)) return {"red", "7b"};
  // least budget labelled instance dominated by the cell
  std::optional<known::TransferData> best;
  for (const auto& d : known::transfer_instances()) {
    if (d.palindromes <= static_cast<std::size_t>(*p) && (!b || d.target.threshold <= *b) &&
        (!best || d.palindromes < best->palindromes)) {
      best = d;
    }
  }
  if (best) return {"green", best->id};
  return {"empty", ""};
}

inline std::optional<long> parse_budget(const Json& j) {
  if (j.is_string()) {
    if (j.get<std::string>() == "inf") return std::nullopt;
    return std::stol(j.get<std::string>());
  }
  return j.get<long>();
}

inline std::string budget_str(std::optional<long> p) { return p ? std::to_string(*p) : "inf"; }

inline Json nested(const Certificate& c) {
  return {{"command", c.command}, {"params", c.params}, {"outcome", outcome_name(c.outcome)}, {"summary", c.summary},
          {"evidence", c.evidence}};
}

inline Json table1_params(std::optional<long> p, const std::string& beta, const std::string& data_dir = "") {
  Json j{{"p", p ? Json(*p) : Json("inf")}, {"beta", beta}};
  const CellClass c = classify_cell(p, beta);
  if (c.kind == "green" && c.label.rfind("thm3", 0) == 0) j["instance"] = transfer_params(c.label, data_dir);
  return j;
}

inline Certificate run_table1(Json p, const Limits& lim = {}, const RunContext& ctx = {}) {
  Stopwatch sw;
  Certificate cert;
  cert.command = "table1";
  const std::optional<long> pal = parse_budget(p.at("p"));
  const std::string beta = p.at("beta").get<std::string>();
  const CellClass cls = classify_cell(pal, beta);
  const std::string cell = "(" + budget_str(pal) + ", " + (beta == "inf" ? beta : beta + "+") + ")";
  Json& ev = cert.evidence;
  ev["classification"] = cls.kind;
  ev["label"] = cls.label;
  Outcome out = Outcome::pass;
  Json parts = Json::array();
  auto add = [&](const Certificate& c) {
    parts.push_back(nested(c));
    out = combine(out, c.outcome);
  };
  if (cls.kind == "unclassified") {
    out = Outcome::inconclusive;
    cert.summary = "cell " + cell + " is outside the table: unclassified";
  } else if (cls.label == "thue-morse") {
    // the Thue-Morse word is 2+-free with unboundedly many palindromes
    std::vector<Letter> tm(4096);
    for (std::size_t i = 0; i < tm.size(); ++i) tm[i] = static_cast<Letter>(std::popcount(i) & 1);
    const bool free = is_free(std::span<const Letter>(tm), parse_bound("2+"), 2).free();
    Json counts = Json::array();
    bool growing = true;
    std::size_t last = 0;
    for (std::size_t n = 64; n <= tm.size(); n *= 4) {
      const std::size_t c = palindrome_set(std::span<const Letter>(tm.data(), n), 2).size();
      counts.push_back({{"prefix", n}, {"palindromes", c}});
      growing = growing && c > last;
      last = c;
    }
    ev["word"] = "thue-morse";
    ev["overlap_free_prefix"] = tm.size();
    ev["free"] = free;
    ev["palindrome_counts"] = counts;
    out = free && growing ? Outcome::pass : Outcome::fail;
    cert.summary = "Thue-Morse prefix of 4096 is 2+-free, palindromes grow with the prefix";
  } else if (cls.label == "periodic") {
    // (001011)^ω has 9 palindromes and no exponent bound
    const auto s = WordStream::periodic(Word::parse("001011", 2));
    const auto pals = stream_palindromes(s, {600, 100'000});
    ev["word"] = "(001011)^w";
    ev["palindromes"] = detail::words_json(pals.value);
    out = pals.value.size() <= static_cast<std::size_t>(*pal) ? Outcome::pass : Outcome::fail;
    cert.summary = "(001011)^w has " + std::to_string(pals.value.size()) + " palindromes";
  } else if (cls.kind == "green") {
    if (!p.contains("instance")) p["instance"] = transfer_params(cls.label);
    add(run_verify_morphism(p["instance"], ctx));
    cert.summary = "cell " + cell + ": existence via " + cls.label;
  } else if (cls.label == "7a" || cls.label == "7b") {
    const bool a = cls.label == "7a";
    const std::string word = a ? "mu_p" : "nu_p";
    add(run_exponent({{"word", word}, {"method", "bispecial"}}, lim));
    Certificate pc = run_structure({{"word", word}, {"report", "palindromes"}, {"prefix", 100'000}}, lim);
    const std::size_t count = pc.evidence.contains("palindromes") ? pc.evidence["palindromes"]["count"].get<std::size_t>() : 0;
    if (count != static_cast<std::size_t>(*pal)) pc.outcome = combine(pc.outcome, Outcome::fail);
    add(pc);
    Json rp = a ? Json{{"budget", 18}, {"exp", "13/5"}, {"ell", 20}, {"margin", 46}, {"connectivity", "weak"},
                       {"avoid", "1101"}, {"word", "mu_p"}, {"forbidden", "F18"}, {"expected_components", 4}}
                : Json{{"budget", 20}, {"exp", "28/11"}, {"ell", 78}, {"margin", 78}, {"connectivity", "strong"},
                       {"avoid", "1011"}, {"word", "nu_p"}, {"forbidden", "F20"}, {"expected_components", 4}};
    add(run_rauzy(rp, lim, ctx));
    add(run_preimage({{"morphism", a ? "mu" : "nu"}}));
    cert.summary = "cell " + cell + ": optimal via " + word;
  } else {
    Json op{{"budget", *pal}, {"exp", beta == "inf" ? "" : beta + "+"}, {"depth_cap", p.value("depth_cap", 200)}};
    op["node_cap"] = p.value("node_cap", lim.node_cap == 0 ? std::uint64_t{50'000'000} : lim.node_cap);
    add(run_optimality(op, lim, ctx));
    cert.summary = "cell " + cell + ": nonexistence by exhaustive search";
  }
  ev["parts"] = parts;
  cert.outcome = out;
  cert.params = std::move(p);
  cert.seconds = sw.seconds();
  return cert;
}

// constants: dominant root, asymptotic exponent and the leading constants of
// the length sequences, compared with printed reference values.
inline Certificate run_constants(Json p) {
  Stopwatch sw;
  Certificate cert;
  cert.command = "constants";
  const double tol = detail::param<double>(p, "tolerance", 1e-6);
  const double width = detail::param<double>(p, "width", 1e-10);
  const double near = detail::param<double>(p, "near", 0.005);
  const double beta_tol = detail::param<double>(p, "beta_tolerance", 1e-5);
  if (!p.contains("printed")) {
    p["printed"] = Json::array({Json{{"name", "A1"}, {"seed", {6, 10, 17}}, {"value", 5.581308964}},
                                Json{{"name", "A2"}, {"seed", {4, 7, 13}}, {"value", 4.213205567}},
                                Json{{"name", "A3"}, {"seed", {11, 21, 36}}, {"value", 11.530751580}},
                                Json{{"name", "A4"}, {"seed", {10, 15, 26}}, {"value", 8.704306843}}});
  }
  const Interval e = asymptotic_exponent();
  const CubicRoots roots = cubic_roots();
  Json& ev = cert.evidence;
  ev["asymptotic_exponent"] = {e.lo, e.hi};
  ev["beta"] = {roots.beta.lo, roots.beta.hi};
  const bool e_ok = e.width() <= width && std::abs(e.mid() - 2.48) <= near;
  const bool b_ok = std::abs(roots.beta.mid() - 1.75488) <= beta_tol;
  ev["exponent_ok"] = e_ok;
  ev["beta_ok"] = b_ok;
  // the same formula with β and λ rounded to five decimals
  const double b5 = 1.75488, re5 = 0.12256, im5 = 0.74486, l2 = re5 * re5 + im5 * im5;
  Json off = Json::array();
  Json consts = Json::array();
  for (const auto& c : p["printed"]) {
    const auto seed = c["seed"].get<std::vector<std::int64_t>>();
    const double printed = c["value"].get<double>();
    const CubicConstants k = sequence_solver(seed.at(0), seed.at(1), seed.at(2));
    const double a5 = (static_cast<double>(seed[0]) * l2 - 2.0 * static_cast<double>(seed[1]) * re5 +
                       static_cast<double>(seed[2])) /
                      ((b5 - re5) * (b5 - re5) + im5 * im5);
    const double diff = std::abs(k.A.mid() - printed);
    consts.push_back({{"name", c["name"]},
                      {"computed", k.A.mid()},
                      {"radius", k.A.width() / 2},
                      {"printed", printed},
                      {"difference", diff},
                      {"five_digit_roots", a5},
                      {"five_digit_difference", std::abs(a5 - printed)}});
    if (diff > tol) off.push_back(c["name"]);
  }
  ev["constants"] = consts;
  ev["off"] = off;
  cert.outcome = e_ok && b_ok && off.empty() ? Outcome::pass : Outcome::fail;
  char buf[160];
  std::snprintf(buf, sizeof buf, "E* = %.12f (width %.1e), beta = %.12f", e.mid(), e.width(), roots.beta.mid());
  cert.summary = buf;
  if (!off.empty()) {
    std::string names;
    for (const auto& n : off) names += (names.empty() ? "" : ", ") + n.get<std::string>();
    std::snprintf(buf, sizeof buf, "%.0e", tol);
    cert.summary += "; printed " + names + " differ by more than " + buf;
  }
  cert.params = std::move(p);
  cert.seconds = sw.seconds();
  return cert;
}

// two-sided: x = ν(p)ᴿ·mid·ν(p); its central factor is checked for
// freeness, and a probe word must be a prefix of 110·ν(p) but no factor of
// ν(p) or its reversal.
inline Certificate run_two_sided(Json p, const Limits& lim = {}) {
  Stopwatch sw;
  Certificate cert;
  cert.command = "two-sided";
  const auto n = detail::param<std::size_t>(p, "prefix", 100'000);
  const auto half = detail::param<std::size_t>(p, "half", 97);
  const auto mid = Word::parse(detail::param<std::string>(p, "middle", "010110"), 2);
  const auto probe = Word::parse(detail::param<std::string>(p, "probe", "110011001001101"), 2);
  const auto bound = parse_bound(detail::param<std::string>(p, "exp", "5/2+"));
  Json& ev = cert.evidence;
  if (n > lim.prefix_cap) {
    cert.outcome = Outcome::inconclusive;
    ev["reason"] = "prefix exceeds the memory cap";
  } else {
    const auto nu = known::stream_letters("nu_p", n);
    std::vector<Letter> centre(nu.begin(), nu.begin() + static_cast<std::ptrdiff_t>(half));
    std::reverse(centre.begin(), centre.end());
    for (Letter x : mid.letters()) centre.push_back(x);
    centre.insert(centre.end(), nu.begin(), nu.begin() + static_cast<std::ptrdiff_t>(half));
    const auto fr = is_free(std::span<const Letter>(centre), bound, 2);
    std::vector<Letter> head{1, 1, 0};
    head.insert(head.end(), nu.begin(), nu.begin() + static_cast<std::ptrdiff_t>(probe.size()));
    const bool prefix = Word(std::span<const Letter>(head.data(), probe.size()), 2) == probe;
    const std::vector<Letter> rev(nu.rbegin(), nu.rend());
    const bool in_nu = is_factor(probe, std::span<const Letter>(nu));
    const bool in_rev = is_factor(probe, std::span<const Letter>(rev));
    ev = {{"central_length", centre.size()}, {"central_free", fr.free()}, {"prefix_of_110nu", prefix},
          {"factor_of_nu", in_nu},           {"factor_of_reverse", in_rev}};
    if (!fr.free()) ev["violation"] = fr.violation->factor.str();
    cert.outcome = fr.free() && prefix && !in_nu && !in_rev ? Outcome::pass : Outcome::fail;
    cert.summary = "central " + std::to_string(centre.size()) + " letters " + bound.str() + "-free: " +
                   (fr.free() ? "yes" : "no") + ", " + probe.str() + " prefix of 110 nu(p): " + (prefix ? "yes" : "no") +
                   ", absent from nu(p) and its reverse: " + (!in_nu && !in_rev ? "yes" : "no");
  }
  cert.params = std::move(p);
  cert.seconds = sw.seconds();
  return cert;
}

// Dispatch by command name.
inline Certificate run_command(const std::string& cmd, const Json& params, const Limits& lim = {},
                               const RunContext& ctx = {}) {
  if (cmd == "verify-morphism") return run_verify_morphism(params, ctx);
  if (cmd == "optimality") return run_optimality(params, lim, ctx);
  if (cmd == "growth") return run_growth(params, ctx);
  if (cmd == "preimage-prove") return run_preimage(params);
  if (cmd == "rauzy") return run_rauzy(params, lim, ctx);
  if (cmd == "exponent") return run_exponent(params, lim);
  if (cmd == "structure") return run_structure(params, lim);
  if (cmd == "table1") return run_table1(params, lim, ctx);
  if (cmd == "constants") return run_constants(params);
  if (cmd == "two-sided") return run_two_sided(params, lim);
  throw std::invalid_argument("unknown command '" + cmd + "'");
}

// Re-runs a certificate's command with its stored parameters.
inline Certificate replay(const Certificate& c, const Limits& lim = {}) { return run_command(c.command, c.params, lim); }

}  // namespace fewpal
