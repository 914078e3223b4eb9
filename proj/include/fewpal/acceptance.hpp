#pragma once

// The acceptance suite: one check per criterion, each built from
// certificates so verify-all can aggregate and export them.

#include <cmath>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "fewpal/tasks.hpp"

namespace fewpal {

struct CriterionResult {
  int id = 0;
  std::string title;
  Outcome outcome = Outcome::inconclusive;
  std::string detail;
  std::vector<Certificate> certificates;
  bool expected_red = false;  // known to fail for a documented reason
  std::string reason;
};

struct AcceptanceOptions {
  std::string data_dir = default_data_dir();
  Limits limits = Limits::from_env();
  RunContext ctx;
  std::set<int> only;  // empty: all
};

namespace tolerance {
inline constexpr double interval_width = 1e-10;   // asymptotic exponent
inline constexpr double asymptotic_near = 0.005;  // to 2.48
inline constexpr double beta = 1e-5;              // to 1.75488
inline constexpr double constants = 1e-6;         // A1..A4
inline constexpr double rounding_model = 1e-9;    // printed A1, A2 from 5-digit roots
inline constexpr double family_precision = 1e-12;
inline constexpr double growth = 0.01;
}  // namespace tolerance

class AcceptanceSuite {
 public:
  explicit AcceptanceSuite(AcceptanceOptions opt = {}) : opt_(std::move(opt)) {}

  std::vector<CriterionResult> run(const std::function<void(const CriterionResult&)>& on_done = {}) {
    using Fn = CriterionResult (AcceptanceSuite::*)();
    const std::vector<Fn> all{&AcceptanceSuite::transfers,   &AcceptanceSuite::budgets,   &AcceptanceSuite::baseline,
                              &AcceptanceSuite::prefix_exp,  &AcceptanceSuite::bispecial, &AcceptanceSuite::asymptotic,
                              &AcceptanceSuite::structure_p, &AcceptanceSuite::preimages, &AcceptanceSuite::rauzy,
                              &AcceptanceSuite::optimality,  &AcceptanceSuite::growth,    &AcceptanceSuite::two_sided};
    std::vector<CriterionResult> out;
    for (std::size_t i = 0; i < all.size(); ++i) {
      if (!opt_.only.empty() && !opt_.only.count(static_cast<int>(i) + 1)) continue;
      CriterionResult r;
      try {
        r = (this->*all[i])();
      } catch (const std::exception& e) {
        r.outcome = Outcome::fail;
        r.detail = std::string("error: ") + e.what();
      }
      r.id = static_cast<int>(i) + 1;
      if (r.title.empty()) r.title = titles()[i];
      if (on_done) on_done(r);
      out.push_back(std::move(r));
    }
    return out;
  }

  static const std::vector<std::string>& titles() {
    static const std::vector<std::string> t{"transfer verification",        "palindrome budgets",
                                            "baseline palindrome counts",   "critical exponents on prefixes",
                                            "critical exponents by bispecials", "asymptotic exponent and constants",
                                            "structure of p",               "pre-image proofs",
                                            "Rauzy construction",           "backtracking optimality",
                                            "growth rate",                  "two-sided word"};
    return t;
  }

 private:
  AcceptanceOptions opt_;
  std::map<std::string, Certificate> morphisms_;

  const Certificate& morphism_cert(const std::string& id) {
    auto it = morphisms_.find(id);
    if (it == morphisms_.end()) {
      it = morphisms_.emplace(id, run_verify_morphism(transfer_params(id, opt_.data_dir), opt_.ctx)).first;
    }
    return it->second;
  }

  static std::string join(const std::vector<std::string>& v) {
    std::string s;
    for (const auto& x : v) s += (s.empty() ? "" : ", ") + x;
    return s;
  }

  CriterionResult transfers() {
    CriterionResult r;
    r.outcome = Outcome::pass;
    // exact thresholds for two instances
    const std::map<std::string, Rational> t_expected{{"thm3d", Rational(16)}, {"thm3e", Rational(39, 2)}};
    std::vector<std::string> bad;
    std::size_t ok = 0;
    for (const auto& id : transfer_ids()) {
      Certificate c = morphism_cert(id);
      const auto& ev = c.evidence;
      bool good = ev.value("transfer_passed", false) && ev.value("synchronizing", false) && ev.contains("q");
      if (good && t_expected.count(id)) good = ev["threshold"].get<std::string>() == t_expected.at(id).str();
      if (!good) {
        bad.push_back(id);
        c.outcome = Outcome::fail;
      } else {
        ++ok;
      }
      r.outcome = combine(r.outcome, good ? Outcome::pass : Outcome::fail);
      r.certificates.push_back(c);
    }
    r.detail = std::to_string(ok) + "/8 transfers pass";
    if (!bad.empty()) r.detail += "; failing: " + join(bad);
    else r.detail += "; t(thm3d) = 16, t(thm3e) = 39/2";
    return r;
  }

  CriterionResult budgets() {
    CriterionResult r;
    r.outcome = Outcome::pass;
    std::vector<std::string> bad, counts;
    for (const auto& id : transfer_ids()) {
      const Certificate& c = morphism_cert(id);
      if (!c.evidence.contains("palindromes")) {
        bad.push_back(id);
        r.outcome = Outcome::fail;
        continue;
      }
      const auto& pe = c.evidence["palindromes"];
      const bool good = pe["exact"].get<bool>() && pe["cut_reached"].get<bool>();
      counts.push_back(std::to_string(pe["count"].get<std::size_t>()));
      if (!good) bad.push_back(id);
      r.outcome = combine(r.outcome, good ? Outcome::pass : Outcome::fail);
    }
    r.detail = "counts " + join(counts);
    if (!bad.empty()) r.detail += "; failing: " + join(bad);
    return r;
  }

  CriterionResult baseline() {
    CriterionResult r;
    Certificate per = run_table1({{"p", 9}, {"beta", "inf"}}, opt_.limits, opt_.ctx);
    const std::size_t nper = per.evidence.value("palindromes", Json::array()).size();
    if (nper != 9) per.outcome = Outcome::fail;
    r.outcome = per.outcome;
    r.certificates.push_back(per);
    r.detail = "(001011)^w: " + std::to_string(nper);
    for (auto [word, want] : {std::pair{"mu_p", 18UL}, std::pair{"nu_p", 20UL}}) {
      Certificate c = run_structure(
          {{"word", word}, {"report", "palindromes"}, {"prefix", 100'000}, {"prefix_cap", 200'000}}, opt_.limits);
      std::size_t n = 0;
      if (c.outcome == Outcome::pass) {
        n = c.evidence["palindromes"]["count"].get<std::size_t>();
        if (n != want) c.outcome = Outcome::fail;
      }
      r.outcome = combine(r.outcome, c.outcome);
      r.detail += std::string(", ") + word + ": " + (c.outcome == Outcome::inconclusive ? "?" : std::to_string(n));
      r.certificates.push_back(c);
    }
    return r;
  }

  CriterionResult prefix_exp() {
    CriterionResult r;
    r.outcome = Outcome::pass;
    for (const char* word : {"nu_p", "mu_p"}) {
      Certificate c = run_exponent(
          {{"word", word}, {"method", "prefix"}, {"length", 100'000}, {"check_length", 1'000'000}}, opt_.limits);
      r.outcome = combine(r.outcome, c.outcome);
      r.detail += std::string(r.detail.empty() ? "" : ", ") + word + ": " + c.evidence.value("exponent", "?") +
                  (c.evidence.contains("check") && c.evidence["check"]["free"].get<bool>() ? " (free at 10^6)" : "");
      r.certificates.push_back(c);
    }
    return r;
  }

  CriterionResult bispecial() {
    CriterionResult r;
    r.outcome = Outcome::pass;
    // maximizing witness: nu_p family C, n = 0 (ratio 3/2); mu_p family B, n = 0 (ratio 17/11)
    const std::vector<std::tuple<std::string, std::string, std::string>> want{{"nu_p", "C", "3/2"},
                                                                              {"mu_p", "B", "17/11"}};
    for (const auto& [word, fam, ratio] : want) {
      Certificate c = run_exponent({{"word", word}, {"method", "bispecial"}}, opt_.limits);
      if (c.outcome == Outcome::pass) {
        const auto& ev = c.evidence;
        const bool witness_ok = ev["ratio"].get<std::string>() == ratio && ev.contains("witness_family") &&
                                ev["witness_family"]["family"].get<std::string>() == fam &&
                                ev["witness_family"]["n"].get<std::size_t>() == 0;
        if (!witness_ok) c.outcome = Outcome::fail;
        r.detail += (r.detail.empty() ? "" : "; ") + word + ": E = " + ev["exponent"].get<std::string>() +
                    ", witness " + fam + "(0) ratio " + ev["ratio"].get<std::string>();
      }
      r.outcome = combine(r.outcome, c.outcome);
      r.certificates.push_back(c);
      Certificate cf = run_exponent({{"word", word}, {"method", "closed-form"}}, opt_.limits);
      if (cf.evidence.value("precision", 1.0) > tolerance::family_precision) cf.outcome = Outcome::fail;
      for (const auto& f : cf.evidence["families"]) {
        if (f["verdict"].get<std::string>() != "bounded by target") cf.outcome = Outcome::fail;
      }
      r.outcome = combine(r.outcome, cf.outcome);
      r.certificates.push_back(cf);
    }
    r.detail += "; all family tails bounded";
    if (r.outcome != Outcome::pass) r.detail += " (see certificates)";
    return r;
  }

  CriterionResult asymptotic() {
    CriterionResult r;
    const Certificate c = run_constants({{"tolerance", tolerance::constants},
                                         {"width", tolerance::interval_width},
                                         {"near", tolerance::asymptotic_near},
                                         {"beta_tolerance", tolerance::beta}});
    r.outcome = c.outcome;
    r.detail = c.summary;
    r.certificates.push_back(c);
    const auto& ev = c.evidence;
    if (c.outcome == Outcome::fail && ev["exponent_ok"].get<bool>() && ev["beta_ok"].get<bool>() &&
        ev["off"] == Json::array({"A1", "A2"})) {
      // expected only when rounded roots reproduce the printed values
      bool explained = true;
      for (const auto& k : ev["constants"]) {
        if (k["difference"].get<double>() > tolerance::constants) {
          explained = explained && k["five_digit_difference"].get<double>() <= tolerance::rounding_model;
        }
      }
      if (explained) {
        r.expected_red = true;
        r.reason =
            "printed A1, A2 equal the formula evaluated with beta and lambda rounded to five decimals "
            "(reproduced to 1e-9); the exact roots give 5.581322403, 4.213215630";
      }
    }
    return r;
  }

  CriterionResult structure_p() {
    CriterionResult r;
    Certificate c = run_structure({{"word", "p"}, {"max_bs", 200}, {"report", "all"}}, opt_.limits);
    r.outcome = c.outcome;
    if (c.outcome != Outcome::inconclusive) {
      const auto& ev = c.evidence;
      const bool r1 = ev["returns_to_1"] == Json::array({"10", "102", "12"});
      const bool r10 = ev["returns_to_10"] == Json::array({"10", "1012", "102"});
      if (!r1 || !r10) r.outcome = Outcome::fail;
      r.detail = std::to_string(ev["bispecials"].size()) + " bispecials (ordinary: " +
                 (ev["all_ordinary"].get<bool>() ? "all" : "not all") +
                 ", classified: " + (ev["all_classified"].get<bool>() ? "all" : "not all") +
                 "), C(n) = 2n+1: " + (ev["complexity"]["equals_2n_plus_1"].get<bool>() ? "yes" : "no") +
                 ", return counts " + std::to_string(ev["return_counts"]["min"].get<std::size_t>()) + ".." +
                 std::to_string(ev["return_counts"]["max"].get<std::size_t>());
    }
    r.certificates.push_back(c);
    return r;
  }

  CriterionResult preimages() {
    CriterionResult r;
    r.outcome = Outcome::pass;
    for (const char* m : {"mu", "nu"}) {
      Certificate c = run_preimage({{"morphism", m}});
      r.outcome = combine(r.outcome, c.outcome);
      r.detail += (r.detail.empty() ? "" : "; ") + c.summary;
      r.certificates.push_back(c);
    }
    return r;
  }

  CriterionResult rauzy() {
    CriterionResult r;
    Certificate a = run_rauzy({{"budget", 18}, {"exp", "13/5"}, {"ell", 20}, {"margin", 46}, {"connectivity", "weak"},
                               {"avoid", "1101"}, {"word", "mu_p"}, {"forbidden", "F18"}, {"expected_components", 4}},
                              opt_.limits, opt_.ctx);
    Certificate b = run_rauzy({{"budget", 20}, {"exp", "28/11"}, {"ell", 78}, {"margin", 78}, {"connectivity", "strong"},
                               {"avoid", "1011"}, {"word", "nu_p"}, {"forbidden", "F20"}, {"expected_components", 4}},
                              opt_.limits, opt_.ctx);
    // information only: with margin 20 the order-20 survivors do not separate
    Certificate lit = run_rauzy({{"budget", 18}, {"exp", "13/5"}, {"ell", 20}, {"margin", 20}, {"connectivity", "weak"}},
                                opt_.limits, opt_.ctx);
    r.outcome = combine(a.outcome, b.outcome);
    r.detail = a.summary + "; " + b.summary + " [margin 20 gives " +
               std::to_string(lit.evidence["arcs"].get<std::size_t>()) + " arcs in " +
               std::to_string(lit.evidence["components"].size()) + " component(s)]";
    r.certificates = {a, b};
    return r;
  }

  CriterionResult optimality() {
    CriterionResult r;
    Certificate a = run_optimality({{"budget", 8}, {"exp", ""}, {"depth_cap", 400}}, opt_.limits, opt_.ctx);
    Certificate b = run_optimality({{"budget", 14}, {"exp", "3"}, {"depth_cap", 400}}, opt_.limits, opt_.ctx);
    r.outcome = combine(a.outcome, b.outcome);
    r.detail = a.summary + "; " + b.summary;
    r.certificates = {a, b};
    return r;
  }

  CriterionResult growth() {
    CriterionResult r;
    Certificate c = run_growth({{"budget", 11}, {"n", 60}, {"kappa", "1.1127756842787"}, {"tolerance", tolerance::growth}},
                               opt_.ctx);
    r.outcome = c.outcome;
    r.detail = c.summary;
    r.certificates.push_back(c);
    return r;
  }

  CriterionResult two_sided() {
    CriterionResult r;
    const Certificate c = run_two_sided({{"prefix", 100'000}, {"half", 97}, {"middle", "010110"},
                                         {"probe", "110011001001101"}, {"exp", "5/2+"}},
                                        opt_.limits);
    r.outcome = c.outcome;
    r.detail = c.summary;
    r.certificates.push_back(c);
    return r;
  }
};

// Suite outcome: expected reds count as failures here; callers decide how
// to treat them.
inline Outcome suite_outcome(const std::vector<CriterionResult>& rs) {
  Outcome o = Outcome::pass;
  for (const auto& r : rs) o = combine(o, r.outcome);
  return o;
}

inline std::string criterion_line(const CriterionResult& r) {
  const char* tag = r.outcome == Outcome::pass ? "PASS" : r.outcome == Outcome::fail ? "FAIL" : "INCONCLUSIVE";
  std::string s = "[" + std::string(tag) + "] " + std::to_string(r.id) + ". " + r.title + ": " + r.detail;
  if (r.expected_red) s += " (known: " + r.reason + ")";
  return s;
}

}  // namespace fewpal
