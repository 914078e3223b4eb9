// Command-line front end: every command prints a one-line summary, can write
// its certificate, and exits 0 (pass), 1 (fail) or 2 (inconclusive).

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <sstream>

#include "fewpal/fewpal.hpp"

using namespace fewpal;

namespace {

struct Common {
  std::string data;
  std::string out;
  std::string checkpoint;
  bool resume = false;
  bool print = false;
  unsigned workers = 0;
};

std::string bound_string(const std::string& exp, bool strict) {
  if (exp.empty() || exp == "inf") return "";
  parse_bound(exp + (strict ? "+" : ""));  // validates
  return exp + (strict ? "+" : "");
}

std::set<int> parse_ids(const std::string& s) {
  std::set<int> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (!tok.empty()) out.insert(std::stoi(tok));
  }
  return out;
}

int finish(const Certificate& c, const Common& com) {
  std::cout << outcome_name(c.outcome) << ": " << c.summary << '\n';
  if (com.print) std::cout << c.dump();
  if (!com.out.empty()) c.save(com.out);
  return exit_code(c.outcome);
}

void print_grid() {
  const auto& cols = table_columns();
  std::cout << "p\\beta";
  for (const auto& c : cols) std::cout << '\t' << (c == "inf" ? c : c + "+");
  std::cout << '\n';
  std::vector<std::optional<long>> rows;
  for (long p = 0; p <= 26; ++p) rows.emplace_back(p);
  rows.emplace_back(std::nullopt);
  for (const auto& p : rows) {
    std::cout << budget_str(p);
    for (const auto& b : cols) {
      const CellClass c = classify_cell(p, b);
      std::cout << '\t' << (c.label.empty() ? c.kind : c.kind + ":" + c.label);
    }
    std::cout << '\n';
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Binary words with few palindromes: verification tool"};
  app.require_subcommand(1);
  Common com;
  app.add_option("--data", com.data, "data directory (default: FEWPAL_DATA or the built-in path)");
  app.add_option("--out", com.out, "write the certificate to this file");
  app.add_option("--workers", com.workers, "worker threads (default: FEWPAL_WORKERS or all processors)");
  app.add_option("--checkpoint", com.checkpoint, "checkpoint file for long searches");
  app.add_flag("--resume", com.resume, "continue from the checkpoint");
  app.add_flag("--print", com.print, "print the certificate");

  // table1
  auto* t1 = app.add_subcommand("table1", "verify one cell of the existence table");
  std::string t1_pal, t1_beta;
  std::size_t t1_depth = 200;
  std::uint64_t t1_nodes = 0;
  bool t1_list = false;
  t1->add_option("--pal", t1_pal, "palindrome budget p, or inf");
  t1->add_option("--beta", t1_beta, "exponent column, e.g. 28/11, or inf");
  t1->add_option("--depth-cap", t1_depth, "search depth for empty cells");
  t1->add_option("--node-cap", t1_nodes, "search node cap for empty cells");
  t1->add_flag("--list", t1_list, "print the classification grid");

  auto* vm = app.add_subcommand("verify-morphism", "transfer and palindrome check of a morphism");
  std::string vm_id;
  std::optional<std::size_t> vm_window;
  vm->add_option("--instance", vm_id, "thm3a .. thm3h")->required();
  vm->add_option("--window", vm_window, "source window length for the palindrome census");

  auto* op = app.add_subcommand("optimality", "exhaustive search for long words");
  unsigned op_alpha = 2;
  std::string op_exp;
  bool op_strict = false;
  std::size_t op_pal = 0, op_cap = 200;
  std::uint64_t op_nodes = 0;
  op->add_option("--alphabet", op_alpha, "alphabet size");
  op->add_option("--exp", op_exp, "exponent bound, e.g. 3 or 7/3");
  op->add_flag("--strict", op_strict, "forbid exponents above the bound only");
  op->add_option("--pal", op_pal, "palindrome budget")->required();
  op->add_option("--cap", op_cap, "depth cap");
  op->add_option("--node-cap", op_nodes, "node cap (default: FEWPAL_NODE_CAP)");

  auto* gr = app.add_subcommand("growth", "growth rate of words under a palindrome budget");
  std::size_t gr_pal = 11, gr_n = 60;
  std::string gr_kappa = "1.1127756842787";
  double gr_tol = 0.01;
  gr->add_option("--pal", gr_pal, "palindrome budget");
  gr->add_option("--max-n", gr_n, "largest length counted");
  gr->add_option("--kappa", gr_kappa, "reference growth constant");
  gr->add_option("--tolerance", gr_tol, "allowed difference");

  auto* pp = app.add_subcommand("preimage-prove", "refute forbidden pre-image factors");
  std::string pp_m = "mu", pp_family;
  std::uint64_t pp_budget = 1'000'000;
  pp->add_option("--morphism", pp_m, "mu or nu");
  pp->add_option("--family", pp_family, "image forbidden set (F18 for mu, F20 for nu)");
  pp->add_option("--budget", pp_budget, "search nodes per factor");

  auto* ra = app.add_subcommand("rauzy", "survivor sets and Rauzy graph components");
  std::size_t ra_pal = 18, ra_ell = 20;
  std::optional<std::size_t> ra_margin;
  std::string ra_exp = "13/5", ra_mode = "weak", ra_compare, ra_avoid, ra_forbidden, ra_export;
  bool ra_strict = false;
  int ra_expect = 0;
  ra->add_option("--pal", ra_pal, "palindrome budget");
  ra->add_option("--exp", ra_exp, "exponent bound");
  ra->add_flag("--strict", ra_strict, "forbid exponents above the bound only");
  ra->add_option("--ell", ra_ell, "word length of the survivors");
  ra->add_option("--margin", ra_margin, "extension length on each side (default: ell)");
  ra->add_option("--mode", ra_mode, "weak or strong")->check(CLI::IsMember({"weak", "strong"}));
  ra->add_option("--compare", ra_compare, "word whose Rauzy graph the avoiding component must equal");
  ra->add_option("--avoid", ra_avoid, "factor avoided by the compared component");
  ra->add_option("--forbidden", ra_forbidden, "forbidden set for the length bridge check");
  ra->add_option("--components", ra_expect, "expected number of components");
  ra->add_option("--export", ra_export, "write the arc list to this file");

  auto* ex = app.add_subcommand("exponent", "critical exponent of p, nu_p or mu_p");
  std::string ex_word = "nu_p", ex_method = "bispecial";
  std::size_t ex_bs = 500, ex_len = 100'000, ex_check = 0;
  ex->add_option("--word", ex_word, "p, nu_p or mu_p");
  ex->add_option("--method", ex_method, "bispecial, closed-form or prefix")
      ->check(CLI::IsMember({"bispecial", "closed-form", "prefix"}));
  ex->add_option("--max-bs", ex_bs, "longest bispecial considered");
  ex->add_option("--length", ex_len, "prefix length (prefix method)");
  ex->add_option("--check-length", ex_check, "also check freeness up to this prefix");

  auto* st = app.add_subcommand("structure", "complexity, bispecials and return words");
  std::string st_word = "p", st_report = "all";
  std::size_t st_bs = 200;
  st->add_option("--word", st_word, "p, nu_p or mu_p");
  st->add_option("--max-bs", st_bs, "longest bispecial considered");
  st->add_option("--report", st_report, "families, complexity, returns, palindromes or all")
      ->check(CLI::IsMember({"families", "complexity", "returns", "palindromes", "all"}));

  auto* rp = app.add_subcommand("replay", "re-run a certificate and compare the evidence");
  std::string rp_file;
  rp->add_option("file", rp_file, "certificate file")->required();

  auto* va = app.add_subcommand("verify-all", "run the acceptance suite");
  std::string va_only, va_dir;
  va->add_option("--only", va_only, "comma-separated criterion numbers");
  va->add_option("--out-dir", va_dir, "write every certificate into this directory");

  CLI11_PARSE(app, argc, argv);

  try {
    const Limits lim = Limits::from_env();
    RunContext ctx{com.checkpoint, com.resume, com.workers, ""};
    const std::string data = com.data.empty() ? default_data_dir() : com.data;

    if (t1->parsed()) {
      if (t1_list) {
        print_grid();
        return 0;
      }
      if (t1_pal.empty() || t1_beta.empty()) throw std::invalid_argument("table1 needs --pal and --beta (or --list)");
      const std::optional<long> pal = parse_budget(Json(t1_pal));
      std::string beta = t1_beta;
      if (!beta.empty() && beta.back() == '+') beta.pop_back();
      Json p = table1_params(pal, beta, data);
      p["depth_cap"] = t1_depth;
      p["node_cap"] = t1_nodes ? t1_nodes : lim.node_cap ? lim.node_cap : 50'000'000;
      return finish(run_table1(p, lim, ctx), com);
    }
    if (vm->parsed()) {
      Json p = transfer_params(vm_id, data);
      if (vm_window) p["window"] = *vm_window;
      return finish(run_verify_morphism(p, ctx), com);
    }
    if (op->parsed()) {
      Json p{{"alphabet", op_alpha}, {"budget", op_pal}, {"exp", bound_string(op_exp, op_strict)}, {"depth_cap", op_cap}};
      p["node_cap"] = op_nodes ? op_nodes : lim.node_cap;
      return finish(run_optimality(p, lim, ctx), com);
    }
    if (gr->parsed()) {
      return finish(run_growth({{"budget", gr_pal}, {"n", gr_n}, {"kappa", gr_kappa}, {"tolerance", gr_tol}}, ctx), com);
    }
    if (pp->parsed()) {
      const std::string expect = pp_m == "mu" ? "F18" : "F20";
      if (!pp_family.empty() && pp_family != expect) {
        throw std::invalid_argument("the " + pp_m + " proofs use the image set " + expect);
      }
      return finish(run_preimage({{"morphism", pp_m}, {"budget", pp_budget}}), com);
    }
    if (ra->parsed()) {
      Json p{{"budget", ra_pal}, {"exp", bound_string(ra_exp, ra_strict)}, {"ell", ra_ell},
             {"margin", ra_margin.value_or(ra_ell)}, {"connectivity", ra_mode}};
      if (!ra_compare.empty()) {
        p["word"] = ra_compare;
        // the component of the compared word avoids a factor the word lacks
        p["avoid"] = !ra_avoid.empty() ? ra_avoid : ra_compare == "mu_p" ? "1101" : "1011";
      }
      if (!ra_forbidden.empty()) p["forbidden"] = ra_forbidden;
      if (ra_expect) p["expected_components"] = ra_expect;
      ctx.graph_out = ra_export;
      return finish(run_rauzy(p, lim, ctx), com);
    }
    if (ex->parsed()) {
      Json p{{"word", ex_word}, {"method", ex_method}};
      if (ex_method == "bispecial") p["max_bs"] = ex_bs;
      if (ex_method == "prefix") {
        p["length"] = ex_len;
        p["check_length"] = ex_check;
      }
      return finish(run_exponent(p, lim), com);
    }
    if (st->parsed()) {
      return finish(run_structure({{"word", st_word}, {"max_bs", st_bs}, {"report", st_report}}, lim), com);
    }
    if (rp->parsed()) {
      const Certificate orig = Certificate::load(rp_file);
      const Certificate again = replay(orig, lim);
      const bool same = same_evidence(orig, again);
      std::cout << (same ? "match" : "mismatch") << ": " << orig.command << " -> " << outcome_name(again.outcome)
                << " (stored " << outcome_name(orig.outcome) << ")\n";
      if (!same) return 1;
      return exit_code(again.outcome);
    }
    if (va->parsed()) {
      AcceptanceOptions opt;
      opt.data_dir = data;
      opt.limits = lim;
      opt.ctx = ctx;
      opt.only = parse_ids(va_only);
      AcceptanceSuite suite(opt);
      const auto results = suite.run([](const CriterionResult& r) { std::cout << criterion_line(r) << std::endl; });
      if (!va_dir.empty()) {
        std::filesystem::create_directories(va_dir);
        for (const auto& r : results) {
          for (std::size_t i = 0; i < r.certificates.size(); ++i) {
            r.certificates[i].save(va_dir + "/criterion" + std::to_string(r.id) + "_" + std::to_string(i + 1) + "_" +
                                   r.certificates[i].command + ".json");
          }
        }
      }
      const Outcome o = suite_outcome(results);
      std::size_t pass = 0;
      for (const auto& r : results) pass += r.outcome == Outcome::pass;
      std::cout << "summary: " << pass << "/" << results.size() << " criteria pass, overall " << outcome_name(o) << '\n';
      return exit_code(o);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
  return 0;
}
