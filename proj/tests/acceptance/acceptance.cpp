// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.
#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "relkit/acyclic.hpp"
#include "relkit/bounded.hpp"
#include "relkit/graph.hpp"
#include "relkit/oracle.hpp"
#include "relkit/random.hpp"
#include "relkit/reductions.hpp"
#include "relkit/regex.hpp"
#include "relkit/scr.hpp"
#include "relkit/subseq.hpp"
#include "support.hpp"

using namespace relkit;
using support::all_strings;
using support::str;
using support::word;

namespace {

const Alphabet kAb{"a", "b"};

struct Outcome {
  bool pass = true;
  std::string detail;
};

// Witness revalidations across every criterion.
struct WitnessLedger {
  std::size_t checked = 0;
  std::size_t violations = 0;
  void record(bool ok, const std::string& where) {
    ++checked;
    if (!ok) {
      ++violations;
      std::printf("  witness violation: %s\n", where.c_str());
    }
  }
} witnesses;

bool satisfies_ref(const AnyRelation& r, const ConstraintSet& I, const std::string& s, const WordTuple& w) {
  if (w.size() != arity_of(r) || !member(r, w)) return false;
  auto ref = support::ref_predicate(s);
  for (const auto& [i, j] : I.pairs()) {
    if (!ref(str(w[i - 1]), str(w[j - 1]))) return false;
  }
  return true;
}

std::string fmt(const char* f, auto... args) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

// ---------------------------------------------------------------- criteria

Outcome builtin_fidelity() {
  const auto words = all_strings("ab", 6);
  std::size_t pairs = 0, mismatches = 0;
  for (const char* name : {"subsequence", "subword", "suffix", "prefix", "equality", "equal_length"}) {
    auto rel = std::visit([](const auto& r) { return AnyRelation(r); }, builtin(name, kAb));
    auto ref = support::ref_predicate(name);
    for (const auto& u : words) {
      for (const auto& v : words) {
        ++pairs;
        if (member(rel, {word(u), word(v)}) != ref(u, v)) ++mismatches;
      }
    }
  }
  return {mismatches == 0, fmt("%zu pairs, %zu mismatches", pairs, mismatches)};
}

Outcome tree_vs_oracle() {
  Rng rng(2);
  std::size_t nonempty = 0, empty = 0, bad = 0;
  for (int n = 0; n < 200; ++n) {
    const std::size_t k = uniform(rng, 1, 3);
    auto r = random_reg(rng, kAb, k, 4);
    auto I = random_constraints(rng, k, 3);
    auto d = tree_solve(r, I);
    auto o = brute_genint(r, I, support::as_word_predicate(support::ref_subseq), 6 * k, 6);
    if (o.witness && !d.nonempty) ++bad;
    (d.nonempty ? nonempty : empty)++;
    if (d.nonempty) witnesses.record(satisfies_ref(r, I, "subsequence", *d.witness), fmt("tree instance %d", n));
  }
  return {bad == 0, fmt("200 instances, %zu nonempty, %zu empty, %zu disagreements", nonempty, empty, bad)};
}

Outcome acyclic_vs_oracle() {
  Rng rng(3);
  std::size_t runs = 0, nonempty = 0, bad = 0;
  for (int n = 0; n < 200; ++n) {
    const std::size_t m = uniform(rng, 1, 3);
    auto r = random_rec(rng, kAb, m);
    auto I = random_forest_constraints(rng, m);
    for (const char* name : {"suffix", "subword", "subsequence"}) {
      ++runs;
      auto d = solve_acyclic(r, builtin_rat(name, kAb), I);
      auto o = brute_genint(r, I, support::as_word_predicate(support::ref_predicate(name)), 6 * m, 6);
      if (o.witness && !d.nonempty) ++bad;
      if (d.nonempty) {
        ++nonempty;
        witnesses.record(satisfies_ref(r, I, name, *d.witness), fmt("acyclic instance %d %s", n, name));
      }
    }
  }
  return {bad == 0, fmt("%zu runs, %zu nonempty, %zu disagreements", runs, nonempty, bad)};
}

// Random morphisms over {x,y} -> {a,b}; their reductions give the deep searches.
PepInstance random_pep(Rng& rng) {
  PepInstance p;
  p.sigma = {"x", "y"};
  p.gamma = {"a", "b"};
  for (const auto& s : p.sigma) {
    for (auto* m : {&p.morphism, &p.morphism_prime}) {
      Word w;
      const auto len = uniform(rng, 0, 3);
      for (std::size_t i = 0; i < len; ++i) w.push_back(p.gamma[uniform(rng, 0, 1)]);
      (*m)[s] = w;
    }
  }
  p.language = random_nfa(rng, uniform(rng, 1, 4), letters_of(p.sigma));
  return p;
}

Outcome termination() {
  Rng rng(4);
  std::size_t overflows = 0, incomplete = 0, max_nodes = 0, nonempty = 0;
  TreeOptions opt;
  opt.node_budget = 1'000'000;
  for (int n = 0; n < 1000; ++n) {
    const bool wide = n % 4 == 0;
    const bool pep = n % 3 == 0;
    const Alphabet sigma = wide ? Alphabet{"a", "b", "c"} : kAb;
    const std::size_t k = pep ? 2 : uniform(rng, 1, wide ? 3 : 4);
    auto r = pep ? pep_to_reg(random_pep(rng)) : random_reg(rng, sigma, k, wide ? 4 : 5);
    auto I = pep ? ConstraintSet(2, {{1, 2}}) : random_constraints(rng, k, 4);
    try {
      auto s = tree_solve_stats(r, I, opt);
      max_nodes = std::max(max_nodes, s.nodes);
      if (!s.complete) ++incomplete;
      if (s.decision.nonempty) {
        ++nonempty;
        witnesses.record(satisfies_ref(r, I, "subsequence", *s.decision.witness), fmt("termination instance %d", n));
      }
    } catch (const BudgetExceeded&) {
      ++overflows;
    }
  }
  return {overflows == 0 && incomplete == 0,
          fmt("1000 instances, %zu nonempty, %zu overflows, max %zu nodes", nonempty, overflows, max_nodes)};
}

// (u,v) is in the closure of base iff some u' with u ⊑ u' and |u'| <= cap has (u',v) in base.
bool closure_member(const RegRelation& base, const std::string& u, const std::string& v, std::size_t cap) {
  for (const auto& up : all_strings("ab", cap)) {
    if (support::ref_subseq(u, up) && reg_member(base, {word(up), word(v)})) return true;
  }
  return false;
}

Outcome scr_pipeline() {
  Rng rng(5);
  std::size_t nonempty = 0, bad = 0;
  for (int n = 0; n < 100; ++n) {
    auto r0 = random_rat(rng, kAb, 2);
    auto raw = random_nfa(rng, uniform(rng, 1, 3), tuple_letters(kAb, 2, kPad));
    RegRelation base(kAb, raw, Discipline::Projective);
    auto s = scr_close(raw, kAb);
    auto d = int_rat_scr(r0, s);
    bool found = false;
    for_each_tuple(r0, 8, 4, [&](const WordTuple& t) {
      found = closure_member(base, str(t[0]), str(t[1]), 4);
      return found;
    });
    if (found && !d.nonempty) ++bad;
    if (d.nonempty) {
      ++nonempty;
      witnesses.record(rat_member(r0, *d.witness) && scr_member(s, *d.witness), fmt("scr instance %d", n));
    }
  }
  return {bad == 0, fmt("100 instances, %zu nonempty, %zu disagreements", nonempty, bad)};
}

bool gadget_holds(const Gadget& gad) {
  EvalOptions opt;
  opt.s = SRelation::builtin_named("subsequence");
  opt.relations = gad.relations;
  auto res = evaluate(gad.graph, gad.query, {{"x", gad.source}, {"y", gad.target}}, opt);
  return res.holds();
}

Outcome gadget_round_trips() {
  Rng rng(6);
  const ConstraintSet one(2, {{1, 2}});
  std::size_t agree = 0, yes = 0;
  for (int n = 0; n < 50; ++n) {
    auto rec = random_rec(rng, kAb, 2);
    const auto direct = solve_acyclic(rec, builtin_rat("subsequence", kAb), one);
    if (direct.nonempty) witnesses.record(satisfies_ref(rec, one, "subsequence", *direct.witness), "rec gadget");
    const bool g = gadget_holds(rec_to_graph(rec));
    agree += g == direct.nonempty;
    yes += g;

    auto reg = random_reg(rng, kAb, 2);
    const auto direct_reg = tree_solve(reg, one);
    if (direct_reg.nonempty) witnesses.record(satisfies_ref(reg, one, "subsequence", *direct_reg.witness), "reg gadget");
    const bool gr = gadget_holds(reg_to_graph(reg));
    agree += gr == direct_reg.nonempty;
    yes += gr;
  }
  return {agree == 100, fmt("100 gadgets, %zu hold, %zu agree", yes, agree)};
}

Outcome reduction_corpus() {
  std::vector<std::string> failures;
  const ConstraintSet one(2, {{1, 2}});

  auto pep = [](const char* x, const char* y) {
    return PepInstance{{"a"}, {"a"}, {{"a", word(x)}}, {{"a", word(y)}}, compile_regex("aa*", {"a"})};
  };
  auto solvable = pep("a", "aa");
  auto d = tree_solve(pep_to_reg(solvable), one);
  if (!d.nonempty) failures.push_back("pep solvable");
  else {
    auto w = pep_decode(solvable, *d.witness);
    witnesses.record(w && accepts(solvable.language, *w) &&
                         support::ref_subseq(str(apply_morphism(solvable.morphism, *w)),
                                             str(apply_morphism(solvable.morphism_prime, *w))),
                     "pep witness");
  }
  if (tree_solve(pep_to_reg(pep("aa", "a")), one).nonempty) failures.push_back("pep unsolvable");

  PcpInstance p{kAb, {word("a"), word("ab")}, {word("aa"), word("b")}};
  auto chain = pcp_to_rat(p, PcpVariant::Chain);
  auto c = bounded_search(chain.relation, is_subsequence_dp, chain.constraints, 8);
  if (c.verdict != Verdict::NonEmpty) failures.push_back("pcp chain");
  else witnesses.record(satisfies_ref(chain.relation, chain.constraints, "subsequence", *c.witness), "pcp witness");

  Lba l;
  l.tape = {"a"};
  l.states = {"q0", "qf"};
  l.initial = "q0";
  l.finals = {"qf"};
  l.transitions = {{"q0", "<", "qf", "<", Move::Stay}};
  l.input = {"a"};
  auto lr = lba_to_regrel(l);
  const ConstraintSet back(2, {{2, 1}});
  auto b = bounded_search(lr, is_suffix, back, 14);
  if (b.verdict != Verdict::NonEmpty) failures.push_back("lba");
  else witnesses.record(satisfies_ref(lr, back, "suffix", *b.witness), "lba witness");

  std::string detail = failures.empty() ? "pep NonEmpty/Empty, pcp chain NonEmpty, lba NonEmpty" : "failed:";
  for (const auto& f : failures) detail += " " + f;
  return {failures.empty(), detail};
}

Nfa sized(std::size_t n) {
  Nfa a(letters_of(kAb));
  a.add_states(n);
  a.set_initial(0);
  a.set_final(static_cast<Nfa::State>(n - 1));
  for (std::size_t i = 0; i + 1 < n; ++i) {
    a.add_transition(static_cast<Nfa::State>(i), Letter{"a"}, static_cast<Nfa::State>(i + 1));
  }
  return a;
}

Outcome small_model() {
  std::vector<std::string> failures;
  RecRelation two(kAb, 2, {{sized(2), sized(2)}});
  const auto suffix_cap = small_model_cap_suffix(two, ConstraintSet(2, {{1, 2}}));
  if (suffix_cap != 1600) failures.push_back(fmt("suffix cap %zu", suffix_cap));

  Nfa raw;
  raw.add_states(2);
  raw.set_initial(0);
  raw.set_final(1);
  raw.add_transition(0, raw.add_letter({"a", "a"}), 1);
  raw.add_transition(1, raw.add_letter({"b", "b"}), 1);
  auto s = scr_close(raw, kAb);
  const auto scr_cap = small_model_cap_scr(two, s, ConstraintSet(2, {{1, 2}}));
  if (scr_cap != 20) failures.push_back(fmt("scr cap %zu", scr_cap));
  RecRelation three(kAb, 3, {{sized(2), sized(2), sized(2)}});
  const auto chain_cap = small_model_cap_scr(three, s, ConstraintSet(3, {{1, 2}, {2, 3}, {1, 3}}));
  if (chain_cap != 342) failures.push_back(fmt("chain cap %zu", chain_cap));

  // Unary alphabet and one-state automata keep every bound at most 8.
  Rng rng(8);
  const Alphabet a{"a"};
  std::size_t certified = 0, mismatches = 0;
  for (int n = 0; n < 80; ++n) {
    const std::size_t m = uniform(rng, 1, 2);
    std::vector<Nfa> comps;
    for (std::size_t i = 0; i < m; ++i) comps.push_back(random_nfa(rng, 1, letters_of(a), 1));
    RecRelation r(a, m, {comps});
    const ConstraintSet I = m == 2 && coin(rng, 0.7) ? ConstraintSet(2, {{1, 2}}) : ConstraintSet(m, {});
    auto sr = scr_close(random_nfa(rng, 1, tuple_letters(a, 2, kPad), 2), a);
    const auto bound = small_model_cap_scr(r, sr, I);
    if (bound > 8) continue;
    auto res = solve_small_model(r, sr, I, 8);
    if (!res.certified) continue;
    ++certified;
    bool exhaustive = false;
    const auto words = all_strings("a", bound);
    for (const auto& u : words) {
      for (const auto& v : m == 2 ? words : std::vector<std::string>{""}) {
        WordTuple t = m == 2 ? WordTuple{word(u), word(v)} : WordTuple{word(u)};
        if (!rec_member(r, t)) continue;
        if (m == 2 && !I.empty() && !scr_member(sr, t)) continue;
        exhaustive = true;
      }
    }
    if ((res.verdict == Verdict::NonEmpty) != exhaustive) ++mismatches;
    if (res.witness) {
      bool ok = rec_member(r, *res.witness);
      if (m == 2 && !I.empty()) ok = ok && scr_member(sr, *res.witness);
      witnesses.record(ok, fmt("small model instance %d", n));
    }
  }
  if (mismatches) failures.push_back(fmt("%zu enumeration mismatches", mismatches));
  if (certified < 40) failures.push_back(fmt("only %zu certified verdicts", certified));
  std::string detail = fmt("caps %zu/%zu/%zu, %zu certified verdicts checked", suffix_cap, scr_cap, chain_cap, certified);
  for (const auto& f : failures) detail += "; " + f;
  return {failures.empty(), detail};
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    double limit_s;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {"builtin fidelity", 10, builtin_fidelity},
      {"tree solver vs oracle", 60, tree_vs_oracle},
      {"acyclic solver vs oracle", 60, acyclic_vs_oracle},
      {"tree solver termination", 600, termination},
      {"scr pipeline vs closure oracle", 60, scr_pipeline},
      {"gadget round trips", 60, gadget_round_trips},
      {"reduction corpus", 30, reduction_corpus},
      {"small-model caps", 10, small_model},
  };
  bool all = true;
  int index = 0;
  for (const auto& c : criteria) {
    ++index;
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (secs > c.limit_s) {
      o.pass = false;
      o.detail += fmt("; over the %.0f s limit", c.limit_s);
    }
    all = all && o.pass;
    std::printf("%s %d %s: %s (%.2f s)\n", o.pass ? "PASS" : "FAIL", index, c.name, o.detail.c_str(), secs);
    std::fflush(stdout);
  }
  const bool clean = witnesses.violations == 0 && witnesses.checked > 0;
  all = all && clean;
  std::printf("%s 9 witness integrity: %zu witnesses revalidated, %zu violations\n", clean ? "PASS" : "FAIL",
              witnesses.checked, witnesses.violations);
  return all ? 0 : 1;
}
