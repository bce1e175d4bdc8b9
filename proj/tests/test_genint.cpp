#include <gtest/gtest.h>

#include <string>

#include "relkit/acyclic.hpp"
#include "relkit/constraints.hpp"
#include "relkit/oracle.hpp"
#include "relkit/random.hpp"
#include "relkit/regex.hpp"
#include "relkit/solve.hpp"
#include "relkit/subseq.hpp"
#include "support.hpp"

using namespace relkit;
using support::str;
using support::word;

namespace {

const Alphabet kAb{"a", "b"};

Nfa re(const std::string& pattern) { return compile_regex(pattern, kAb); }

// Independent revalidation of a witness: membership plus the string predicate.
bool valid_witness(const AnyRelation& r, const ConstraintSet& I, const std::string& s, const WordTuple& w) {
  if (w.size() != arity_of(r) || !member(r, w)) return false;
  auto ref = support::ref_predicate(s);
  for (const auto& [i, j] : I.pairs()) {
    if (!ref(str(w[i - 1]), str(w[j - 1]))) return false;
  }
  return true;
}

// (a^m, b^m a^k)
RegRelation ladder() {
  Nfa n;
  n.add_states(2);
  n.set_initial(0);
  n.set_final(0);
  n.set_final(1);
  n.add_transition(0, n.add_letter({"a", "b"}), 0);
  n.add_transition(0, n.add_letter({kPad, "a"}), 1);
  n.add_transition(1, n.add_letter({kPad, "a"}), 1);
  return RegRelation(kAb, n);
}

// (a^{n+1}, b^{n+1})
RegRelation anbn_plus() {
  Nfa n;
  n.add_states(2);
  n.set_initial(0);
  n.set_final(1);
  n.add_transition(0, n.add_letter({"a", "b"}), 1);
  n.add_transition(1, n.add_letter({"a", "b"}), 1);
  return RegRelation(kAb, n);
}

}  // namespace

TEST(Shape, Examples) {
  EXPECT_EQ(classify_shape(ConstraintSet(3, {{1, 2}, {2, 3}})), Shape::UndirectedAcyclic);
  EXPECT_EQ(classify_shape(ConstraintSet(3, {{1, 2}, {1, 3}, {2, 3}})), Shape::Dag);
  EXPECT_EQ(classify_shape(ConstraintSet(2, {{1, 2}, {2, 1}})), Shape::Cyclic);
  EXPECT_EQ(classify_shape(ConstraintSet(2, {})), Shape::UndirectedAcyclic);
}

TEST(Shape, ParsePairsAndErrors) {
  auto I = parse_pairs("1,2 2,3", 3);
  EXPECT_EQ(I, ConstraintSet(3, {{1, 2}, {2, 3}}));
  EXPECT_THROW(parse_pairs("1,4", 3), ArityError);
  EXPECT_THROW(parse_pairs("1;2", 3), Error);
  EXPECT_TRUE(ConstraintSet(2, {{1, 1}}).has_degenerate());
}

TEST(Shape, QuotientOfCycle) {
  auto q = scc_quotient(ConstraintSet(3, {{1, 2}, {2, 1}, {2, 3}}));
  EXPECT_EQ(q.count, 2u);
  EXPECT_EQ(q.component[0], q.component[1]);
  EXPECT_NE(q.component[0], q.component[2]);
  EXPECT_EQ(classify_shape(q.pairs), Shape::UndirectedAcyclic);
}

TEST(ImageUnder, Examples) {
  auto ab = re("ab");
  auto fwd = image_under(ab, builtin_rat("subsequence", kAb), Direction::Forward);
  EXPECT_TRUE(accepts(fwd, word("aabb")));
  EXPECT_FALSE(accepts(fwd, word("ba")));

  auto suf = image_under(ab, builtin_rat("suffix", kAb), Direction::Forward);
  for (const auto& s : support::all_strings("ab", 5)) {
    EXPECT_EQ(accepts(suf, word(s)), support::ref_suffix("ab", s)) << s;
  }
  auto none = re("∅");
  EXPECT_TRUE(is_empty(image_under(none, builtin_rat("suffix", kAb), Direction::Forward)).empty);
  EXPECT_TRUE(is_empty(image_under(none, builtin_rat("suffix", kAb), Direction::Backward)).empty);
}

TEST(SolveAcyclic, Examples) {
  RecRelation b_ab(kAb, 2, {{re("b"), re("ab")}});
  auto d = solve_acyclic(b_ab, builtin_rat("suffix", kAb), ConstraintSet(2, {{1, 2}}));
  ASSERT_TRUE(d.nonempty);
  EXPECT_EQ(*d.witness, (WordTuple{word("b"), word("ab")}));

  RecRelation a_b(kAb, 2, {{re("a"), re("b")}});
  EXPECT_FALSE(solve_acyclic(a_b, builtin_rat("subsequence", kAb), ConstraintSet(2, {{1, 2}})).nonempty);

  RecRelation three(kAb, 3, {{re("aa*"), re("bb*"), re("(a|b)*")}});
  const ConstraintSet I(3, {{1, 3}, {2, 3}});
  auto t = solve_acyclic(three, builtin_rat("subsequence", kAb), I);
  ASSERT_TRUE(t.nonempty);
  EXPECT_TRUE(valid_witness(three, I, "subsequence", *t.witness));
  auto oracle = brute_genint(three, I, support::as_word_predicate(support::ref_subseq), 12, 4);
  EXPECT_TRUE(oracle.witness.has_value());
}

TEST(SolveAcyclic, RejectsCyclicShape) {
  RecRelation r(kAb, 2, {{re("a"), re("a")}});
  EXPECT_THROW(solve_acyclic(r, builtin_rat("subsequence", kAb), ConstraintSet(2, {{1, 2}, {2, 1}})), ShapeError);
}

TEST(SolveAcyclic, LeafOrderDoesNotChangeVerdict) {
  Rng rng(11);
  for (int n = 0; n < 40; ++n) {
    auto r = random_rec(rng, kAb, 3);
    auto I = random_forest_constraints(rng, 3);
    auto s = builtin_rat("subword", kAb);
    AcyclicOptions rev;
    rev.reverse_leaf_order = true;
    EXPECT_EQ(solve_acyclic(r, s, I).nonempty, solve_acyclic(r, s, I, rev).nonempty);
  }
}

TEST(SolveAcyclic, AgreesWithOracle) {
  Rng rng(2024);
  for (int n = 0; n < 60; ++n) {
    const std::size_t m = uniform(rng, 1, 3);
    auto r = random_rec(rng, kAb, m);
    auto I = random_forest_constraints(rng, m);
    for (const char* name : {"suffix", "subword", "subsequence", "prefix"}) {
      auto d = solve_acyclic(r, builtin_rat(name, kAb), I);
      auto o = brute_genint(r, I, support::as_word_predicate(support::ref_predicate(name)), 6 * m, 6);
      if (o.witness) { EXPECT_TRUE(d.nonempty) << name << " instance " << n; }
      if (!d.nonempty) { EXPECT_FALSE(o.witness) << name << " instance " << n; }
      if (d.nonempty) { EXPECT_TRUE(valid_witness(r, I, name, *d.witness)) << name << " instance " << n; }
    }
  }
}

TEST(Residual, Examples) {
  EXPECT_EQ(str(subseq_residual(word("abc"), word("axbxc"))), "");
  EXPECT_EQ(str(subseq_residual(word("ba"), word("ab"))), "a");
  EXPECT_EQ(str(subseq_residual(word(""), word("ab"))), "");
  EXPECT_TRUE(is_subsequence(word("ac"), word("abc")));
  EXPECT_FALSE(is_subsequence(word("ca"), word("abc")));
  EXPECT_TRUE(is_subsequence(word(""), word("")));
}

TEST(Residual, MatchesBruteForceDefinition) {
  // u\v is u minus its longest prefix that embeds into v.
  const auto words = support::all_strings("ab", 5);
  for (const auto& u : words) {
    for (const auto& v : words) {
      std::size_t k = 0;
      for (std::size_t len = 0; len <= u.size(); ++len) {
        if (support::ref_subseq(u.substr(0, len), v)) k = len;
      }
      ASSERT_EQ(str(subseq_residual(word(u), word(v))), u.substr(k)) << u << " " << v;
    }
  }
}

TEST(TreeSolve, Examples) {
  auto eq = std::get<RegRelation>(builtin("equality", kAb));
  auto d = tree_solve(eq, ConstraintSet(2, {{1, 2}}));
  ASSERT_TRUE(d.nonempty);
  EXPECT_EQ(*d.witness, (WordTuple{{}, {}}));

  auto l = tree_solve(ladder(), ConstraintSet(2, {{1, 2}}));
  ASSERT_TRUE(l.nonempty);
  EXPECT_TRUE(valid_witness(ladder(), ConstraintSet(2, {{1, 2}}), "subsequence", *l.witness));
  EXPECT_TRUE(reg_member(ladder(), {word("aa"), word("bbaa")}));

  auto e = tree_solve_stats(anbn_plus(), ConstraintSet(2, {{1, 2}}));
  EXPECT_FALSE(e.decision.nonempty);
  EXPECT_TRUE(e.complete);
  auto oracle = brute_genint(anbn_plus(), ConstraintSet(2, {{1, 2}}),
                             support::as_word_predicate(support::ref_subseq), 12, 6);
  EXPECT_FALSE(oracle.witness);
}

TEST(TreeSolve, BudgetOverflowThrows) {
  TreeOptions tiny;
  tiny.node_budget = 1;
  EXPECT_THROW(tree_solve(anbn_plus(), ConstraintSet(2, {{1, 2}}), tiny), BudgetExceeded);
}

TEST(TreeSolve, AncestorOnlySaturationAgrees) {
  Rng rng(5);
  TreeOptions ancestors;
  ancestors.global_subsumption = false;
  for (int n = 0; n < 60; ++n) {
    const std::size_t k = uniform(rng, 1, 3);
    auto r = random_reg(rng, kAb, k);
    auto I = random_constraints(rng, k, 3);
    EXPECT_EQ(tree_solve(r, I).nonempty, tree_solve(r, I, ancestors).nonempty) << n;
  }
}

TEST(TreeSolve, AgreesWithOracle) {
  Rng rng(77);
  for (int n = 0; n < 60; ++n) {
    const std::size_t k = uniform(rng, 1, 3);
    auto r = random_reg(rng, kAb, k);
    auto I = random_constraints(rng, k, 3);
    auto d = tree_solve(r, I);
    auto o = brute_genint(r, I, support::as_word_predicate(support::ref_subseq), 6 * k, 6);
    if (o.witness) { EXPECT_TRUE(d.nonempty) << n; }
    if (!d.nonempty) { EXPECT_FALSE(o.witness) << n; }
    if (d.nonempty) { EXPECT_TRUE(valid_witness(r, I, "subsequence", *d.witness)) << n; }
  }
}

TEST(SolveGenint, Routes) {
  auto sub = SRelation::builtin_named("subsequence");
  auto suf = SRelation::builtin_named("suffix");
  auto sw = SRelation::builtin_named("subword");
  RecRelation rec(kAb, 2, {{re("a"), re("ab")}});
  const ConstraintSet one(2, {{1, 2}}), cyc(2, {{1, 2}, {2, 1}});
  EXPECT_EQ(classify_genint(rec, sw, one).route, Route::AcyclicRec);
  EXPECT_EQ(classify_genint(rec, sub, cyc).route, Route::TreeSubseq);
  EXPECT_EQ(classify_genint(rec, suf, cyc).route, Route::SmallModel);
  EXPECT_EQ(classify_genint(rec, sw, cyc).route, Route::BoundedOnly);
  EXPECT_NE(classify_genint(rec, sw, cyc).status_line.find("open problem"), std::string::npos);
  EXPECT_EQ(classify_genint(ladder(), sub, cyc).route, Route::TreeSubseq);
  EXPECT_EQ(classify_genint(ladder(), suf, one).route, Route::BoundedOnly);
  EXPECT_NE(classify_genint(ladder(), suf, one).status_line.find("undecidable"), std::string::npos);
  EXPECT_EQ(classify_genint(reg_to_rat(ladder()), sub, one).route, Route::ScrPipeline);
}

TEST(SolveGenint, BoundedRouteNeedsCap) {
  EXPECT_THROW(solve_genint(ladder(), SRelation::builtin_named("suffix"), ConstraintSet(2, {{1, 2}})),
               DispatchError);
  SolveOptions opt;
  opt.cap = 4;
  auto r = solve_genint(ladder(), SRelation::builtin_named("suffix"), ConstraintSet(2, {{1, 2}}), opt);
  EXPECT_EQ(r.result.verdict, Verdict::NonEmpty);
}

TEST(SolveGenint, ArityMismatch) {
  EXPECT_THROW(solve_genint(ladder(), SRelation::builtin_named("subsequence"), ConstraintSet(3, {{1, 2}})),
               ArityError);
}

TEST(SolveGenint, EveryRouteAgreesWithOracle) {
  Rng rng(314);
  for (int n = 0; n < 30; ++n) {
    auto rec = random_rec(rng, kAb, 2);
    const ConstraintSet cyc(2, {{1, 2}, {2, 1}});
    for (const char* name : {"subsequence", "suffix"}) {
      SolveOptions opt;
      opt.cap = 4;
      auto res = solve_genint(rec, SRelation::builtin_named(name), cyc, opt);
      auto o = brute_genint(rec, cyc, support::as_word_predicate(support::ref_predicate(name)), 8, 4);
      if (o.witness) { EXPECT_EQ(res.result.verdict, Verdict::NonEmpty) << name << " " << n; }
      if (res.result.verdict == Verdict::Empty) { EXPECT_FALSE(o.witness) << name << " " << n; }
      if (res.result.witness) { EXPECT_TRUE(valid_witness(rec, cyc, name, *res.result.witness)); }
    }
  }
}

namespace {

// Pair automaton reading the given letters in sequence; "_" is a pad.
Nfa pair_path(const std::vector<Letter>& letters) {
  Nfa n;
  n.add_states(letters.size() + 1);
  n.set_initial(0);
  n.set_final(static_cast<Nfa::State>(letters.size()));
  for (std::size_t i = 0; i < letters.size(); ++i) {
    n.add_transition(static_cast<Nfa::State>(i), n.add_letter(letters[i]), static_cast<Nfa::State>(i + 1));
  }
  return n;
}

}  // namespace

TEST(RatSubseq, SecondWordMayRunAhead) {
  // v's letter is read before u's: the residual alone would lose it.
  auto d = rat_subseq_stats(pair_path({{kPad, "b"}, {"b", kPad}}), kAb).decision;
  ASSERT_TRUE(d.nonempty);
  EXPECT_EQ(*d.witness, (WordTuple{word("b"), word("b")}));

  // Mixed timing: the a of v comes early, the b of v comes late.
  auto m = rat_subseq_stats(pair_path({{kPad, "a"}, {"a", kPad}, {"b", kPad}, {kPad, "b"}}), kAb).decision;
  ASSERT_TRUE(m.nonempty);
  EXPECT_EQ(*m.witness, (WordTuple{word("ab"), word("ab")}));

  EXPECT_FALSE(rat_subseq_stats(pair_path({{kPad, "a"}, {kPad, "b"}, {"b", kPad}, {"a", kPad}}), kAb).decision.nonempty);
}

TEST(RatSubseq, GrowingSpareTerminates) {
  Nfa g;
  g.add_states(2);
  g.set_initial(0);
  g.set_final(1);
  g.add_transition(0, g.add_letter({kPad, "b"}), 0);
  g.add_transition(0, g.add_letter({"a", kPad}), 1);
  EXPECT_FALSE(rat_subseq_stats(g, kAb).decision.nonempty);
}

TEST(RatSubseq, AgreesWithOracle) {
  Rng rng(404);
  const ConstraintSet one(2, {{1, 2}});
  auto pred = support::as_word_predicate(support::ref_subseq);
  for (int n = 0; n < 400; ++n) {
    auto r = random_rat(rng, kAb, 2, 1 + n % 5);
    auto d = rat_subseq_stats(r.automaton(), kAb).decision;
    auto o = brute_genint(r, one, pred, 12, 6);
    if (o.witness) { EXPECT_TRUE(d.nonempty) << n; }
    if (d.nonempty) {
      EXPECT_TRUE(rat_member(r, *d.witness)) << n;
      EXPECT_TRUE(support::ref_subseq(str((*d.witness)[0]), str((*d.witness)[1]))) << n;
    }
  }
}

TEST(TreeSolve, ProjectiveRelationsAreRational) {
  const RegRelation r(kAb, pair_path({{kPad, "b"}, {"b", kPad}}), Discipline::Projective);
  auto d = tree_solve(r, ConstraintSet(2, {{1, 2}}));
  ASSERT_TRUE(d.nonempty);
  EXPECT_EQ(*d.witness, (WordTuple{word("b"), word("b")}));
  EXPECT_TRUE(tree_solve(r, ConstraintSet(2, {{2, 1}})).nonempty);
  EXPECT_THROW(tree_solve(r, ConstraintSet(2, {{1, 2}, {2, 1}})), DispatchError);

  const RegRelation none(kAb, pair_path({{kPad, "a"}, {"b", kPad}}), Discipline::Projective);
  EXPECT_FALSE(tree_solve(none, ConstraintSet(2, {{1, 2}})).nonempty);
  EXPECT_TRUE(tree_solve(none, ConstraintSet(2, {})).nonempty);

  auto sub = SRelation::builtin_named("subsequence");
  EXPECT_EQ(classify_genint(r, sub, ConstraintSet(2, {{1, 2}})).route, Route::ScrPipeline);
  auto res = solve_genint(r, sub, ConstraintSet(2, {{1, 2}}));
  EXPECT_EQ(res.result.verdict, Verdict::NonEmpty);
}
