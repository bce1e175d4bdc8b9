#include <gtest/gtest.h>

#include <algorithm>
#include <string>

#include "relkit/graph.hpp"
#include "relkit/oracle.hpp"
#include "relkit/random.hpp"
#include "relkit/regex.hpp"
#include "relkit/subseq.hpp"
#include "support.hpp"

using namespace relkit;
using support::str;
using support::word;

namespace {

const Alphabet kAb{"a", "b"};

Nfa re(const std::string& p) { return compile_regex(p, kAb); }

std::size_t count_label(const GraphDb& g, const std::string& label) {
  return static_cast<std::size_t>(
      std::count_if(g.edges().begin(), g.edges().end(), [&](const auto& e) { return e.label == label; }));
}

bool gadget_holds(const Gadget& gad, const std::string& s) {
  EvalOptions opt;
  opt.s = SRelation::builtin_named(s);
  opt.relations = gad.relations;
  return evaluate(gad.graph, gad.query, {{"x", gad.source}, {"y", gad.target}}, opt).holds();
}

GraphDb path_graph() {
  GraphDb g(kAb);
  g.add_node("u");
  g.add_node("v");
  g.add_node("w");
  g.add_edge("u", "a", "v");
  g.add_edge("v", "b", "w");
  return g;
}

}  // namespace

TEST(ParseQuery, PaperExample) {
  auto q = parse_query("q(x) := exists y,z : x -[p1: S*a]-> y ; x -[p2: S*b]-> z ; subseq(p1,p2)");
  EXPECT_EQ(q.atoms.size(), 2u);
  EXPECT_EQ(q.free_vars, std::vector<std::string>{"x"});
  EXPECT_EQ(q.bound_vars, (std::vector<std::string>{"y", "z"}));
  EXPECT_EQ(q.constraints(), ConstraintSet(2, {{1, 2}}));
  EXPECT_EQ(q.s_name, "subseq");
}

TEST(ParseQuery, AtomsOnlyAndErrors) {
  auto q = parse_query("q(x,y) := x -[p : a*b]-> y");
  EXPECT_TRUE(q.constraints().empty());
  EXPECT_THROW(parse_query("q(x,y) := x -[p : a]-> y ; y -[p : b]-> x"), ParseError);
  EXPECT_THROW(parse_query("q(x) := x -[p : a]-> y"), ParseError);
  EXPECT_THROW(parse_query("q(x) := exists y : x -[p : a]-> y ; subsequence(p,r)"), ParseError);
  EXPECT_THROW(parse_query("q(x) := exists y : x -[p : a]-> y ; subsequence(p,p) ; suffix(p,p)"), ParseError);
  EXPECT_THROW(parse_query("q(x) := exists y : x -[p : a]> y"), ParseError);
}

TEST(ParseQuery, PrintParsesBack) {
  for (const char* text : {"q(x) := exists y,z : x -[p1 : (a|b)*a]-> y ; x -[p2 : b*]-> z ; suffix(p2,p1)",
                           "r(x,y) := x -[p : a]-> y ; x -[p2 : b]-> y ; reg EQ(p,p2) ; subsequence(p,p2)",
                           "s() := exists x : x -[a*]-> x"}) {
    auto q = parse_query(text);
    EXPECT_EQ(to_string(parse_query(to_string(q))), to_string(q)) << text;
  }
}

TEST(GraphSlice, Examples) {
  GraphDb g(kAb);
  g.add_node("v");
  g.add_node("w");
  g.add_edge("v", "a", "w");
  auto vw = graph_slice_nfa(g, "v", "w");
  EXPECT_EQ(words_up_to(vw, 4), std::vector<Word>{word("a")});
  EXPECT_TRUE(is_empty(graph_slice_nfa(g, "w", "v")).empty);
  EXPECT_THROW(graph_slice_nfa(g, "v", "nowhere"), Error);

  GraphDb loop(kAb);
  loop.add_node("v");
  loop.add_edge("v", "a", "v");
  auto vv = graph_slice_nfa(loop, "v", "v");
  for (std::size_t n = 0; n <= 4; ++n) EXPECT_TRUE(accepts(vv, Word(n, "a")));
  EXPECT_FALSE(accepts(vv, word("b")));
}

TEST(GraphDb, RejectsUndeclaredLabelsAndNodes) {
  GraphDb g(kAb);
  g.add_node("v");
  EXPECT_THROW(g.add_edge("v", "c", "v"), AlphabetError);
  EXPECT_THROW(g.add_edge("v", "a", "w"), Error);
}

TEST(Evaluate, PlainCrpq) {
  auto q = parse_query("q(x,y) := x -[p : a*b]-> y");
  EXPECT_TRUE(evaluate(path_graph(), q, {{"x", "u"}, {"y", "w"}}).holds());
  EXPECT_FALSE(evaluate(path_graph(), q, {{"x", "v"}, {"y", "u"}}).holds());
  EXPECT_THROW(evaluate(path_graph(), q, {{"x", "u"}}), Error);
}

TEST(Evaluate, EmptyGraph) {
  GraphDb g(kAb);
  auto q = parse_query("q() := exists x,y : x -[p : a]-> y");
  EXPECT_FALSE(evaluate(g, q, {}).holds());
}

TEST(Evaluate, SubsequenceBetweenPaths) {
  GraphDb g(kAb);
  g.add_node("u");
  g.add_node("v");
  g.add_edge("u", "a", "u");
  g.add_edge("u", "b", "v");
  auto q = parse_query("q(x,y) := exists z : x -[p1 : a a*]-> z ; z -[p2 : (a|b)*]-> y ; subsequence(p1,p2)");
  auto r = evaluate(g, q, {{"x", "u"}, {"y", "v"}});
  ASSERT_TRUE(r.holds());
  ASSERT_TRUE(r.result.witness);
  const auto& w = *r.result.witness;
  EXPECT_TRUE(support::ref_subseq(str(w[0]), str(w[1])));
  EXPECT_EQ(r.binding.at("z"), "u");
}

TEST(Evaluate, EqualLengthRegAtom) {
  GraphDb g(kAb);
  for (const char* n : {"s", "m1", "m2", "t"}) g.add_node(n);
  g.add_edge("s", "a", "m1");
  g.add_edge("m1", "b", "t");
  g.add_edge("s", "a", "m2");
  g.add_edge("m2", "b", "t");
  auto q = parse_query("q(x,y) := x -[p1 : (a|b)*]-> y ; x -[p2 : (a|b)*]-> y ; reg LEN(p1,p2) ; subsequence(p1,p2)");
  EvalOptions opt;
  opt.relations.emplace("LEN", std::get<RegRelation>(builtin("equal_length", kAb)));
  auto r = evaluate(g, q, {{"x", "s"}, {"y", "t"}}, opt);
  ASSERT_TRUE(r.holds());
  EXPECT_EQ((*r.result.witness)[0], (*r.result.witness)[1]);
  EXPECT_EQ(r.plan.route, Route::TreeSubseq);
  EXPECT_THROW(evaluate(g, q, {{"x", "s"}, {"y", "t"}}), Error);  // LEN missing
}

TEST(Evaluate, ExactModeRefusesBoundedOnly) {
  auto q = parse_query("q(x,y) := x -[p1 : a*]-> y ; x -[p2 : a*]-> y ; reg EQ(p1,p2) ; suffix(p1,p2)");
  EvalOptions opt;
  opt.relations.emplace("EQ", std::get<RegRelation>(builtin("equality", kAb)));
  GraphDb g(kAb);
  g.add_node("v");
  g.add_edge("v", "a", "v");
  EXPECT_THROW(evaluate(g, q, {{"x", "v"}, {"y", "v"}}, opt), DispatchError);
  opt.mode = EvalMode::Bounded;
  opt.cap = 3;
  EXPECT_TRUE(evaluate(g, q, {{"x", "v"}, {"y", "v"}}, opt).holds());
}

TEST(Classify, DispatchTable) {
  EXPECT_EQ(classify_query(QueryClass::Crpq, SKind::Subword, Shape::UndirectedAcyclic).route, Route::AcyclicRec);
  auto ec = classify_query(QueryClass::Ecrpq, SKind::Suffix, Shape::Dag);
  EXPECT_EQ(ec.route, Route::BoundedOnly);
  EXPECT_NE(ec.status_line.find("undecidable"), std::string::npos);
  EXPECT_EQ(classify_query(QueryClass::Crpq, SKind::Subsequence, Shape::Cyclic).route, Route::TreeSubseq);
  EXPECT_EQ(classify_query(QueryClass::Crpq, SKind::Suffix, Shape::Cyclic).route, Route::SmallModel);
  EXPECT_EQ(classify_query(QueryClass::Crpq, SKind::Scr, Shape::Dag).route, Route::SmallModel);
  EXPECT_EQ(classify_query(QueryClass::Crpq, SKind::Scr, Shape::Cyclic).route, Route::BoundedOnly);
  EXPECT_EQ(classify_query(QueryClass::Crpq, SKind::ScrPartialOrder, Shape::Cyclic).route, Route::SmallModel);
  EXPECT_EQ(classify_query(QueryClass::Crpq, SKind::Subword, Shape::Cyclic).route, Route::BoundedOnly);
  EXPECT_EQ(classify_query(QueryClass::Ecrpq, SKind::Subsequence, Shape::Cyclic).route, Route::TreeSubseq);
}

TEST(Gadgets, RecStructure) {
  RecRelation one(kAb, 2, {{re("a"), re("a")}});
  auto g = rec_to_graph(one);
  EXPECT_EQ(count_label(g.graph, kHash), 2u);
  EXPECT_EQ(count_label(g.graph, kDollar), 1u);
  RecRelation two(kAb, 2, {{re("a"), re("a")}, {re("b"), re("ab")}});
  auto g2 = rec_to_graph(two);
  EXPECT_EQ(count_label(g2.graph, kHash), 4u);
  EXPECT_EQ(count_label(g2.graph, kDollar), 2u);
  EXPECT_THROW(rec_to_graph(RecRelation({"a", "#"}, 2, {})), AlphabetError);
}

TEST(Gadgets, RecExamples) {
  EXPECT_TRUE(gadget_holds(rec_to_graph(RecRelation(kAb, 2, {{re("b"), re("ab")}})), "suffix"));
  EXPECT_FALSE(gadget_holds(rec_to_graph(RecRelation(kAb, 2, {{re("a"), re("b")}})), "subsequence"));
}

TEST(Gadgets, RegExamples) {
  Nfa anbn;
  anbn.add_state();
  anbn.set_initial(0);
  anbn.set_final(0);
  anbn.add_transition(0, anbn.add_letter({"a", "b"}), 0);
  EXPECT_TRUE(gadget_holds(reg_to_graph(RegRelation(kAb, anbn)), "subsequence"));
  EXPECT_TRUE(gadget_holds(reg_to_graph(std::get<RegRelation>(builtin("equality", {"a"}))), "subsequence"));

  Nfa ab;
  ab.add_states(2);
  ab.set_initial(0);
  ab.set_final(1);
  ab.add_transition(0, ab.add_letter({"a", "b"}), 1);
  EXPECT_FALSE(gadget_holds(reg_to_graph(RegRelation(kAb, ab)), "subsequence"));
}

TEST(Gadgets, RoundTripsAgreeWithDirectIntersection) {
  Rng rng(606);
  const ConstraintSet one(2, {{1, 2}});
  auto pred = support::as_word_predicate(support::ref_subseq);
  for (int n = 0; n < 15; ++n) {
    auto rec = random_rec(rng, kAb, 2);
    const bool direct = tree_solve(rec_to_reg(rec), one).nonempty;
    EXPECT_EQ(gadget_holds(rec_to_graph(rec), "subsequence"), direct) << "rec " << n;
    if (brute_genint(rec, one, pred, 10, 5).witness) { EXPECT_TRUE(direct); }

    auto reg = random_reg(rng, kAb, 2);
    const bool direct_reg = tree_solve(reg, one).nonempty;
    EXPECT_EQ(gadget_holds(reg_to_graph(reg), "subsequence"), direct_reg) << "reg " << n;
    if (brute_genint(reg, one, pred, 10, 5).witness) { EXPECT_TRUE(direct_reg); }
  }
}
