#include <gtest/gtest.h>

#include <string>

#include "relkit/oracle.hpp"
#include "relkit/random.hpp"
#include "relkit/scr.hpp"
#include "relkit/solve.hpp"
#include "support.hpp"

using namespace relkit;
using support::all_strings;
using support::str;
using support::word;

namespace {

Nfa pair_loop(const std::vector<Letter>& letters, bool final_start = true) {
  Nfa n;
  n.add_state();
  n.set_initial(0);
  if (final_start) n.set_final(0);
  for (const auto& l : letters) n.add_transition(0, n.add_letter(l), 0);
  return n;
}

// (a^n, b^n), n >= 0
Nfa anbn() { return pair_loop({{"a", "b"}}); }

// Single pair (u,v) as a pad automaton with strict padding.
Nfa single_pair(const std::string& u, const std::string& v) {
  Nfa n;
  const auto len = std::max(u.size(), v.size());
  n.add_states(len + 1);
  n.set_initial(0);
  n.set_final(static_cast<Nfa::State>(len));
  for (std::size_t i = 0; i < len; ++i) {
    Letter l{i < u.size() ? std::string(1, u[i]) : kPad, i < v.size() ? std::string(1, v[i]) : kPad};
    n.add_transition(static_cast<Nfa::State>(i), n.add_letter(l), static_cast<Nfa::State>(i + 1));
  }
  return n;
}

// (u,v) in the closure of R iff some u' with u ⊑ u' and |u'| <= cap has (u',v) in R.
bool closure_member(const RegRelation& base, const std::string& letters, const std::string& u, const std::string& v,
                    std::size_t cap) {
  for (const auto& up : all_strings(letters, cap)) {
    if (support::ref_subseq(u, up) && reg_member(base, {word(up), word(v)})) return true;
  }
  return false;
}

}  // namespace

TEST(ScrCheck, Examples) {
  auto eq = pair_loop({{"a", "a"}, {"b", "b"}});
  EXPECT_FALSE(scr_check(eq));
  EXPECT_TRUE(scr_check(scr_close(eq, {"a", "b"}).automaton()));
  EXPECT_TRUE(scr_check(pair_loop({{kPad, "a"}, {kPad, "b"}})));
  EXPECT_THROW(scr_from_checked(eq, {"a", "b"}), Error);
}

TEST(ScrClose, EqualityOverA) {
  auto c = scr_close(pair_loop({{"a", "a"}}), {"a"});
  EXPECT_TRUE(scr_member(c, {word("a"), word("aaa")}));
  EXPECT_FALSE(scr_member(c, {word("aa"), word("a")}));
  for (const auto& u : all_strings("a", 4)) {
    for (const auto& v : all_strings("a", 4)) {
      EXPECT_EQ(scr_member(c, {word(u), word(v)}), u.size() <= v.size()) << u << "," << v;
    }
  }
}

TEST(ScrClose, EmptyRelationAndIdempotence) {
  Nfa none;
  none.add_state();
  none.set_initial(0);
  none.add_letter({"a", "a"});
  auto c = scr_close(none, {"a", "b"});
  for (const auto& u : all_strings("ab", 3)) {
    for (const auto& v : all_strings("ab", 3)) EXPECT_FALSE(scr_member(c, {word(u), word(v)}));
  }

  auto once = scr_close(anbn(), {"a", "b"});
  auto twice = scr_close(once.automaton(), {"a", "b"});
  for (const auto& u : all_strings("ab", 4)) {
    for (const auto& v : all_strings("ab", 4)) {
      EXPECT_EQ(scr_member(once, {word(u), word(v)}), scr_member(twice, {word(u), word(v)}));
    }
  }
}

TEST(ScrClose, MatchesDefinitionOnRandomRelations) {
  Rng rng(9);
  for (int n = 0; n < 25; ++n) {
    auto raw = random_nfa(rng, uniform(rng, 1, 3), tuple_letters({"a", "b"}, 2, kPad));
    RegRelation base({"a", "b"}, raw, Discipline::Projective);
    auto c = scr_close(raw, {"a", "b"});
    for (const auto& u : all_strings("ab", 3)) {
      for (const auto& v : all_strings("ab", 3)) {
        // u' longer than the cap can only add members, never remove them.
        if (closure_member(base, "ab", u, v, 5)) { EXPECT_TRUE(scr_member(c, {word(u), word(v)})) << u << "," << v; }
        if (!scr_member(c, {word(u), word(v)})) { EXPECT_FALSE(closure_member(base, "ab", u, v, 5)); }
      }
    }
  }
}

TEST(IntScrScr, Examples) {
  const Alphabet ab{"a", "b"};
  auto eq = scr_close(pair_loop({{"a", "a"}}), ab);
  auto an = scr_close(anbn(), ab);
  auto d = int_scr_scr(eq, an);
  ASSERT_TRUE(d.nonempty);
  EXPECT_EQ(*d.witness, (WordTuple{{}, {}}));

  const Alphabet abc{"a", "b", "c"};
  auto x = scr_close(single_pair("a", "b"), abc);
  auto y = scr_close(single_pair("a", "c"), abc);
  EXPECT_FALSE(int_scr_scr(x, y).nonempty);
  EXPECT_TRUE(int_scr_scr(x, x).nonempty);
}

TEST(IntScrScr, AgreesWithMembershipSearch) {
  Rng rng(21);
  const Alphabet ab{"a", "b"};
  for (int n = 0; n < 30; ++n) {
    auto a = random_scr(rng, ab);
    auto b = random_scr(rng, ab);
    bool found = false;
    for (const auto& u : all_strings("ab", 3)) {
      for (const auto& v : all_strings("ab", 3)) {
        found = found || (scr_member(a, {word(u), word(v)}) && scr_member(b, {word(u), word(v)}));
      }
    }
    auto d = int_scr_scr(a, b);
    if (found) { EXPECT_TRUE(d.nonempty) << n; }
    if (d.nonempty) {
      EXPECT_TRUE(scr_member(a, *d.witness));
      EXPECT_TRUE(scr_member(b, *d.witness));
    }
  }
}

TEST(IntRatScr, Examples) {
  const Alphabet a{"a"};
  auto sub = scr_close(pair_loop({{"a", "a"}}), a);

  Nfa a_aa;
  a_aa.add_states(3);
  a_aa.set_initial(0);
  a_aa.set_final(2);
  a_aa.add_transition(0, a_aa.add_letter({"a", "a"}), 1);
  a_aa.add_transition(1, a_aa.add_letter({kEps, "a"}), 2);
  auto d = int_rat_scr(RatRelation(a, a_aa), sub);
  ASSERT_TRUE(d.nonempty);
  EXPECT_EQ(*d.witness, (WordTuple{word("a"), word("aa")}));

  Nfa aa_a;
  aa_a.add_states(3);
  aa_a.set_initial(0);
  aa_a.set_final(2);
  aa_a.add_transition(0, aa_a.add_letter({"a", "a"}), 1);
  aa_a.add_transition(1, aa_a.add_letter({"a", kEps}), 2);
  EXPECT_FALSE(int_rat_scr(RatRelation(a, aa_a), sub).nonempty);

  const Alphabet ab{"a", "b"};
  Nfa a_b;
  a_b.add_states(2);
  a_b.set_initial(0);
  a_b.set_final(1);
  a_b.add_transition(0, a_b.add_letter({"a", "b"}), 1);
  auto e = int_rat_scr(RatRelation(ab, a_b), scr_close(anbn(), ab));
  ASSERT_TRUE(e.nonempty);
  EXPECT_EQ(*e.witness, (WordTuple{word("a"), word("b")}));
}

TEST(IntRatScr, AgreesWithClosureOracle) {
  Rng rng(55);
  const Alphabet ab{"a", "b"};
  for (int n = 0; n < 30; ++n) {
    auto r0 = random_rat(rng, ab, 2);
    auto raw = random_nfa(rng, uniform(rng, 1, 3), tuple_letters(ab, 2, kPad));
    RegRelation base(ab, raw, Discipline::Projective);
    auto s = scr_close(raw, ab);
    auto d = int_rat_scr(r0, s);
    bool found = false;
    for (const auto& t : enumerate_tuples(r0, 8, 4)) {
      if (closure_member(base, "ab", str(t[0]), str(t[1]), 4)) {
        found = true;
        break;
      }
    }
    if (found) { EXPECT_TRUE(d.nonempty) << n; }
    if (d.nonempty) {
      EXPECT_TRUE(rat_member(r0, *d.witness));
      EXPECT_TRUE(scr_member(s, *d.witness));
    }
  }
}

TEST(IntRatScr, SubsequenceScrIsTheSubsequenceOrder) {
  auto s = subsequence_scr({"a", "b"});
  for (const auto& u : all_strings("ab", 4)) {
    for (const auto& v : all_strings("ab", 4)) {
      EXPECT_EQ(scr_member(s, {word(u), word(v)}), support::ref_subseq(u, v)) << u << "," << v;
    }
  }
}

TEST(IntRatScr, SharedCoordinateReadAheadOfTheFirst) {
  // S reads (b,a) as (b,pad)(pad,a); R is (b,a)*.
  const Alphabet ab{"a", "b"};
  Nfa raw;
  raw.add_states(2);
  raw.set_initial(0);
  raw.set_final(1);
  raw.add_transition(0, raw.add_letter({"a", "b"}), 0);
  raw.add_transition(0, raw.add_letter({"b", kPad}), 0);
  raw.add_transition(0, raw.add_letter({"a", "a"}), 1);
  raw.add_transition(1, raw.add_letter({"b", kPad}), 0);
  auto s = scr_close(raw, ab);
  auto r0 = RatRelation(ab, pair_loop({{"b", "a"}}));
  ASSERT_TRUE(scr_member(s, {word("b"), word("a")}));
  auto d = int_rat_scr(r0, s);
  ASSERT_TRUE(d.nonempty);
  EXPECT_TRUE(rat_member(r0, *d.witness));
  EXPECT_TRUE(scr_member(s, *d.witness));
}
