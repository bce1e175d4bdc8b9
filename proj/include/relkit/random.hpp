#ifndef RELKIT_RANDOM_HPP
#define RELKIT_RANDOM_HPP

#include <cstddef>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "relkit/constraints.hpp"
#include "relkit/graph.hpp"
#include "relkit/nfa.hpp"
#include "relkit/relations.hpp"
#include "relkit/scr.hpp"
#include "relkit/symbol.hpp"

// Random instance generators for property tests and the `gen random`
// subcommand. Everything is driven by a caller-owned std::mt19937_64.

namespace relkit {

using Rng = std::mt19937_64;

inline std::size_t uniform(Rng& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

inline bool coin(Rng& rng, double p) { return std::bernoulli_distribution(p)(rng); }

/// All k-tuples over `tokens` except the all-`skip` one.
inline std::vector<Letter> tuple_letters(const Alphabet& sigma, std::size_t k, const Symbol& skip) {
  Alphabet tokens = sigma;
  tokens.push_back(skip);
  std::vector<Letter> out;
  Letter l(k);
  auto rec = [&](auto&& self, std::size_t i) -> void {
    if (i == k) {
      bool all_skip = true;
      for (const auto& s : l) all_skip = all_skip && s == skip;
      if (!all_skip) out.push_back(l);
      return;
    }
    for (const auto& t : tokens) {
      l[i] = t;
      self(self, i + 1);
    }
  };
  rec(rec, 0);
  return out;
}

/// Random automaton with `states` states, state 0 initial, each state final
/// with probability 1/3 and 1..max_out outgoing transitions.
inline Nfa random_nfa(Rng& rng, std::size_t states, const std::vector<Letter>& letters, std::size_t max_out = 3) {
  Nfa a(letters);
  a.add_states(states);
  a.set_initial(0);
  for (Nfa::State q = 0; q < states; ++q) {
    if (coin(rng, 1.0 / 3)) a.set_final(q);
    const auto out = uniform(rng, 1, max_out);
    for (std::size_t i = 0; i < out; ++i) {
      a.add_transition(q, static_cast<Nfa::LetterId>(uniform(rng, 0, letters.size() - 1)),
                       static_cast<Nfa::State>(uniform(rng, 0, states - 1)));
    }
  }
  if (!coin(rng, 0.2)) a.set_final(static_cast<Nfa::State>(uniform(rng, 0, states - 1)));
  return a;
}

inline RegRelation random_reg(Rng& rng, const Alphabet& sigma, std::size_t arity, std::size_t max_states = 4) {
  auto nfa = random_nfa(rng, uniform(rng, 1, max_states), tuple_letters(sigma, arity, kPad));
  return RegRelation(sigma, nfa, Discipline::Strict);
}

inline RatRelation random_rat(Rng& rng, const Alphabet& sigma, std::size_t arity, std::size_t max_states = 3) {
  auto nfa = random_nfa(rng, uniform(rng, 1, max_states), tuple_letters(sigma, arity, kEps));
  return RatRelation(sigma, nfa);
}

inline RecRelation random_rec(Rng& rng, const Alphabet& sigma, std::size_t arity, std::size_t max_products = 2,
                              std::size_t max_states = 4) {
  std::vector<std::vector<Nfa>> products(uniform(rng, 1, max_products));
  for (auto& p : products) {
    for (std::size_t i = 0; i < arity; ++i) {
      p.push_back(random_nfa(rng, uniform(rng, 1, max_states), letters_of(sigma), 2));
    }
  }
  return RecRelation(sigma, arity, std::move(products));
}

/// Closure of a random pad automaton.
inline ScrRelation random_scr(Rng& rng, const Alphabet& sigma, std::size_t max_states = 3) {
  return scr_close(random_nfa(rng, uniform(rng, 1, max_states), tuple_letters(sigma, 2, kPad)), sigma);
}

/// Up to `max_pairs` proper pairs over [m], any shape.
inline ConstraintSet random_constraints(Rng& rng, std::size_t m, std::size_t max_pairs) {
  std::vector<ConstraintSet::Pair> pairs;
  if (m < 2) return ConstraintSet(m, {});
  const auto n = uniform(rng, 1, max_pairs);
  for (std::size_t i = 0; i < n; ++i) {
    auto a = uniform(rng, 1, m), b = uniform(rng, 1, m - 1);
    if (b >= a) ++b;
    pairs.emplace_back(a, b);
  }
  return ConstraintSet(m, std::move(pairs));
}

/// Random pairs whose undirected graph is a forest.
inline ConstraintSet random_forest_constraints(Rng& rng, std::size_t m) {
  std::vector<ConstraintSet::Pair> pairs;
  for (std::size_t j = 2; j <= m; ++j) {
    if (!coin(rng, 0.8)) continue;
    auto i = uniform(rng, 1, j - 1);
    if (coin(rng, 0.5)) pairs.emplace_back(i, j);
    else pairs.emplace_back(j, i);
  }
  return ConstraintSet(m, std::move(pairs));
}

inline GraphDb random_graph(Rng& rng, const Alphabet& sigma, std::size_t max_nodes = 6, std::size_t max_edges = 10) {
  GraphDb g(sigma);
  const auto n = uniform(rng, 1, max_nodes);
  for (std::size_t i = 0; i < n; ++i) g.add_node("n" + std::to_string(i));
  const auto e = uniform(rng, 0, max_edges);
  for (std::size_t i = 0; i < e; ++i) {
    g.add_edge(g.nodes()[uniform(rng, 0, n - 1)], sigma[uniform(rng, 0, sigma.size() - 1)],
               g.nodes()[uniform(rng, 0, n - 1)]);
  }
  return g;
}

}  // namespace relkit

#endif  // RELKIT_RANDOM_HPP
