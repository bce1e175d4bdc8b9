#ifndef RELKIT_ACYCLIC_HPP
#define RELKIT_ACYCLIC_HPP

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "relkit/constraints.hpp"
#include "relkit/error.hpp"
#include "relkit/nfa.hpp"
#include "relkit/relations.hpp"
#include "relkit/symbol.hpp"

namespace relkit {

enum class Direction { Forward, Backward };

/// Image of a regular language under a binary rational relation.
///
/// Forward: {v : ∃u ∈ L, (u,v) ∈ S}; Backward: {u : ∃v ∈ L, (u,v) ∈ S}.
/// The result is over the letters of S's alphabet.
inline Nfa image_under(const Nfa& language, const RatRelation& s, Direction dir) {
  if (s.arity() != 2) throw ArityError("image_under needs a binary relation");
  const std::size_t in = dir == Direction::Forward ? 0 : 1;
  const std::size_t out_coord = 1 - in;
  const Nfa& sa = s.automaton();
  using Key = std::pair<Nfa::State, Nfa::State>;
  detail::Interner<Key> ids;
  Nfa out(letters_of(s.alphabet()));
  std::vector<Key> work;
  auto visit = [&](Key key) {
    auto [id, inserted] = ids.intern(key);
    if (inserted) {
      out.add_state();
      out.set_final(id, language.is_final(key.first) && sa.is_final(key.second));
      work.push_back(key);
    }
    return id;
  };
  for (auto p : language.initial_states()) {
    for (auto q : sa.initial_states()) out.set_initial(visit({p, q}));
  }
  while (!work.empty()) {
    auto [p, q] = work.back();
    work.pop_back();
    auto from = ids.intern({p, q}).first;
    for (auto p2 : language.epsilon_edges(p)) out.add_epsilon(from, visit({p2, q}));
    for (const auto& es : sa.edges(q)) {
      const auto& l = sa.letter(es.letter);
      auto emit = [&](Nfa::State to) {
        if (l[out_coord] == kEps) {
          out.add_epsilon(from, to);
        } else {
          out.add_transition(from, Letter{l[out_coord]}, to);
        }
      };
      if (l[in] == kEps) {
        emit(visit({p, es.to}));
        continue;
      }
      auto lid = language.find_letter(Letter{l[in]});
      if (!lid) continue;
      for (const auto& el : language.edges(p)) {
        if (el.letter == *lid) emit(visit({el.to, es.to}));
      }
    }
  }
  if (out.num_states() == 0) out.add_state();
  return trim(eliminate_epsilon(out));
}

struct AcyclicOptions {
  /// Eliminate leaves from the highest index down instead of the lowest up.
  bool reverse_leaf_order = false;
};

namespace detail {

inline Nfa over_letters(const Nfa& nfa, const std::vector<Letter>& letters) {
  return with_alphabet(nfa, letters);
}

inline std::optional<Word> shortest_word(const Nfa& nfa) {
  auto res = is_empty(nfa);
  if (res.empty) return std::nullopt;
  return as_word(*res.witness);
}

inline void check_acyclic_witness(const RecRelation& r, const RatRelation& s,
                                  const ConstraintSet& I, const WordTuple& w) {
  if (!rec_member(r, w)) throw WitnessError("solve_acyclic witness is not in R");
  for (const auto& [i, j] : I.proper_pairs()) {
    if (!rat_member(s, {w[i - 1], w[j - 1]})) {
      throw WitnessError("solve_acyclic witness violates constraint (" + std::to_string(i) +
                         "," + std::to_string(j) + ")");
    }
  }
}

}  // namespace detail

/// Decides R ∩_I S ≠ ∅ for R recognizable, S binary rational and G_I acyclic,
/// by leaf elimination on each product of R.
inline Decision solve_acyclic(const RecRelation& r, const RatRelation& s, const ConstraintSet& I,
                              const AcyclicOptions& opt = {}) {
  if (I.arity() != r.arity()) throw ArityError("constraint arity does not match the relation");
  if (s.arity() != 2) throw ArityError("S must be binary");
  if (classify_shape(I) != Shape::UndirectedAcyclic) {
    throw ShapeError("solve_acyclic needs an undirected-acyclic constraint graph");
  }
  if (I.has_degenerate() && !is_reflexive_builtin(s.name())) {
    throw ShapeError("pairs (i,i) are only supported for reflexive builtin relations");
  }
  const std::size_t m = r.arity();
  const auto letters = letters_of(alphabet_union(r.alphabet(), s.alphabet()));
  const auto pairs = I.proper_pairs();

  for (const auto& product : r.products()) {
    std::vector<Nfa> lang;
    for (const auto& comp : product) lang.push_back(detail::over_letters(comp, letters));
    std::vector<bool> edge_alive(pairs.size(), true);
    std::vector<std::size_t> degree(m, 0);
    for (const auto& [i, j] : pairs) {
      ++degree[i - 1];
      ++degree[j - 1];
    }
    struct Step {
      std::size_t leaf, neighbor;
      bool leaf_first;  // the constraint is (leaf, neighbor)
      Nfa language;
    };
    std::vector<Step> steps;
    std::vector<bool> eliminated(m, false);
    for (;;) {
      std::optional<std::size_t> leaf;
      for (std::size_t n = 0; n < m; ++n) {
        std::size_t v = opt.reverse_leaf_order ? m - 1 - n : n;
        if (!eliminated[v] && degree[v] == 1) {
          leaf = v;
          break;
        }
      }
      if (!leaf) break;
      std::size_t e = 0;
      while (!edge_alive[e] || (pairs[e].first - 1 != *leaf && pairs[e].second - 1 != *leaf)) ++e;
      edge_alive[e] = false;
      const bool leaf_first = pairs[e].first - 1 == *leaf;
      const std::size_t nb = leaf_first ? pairs[e].second - 1 : pairs[e].first - 1;
      auto image = image_under(lang[*leaf], s, leaf_first ? Direction::Forward : Direction::Backward);
      lang[nb] = trim(intersect(lang[nb], detail::over_letters(image, letters)));
      --degree[*leaf];
      --degree[nb];
      eliminated[*leaf] = true;
      steps.push_back(Step{*leaf, nb, leaf_first, lang[*leaf]});
    }
    WordTuple witness(m);
    bool ok = true;
    for (std::size_t v = 0; v < m && ok; ++v) {
      if (eliminated[v]) continue;
      auto w = detail::shortest_word(lang[v]);
      if (!w) {
        ok = false;
      } else {
        witness[v] = *w;
      }
    }
    if (!ok) continue;
    for (auto it = steps.rbegin(); it != steps.rend(); ++it) {
      auto single = detail::word_nfa(witness[it->neighbor], alphabet_union(r.alphabet(), s.alphabet()));
      // (leaf, nb) ∈ I needs (w_leaf, w_nb) ∈ S: preimage of w_nb.
      auto back = image_under(single, s, it->leaf_first ? Direction::Backward : Direction::Forward);
      auto w = detail::shortest_word(intersect(it->language, detail::over_letters(back, letters)));
      if (!w) throw WitnessError("solve_acyclic failed to reconstruct a witness");
      witness[it->leaf] = *w;
    }
    detail::check_acyclic_witness(r, s, I, witness);
    return Decision{true, std::move(witness)};
  }
  return Decision{false, std::nullopt};
}

}  // namespace relkit

#endif  // RELKIT_ACYCLIC_HPP
