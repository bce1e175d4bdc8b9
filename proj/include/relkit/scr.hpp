#ifndef RELKIT_SCR_HPP
#define RELKIT_SCR_HPP

#include <cstddef>
#include <map>
#include <optional>
#include <tuple>
#include <utility>
#include <vector>

#include "relkit/error.hpp"
#include "relkit/nfa.hpp"
#include "relkit/relations.hpp"
#include "relkit/subseq.hpp"
#include "relkit/symbol.hpp"

namespace relkit {

/// Subsequence-closed relation: a pair automaton read with projective
/// semantics in which every (a,b) transition has a (pad,b) twin.
class ScrRelation {
 public:
  const Alphabet& alphabet() const noexcept { return sigma_; }
  const Nfa& automaton() const noexcept { return automaton_; }
  bool closed() const noexcept { return closed_; }
  std::size_t arity() const noexcept { return 2; }

  /// As a projective regular relation (same denotation).
  RegRelation as_reg() const { return RegRelation(sigma_, automaton_, Discipline::Projective); }

 private:
  ScrRelation(Alphabet sigma, Nfa automaton, bool closed)
      : sigma_(std::move(sigma)), automaton_(std::move(automaton)), closed_(closed) {}

  friend ScrRelation scr_close(const Nfa&, const Alphabet&);
  friend ScrRelation scr_from_checked(const Nfa&, const Alphabet&);

  Alphabet sigma_;
  Nfa automaton_;
  bool closed_ = false;
};

namespace detail {

inline void check_pair_automaton(const Nfa& nfa) {
  if (nfa.arity() != 2) throw ArityError("SCR automata read pairs");
}

}  // namespace detail

/// True iff every transition (q,(a,b),q') with a ≠ pad has its (pad,b) twin.
inline bool scr_check(const Nfa& nfa) {
  detail::check_pair_automaton(nfa);
  for (Nfa::State q = 0; q < nfa.num_states(); ++q) {
    for (const auto& e : nfa.edges(q)) {
      const auto& l = nfa.letter(e.letter);
      if (l[0] == kPad) continue;
      auto twin = nfa.find_letter(Letter{kPad, l[1]});
      if (!twin || !nfa.has_transition(q, *twin, e.to)) return false;
    }
  }
  return true;
}

/// Adds the (pad,b) twin of every (a,b) transition.
inline ScrRelation scr_close(const Nfa& raw, const Alphabet& sigma) {
  detail::check_pair_automaton(raw);
  check_alphabet(sigma);
  detail::check_tokens(raw, sigma, kPad, "SCR automaton");
  auto nfa = eliminate_epsilon(raw);
  Nfa out = with_alphabet(nfa, {});
  for (Nfa::State q = 0; q < nfa.num_states(); ++q) {
    for (const auto& e : nfa.edges(q)) {
      const auto& l = nfa.letter(e.letter);
      if (l[0] != kPad) out.add_transition(q, out.add_letter(Letter{kPad, l[1]}), e.to);
    }
  }
  if (!scr_check(out)) throw Error("scr_close produced an automaton that is not closed");
  return ScrRelation(sigma, std::move(out), true);
}

inline ScrRelation scr_close(const RegRelation& r) {
  if (r.arity() != 2) throw ArityError("SCR relations are binary");
  return scr_close(r.automaton(), r.alphabet());
}

/// Wraps an automaton that already satisfies scr_check; throws otherwise.
inline ScrRelation scr_from_checked(const Nfa& raw, const Alphabet& sigma) {
  detail::check_tokens(raw, sigma, kPad, "SCR automaton");
  auto nfa = eliminate_epsilon(raw);
  if (!scr_check(nfa)) throw Error("automaton is not subsequence-closed");
  return ScrRelation(sigma, std::move(nfa), true);
}

inline bool scr_member(const ScrRelation& s, const WordTuple& t) {
  if (t.size() != 2) throw ArityError("SCR relations are binary");
  return detail::config_member(s.automaton(), s.alphabet(), kPad, t);
}

namespace detail {

inline void require_closed(const ScrRelation& s) {
  if (!s.closed()) throw Error("relation is not marked subsequence-closed");
}

/// Second-coordinate language of the (pad,·)-transitions.
inline Nfa pad_first_projection(const Nfa& nfa, const Alphabet& sigma) {
  Nfa restricted(nfa.alphabet());
  restricted.add_states(nfa.num_states());
  for (Nfa::State q = 0; q < nfa.num_states(); ++q) {
    restricted.set_initial(q, nfa.is_initial(q));
    restricted.set_final(q, nfa.is_final(q));
    for (const auto& e : nfa.edges(q)) {
      if (nfa.letter(e.letter)[0] == kPad) restricted.add_transition(q, e.letter, e.to);
    }
  }
  return map_labels(
      restricted,
      [](const Letter& l) -> std::optional<Letter> {
        if (l[1] == kPad) return std::nullopt;
        return Letter{l[1]};
      },
      letters_of(sigma));
}

/// Binary automaton over (Σ ∪ pad)^2 with rational (projective) semantics.
inline Nfa as_pad_automaton(const RatRelation& r) {
  if (r.arity() != 2) throw ArityError("INT(RAT,SCR) needs a binary relation");
  return map_labels(r.automaton(), [](const Letter& l) -> std::optional<Letter> {
    Letter out = l;
    for (auto& s : out) {
      if (s == kEps) s = kPad;
    }
    return out;
  });
}

inline Nfa with_idle_loops(const Nfa& nfa) {
  Nfa out = with_alphabet(nfa, {Letter{kPad, kPad}});
  auto idle = out.letter_id(Letter{kPad, kPad});
  for (Nfa::State q = 0; q < out.num_states(); ++q) out.add_transition(q, idle, q);
  return out;
}

}  // namespace detail

/// INT(SCR,SCR): both relations contain some (ε, w) iff they intersect.
inline Decision int_scr_scr(const ScrRelation& a, const ScrRelation& b) {
  detail::require_closed(a);
  detail::require_closed(b);
  auto sigma = alphabet_union(a.alphabet(), b.alphabet());
  auto la = with_alphabet(detail::pad_first_projection(a.automaton(), a.alphabet()), letters_of(sigma));
  auto lb = with_alphabet(detail::pad_first_projection(b.automaton(), b.alphabet()), letters_of(sigma));
  auto res = is_empty(intersect(la, lb));
  if (res.empty) return Decision{false, std::nullopt};
  WordTuple witness{Word{}, as_word(*res.witness)};
  if (!scr_member(a, witness) || !scr_member(b, witness)) {
    throw WitnessError("int_scr_scr witness is not in both relations");
  }
  return Decision{true, std::move(witness)};
}

namespace detail {

/// Pipeline shared by the RAT and REG entry points. `a0` is a projective pair
/// automaton; `member0` revalidates against the caller's relation.
template <typename Member>
Decision int_pad_scr(const Nfa& a0_raw, const Alphabet& sigma0, const ScrRelation& a1,
                     const Member& member0, const TreeOptions& opt) {
  require_closed(a1);
  const auto sigma = alphabet_union(sigma0, a1.alphabet());
  // Idle (pad,pad) loops keep the denotation and let the runs synchronize.
  const Nfa a0 = with_idle_loops(eliminate_epsilon(a0_raw));
  const Nfa b1 = with_idle_loops(a1.automaton());

  // Ternary product (u0, u1, v): u0 ⊗ v read by a0 and u1 ⊗ v by a1.
  using Key = std::pair<Nfa::State, Nfa::State>;
  Interner<Key> ids;
  Nfa prod;
  std::vector<Key> work;
  auto visit = [&](Key key) {
    auto [id, inserted] = ids.intern(key);
    if (inserted) {
      prod.add_state();
      prod.set_final(id, a0.is_final(key.first) && b1.is_final(key.second));
      work.push_back(key);
    }
    return id;
  };
  for (auto p : a0.initial_states()) {
    for (auto q : b1.initial_states()) prod.set_initial(visit({p, q}));
  }
  while (!work.empty()) {
    auto key = work.back();
    work.pop_back();
    auto from = ids.intern(key).first;
    for (const auto& e0 : a0.edges(key.first)) {
      const auto& l0 = a0.letter(e0.letter);
      for (const auto& e1 : b1.edges(key.second)) {
        const auto& l1 = b1.letter(e1.letter);
        if (l0[1] != l1[1]) continue;
        prod.add_transition(from, prod.add_letter(Letter{l0[0], l1[0], l0[1]}), visit({e0.to, e1.to}));
      }
    }
  }
  if (prod.num_states() == 0) prod.add_state();
  if (prod.alphabet().empty()) prod.add_letter(Letter{kPad, kPad, kPad});

  // Project v away; the (pad,pad) image is an epsilon move.
  auto projected = map_labels(prod, [](const Letter& l) -> std::optional<Letter> {
    if (l[0] == kPad && l[1] == kPad) return std::nullopt;
    return Letter{l[0], l[1]};
  });
  if (projected.alphabet().empty()) projected.add_letter(Letter{kPad, kPad});
  auto sub = rat_subseq_stats(projected, sigma, opt).decision;
  if (!sub.nonempty) return Decision{false, std::nullopt};
  const Word& u0 = (*sub.witness)[0];
  const Word& u1 = (*sub.witness)[1];

  // Recover v from a run of the ternary product on (u0, u1, ·).
  using Config = std::tuple<Nfa::State, std::size_t, std::size_t>;
  std::map<Config, std::pair<Config, std::optional<Symbol>>> pred;
  std::vector<Config> queue;
  for (auto q : prod.initial_states()) {
    Config c{q, 0, 0};
    if (pred.emplace(c, std::pair{c, std::nullopt}).second) queue.push_back(c);
  }
  std::optional<Config> goal;
  for (std::size_t head = 0; head < queue.size() && !goal; ++head) {
    auto c = queue[head];
    auto [q, i0, i1] = c;
    if (prod.is_final(q) && i0 == u0.size() && i1 == u1.size()) {
      goal = c;
      break;
    }
    for (const auto& e : prod.edges(q)) {
      const auto& l = prod.letter(e.letter);
      std::size_t n0 = i0, n1 = i1;
      if (l[0] != kPad) {
        if (n0 >= u0.size() || u0[n0] != l[0]) continue;
        ++n0;
      }
      if (l[1] != kPad) {
        if (n1 >= u1.size() || u1[n1] != l[1]) continue;
        ++n1;
      }
      Config next{e.to, n0, n1};
      std::optional<Symbol> out;
      if (l[2] != kPad) out = l[2];
      if (pred.emplace(next, std::pair{c, out}).second) queue.push_back(next);
    }
  }
  if (!goal) throw WitnessError("int_rat_scr could not recover the shared coordinate");
  Word v;
  for (Config c = *goal;;) {
    const auto& [from, sym] = pred.at(c);
    if (from == c) break;
    if (sym) v.push_back(*sym);
    c = from;
  }
  std::reverse(v.begin(), v.end());
  WordTuple witness{u0, v};
  if (!member0(witness) || !scr_member(a1, witness)) {
    throw WitnessError("int_rat_scr witness is not in both relations");
  }
  return Decision{true, std::move(witness)};
}

}  // namespace detail

/// INT(RAT,SCR) by reduction to R' ∩ ⊑ for a rational relation R'.
inline Decision int_rat_scr(const RatRelation& a0, const ScrRelation& a1, const TreeOptions& opt = {}) {
  return detail::int_pad_scr(detail::as_pad_automaton(a0), a0.alphabet(), a1,
                             [&](const WordTuple& t) { return rat_member(a0, t); }, opt);
}

inline Decision int_rat_scr(const RegRelation& a0, const ScrRelation& a1, const TreeOptions& opt = {}) {
  if (a0.arity() != 2) throw ArityError("INT(RAT,SCR) needs a binary relation");
  return detail::int_pad_scr(a0.automaton(), a0.alphabet(), a1,
                             [&](const WordTuple& t) { return reg_member(a0, t); }, opt);
}

}  // namespace relkit

#endif  // RELKIT_SCR_HPP
