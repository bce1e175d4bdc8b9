#ifndef RELKIT_NFA_HPP
#define RELKIT_NFA_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "relkit/error.hpp"
#include "relkit/symbol.hpp"

namespace relkit {

/// Nondeterministic finite automaton over an alphabet of tuple letters.
///
/// Letters are k-tuples of tokens; k is the automaton's arity and is 1 for
/// automata over plain words. States are dense ids `0..num_states()-1`.
/// Transitions are kept as a set: adding an existing transition is a no-op.
/// Construction mutates; every algorithm in this library takes automata by
/// const reference and returns a fresh one.
class Nfa {
 public:
  using State = std::uint32_t;
  using LetterId = std::uint32_t;

  struct Edge {
    LetterId letter;
    State to;
    friend bool operator==(const Edge&, const Edge&) = default;
  };

  Nfa() = default;

  explicit Nfa(const std::vector<Letter>& alphabet) {
    for (const auto& l : alphabet) add_letter(l);
  }

  /// Arity of the letters (0 while the alphabet is empty).
  std::size_t arity() const noexcept { return arity_; }

  const std::vector<Letter>& alphabet() const noexcept { return letters_; }

  std::optional<LetterId> find_letter(const Letter& l) const {
    auto it = letter_index_.find(l);
    if (it == letter_index_.end()) return std::nullopt;
    return it->second;
  }

  LetterId letter_id(const Letter& l) const {
    auto id = find_letter(l);
    if (!id) throw AlphabetError("letter " + render(l) + " is not in the alphabet");
    return *id;
  }

  const Letter& letter(LetterId id) const { return letters_.at(id); }

  /// Adds a letter if absent and returns its id.
  LetterId add_letter(const Letter& l) {
    if (l.empty()) throw AlphabetError("empty letter");
    if (letters_.empty()) {
      arity_ = l.size();
    } else if (l.size() != arity_) {
      throw ArityError("letter " + render(l) + " has arity " + std::to_string(l.size()) +
                       ", expected " + std::to_string(arity_));
    }
    auto [it, inserted] = letter_index_.emplace(l, static_cast<LetterId>(letters_.size()));
    if (inserted) letters_.push_back(l);
    return it->second;
  }

  State add_state() {
    edges_.emplace_back();
    eps_.emplace_back();
    initial_.push_back(false);
    final_.push_back(false);
    return static_cast<State>(edges_.size() - 1);
  }

  void add_states(std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) add_state();
  }

  std::size_t num_states() const noexcept { return edges_.size(); }

  void set_initial(State q, bool value = true) { initial_.at(q) = value; }
  void set_final(State q, bool value = true) { final_.at(q) = value; }
  bool is_initial(State q) const { return initial_.at(q); }
  bool is_final(State q) const { return final_.at(q); }

  std::vector<State> initial_states() const { return collect(initial_); }
  std::vector<State> final_states() const { return collect(final_); }

  void add_transition(State from, LetterId letter, State to) {
    check_state(from);
    check_state(to);
    if (letter >= letters_.size()) throw AlphabetError("letter id out of range");
    auto& out = edges_[from];
    Edge e{letter, to};
    if (std::find(out.begin(), out.end(), e) == out.end()) {
      out.push_back(e);
      ++num_transitions_;
    }
  }

  void add_transition(State from, const Letter& l, State to) {
    add_transition(from, letter_id(l), to);
  }

  void add_epsilon(State from, State to) {
    check_state(from);
    check_state(to);
    auto& out = eps_[from];
    if (std::find(out.begin(), out.end(), to) == out.end()) {
      out.push_back(to);
      ++num_epsilons_;
    }
  }

  const std::vector<Edge>& edges(State q) const { return edges_.at(q); }
  const std::vector<State>& epsilon_edges(State q) const { return eps_.at(q); }

  bool has_transition(State from, LetterId letter, State to) const {
    const auto& out = edges_.at(from);
    return std::find(out.begin(), out.end(), Edge{letter, to}) != out.end();
  }

  std::size_t num_transitions() const noexcept { return num_transitions_; }
  std::size_t num_epsilons() const noexcept { return num_epsilons_; }
  bool has_epsilon() const noexcept { return num_epsilons_ != 0; }

  /// Sorts every adjacency list by (letter id, target).
  void sort_edges() {
    for (auto& out : edges_) {
      std::sort(out.begin(), out.end(), [](const Edge& a, const Edge& b) {
        return std::pair(a.letter, a.to) < std::pair(b.letter, b.to);
      });
    }
    for (auto& out : eps_) std::sort(out.begin(), out.end());
  }

  static std::string render(const Letter& l) {
    std::string s = "(";
    for (std::size_t i = 0; i < l.size(); ++i) {
      if (i) s += ",";
      s += l[i];
    }
    return s + ")";
  }

 private:
  void check_state(State q) const {
    if (q >= edges_.size()) throw Error("state " + std::to_string(q) + " is not declared");
  }

  static std::vector<State> collect(const std::vector<bool>& flags) {
    std::vector<State> out;
    for (std::size_t i = 0; i < flags.size(); ++i) {
      if (flags[i]) out.push_back(static_cast<State>(i));
    }
    return out;
  }

  std::size_t arity_ = 0;
  std::vector<Letter> letters_;
  std::map<Letter, LetterId> letter_index_;
  std::vector<std::vector<Edge>> edges_;
  std::vector<std::vector<State>> eps_;
  std::vector<bool> initial_;
  std::vector<bool> final_;
  std::size_t num_transitions_ = 0;
  std::size_t num_epsilons_ = 0;
};

/// Result of an emptiness check; `witness` is a shortest accepted word.
struct EmptinessResult {
  bool empty = true;
  std::optional<std::vector<Letter>> witness;
};

/// One-tuple letters for a plain alphabet, in the given order.
inline std::vector<Letter> letters_of(const Alphabet& sigma) {
  std::vector<Letter> out;
  out.reserve(sigma.size());
  for (const auto& s : sigma) out.push_back(Letter{s});
  return out;
}

/// Plain alphabet of a 1-ary automaton.
inline Alphabet symbols_of(const Nfa& nfa) {
  Alphabet out;
  for (const auto& l : nfa.alphabet()) {
    if (l.size() != 1) throw ArityError("automaton is not over plain symbols");
    out.push_back(l[0]);
  }
  return out;
}

inline std::vector<Letter> as_letters(const Word& w) {
  std::vector<Letter> out;
  out.reserve(w.size());
  for (const auto& s : w) out.push_back(Letter{s});
  return out;
}

inline Word as_word(const std::vector<Letter>& letters) {
  Word w;
  w.reserve(letters.size());
  for (const auto& l : letters) {
    if (l.size() != 1) throw ArityError("letter " + Nfa::render(l) + " is not a plain symbol");
    w.push_back(l[0]);
  }
  return w;
}

namespace detail {

using StateSet = std::vector<Nfa::State>;  // sorted, unique

inline StateSet epsilon_closure(const Nfa& nfa, StateSet set) {
  std::vector<bool> seen(nfa.num_states(), false);
  std::vector<Nfa::State> stack;
  for (auto q : set) {
    seen[q] = true;
    stack.push_back(q);
  }
  while (!stack.empty()) {
    auto q = stack.back();
    stack.pop_back();
    for (auto r : nfa.epsilon_edges(q)) {
      if (!seen[r]) {
        seen[r] = true;
        set.push_back(r);
        stack.push_back(r);
      }
    }
  }
  std::sort(set.begin(), set.end());
  return set;
}

inline StateSet post(const Nfa& nfa, const StateSet& from, Nfa::LetterId letter) {
  StateSet out;
  for (auto q : from) {
    for (const auto& e : nfa.edges(q)) {
      if (e.letter == letter) out.push_back(e.to);
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return epsilon_closure(nfa, std::move(out));
}

inline bool any_final(const Nfa& nfa, const StateSet& set) {
  return std::any_of(set.begin(), set.end(), [&](auto q) { return nfa.is_final(q); });
}

/// Assigns dense ids to product-state keys in discovery order.
template <typename Key>
class Interner {
 public:
  /// Returns (id, inserted).
  std::pair<Nfa::State, bool> intern(const Key& key) {
    auto [it, inserted] = ids_.emplace(key, static_cast<Nfa::State>(keys_.size()));
    if (inserted) keys_.push_back(key);
    return {it->second, inserted};
  }
  const Key& key(Nfa::State id) const { return keys_.at(id); }
  std::size_t size() const { return keys_.size(); }

 private:
  std::map<Key, Nfa::State> ids_;
  std::vector<Key> keys_;
};

inline bool same_alphabet(const Nfa& a, const Nfa& b) {
  if (a.alphabet().size() != b.alphabet().size()) return false;
  return std::all_of(a.alphabet().begin(), a.alphabet().end(),
                     [&](const Letter& l) { return b.find_letter(l).has_value(); });
}

}  // namespace detail

/// Membership of a word of letters. Throws AlphabetError for foreign letters.
inline bool accepts(const Nfa& nfa, const std::vector<Letter>& word) {
  std::vector<Nfa::LetterId> ids;
  ids.reserve(word.size());
  for (const auto& l : word) ids.push_back(nfa.letter_id(l));
  auto current = detail::epsilon_closure(nfa, nfa.initial_states());
  for (auto id : ids) {
    if (current.empty()) return false;
    current = detail::post(nfa, current, id);
  }
  return detail::any_final(nfa, current);
}

/// Membership of a plain word in a 1-ary automaton.
inline bool accepts(const Nfa& nfa, const Word& word) {
  return accepts(nfa, as_letters(word));
}

/// Breadth-first emptiness check returning a shortest witness.
///
/// Epsilon edges have weight zero (0-1 BFS), so the witness is shortest in
/// letters even before epsilon elimination.
inline EmptinessResult is_empty(const Nfa& nfa) {
  constexpr auto kNone = static_cast<Nfa::State>(-1);
  constexpr auto kEpsLetter = static_cast<Nfa::LetterId>(-1);
  const std::size_t n = nfa.num_states();
  std::vector<std::size_t> dist(n, static_cast<std::size_t>(-1));
  std::vector<Nfa::State> pred(n, kNone);
  std::vector<Nfa::LetterId> pred_letter(n, kEpsLetter);
  std::vector<bool> done(n, false);
  std::deque<Nfa::State> queue;
  for (auto q : nfa.initial_states()) {
    dist[q] = 0;
    queue.push_back(q);
  }
  while (!queue.empty()) {
    auto q = queue.front();
    queue.pop_front();
    if (done[q]) continue;
    done[q] = true;
    if (nfa.is_final(q)) {
      std::vector<Letter> witness;
      for (auto cur = q; pred[cur] != kNone; cur = pred[cur]) {
        if (pred_letter[cur] != kEpsLetter) witness.push_back(nfa.letter(pred_letter[cur]));
      }
      std::reverse(witness.begin(), witness.end());
      return {false, std::move(witness)};
    }
    for (auto r : nfa.epsilon_edges(q)) {
      if (!done[r] && dist[q] < dist[r]) {
        dist[r] = dist[q];
        pred[r] = q;
        pred_letter[r] = kEpsLetter;
        queue.push_front(r);
      }
    }
    for (const auto& e : nfa.edges(q)) {
      if (!done[e.to] && dist[q] + 1 < dist[e.to]) {
        dist[e.to] = dist[q] + 1;
        pred[e.to] = q;
        pred_letter[e.to] = e.letter;
        queue.push_back(e.to);
      }
    }
  }
  return {true, std::nullopt};
}

/// Copy of `nfa` whose alphabet is extended by `extra` letters.
inline Nfa with_alphabet(const Nfa& nfa, const std::vector<Letter>& extra) {
  Nfa out(nfa.alphabet());
  for (const auto& l : extra) out.add_letter(l);
  out.add_states(nfa.num_states());
  for (Nfa::State q = 0; q < nfa.num_states(); ++q) {
    out.set_initial(q, nfa.is_initial(q));
    out.set_final(q, nfa.is_final(q));
    for (const auto& e : nfa.edges(q)) out.add_transition(q, e.letter, e.to);
    for (auto r : nfa.epsilon_edges(q)) out.add_epsilon(q, r);
  }
  return out;
}

/// Removes epsilon transitions, preserving the language and the state ids.
inline Nfa eliminate_epsilon(const Nfa& nfa) {
  Nfa out(nfa.alphabet());
  out.add_states(nfa.num_states());
  for (Nfa::State q = 0; q < nfa.num_states(); ++q) {
    out.set_initial(q, nfa.is_initial(q));
    auto closure = detail::epsilon_closure(nfa, {q});
    out.set_final(q, detail::any_final(nfa, closure));
    for (auto p : closure) {
      for (const auto& e : nfa.edges(p)) out.add_transition(q, e.letter, e.to);
    }
  }
  return out;
}

/// Restricts to states that are reachable from an initial state and can
/// reach a final state. Keeps at least one state so the result stays valid.
inline Nfa trim(const Nfa& nfa) {
  const std::size_t n = nfa.num_states();
  std::vector<bool> fwd(n, false), bwd(n, false);
  std::vector<std::vector<Nfa::State>> rev(n);
  for (Nfa::State q = 0; q < n; ++q) {
    for (const auto& e : nfa.edges(q)) rev[e.to].push_back(q);
    for (auto r : nfa.epsilon_edges(q)) rev[r].push_back(q);
  }
  std::vector<Nfa::State> stack = nfa.initial_states();
  for (auto q : stack) fwd[q] = true;
  while (!stack.empty()) {
    auto q = stack.back();
    stack.pop_back();
    auto visit = [&](Nfa::State r) {
      if (!fwd[r]) {
        fwd[r] = true;
        stack.push_back(r);
      }
    };
    for (const auto& e : nfa.edges(q)) visit(e.to);
    for (auto r : nfa.epsilon_edges(q)) visit(r);
  }
  stack = nfa.final_states();
  for (auto q : stack) bwd[q] = true;
  while (!stack.empty()) {
    auto q = stack.back();
    stack.pop_back();
    for (auto p : rev[q]) {
      if (!bwd[p]) {
        bwd[p] = true;
        stack.push_back(p);
      }
    }
  }
  std::vector<Nfa::State> remap(n, static_cast<Nfa::State>(-1));
  Nfa out(nfa.alphabet());
  for (Nfa::State q = 0; q < n; ++q) {
    if (fwd[q] && bwd[q]) remap[q] = out.add_state();
  }
  if (out.num_states() == 0) {
    out.add_state();  // empty language: one non-initial state
    return out;
  }
  for (Nfa::State q = 0; q < n; ++q) {
    if (remap[q] == static_cast<Nfa::State>(-1)) continue;
    out.set_initial(remap[q], nfa.is_initial(q));
    out.set_final(remap[q], nfa.is_final(q));
    for (const auto& e : nfa.edges(q)) {
      if (remap[e.to] != static_cast<Nfa::State>(-1)) {
        out.add_transition(remap[q], e.letter, remap[e.to]);
      }
    }
    for (auto r : nfa.epsilon_edges(q)) {
      if (remap[r] != static_cast<Nfa::State>(-1)) out.add_epsilon(remap[q], remap[r]);
    }
  }
  return out;
}

/// Product automaton accepting L(a) ∩ L(b); only reachable pairs are built.
inline Nfa intersect(const Nfa& a, const Nfa& b) {
  if (!detail::same_alphabet(a, b)) throw AlphabetError("intersect: alphabet mismatch");
  using Key = std::pair<Nfa::State, Nfa::State>;
  detail::Interner<Key> ids;
  Nfa out(a.alphabet());
  std::vector<Key> work;
  auto visit = [&](Key k) {
    auto [id, inserted] = ids.intern(k);
    if (inserted) {
      out.add_state();
      out.set_final(id, a.is_final(k.first) && b.is_final(k.second));
      work.push_back(k);
    }
    return id;
  };
  for (auto p : a.initial_states()) {
    for (auto q : b.initial_states()) out.set_initial(visit({p, q}));
  }
  // b's letter ids mapped into a's id space.
  std::vector<Nfa::LetterId> b_to_a(b.alphabet().size());
  for (Nfa::LetterId l = 0; l < b.alphabet().size(); ++l) b_to_a[l] = a.letter_id(b.letter(l));
  while (!work.empty()) {
    auto k = work.back();
    work.pop_back();
    auto from = ids.intern(k).first;
    for (const auto& ea : a.edges(k.first)) {
      for (const auto& eb : b.edges(k.second)) {
        if (ea.letter == b_to_a[eb.letter]) {
          out.add_transition(from, ea.letter, visit({ea.to, eb.to}));
        }
      }
    }
    for (auto r : a.epsilon_edges(k.first)) out.add_epsilon(from, visit({r, k.second}));
    for (auto r : b.epsilon_edges(k.second)) out.add_epsilon(from, visit({k.first, r}));
  }
  if (out.num_states() == 0) out.add_state();
  return out;
}

/// Disjoint union accepting L(a) ∪ L(b).
inline Nfa union_of(const Nfa& a, const Nfa& b) {
  if (!detail::same_alphabet(a, b)) throw AlphabetError("union: alphabet mismatch");
  Nfa out(a.alphabet());
  auto copy = [&](const Nfa& src) {
    const auto base = static_cast<Nfa::State>(out.num_states());
    out.add_states(src.num_states());
    for (Nfa::State q = 0; q < src.num_states(); ++q) {
      out.set_initial(base + q, src.is_initial(q));
      out.set_final(base + q, src.is_final(q));
      for (const auto& e : src.edges(q)) {
        out.add_transition(base + q, out.letter_id(src.letter(e.letter)), base + e.to);
      }
      for (auto r : src.epsilon_edges(q)) out.add_epsilon(base + q, base + r);
    }
  };
  copy(a);
  copy(b);
  return out;
}

/// Letter morphism: `nullopt` maps a letter to epsilon.
using LetterMap = std::function<std::optional<Letter>(const Letter&)>;

/// Image of L(nfa) under the alphabetic morphism induced by `f`.
///
/// The result alphabet starts with `target` (when given) followed by any
/// image letters not yet present; epsilon images are eliminated.
inline Nfa map_labels(const Nfa& nfa, const LetterMap& f,
                      const std::vector<Letter>& target = {}) {
  Nfa out(target);
  std::vector<std::optional<Nfa::LetterId>> image(nfa.alphabet().size());
  for (Nfa::LetterId l = 0; l < nfa.alphabet().size(); ++l) {
    auto mapped = f(nfa.letter(l));
    if (mapped) image[l] = out.add_letter(*mapped);
  }
  out.add_states(nfa.num_states());
  for (Nfa::State q = 0; q < nfa.num_states(); ++q) {
    out.set_initial(q, nfa.is_initial(q));
    out.set_final(q, nfa.is_final(q));
    for (const auto& e : nfa.edges(q)) {
      if (image[e.letter]) {
        out.add_transition(q, *image[e.letter], e.to);
      } else {
        out.add_epsilon(q, e.to);
      }
    }
    for (auto r : nfa.epsilon_edges(q)) out.add_epsilon(q, r);
  }
  return eliminate_epsilon(out);
}

/// Equivalent automaton with exactly one initial state (no incoming edges
/// are added to it), built by copying the outgoing edges of all initials.
inline Nfa single_initial(const Nfa& nfa) {
  auto base = eliminate_epsilon(nfa);
  auto inits = base.initial_states();
  if (inits.size() == 1) return base;
  Nfa out = with_alphabet(base, {});
  auto fresh = out.add_state();
  for (auto q : inits) {
    out.set_initial(q, false);
    if (base.is_final(q)) out.set_final(fresh);
    for (const auto& e : base.edges(q)) out.add_transition(fresh, e.letter, e.to);
  }
  out.set_initial(fresh);
  return out;
}

/// Incremental enumeration of the accepted words of a 1-ary automaton, one
/// length at a time (each layer sorted lexicographically).
class WordLayers {
 public:
  explicit WordLayers(const Nfa& nfa) : nfa_(trim(eliminate_epsilon(nfa))) {
    auto init = nfa_.initial_states();
    if (!init.empty()) frontier_.emplace(Word{}, detail::epsilon_closure(nfa_, init));
  }

  /// Accepted words of length exactly `len`; computes layers lazily.
  const std::vector<Word>& layer(std::size_t len) {
    while (layers_.size() <= len) advance();
    return layers_[len];
  }

  /// True once no longer word can be accepted.
  bool exhausted_after(std::size_t len) {
    layer(len);
    return frontier_.empty() && layers_.size() > len;
  }

 private:
  void advance() {
    std::vector<Word> words;
    for (const auto& [w, set] : frontier_) {
      if (detail::any_final(nfa_, set)) words.push_back(w);
    }
    layers_.push_back(std::move(words));
    std::map<Word, detail::StateSet> next;
    for (const auto& [w, set] : frontier_) {
      for (Nfa::LetterId l = 0; l < nfa_.alphabet().size(); ++l) {
        auto succ = detail::post(nfa_, set, l);
        if (succ.empty()) continue;
        Word nw = w;
        nw.push_back(nfa_.letter(l).at(0));
        next.emplace(std::move(nw), std::move(succ));
      }
    }
    frontier_ = std::move(next);
  }

  Nfa nfa_;
  std::map<Word, detail::StateSet> frontier_;
  std::vector<std::vector<Word>> layers_;
};

/// All accepted words of a 1-ary automaton with length ≤ max_len, ordered by
/// length and then lexicographically.
inline std::vector<Word> words_up_to(const Nfa& nfa, std::size_t max_len) {
  WordLayers layers(nfa);
  std::vector<Word> out;
  for (std::size_t len = 0; len <= max_len; ++len) {
    const auto& words = layers.layer(len);
    out.insert(out.end(), words.begin(), words.end());
    if (layers.exhausted_after(len)) break;
  }
  return out;
}

}  // namespace relkit

#endif  // RELKIT_NFA_HPP
