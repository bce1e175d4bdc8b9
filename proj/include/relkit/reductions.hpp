#ifndef RELKIT_REDUCTIONS_HPP
#define RELKIT_REDUCTIONS_HPP

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "relkit/constraints.hpp"
#include "relkit/error.hpp"
#include "relkit/nfa.hpp"
#include "relkit/relations.hpp"
#include "relkit/scr.hpp"
#include "relkit/symbol.hpp"

namespace relkit {

namespace detail {

/// Product of a strict k-ary automaton with a word automaton read on
/// coordinate `c`; pads on that coordinate leave the word automaton idle.
inline Nfa restrict_coordinate(const Nfa& a, std::size_t c, const Nfa& word) {
  const auto w = eliminate_epsilon(word);
  using Key = std::pair<Nfa::State, Nfa::State>;
  Interner<Key> ids;
  Nfa out(a.alphabet());
  std::vector<Key> work;
  auto visit = [&](Key key) {
    auto [id, inserted] = ids.intern(key);
    if (inserted) {
      out.add_state();
      out.set_final(id, a.is_final(key.first) && w.is_final(key.second));
      work.push_back(key);
    }
    return id;
  };
  for (auto p : a.initial_states()) {
    for (auto q : w.initial_states()) out.set_initial(visit({p, q}));
  }
  while (!work.empty()) {
    auto key = work.back();
    work.pop_back();
    auto from = ids.intern(key).first;
    for (const auto& ea : a.edges(key.first)) {
      const auto& s = a.letter(ea.letter)[c];
      if (s == kPad) {
        out.add_transition(from, ea.letter, visit({ea.to, key.second}));
        continue;
      }
      auto lid = w.find_letter(Letter{s});
      if (!lid) continue;
      for (const auto& ew : w.edges(key.second)) {
        if (ew.letter == *lid) out.add_transition(from, ea.letter, visit({ea.to, ew.to}));
      }
    }
  }
  if (out.num_states() == 0) out.add_state();
  return trim(out);
}

}  // namespace detail

// ---------------------------------------------------------------------- LBA

enum class Move { Left, Right, Stay };

struct LbaTransition {
  Symbol state;
  Symbol read;
  Symbol next;
  Symbol write;
  Move move = Move::Stay;
};

/// Linearly bounded automaton. `tape` excludes the two markers.
struct Lba {
  Alphabet tape;
  Symbol left_marker = "<";
  Symbol right_marker = ">";
  Alphabet states;
  Symbol initial;
  Alphabet finals;
  std::vector<LbaTransition> transitions;
  Word input;
};

/// Block separator of configuration encodings.
inline const Symbol kBlock = "$";

inline Alphabet lba_tape_alphabet(const Lba& lba) {
  Alphabet out = lba.tape;
  out.push_back(lba.left_marker);
  out.push_back(lba.right_marker);
  return out;
}

/// Σ = tape ∪ markers ∪ states ∪ {$}.
inline Alphabet lba_alphabet(const Lba& lba) {
  Alphabet out = lba_tape_alphabet(lba);
  out.insert(out.end(), lba.states.begin(), lba.states.end());
  out.push_back(kBlock);
  return out;
}

inline void validate_lba(const Lba& lba) {
  const auto sigma = lba_alphabet(lba);
  check_alphabet(sigma);  // disjointness of all parts
  const auto tape = lba_tape_alphabet(lba);
  if (!contains(lba.states, lba.initial)) throw Error("LBA initial state is not a state");
  for (const auto& f : lba.finals) {
    if (!contains(lba.states, f)) throw Error("LBA final '" + f + "' is not a state");
  }
  for (const auto& s : lba.input) {
    if (!contains(lba.tape, s)) throw Error("LBA input symbol '" + s + "' is not a tape symbol");
  }
  for (const auto& t : lba.transitions) {
    if (!contains(lba.states, t.state) || !contains(lba.states, t.next)) {
      throw Error("LBA transition uses an unknown state");
    }
    if (!contains(tape, t.read) || !contains(tape, t.write)) {
      throw Error("LBA transition uses an unknown tape symbol");
    }
    const bool marker = t.read == lba.left_marker || t.read == lba.right_marker;
    if (marker && t.write != t.read) throw Error("LBA transition overwrites a marker");
    if (t.read == lba.left_marker && t.move == Move::Left) throw Error("LBA head leaves the left marker");
    if (t.read == lba.right_marker && t.move == Move::Right) throw Error("LBA head leaves the right marker");
  }
}

/// w_C = $ a_0 .. a_{i-1} q a_i .. a_n $ for cells a_0..a_n (markers included).
inline Word lba_encode_config(const Word& cells, std::size_t head, const Symbol& state) {
  if (head >= cells.size()) throw Error("head position outside the tape");
  Word w{kBlock};
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i == head) w.push_back(state);
    w.push_back(cells[i]);
  }
  w.push_back(kBlock);
  return w;
}

inline Word lba_initial_config(const Lba& lba) {
  Word cells{lba.left_marker};
  cells.insert(cells.end(), lba.input.begin(), lba.input.end());
  cells.push_back(lba.right_marker);
  return lba_encode_config(cells, 0, lba.initial);
}

/// R_A = {(w_C0 .. w_Cm, w_C1' .. w_Cm')} where block i of the second word
/// is a successor of block i of the first, C0 is the initial configuration
/// and the state of C_m is final. R_A ∩ suffix ≠ ∅ iff the LBA accepts.
inline RegRelation lba_to_regrel(const Lba& lba) {
  validate_lba(lba);
  const auto sigma = lba_alphabet(lba);
  const auto tape = lba_tape_alphabet(lba);
  Nfa a;
  auto pair = [](const Symbol& x, const Symbol& y) { return Letter{x, y}; };

  const auto start = a.add_state();   // between blocks
  const auto before = a.add_state();  // copying, head not yet seen
  const auto after = a.add_state();   // copying, window done
  const auto last = a.add_state();    // final block, state not yet seen
  const auto last2 = a.add_state();   // final block, state seen
  const auto accept = a.add_state();
  a.set_initial(start);
  a.set_final(accept);

  a.add_transition(start, a.add_letter(pair(kBlock, kBlock)), before);
  a.add_transition(after, a.add_letter(pair(kBlock, kBlock)), start);
  for (const auto& c : tape) {
    a.add_transition(before, a.add_letter(pair(c, c)), before);
    a.add_transition(after, a.add_letter(pair(c, c)), after);
  }
  auto window = [&](const std::vector<Letter>& letters) {
    auto q = before;
    for (std::size_t i = 0; i + 1 < letters.size(); ++i) {
      auto next = a.add_state();
      a.add_transition(q, a.add_letter(letters[i]), next);
      q = next;
    }
    a.add_transition(q, a.add_letter(letters.back()), after);
  };
  for (const auto& t : lba.transitions) {
    switch (t.move) {
      case Move::Stay: window({pair(t.state, t.next), pair(t.read, t.write)}); break;
      case Move::Right: window({pair(t.state, t.write), pair(t.read, t.next)}); break;
      case Move::Left:
        for (const auto& c : tape) {
          window({pair(c, t.next), pair(t.state, c), pair(t.read, t.write)});
        }
        break;
    }
  }

  a.add_transition(start, a.add_letter(pair(kBlock, kPad)), last);
  for (const auto& c : tape) {
    a.add_transition(last, a.add_letter(pair(c, kPad)), last);
    a.add_transition(last2, a.add_letter(pair(c, kPad)), last2);
  }
  for (const auto& f : lba.finals) a.add_transition(last, a.add_letter(pair(f, kPad)), last2);
  a.add_transition(last2, a.add_letter(pair(kBlock, kPad)), accept);

  // The first block of the first word is the initial configuration.
  const auto init = lba_initial_config(lba);
  Nfa prefix(letters_of(sigma));
  prefix.add_states(init.size() + 1);
  prefix.set_initial(0);
  prefix.set_final(static_cast<Nfa::State>(init.size()));
  for (std::size_t i = 0; i < init.size(); ++i) {
    prefix.add_transition(static_cast<Nfa::State>(i), Letter{init[i]}, static_cast<Nfa::State>(i + 1));
  }
  for (const auto& s : sigma) {
    prefix.add_transition(static_cast<Nfa::State>(init.size()), Letter{s}, static_cast<Nfa::State>(init.size()));
  }
  return RegRelation(sigma, detail::restrict_coordinate(a, 0, prefix), Discipline::Strict);
}

// ---------------------------------------------------------------------- PCP

struct PcpInstance {
  Alphabet sigma;
  std::vector<Word> u;
  std::vector<Word> v;
};

enum class PcpVariant { Chain, FanOut, FanIn };

inline const char* to_string(PcpVariant v) {
  switch (v) {
    case PcpVariant::Chain: return "chain";
    case PcpVariant::FanOut: return "fanout";
    case PcpVariant::FanIn: return "fanin";
  }
  return "?";
}

inline void validate_pcp(const PcpInstance& pcp) {
  check_alphabet(pcp.sigma);
  if (pcp.u.empty() || pcp.u.size() != pcp.v.size()) {
    throw Error("PCP lists must be nonempty and of equal length");
  }
  for (const auto* list : {&pcp.u, &pcp.v}) {
    for (const auto& w : *list) {
      for (const auto& s : w) {
        if (!contains(pcp.sigma, s)) throw AlphabetError("PCP word uses unknown symbol '" + s + "'");
      }
    }
  }
}

/// Solution check by definition: a nonempty index sequence (1-based).
inline bool pcp_is_solution(const PcpInstance& pcp, const std::vector<std::size_t>& indices) {
  if (indices.empty()) return false;
  Word a, b;
  for (auto i : indices) {
    if (i == 0 || i > pcp.u.size()) return false;
    a.insert(a.end(), pcp.u[i - 1].begin(), pcp.u[i - 1].end());
    b.insert(b.end(), pcp.v[i - 1].begin(), pcp.v[i - 1].end());
  }
  return a == b;
}

/// Hat copy of a symbol, used by the fan variants.
inline Symbol hat(const Symbol& s) { return "^" + s; }

struct PcpRatInstance {
  RatRelation relation;
  ConstraintSet constraints;
};

/// Ternary rational relation and constraints whose subsequence GenInt is
/// satisfiable iff the PCP instance has a solution. Index sequences are
/// nonempty.
inline PcpRatInstance pcp_to_rat(const PcpInstance& pcp, PcpVariant variant) {
  validate_pcp(pcp);
  Alphabet sigma = pcp.sigma;
  if (variant != PcpVariant::Chain) {
    for (std::size_t i = 0; i < pcp.u.size(); ++i) {
      if (pcp.u[i].size() > 1 || pcp.v[i].size() > 1) {
        throw ShapeError("fan variants need words of length at most 1");
      }
    }
    for (const auto& s : pcp.sigma) {
      if (contains(pcp.sigma, hat(s))) throw AlphabetError("hat symbol '" + hat(s) + "' clashes with the alphabet");
      sigma.push_back(hat(s));
    }
  }
  const Symbol e = kEps;
  Nfa a;
  const auto hub0 = a.add_state();
  const auto hub = a.add_state();
  a.set_initial(hub0);
  a.set_final(hub);
  // A path from `from` to hub reading the letters in order.
  auto path = [&](Nfa::State from, const std::vector<Letter>& letters) {
    if (letters.empty()) {
      a.add_epsilon(from, hub);
      return;
    }
    auto q = from;
    for (std::size_t i = 0; i < letters.size(); ++i) {
      auto next = i + 1 == letters.size() ? hub : a.add_state();
      a.add_transition(q, a.add_letter(letters[i]), next);
      q = next;
    }
  };
  auto hats = [](const Word& w) {
    Word out;
    for (const auto& s : w) out.push_back(hat(s));
    return out;
  };
  // Fan letters as (x, y, z) for FanOut; FanIn swaps x and y.
  auto fan = [&](Symbol x, Symbol y, Symbol z) {
    if (variant == PcpVariant::FanIn) std::swap(x, y);
    return Letter{x, y, z};
  };
  for (auto from : {hub0, hub}) {
    for (std::size_t i = 0; i < pcp.u.size(); ++i) {
      std::vector<Letter> letters;
      if (variant == PcpVariant::Chain) {
        for (const auto& c : pcp.u[i]) letters.push_back({c, e, c});
        for (const auto& c : pcp.v[i]) letters.push_back({e, c, e});
      } else {
        // x: u_i ^v_i ; y: ^u_i ; z: v_i
        for (const auto& c : pcp.u[i]) letters.push_back(fan(c, e, e));
        for (const auto& c : hats(pcp.v[i])) letters.push_back(fan(c, e, e));
        for (const auto& c : hats(pcp.u[i])) letters.push_back(fan(e, c, e));
        for (const auto& c : pcp.v[i]) letters.push_back(fan(e, e, c));
      }
      path(from, letters);
    }
    if (variant != PcpVariant::Chain) {
      // Free filler words w' (plain, in y) and ^w (hatted, in z).
      for (const auto& c : pcp.sigma) {
        a.add_transition(from, a.add_letter(fan(e, c, e)), from);
        a.add_transition(from, a.add_letter(fan(e, e, hat(c))), from);
      }
    }
  }
  if (a.alphabet().empty()) a.add_letter({e, e, e});
  std::vector<ConstraintSet::Pair> pairs;
  switch (variant) {
    case PcpVariant::Chain: pairs = {{1, 2}, {2, 3}}; break;
    case PcpVariant::FanOut: pairs = {{1, 2}, {1, 3}}; break;
    case PcpVariant::FanIn: pairs = {{1, 2}, {3, 2}}; break;
  }
  return PcpRatInstance{RatRelation(sigma, a, std::string("pcp-") + to_string(variant)),
                        ConstraintSet(3, std::move(pairs))};
}

inline const Symbol kStar = "star";
inline const Symbol kDagger = "dagger";

inline Symbol pcp_index_symbol(std::size_t i) { return "i" + std::to_string(i); }

struct PcpScrInstance {
  RecRelation relation;
  ScrRelation s;
  ConstraintSet constraints;
};

/// R = (star Σ*) × (dagger R_a) × (dagger R_b) with R_a = (∪ u_i i)^+,
/// R_b = (∪ v_i i)^+, S the subsequence closure of the index/letter
/// consistency relation, I the full symmetric set on three coordinates.
inline PcpScrInstance pcp_to_scr_instance(const PcpInstance& pcp) {
  validate_pcp(pcp);
  const std::size_t n = pcp.u.size();
  Alphabet indices;
  for (std::size_t i = 1; i <= n; ++i) indices.push_back(pcp_index_symbol(i));
  Alphabet sigma = pcp.sigma;
  for (const auto& s : indices) sigma.push_back(s);
  sigma.push_back(kStar);
  sigma.push_back(kDagger);
  check_alphabet(sigma);

  const auto letters = letters_of(sigma);
  Nfa w1(letters);
  w1.add_states(2);
  w1.set_initial(0);
  w1.set_final(1);
  w1.add_transition(0, Letter{kStar}, 1);
  for (const auto& c : pcp.sigma) w1.add_transition(1, Letter{c}, 1);

  auto indexed = [&](const std::vector<Word>& words) {
    Nfa out(letters);
    const auto init = out.add_state();
    const auto hub0 = out.add_state();
    const auto hub = out.add_state();
    out.set_initial(init);
    out.set_final(hub);
    out.add_transition(init, Letter{kDagger}, hub0);
    for (auto from : {hub0, hub}) {
      for (std::size_t i = 0; i < n; ++i) {
        auto q = from;
        for (const auto& c : words[i]) {
          auto next = out.add_state();
          out.add_transition(q, Letter{c}, next);
          q = next;
        }
        out.add_transition(q, Letter{indices[i]}, hub);
      }
    }
    return out;
  };
  RecRelation r(sigma, 3, {{w1, indexed(pcp.u), indexed(pcp.v)}});

  // S over pad letters with projective semantics.
  Nfa s;
  const auto s0 = s.add_state();
  const auto b1 = s.add_state();  // (dagger, dagger): index projections embed
  const auto b2 = s.add_state();  // (dagger, star): letter projections embed
  const auto b3 = s.add_state();  // (star, dagger)
  s.set_initial(s0);
  for (auto q : {b1, b2, b3}) s.set_final(q);
  s.add_transition(s0, s.add_letter(Letter{kDagger, kDagger}), b1);
  s.add_transition(s0, s.add_letter(Letter{kDagger, kStar}), b2);
  s.add_transition(s0, s.add_letter(Letter{kStar, kDagger}), b3);
  for (const auto& c : pcp.sigma) {
    s.add_transition(b1, s.add_letter(Letter{c, kPad}), b1);
    s.add_transition(b1, s.add_letter(Letter{kPad, c}), b1);
    s.add_transition(b2, s.add_letter(Letter{c, c}), b2);
    s.add_transition(b2, s.add_letter(Letter{kPad, c}), b2);
    s.add_transition(b3, s.add_letter(Letter{c, c}), b3);
    s.add_transition(b3, s.add_letter(Letter{kPad, c}), b3);
  }
  for (const auto& i : indices) {
    s.add_transition(b1, s.add_letter(Letter{i, i}), b1);
    s.add_transition(b1, s.add_letter(Letter{kPad, i}), b1);
    s.add_transition(b2, s.add_letter(Letter{i, kPad}), b2);
    s.add_transition(b3, s.add_letter(Letter{kPad, i}), b3);
  }
  std::vector<ConstraintSet::Pair> all;
  for (std::size_t i = 1; i <= 3; ++i) {
    for (std::size_t j = 1; j <= 3; ++j) {
      if (i != j) all.emplace_back(i, j);
    }
  }
  return PcpScrInstance{std::move(r), scr_close(s, sigma), ConstraintSet(3, std::move(all))};
}

// ---------------------------------------------------------------------- PEP

struct PepInstance {
  Alphabet sigma;  // source alphabet of w
  Alphabet gamma;  // target alphabet of the morphisms
  std::map<Symbol, Word> morphism;        // σ
  std::map<Symbol, Word> morphism_prime;  // σ'
  Nfa language;                           // L over sigma
};

/// Blank letter of the PEP encoding.
inline const Symbol kBlank = "#";

inline Word apply_morphism(const std::map<Symbol, Word>& m, const Word& w) {
  Word out;
  for (const auto& a : w) {
    const auto& img = m.at(a);
    out.insert(out.end(), img.begin(), img.end());
  }
  return out;
}

inline void validate_pep(const PepInstance& pep) {
  check_alphabet(pep.sigma);
  check_alphabet(pep.gamma);
  if (contains(pep.gamma, kBlank)) throw AlphabetError("'#' is reserved in the PEP target alphabet");
  for (const auto* m : {&pep.morphism, &pep.morphism_prime}) {
    for (const auto& a : pep.sigma) {
      auto it = m->find(a);
      if (it == m->end()) throw Error("morphism is not defined on '" + a + "'");
      for (const auto& s : it->second) {
        if (!contains(pep.gamma, s)) throw AlphabetError("morphism image uses unknown symbol '" + s + "'");
      }
    }
    for (const auto& [a, img] : *m) {
      if (!contains(pep.sigma, a)) throw AlphabetError("morphism maps unknown symbol '" + a + "'");
    }
  }
  if (pep.language.arity() > 1) throw ArityError("PEP language must be over plain words");
  detail::check_tokens(pep.language, pep.sigma, "", "PEP language");
}

inline Alphabet pep_alphabet(const PepInstance& pep) {
  Alphabet out = pep.gamma;
  out.push_back(kBlank);
  return out;
}

/// R = R'·({ε}×#*) where R' is the length-preserving relation of blocks
/// (u_i, u'_i) ∈ R_{w[i]} along words w ∈ L. R ∩ ⊑ ≠ ∅ implies the instance
/// has a solution; a strict codirect solution implies R ∩ ⊑ ≠ ∅.
inline RegRelation pep_to_reg(const PepInstance& pep) {
  validate_pep(pep);
  const auto gamma = pep_alphabet(pep);
  const auto lang = eliminate_epsilon(with_alphabet(pep.language, letters_of(pep.sigma)));
  Nfa out;
  out.add_states(lang.num_states());
  for (Nfa::State q = 0; q < lang.num_states(); ++q) out.set_initial(q, lang.is_initial(q));

  // R_a from p to q: grid states (i, j) of progress through σ(a), σ'(a).
  auto block = [&](const Symbol& a, Nfa::State p, Nfa::State q) {
    const auto& x = pep.morphism.at(a);
    const auto& y = pep.morphism_prime.at(a);
    std::vector<std::vector<Nfa::State>> grid(x.size() + 1, std::vector<Nfa::State>(y.size() + 1));
    for (auto& row : grid) {
      for (auto& s : row) s = out.add_state();
    }
    out.add_epsilon(p, grid[0][0]);
    out.add_epsilon(grid[x.size()][y.size()], q);
    for (std::size_t i = 0; i <= x.size(); ++i) {
      for (std::size_t j = 0; j <= y.size(); ++j) {
        std::vector<std::pair<Symbol, std::size_t>> xs{{kBlank, i}}, ys{{kBlank, j}};
        if (i < x.size()) xs.emplace_back(x[i], i + 1);
        if (j < y.size()) ys.emplace_back(y[j], j + 1);
        for (const auto& [sx, ni] : xs) {
          for (const auto& [sy, nj] : ys) out.add_transition(grid[i][j], out.add_letter(Letter{sx, sy}), grid[ni][nj]);
        }
      }
    }
  };
  for (Nfa::State p = 0; p < lang.num_states(); ++p) {
    for (const auto& e : lang.edges(p)) block(lang.letter(e.letter)[0], p, e.to);
  }
  const auto tail = out.add_state();
  out.set_final(tail);
  out.add_transition(tail, out.add_letter(Letter{kPad, kBlank}), tail);
  for (auto f : lang.final_states()) out.add_epsilon(f, tail);
  return RegRelation(gamma, out, Discipline::Strict);
}

/// Recovers w ∈ L from a pair (u, u') of pep_to_reg(pep) by searching a run
/// of the construction. Returns nullopt if the pair is not in the relation.
inline std::optional<Word> pep_decode(const PepInstance& pep, const WordTuple& t) {
  validate_pep(pep);
  if (t.size() != 2) throw ArityError("PEP witnesses are pairs");
  const Word& u = t[0];
  const Word& v = t[1];
  if (u.size() > v.size()) return std::nullopt;
  const auto lang = eliminate_epsilon(with_alphabet(pep.language, letters_of(pep.sigma)));
  // Hub configurations have letter index -1; in-block ones carry the
  // L-edge being read and the progress through both images.
  using Config = std::tuple<std::size_t, Nfa::State, long, Nfa::State, std::size_t, std::size_t>;
  std::map<Config, std::pair<Config, std::optional<Symbol>>> pred;
  std::vector<Config> queue;
  for (auto q : lang.initial_states()) {
    Config c{0, q, -1, 0, 0, 0};
    pred.emplace(c, std::pair{c, std::nullopt});
    queue.push_back(c);
  }
  auto push = [&](const Config& from, const Config& to, std::optional<Symbol> sym) {
    if (pred.emplace(to, std::pair{from, std::move(sym)}).second) queue.push_back(to);
  };
  std::optional<Config> goal;
  for (std::size_t head = 0; head < queue.size() && !goal; ++head) {
    const auto c = queue[head];
    const auto [k, q, letter, target, i, j] = c;
    if (letter < 0) {
      if (lang.is_final(q) && k >= u.size() &&
          std::all_of(v.begin() + static_cast<std::ptrdiff_t>(k), v.end(), [](const Symbol& s) { return s == kBlank; })) {
        goal = c;
        break;
      }
      for (const auto& e : lang.edges(q)) push(c, Config{k, q, static_cast<long>(e.letter), e.to, 0, 0}, std::nullopt);
      continue;
    }
    const auto& a = lang.letter(static_cast<Nfa::LetterId>(letter))[0];
    const auto& x = pep.morphism.at(a);
    const auto& y = pep.morphism_prime.at(a);
    if (i == x.size() && j == y.size()) push(c, Config{k, target, -1, 0, 0, 0}, a);
    if (k >= u.size()) continue;
    std::vector<std::size_t> is, js;
    if (u[k] == kBlank) is.push_back(i);
    if (i < x.size() && u[k] == x[i]) is.push_back(i + 1);
    if (v[k] == kBlank) js.push_back(j);
    if (j < y.size() && v[k] == y[j]) js.push_back(j + 1);
    for (auto ni : is) {
      for (auto nj : js) push(c, Config{k + 1, q, letter, target, ni, nj}, std::nullopt);
    }
  }
  if (!goal) return std::nullopt;
  Word w;
  for (Config c = *goal;;) {
    const auto& [from, sym] = pred.at(c);
    if (from == c) break;
    if (sym) w.push_back(*sym);
    c = from;
  }
  std::reverse(w.begin(), w.end());
  return w;
}

}  // namespace relkit

#endif  // RELKIT_REDUCTIONS_HPP
