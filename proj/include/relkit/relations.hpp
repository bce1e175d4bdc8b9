#ifndef RELKIT_RELATIONS_HPP
#define RELKIT_RELATIONS_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "relkit/error.hpp"
#include "relkit/nfa.hpp"
#include "relkit/symbol.hpp"

namespace relkit {

/// A word over tuple letters; the convolution of a word tuple is one.
using TupleWord = std::vector<Letter>;

/// Padding convention of a regular relation.
enum class Discipline {
  Strict,      // every accepted word is a proper convolution (pads at the end)
  Projective,  // pads may interleave; tuples are read off the Σ-projections
};

inline const char* to_string(Discipline d) {
  return d == Discipline::Strict ? "strict" : "projective";
}

/// Outcome of an exact decision procedure.
struct Decision {
  bool nonempty = false;
  std::optional<WordTuple> witness;
};

// ---------------------------------------------------------------- convolution

inline TupleWord convolve(const WordTuple& words) {
  std::size_t len = 0;
  for (const auto& w : words) len = std::max(len, w.size());
  TupleWord out(len, Letter(words.size(), kPad));
  for (std::size_t i = 0; i < words.size(); ++i) {
    for (std::size_t p = 0; p < words[i].size(); ++p) out[p][i] = words[i][p];
  }
  return out;
}

/// Inverse of convolve. Throws Error when a pad precedes a letter.
inline WordTuple deconvolve(const TupleWord& tw, std::size_t arity) {
  WordTuple out(arity);
  std::vector<bool> finished(arity, false);
  for (std::size_t p = 0; p < tw.size(); ++p) {
    if (tw[p].size() != arity) throw ArityError("tuple letter of wrong arity");
    for (std::size_t i = 0; i < arity; ++i) {
      if (tw[p][i] == kPad) {
        finished[i] = true;
      } else if (finished[i]) {
        throw Error("improper convolution: pad precedes a letter in coordinate " +
                    std::to_string(i + 1));
      } else {
        out[i].push_back(tw[p][i]);
      }
    }
  }
  return out;
}

/// Σ-projection of every coordinate: drops the `skip` token (pad or eps).
inline WordTuple project_tuple(const TupleWord& tw, std::size_t arity, const Symbol& skip) {
  WordTuple out(arity);
  for (const auto& l : tw) {
    for (std::size_t i = 0; i < arity; ++i) {
      if (l.at(i) != skip) out[i].push_back(l[i]);
    }
  }
  return out;
}

// ------------------------------------------------------------------ classes

namespace detail {

inline void check_tokens(const Nfa& nfa, const Alphabet& sigma, const Symbol& extra,
                         const char* what) {
  for (const auto& l : nfa.alphabet()) {
    for (const auto& s : l) {
      if (s != extra && !contains(sigma, s)) {
        throw AlphabetError(std::string(what) + ": token '" + s + "' is outside the alphabet");
      }
    }
  }
}

/// Automaton accepting exactly the one word `w` over the letters of `sigma`.
inline Nfa word_nfa(const Word& w, const Alphabet& sigma) {
  Nfa out(letters_of(sigma));
  auto q = out.add_state();
  out.set_initial(q);
  for (const auto& s : w) {
    auto r = out.add_state();
    out.add_transition(q, Letter{s}, r);
    q = r;
  }
  out.set_final(q);
  return out;
}

/// Σ* over `sigma`.
inline Nfa universal_nfa(const Alphabet& sigma) {
  Nfa out(letters_of(sigma));
  auto q = out.add_state();
  out.set_initial(q);
  out.set_final(q);
  for (Nfa::LetterId l = 0; l < sigma.size(); ++l) out.add_transition(q, l, q);
  return out;
}

inline Nfa empty_nfa(const std::vector<Letter>& letters) {
  Nfa out(letters);
  out.add_state();
  return out;
}

/// Both automata extended to the union of their alphabets.
inline std::pair<Nfa, Nfa> unify(const Nfa& a, const Nfa& b) {
  return {with_alphabet(a, b.alphabet()), with_alphabet(b, a.alphabet())};
}

}  // namespace detail

/// Recognizable relation: a finite union of products L1 × ... × Lm.
class RecRelation {
 public:
  RecRelation(Alphabet sigma, std::size_t arity, std::vector<std::vector<Nfa>> products)
      : sigma_(std::move(sigma)), arity_(arity) {
    check_alphabet(sigma_);
    if (arity_ == 0) throw ArityError("relation arity must be positive");
    for (auto& product : products) {
      if (product.size() != arity_) {
        throw ArityError("product has " + std::to_string(product.size()) +
                         " components, expected " + std::to_string(arity_));
      }
      std::vector<Nfa> normalized;
      for (auto& nfa : product) {
        if (nfa.arity() > 1) throw ArityError("REC components must be plain-word automata");
        detail::check_tokens(nfa, sigma_, "", "REC component");
        normalized.push_back(eliminate_epsilon(with_alphabet(nfa, letters_of(sigma_))));
      }
      products_.push_back(std::move(normalized));
    }
  }

  std::size_t arity() const noexcept { return arity_; }
  const Alphabet& alphabet() const noexcept { return sigma_; }
  const std::vector<std::vector<Nfa>>& products() const noexcept { return products_; }

 private:
  Alphabet sigma_;
  std::size_t arity_;
  std::vector<std::vector<Nfa>> products_;
};

namespace detail {

/// Product of `nfa` with the padding checker: the checker state records
/// which coordinates have read a pad; a letter may not have a symbol in a
/// finished coordinate, and the all-pad letter is never allowed.
inline Nfa enforce_strict(const Nfa& raw) {
  auto nfa = eliminate_epsilon(raw);
  const std::size_t k = nfa.arity();
  if (k > 31) throw ArityError("arity too large for strict padding");
  using Key = std::pair<Nfa::State, std::uint32_t>;
  Interner<Key> ids;
  Nfa out(nfa.alphabet());
  std::vector<Key> work;
  auto visit = [&](Key key) {
    auto [id, inserted] = ids.intern(key);
    if (inserted) {
      out.add_state();
      out.set_final(id, nfa.is_final(key.first));
      work.push_back(key);
    }
    return id;
  };
  for (auto q : nfa.initial_states()) out.set_initial(visit({q, 0}));
  std::vector<std::uint32_t> pad_mask(nfa.alphabet().size(), 0);
  for (Nfa::LetterId l = 0; l < nfa.alphabet().size(); ++l) {
    for (std::size_t i = 0; i < k; ++i) {
      if (nfa.letter(l)[i] == kPad) pad_mask[l] |= 1u << i;
    }
  }
  const std::uint32_t all = k == 0 ? 0 : ((1u << k) - 1);
  while (!work.empty()) {
    auto key = work.back();
    work.pop_back();
    auto from = ids.intern(key).first;
    for (const auto& e : nfa.edges(key.first)) {
      auto pads = pad_mask[e.letter];
      if (pads == all) continue;
      if ((key.second & ~pads) != 0) continue;  // symbol after pad
      out.add_transition(from, e.letter, visit({e.to, key.second | pads}));
    }
  }
  if (out.num_states() == 0) out.add_state();
  return trim(out);
}

}  // namespace detail

/// Regular (synchronized) relation: an automaton over (Σ ∪ {pad})^k.
class RegRelation {
 public:
  /// `trusted` skips the padding-checker product for automata already known
  /// to accept proper convolutions only.
  RegRelation(Alphabet sigma, Nfa automaton, Discipline discipline = Discipline::Strict,
              bool trusted = false)
      : sigma_(std::move(sigma)), discipline_(discipline) {
    check_alphabet(sigma_);
    if (automaton.arity() == 0 && automaton.alphabet().empty()) {
      throw ArityError("regular relation automaton needs a nonempty alphabet");
    }
    arity_ = automaton.arity();
    detail::check_tokens(automaton, sigma_, kPad, "REG automaton");
    if (discipline_ == Discipline::Strict && !trusted) {
      automaton_ = detail::enforce_strict(automaton);
    } else {
      automaton_ = eliminate_epsilon(automaton);
    }
  }

  std::size_t arity() const noexcept { return arity_; }
  const Alphabet& alphabet() const noexcept { return sigma_; }
  const Nfa& automaton() const noexcept { return automaton_; }
  Discipline discipline() const noexcept { return discipline_; }

 private:
  Alphabet sigma_;
  std::size_t arity_ = 0;
  Nfa automaton_;
  Discipline discipline_;
};

/// Rational relation: an n-tape automaton whose letters are n-tuples over
/// Σ ∪ {eps}. `name` tags the builtin relations.
class RatRelation {
 public:
  RatRelation(Alphabet sigma, Nfa automaton, std::string name = {})
      : sigma_(std::move(sigma)), name_(std::move(name)) {
    check_alphabet(sigma_);
    if (automaton.alphabet().empty()) throw ArityError("rational relation needs letters");
    arity_ = automaton.arity();
    detail::check_tokens(automaton, sigma_, kEps, "RAT automaton");
    automaton_ = eliminate_epsilon(automaton);
  }

  std::size_t arity() const noexcept { return arity_; }
  const Alphabet& alphabet() const noexcept { return sigma_; }
  const Nfa& automaton() const noexcept { return automaton_; }
  const std::string& name() const noexcept { return name_; }

 private:
  Alphabet sigma_;
  std::size_t arity_ = 0;
  Nfa automaton_;
  std::string name_;
};

// --------------------------------------------------------------- membership

namespace detail {

/// Per-letter symbol ids; -1 marks the skipped token (pad or eps).
struct LetterCodec {
  std::vector<std::vector<int>> codes;

  LetterCodec(const Nfa& nfa, const Alphabet& sigma, const Symbol& skip) {
    for (const auto& l : nfa.alphabet()) {
      std::vector<int> c;
      for (const auto& s : l) {
        if (s == skip) {
          c.push_back(-1);
        } else {
          auto it = std::find(sigma.begin(), sigma.end(), s);
          c.push_back(it == sigma.end() ? -2 : static_cast<int>(it - sigma.begin()));
        }
      }
      codes.push_back(std::move(c));
    }
  }
};

inline std::optional<std::vector<std::vector<int>>> encode(const WordTuple& t,
                                                           const Alphabet& sigma) {
  std::vector<std::vector<int>> out;
  for (const auto& w : t) {
    std::vector<int> c;
    for (const auto& s : w) {
      auto it = std::find(sigma.begin(), sigma.end(), s);
      if (it == sigma.end()) return std::nullopt;
      c.push_back(static_cast<int>(it - sigma.begin()));
    }
    out.push_back(std::move(c));
  }
  return out;
}

/// Reachability over (state, position vector) configurations.
inline bool config_member(const Nfa& nfa, const Alphabet& sigma, const Symbol& skip,
                          const WordTuple& t) {
  auto enc = encode(t, sigma);
  if (!enc) return false;
  const auto& words = *enc;
  const std::size_t k = words.size();
  LetterCodec codec(nfa, sigma, skip);
  using Config = std::pair<Nfa::State, std::vector<std::uint32_t>>;
  std::set<Config> seen;
  std::vector<Config> stack;
  for (auto q : nfa.initial_states()) {
    Config c{q, std::vector<std::uint32_t>(k, 0)};
    if (seen.insert(c).second) stack.push_back(std::move(c));
  }
  while (!stack.empty()) {
    auto [q, pos] = std::move(stack.back());
    stack.pop_back();
    if (nfa.is_final(q)) {
      bool done = true;
      for (std::size_t i = 0; i < k; ++i) done = done && pos[i] == words[i].size();
      if (done) return true;
    }
    for (const auto& e : nfa.edges(q)) {
      const auto& code = codec.codes[e.letter];
      auto next = pos;
      bool ok = true;
      for (std::size_t i = 0; i < k && ok; ++i) {
        if (code[i] == -1) continue;
        if (next[i] < words[i].size() && words[i][next[i]] == code[i]) {
          ++next[i];
        } else {
          ok = false;
        }
      }
      if (!ok) continue;
      Config c{e.to, std::move(next)};
      if (seen.insert(c).second) stack.push_back(std::move(c));
    }
  }
  return false;
}

inline bool nfa_accepts_word(const Nfa& nfa, const Word& w) {
  std::vector<Letter> letters;
  for (const auto& s : w) {
    if (!nfa.find_letter(Letter{s})) return false;
    letters.push_back(Letter{s});
  }
  return accepts(nfa, letters);
}

}  // namespace detail

inline bool rec_member(const RecRelation& r, const WordTuple& t) {
  if (t.size() != r.arity()) throw ArityError("tuple arity does not match the relation");
  for (const auto& product : r.products()) {
    bool all = true;
    for (std::size_t i = 0; i < t.size() && all; ++i) {
      all = detail::nfa_accepts_word(product[i], t[i]);
    }
    if (all) return true;
  }
  return false;
}

inline bool reg_member(const RegRelation& r, const WordTuple& t) {
  if (t.size() != r.arity()) throw ArityError("tuple arity does not match the relation");
  if (r.discipline() == Discipline::Strict) {
    auto tw = convolve(t);
    for (const auto& l : tw) {
      if (!r.automaton().find_letter(l)) return false;
    }
    return accepts(r.automaton(), tw);
  }
  return detail::config_member(r.automaton(), r.alphabet(), kPad, t);
}

inline bool rat_member(const RatRelation& r, const WordTuple& t) {
  if (t.size() != r.arity()) throw ArityError("tuple arity does not match the relation");
  return detail::config_member(r.automaton(), r.alphabet(), kEps, t);
}

// ---------------------------------------------------------------- builtins

namespace builtin_name {
inline constexpr const char* kSubsequence = "subsequence";
inline constexpr const char* kSubword = "subword";
inline constexpr const char* kSuffix = "suffix";
inline constexpr const char* kPrefix = "prefix";
inline constexpr const char* kEquality = "equality";
inline constexpr const char* kEqualLength = "equal_length";
}  // namespace builtin_name

/// Canonical builtin name for an accepted spelling, or nullopt.
inline std::optional<std::string> canonical_builtin(const std::string& name) {
  if (name == "subsequence" || name == "subseq") return std::string(builtin_name::kSubsequence);
  if (name == "subword" || name == "infix") return std::string(builtin_name::kSubword);
  if (name == "suffix") return std::string(builtin_name::kSuffix);
  if (name == "prefix") return std::string(builtin_name::kPrefix);
  if (name == "equality" || name == "eq") return std::string(builtin_name::kEquality);
  if (name == "equal_length" || name == "eqlen") return std::string(builtin_name::kEqualLength);
  return std::nullopt;
}

/// True for builtins whose diagonal is total (every w relates to itself).
inline bool is_reflexive_builtin(const std::string& name) {
  auto c = canonical_builtin(name);
  return c.has_value();
}

using AnyRelation = std::variant<RecRelation, RegRelation, RatRelation>;

inline std::size_t arity_of(const AnyRelation& r) {
  return std::visit([](const auto& x) { return x.arity(); }, r);
}

inline const Alphabet& alphabet_of(const AnyRelation& r) {
  return std::visit([](const auto& x) -> const Alphabet& { return x.alphabet(); }, r);
}

inline bool member(const AnyRelation& r, const WordTuple& t) {
  if (auto* rec = std::get_if<RecRelation>(&r)) return rec_member(*rec, t);
  if (auto* reg = std::get_if<RegRelation>(&r)) return reg_member(*reg, t);
  return rat_member(std::get<RatRelation>(r), t);
}

namespace detail {

inline std::vector<Letter> pair_letters(const Alphabet& sigma, const Symbol& extra) {
  std::vector<Letter> out;
  for (const auto& a : sigma) out.push_back({extra, a});
  for (const auto& a : sigma) {
    for (const auto& b : sigma) out.push_back({a, b});
  }
  return out;
}

inline RatRelation make_rat_builtin(const std::string& name, const Alphabet& sigma) {
  Nfa nfa(pair_letters(sigma, kEps));
  auto skip = [&](Nfa::State q, Nfa::State r) {
    for (const auto& a : sigma) nfa.add_transition(q, Letter{kEps, a}, r);
  };
  auto same = [&](Nfa::State q, Nfa::State r) {
    for (const auto& a : sigma) nfa.add_transition(q, Letter{a, a}, r);
  };
  if (name == builtin_name::kSubsequence) {
    auto q = nfa.add_state();
    nfa.set_initial(q);
    nfa.set_final(q);
    skip(q, q);
    same(q, q);
  } else if (name == builtin_name::kSuffix) {
    // (eps,a)* (a,a)*
    auto q0 = nfa.add_state();
    auto q1 = nfa.add_state();
    nfa.set_initial(q0);
    nfa.set_final(q0);
    nfa.set_final(q1);
    skip(q0, q0);
    same(q0, q1);
    same(q1, q1);
  } else {
    // (eps,a)* (a,a)* (eps,a)*
    auto q0 = nfa.add_state();
    auto q1 = nfa.add_state();
    auto q2 = nfa.add_state();
    nfa.set_initial(q0);
    for (auto q : {q0, q1, q2}) nfa.set_final(q);
    skip(q0, q0);
    same(q0, q1);
    same(q1, q1);
    skip(q1, q2);
    skip(q2, q2);
  }
  return RatRelation(sigma, nfa, name);
}

inline RegRelation make_reg_builtin(const std::string& name, const Alphabet& sigma) {
  Nfa nfa(pair_letters(sigma, kPad));
  auto q0 = nfa.add_state();
  nfa.set_initial(q0);
  nfa.set_final(q0);
  if (name == builtin_name::kEquality) {
    for (const auto& a : sigma) nfa.add_transition(q0, Letter{a, a}, q0);
  } else if (name == builtin_name::kEqualLength) {
    for (const auto& a : sigma) {
      for (const auto& b : sigma) nfa.add_transition(q0, Letter{a, b}, q0);
    }
  } else {
    // prefix: (a,a)* (pad,b)*
    auto q1 = nfa.add_state();
    nfa.set_final(q1);
    for (const auto& a : sigma) {
      nfa.add_transition(q0, Letter{a, a}, q0);
      nfa.add_transition(q0, Letter{kPad, a}, q1);
      nfa.add_transition(q1, Letter{kPad, a}, q1);
    }
  }
  return RegRelation(sigma, nfa, Discipline::Strict);
}

}  // namespace detail

/// Builtin relation: subsequence, subword and suffix as rational relations;
/// prefix, equality and equal_length as strict regular relations.
inline std::variant<RatRelation, RegRelation> builtin(const std::string& name,
                                                      const Alphabet& sigma) {
  if (sigma.empty()) throw AlphabetError("builtin relation needs a nonempty alphabet");
  auto canon = canonical_builtin(name);
  if (!canon) throw Error("unknown builtin relation '" + name + "'");
  if (*canon == builtin_name::kSubsequence || *canon == builtin_name::kSubword ||
      *canon == builtin_name::kSuffix) {
    return detail::make_rat_builtin(*canon, sigma);
  }
  return detail::make_reg_builtin(*canon, sigma);
}

// -------------------------------------------------------------- conversions

/// Synchronized product of each REC product; a finished component reads pad.
inline RegRelation rec_to_reg(const RecRelation& r) {
  const std::size_t m = r.arity();
  constexpr auto kDone = static_cast<Nfa::State>(-1);
  Nfa total;
  bool have_total = false;
  for (const auto& product : r.products()) {
    using Key = std::vector<Nfa::State>;
    detail::Interner<Key> ids;
    Nfa out;
    std::vector<Key> work;
    auto visit = [&](const Key& key) {
      auto [id, inserted] = ids.intern(key);
      if (inserted) {
        out.add_state();
        bool fin = true;
        for (std::size_t i = 0; i < m; ++i) {
          fin = fin && (key[i] == kDone || product[i].is_final(key[i]));
        }
        out.set_final(id, fin);
        work.push_back(key);
      }
      return id;
    };
    // Cartesian product of initial states.
    std::vector<Key> starts{Key{}};
    for (std::size_t i = 0; i < m; ++i) {
      std::vector<Key> next;
      for (const auto& s : starts) {
        for (auto q : product[i].initial_states()) {
          auto t = s;
          t.push_back(q);
          next.push_back(std::move(t));
        }
      }
      starts = std::move(next);
    }
    for (const auto& s : starts) out.set_initial(visit(s));
    while (!work.empty()) {
      auto key = work.back();
      work.pop_back();
      auto from = ids.intern(key).first;
      // Per-coordinate options: (symbol or pad, next state).
      std::vector<std::vector<std::pair<Symbol, Nfa::State>>> options(m);
      for (std::size_t i = 0; i < m; ++i) {
        if (key[i] == kDone) {
          options[i].push_back({kPad, kDone});
          continue;
        }
        const auto& comp = product[i];
        for (const auto& e : comp.edges(key[i])) options[i].push_back({comp.letter(e.letter)[0], e.to});
        if (comp.is_final(key[i])) options[i].push_back({kPad, kDone});
      }
      std::vector<std::size_t> idx(m, 0);
      bool any_empty = std::any_of(options.begin(), options.end(),
                                   [](const auto& o) { return o.empty(); });
      while (!any_empty) {
        Letter l(m);
        Key to(m);
        bool all_pad = true;
        for (std::size_t i = 0; i < m; ++i) {
          l[i] = options[i][idx[i]].first;
          to[i] = options[i][idx[i]].second;
          all_pad = all_pad && l[i] == kPad;
        }
        if (!all_pad) out.add_transition(from, out.add_letter(l), visit(to));
        std::size_t i = 0;
        while (i < m && ++idx[i] == options[i].size()) idx[i++] = 0;
        if (i == m) break;
      }
    }
    if (out.num_states() == 0) out.add_state();
    if (!have_total) {
      total = std::move(out);
      have_total = true;
    } else {
      auto [a, b] = detail::unify(total, out);
      total = union_of(a, b);
    }
  }
  if (!have_total) {
    Letter filler(m, r.alphabet().empty() ? kPad : r.alphabet()[0]);
    total = detail::empty_nfa({filler});
  }
  if (total.alphabet().empty()) {
    // Only the empty tuple is accepted: give the automaton an alphabet.
    Letter filler(m, r.alphabet().empty() ? kPad : r.alphabet()[0]);
    total = with_alphabet(total, {filler});
  }
  return RegRelation(r.alphabet(), std::move(total), Discipline::Strict, true);
}

/// Pads become eps; the all-pad letter (projective words) becomes epsilon.
inline RatRelation reg_to_rat(const RegRelation& r) {
  auto image = map_labels(r.automaton(), [](const Letter& l) -> std::optional<Letter> {
    Letter out = l;
    bool all = true;
    for (auto& s : out) {
      if (s == kPad) {
        s = kEps;
      } else {
        all = false;
      }
    }
    if (all) return std::nullopt;
    return out;
  });
  if (image.alphabet().empty()) image = with_alphabet(image, {Letter(r.arity(), kEps)});
  return RatRelation(r.alphabet(), std::move(image));
}

/// Automaton for the i-th projection (1-based) of a rational relation.
inline Nfa rat_project(const RatRelation& r, std::size_t i) {
  if (i < 1 || i > r.arity()) throw ArityError("projection coordinate out of range");
  return trim(map_labels(
      r.automaton(),
      [i](const Letter& l) -> std::optional<Letter> {
        if (l[i - 1] == kEps) return std::nullopt;
        return Letter{l[i - 1]};
      },
      letters_of(r.alphabet())));
}

/// Automaton for the i-th Σ-projection (1-based) of a regular relation.
inline Nfa reg_project(const RegRelation& r, std::size_t i) {
  if (i < 1 || i > r.arity()) throw ArityError("projection coordinate out of range");
  return trim(map_labels(
      r.automaton(),
      [i](const Letter& l) -> std::optional<Letter> {
        if (l[i - 1] == kPad) return std::nullopt;
        return Letter{l[i - 1]};
      },
      letters_of(r.alphabet())));
}

/// The builtin as a rational relation (regular builtins via reg_to_rat).
inline RatRelation builtin_rat(const std::string& name, const Alphabet& sigma) {
  auto b = builtin(name, sigma);
  if (auto* rat = std::get_if<RatRelation>(&b)) return *rat;
  auto rat = reg_to_rat(std::get<RegRelation>(b));
  return RatRelation(sigma, rat.automaton(), *canonical_builtin(name));
}

}  // namespace relkit

#endif  // RELKIT_RELATIONS_HPP
