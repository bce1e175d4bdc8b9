#ifndef RELKIT_ORACLE_HPP
#define RELKIT_ORACLE_HPP

#include <algorithm>
#include <cstddef>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "relkit/constraints.hpp"
#include "relkit/error.hpp"
#include "relkit/nfa.hpp"
#include "relkit/relations.hpp"
#include "relkit/symbol.hpp"

namespace relkit {

// Brute-force ground truth. Nothing here calls a solver.

inline bool is_prefix(const Word& u, const Word& v) {
  return u.size() <= v.size() && std::equal(u.begin(), u.end(), v.begin());
}

inline bool is_suffix(const Word& u, const Word& v) {
  return u.size() <= v.size() && std::equal(u.begin(), u.end(), v.end() - static_cast<std::ptrdiff_t>(u.size()));
}

inline bool is_subword(const Word& u, const Word& v) {
  if (u.empty()) return true;
  return std::search(v.begin(), v.end(), u.begin(), u.end()) != v.end();
}

/// Subsequence test by dynamic programming over all prefix pairs; kept
/// deliberately different from the greedy test used by the solvers.
inline bool is_subsequence_dp(const Word& u, const Word& v) {
  // emb[i][j]: u[0..i) embeds into v[0..j)
  std::vector<std::vector<bool>> emb(u.size() + 1, std::vector<bool>(v.size() + 1, false));
  for (std::size_t j = 0; j <= v.size(); ++j) emb[0][j] = true;
  for (std::size_t i = 1; i <= u.size(); ++i) {
    for (std::size_t j = 1; j <= v.size(); ++j) {
      emb[i][j] = emb[i][j - 1] || (emb[i - 1][j - 1] && u[i - 1] == v[j - 1]);
    }
  }
  return emb[u.size()][v.size()];
}

using WordPredicate = std::function<bool(const Word&, const Word&)>;

/// Direct string predicate of a builtin relation.
inline WordPredicate direct_predicate(const std::string& name) {
  auto canon = canonical_builtin(name);
  if (!canon) throw Error("no direct predicate for '" + name + "'");
  if (*canon == builtin_name::kSubsequence) return is_subsequence_dp;
  if (*canon == builtin_name::kSubword) return is_subword;
  if (*canon == builtin_name::kSuffix) return is_suffix;
  if (*canon == builtin_name::kPrefix) return is_prefix;
  if (*canon == builtin_name::kEquality) return [](const Word& u, const Word& v) { return u == v; };
  return [](const Word& u, const Word& v) { return u.size() == v.size(); };
}

using TupleVisitor = std::function<bool(const WordTuple&)>;

namespace detail {

/// Emits the accepted tuples of a tuple-letter automaton layer by layer.
/// `skip` is the token that does not advance a coordinate (pad or eps).
inline bool enumerate_automaton(const Nfa& nfa, const Symbol& skip, std::size_t arity,
                                std::size_t max_total, std::size_t per_word,
                                const TupleVisitor& visit) {
  using Config = std::pair<Nfa::State, WordTuple>;
  std::map<std::size_t, std::set<Config>> layers;
  for (auto q : nfa.initial_states()) layers[0].insert(Config{q, WordTuple(arity)});
  while (!layers.empty()) {
    auto node = layers.extract(layers.begin());
    const std::size_t total = node.key();
    auto& layer = node.mapped();
    // Close under letters that add no symbol.
    std::vector<Config> stack(layer.begin(), layer.end());
    while (!stack.empty()) {
      auto c = std::move(stack.back());
      stack.pop_back();
      for (const auto& e : nfa.edges(c.first)) {
        const auto& l = nfa.letter(e.letter);
        bool silent = std::all_of(l.begin(), l.end(), [&](const Symbol& s) { return s == skip; });
        if (!silent) continue;
        Config next{e.to, c.second};
        if (layer.insert(next).second) stack.push_back(std::move(next));
      }
    }
    std::set<WordTuple> accepted;
    for (const auto& [q, t] : layer) {
      if (nfa.is_final(q)) accepted.insert(t);
      for (const auto& e : nfa.edges(q)) {
        const auto& l = nfa.letter(e.letter);
        std::size_t add = 0;
        bool ok = true;
        for (std::size_t i = 0; i < arity; ++i) {
          if (l[i] == skip) continue;
          ++add;
          if (t[i].size() + 1 > per_word) ok = false;
        }
        if (add == 0 || !ok || total + add > max_total) continue;
        Config next{e.to, t};
        for (std::size_t i = 0; i < arity; ++i) {
          if (l[i] != skip) next.second[i].push_back(l[i]);
        }
        layers[total + add].insert(std::move(next));
      }
    }
    for (const auto& t : accepted) {
      if (visit(t)) return true;
    }
  }
  return false;
}

inline bool enumerate_rec(const RecRelation& r, std::size_t max_total, std::size_t per_word,
                          const TupleVisitor& visit) {
  const std::size_t m = r.arity();
  std::vector<std::vector<WordLayers>> layers;
  for (const auto& product : r.products()) {
    std::vector<WordLayers> comps;
    for (const auto& comp : product) comps.emplace_back(comp);
    layers.push_back(std::move(comps));
  }
  const std::size_t cap = std::min(per_word, max_total);
  std::vector<bool> done(layers.size(), false);
  for (std::size_t n = 0; n <= max_total; ++n) {
    bool any_left = false;
    std::set<WordTuple> layer;
    for (std::size_t p = 0; p < layers.size(); ++p) {
      if (done[p]) continue;
      any_left = true;
      auto& comps = layers[p];
      WordTuple t(m);
      std::function<void(std::size_t, std::size_t)> fill = [&](std::size_t i, std::size_t left) {
        if (i == m) {
          if (left == 0) layer.insert(t);
          return;
        }
        for (std::size_t len = 0; len <= std::min(left, cap); ++len) {
          if (i + 1 == m && len != left) continue;
          for (const auto& w : comps[i].layer(len)) {
            t[i] = w;
            fill(i + 1, left - len);
          }
        }
      };
      fill(0, n);
      // Finished once no component can produce a longer word and n covers
      // the sum of the longest ones.
      const std::size_t reach = std::min(n, cap);
      bool finished = true;
      std::size_t longest = 0;
      for (auto& c : comps) {
        if (!c.exhausted_after(reach) && reach < cap) finished = false;
        for (std::size_t len = reach + 1; len-- > 0;) {
          if (!c.layer(len).empty()) {
            longest += len;
            break;
          }
        }
      }
      if (finished && n >= longest) done[p] = true;
    }
    for (const auto& t : layer) {
      if (visit(t)) return true;
    }
    if (!any_left) break;
  }
  return false;
}

}  // namespace detail

constexpr std::size_t kNoCap = std::numeric_limits<std::size_t>::max() / 4;

/// Streams every member with total length ≤ max_total (and each word ≤
/// per_word) in nondecreasing total length, ties broken lexicographically.
/// Stops early when `visit` returns true; returns whether it stopped.
inline bool for_each_tuple(const AnyRelation& r, std::size_t max_total, std::size_t per_word,
                           const TupleVisitor& visit) {
  if (auto* rec = std::get_if<RecRelation>(&r)) {
    return detail::enumerate_rec(*rec, max_total, per_word, visit);
  }
  if (auto* reg = std::get_if<RegRelation>(&r)) {
    return detail::enumerate_automaton(reg->automaton(), kPad, reg->arity(), max_total, per_word, visit);
  }
  const auto& rat = std::get<RatRelation>(r);
  return detail::enumerate_automaton(rat.automaton(), kEps, rat.arity(), max_total, per_word, visit);
}

inline std::vector<WordTuple> enumerate_tuples(const AnyRelation& r, std::size_t max_total,
                                               std::size_t per_word = kNoCap) {
  std::vector<WordTuple> out;
  for_each_tuple(r, max_total, per_word, [&](const WordTuple& t) {
    out.push_back(t);
    return false;
  });
  return out;
}

struct OracleResult {
  std::optional<WordTuple> witness;
  std::size_t exhausted_cap = 0;
};

inline bool satisfies(const WordTuple& t, const ConstraintSet& I, const WordPredicate& s) {
  return std::all_of(I.pairs().begin(), I.pairs().end(),
                     [&](const auto& p) { return s(t[p.first - 1], t[p.second - 1]); });
}

/// First enumerated tuple of R satisfying every I-pair under S.
inline OracleResult brute_genint(const AnyRelation& r, const ConstraintSet& I, const WordPredicate& s,
                                 std::size_t max_total, std::size_t per_word = kNoCap) {
  if (I.arity() != arity_of(r)) throw ArityError("constraint arity does not match the relation");
  OracleResult res;
  res.exhausted_cap = max_total;
  for_each_tuple(r, max_total, per_word, [&](const WordTuple& t) {
    if (!satisfies(t, I, s)) return false;
    res.witness = t;
    return true;
  });
  return res;
}

inline OracleResult brute_genint(const AnyRelation& r, const ConstraintSet& I, const RatRelation& s,
                                 std::size_t max_total, std::size_t per_word = kNoCap) {
  return brute_genint(
      r, I, [&s](const Word& u, const Word& v) { return rat_member(s, {u, v}); }, max_total, per_word);
}

}  // namespace relkit

#endif  // RELKIT_ORACLE_HPP
