#ifndef RELKIT_SUBSEQ_HPP
#define RELKIT_SUBSEQ_HPP

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <optional>
#include <vector>

#include "relkit/constraints.hpp"
#include "relkit/error.hpp"
#include "relkit/nfa.hpp"
#include "relkit/relations.hpp"
#include "relkit/symbol.hpp"

namespace relkit {

/// Greedy two-pointer embedding test: u ⊑ v.
template <typename Seq>
bool is_subsequence(const Seq& u, const Seq& v) {
  std::size_t i = 0;
  for (std::size_t j = 0; j < v.size() && i < u.size(); ++j) {
    if (u[i] == v[j]) ++i;
  }
  return i == u.size();
}

/// u \ v: the suffix of u left after greedily embedding its longest prefix
/// into v. Empty iff u ⊑ v.
template <typename Seq>
Seq subseq_residual(const Seq& u, const Seq& v) {
  std::size_t i = 0;
  for (std::size_t j = 0; j < v.size() && i < u.size(); ++j) {
    if (u[i] == v[j]) ++i;
  }
  return Seq(u.begin() + static_cast<std::ptrdiff_t>(i), u.end());
}

struct TreeOptions {
  std::size_t node_budget = 1'000'000;
  /// Disables the saturation rule; the search is then cut at `depth_cap`.
  bool saturation = true;
  /// Also prunes nodes dominated by any recorded node, not only by ancestors,
  /// and searches breadth first. Sound because the outcome below a node
  /// depends only on its state and residuals, monotonically in the residuals,
  /// and every recorded node is expanded.
  bool global_subsumption = true;
  std::size_t depth_cap = 0;
  /// Revalidate witnesses against reg_member and the subsequence predicate.
  bool validate = true;
};

struct TreeResult {
  Decision decision;
  std::size_t nodes = 0;
  std::size_t max_depth = 0;
  /// False only when saturation is disabled and the depth cap cut a branch.
  bool complete = true;
};

namespace detail {

inline void check_subseq_witness(const RegRelation& r, const ConstraintSet& I,
                                 const WordTuple& w) {
  if (!reg_member(r, w)) throw WitnessError("tree_solve witness is not in the relation");
  for (const auto& [i, j] : I.pairs()) {
    if (!is_subsequence(w[i - 1], w[j - 1])) {
      throw WitnessError("tree_solve witness violates constraint (" + std::to_string(i) + "," +
                         std::to_string(j) + ")");
    }
  }
}

/// A segment u ⊑ v read between two states, as symbol indices.
struct Segment {
  std::vector<int> u, v;
};

/// Residual search on a pair automaton whose letters carry at most one
/// symbol per tape (-1 for none). Returns, for every state q reached from p
/// with empty residual, the words of one such path. Complete for paths on
/// which v never runs ahead of u; spare letters of v are dropped.
inline std::vector<std::optional<Segment>> pending_reach(const Nfa& a, const std::vector<std::array<int, 2>>& codes,
                                                         Nfa::State p, const TreeOptions& opt, TreeResult& stats) {
  using Seq = std::vector<int>;
  struct Node {
    Nfa::State q;
    Seq alpha;
    Segment words;
    std::size_t depth;
  };
  std::vector<std::optional<Segment>> reached(a.num_states());
  std::vector<std::vector<Seq>> seen(a.num_states());
  auto admit = [&](Nfa::State q, const Seq& alpha) {
    auto& s = seen[q];
    if (std::any_of(s.begin(), s.end(), [&](const Seq& x) { return is_subsequence(x, alpha); })) return false;
    std::erase_if(s, [&](const Seq& x) { return is_subsequence(alpha, x); });
    s.push_back(alpha);
    return true;
  };
  std::deque<Node> queue;
  admit(p, {});
  reached[p] = Segment{};
  queue.push_back(Node{p, {}, {}, 0});
  while (!queue.empty()) {
    Node n = std::move(queue.front());
    queue.pop_front();
    for (const auto& e : a.edges(n.q)) {
      const auto& [x, y] = codes[e.letter];
      Node m{e.to, n.alpha, n.words, n.depth + 1};
      if (x >= 0) {
        m.alpha.push_back(x);
        m.words.u.push_back(x);
      }
      if (y >= 0) {
        m.words.v.push_back(y);
        if (!m.alpha.empty() && m.alpha.front() == y) m.alpha.erase(m.alpha.begin());
      }
      stats.max_depth = std::max(stats.max_depth, m.depth);
      if (++stats.nodes > opt.node_budget) throw BudgetExceeded(stats.nodes, stats.max_depth);
      if (!admit(m.q, m.alpha)) continue;
      if (m.alpha.empty() && !reached[m.q]) reached[m.q] = m.words;
      queue.push_back(std::move(m));
    }
  }
  return reached;
}

}  // namespace detail

/// Decides R ∩ ⊑ ≠ ∅ for a binary relation given by a pair automaton read
/// with projective semantics (pads act as ε), i.e. a rational relation.
///
/// Fix an embedding of u into v along an accepting run. The difference
/// between the u-letters produced and the u-letters already matched moves by
/// at most one per transition, so the run splits at its zeros into segments on
/// which either v never runs ahead of u or u never runs ahead of v. The
/// residual search is complete for the first kind, and on the reversed
/// automaton for the second; chaining segments from an initial to a final
/// state decides the problem.
inline TreeResult rat_subseq_stats(const Nfa& pair_automaton, const Alphabet& sigma, const TreeOptions& opt = {}) {
  if (pair_automaton.arity() > 2) throw ArityError("rat_subseq needs a pair automaton");
  const Nfa a = trim(eliminate_epsilon(pair_automaton));
  const std::size_t n = a.num_states();
  std::vector<std::array<int, 2>> codes;
  for (const auto& l : a.alphabet()) {
    std::array<int, 2> c{-1, -1};
    for (std::size_t i = 0; i < 2; ++i) {
      if (l[i] == kPad || l[i] == kEps) continue;
      auto it = std::find(sigma.begin(), sigma.end(), l[i]);
      if (it == sigma.end()) throw AlphabetError("letter symbol '" + l[i] + "' is not in the alphabet");
      c[i] = static_cast<int>(it - sigma.begin());
    }
    codes.push_back(c);
  }
  Nfa rev(a.alphabet());
  rev.add_states(n);
  for (Nfa::State q = 0; q < n; ++q) {
    for (const auto& e : a.edges(q)) rev.add_transition(e.to, e.letter, q);
  }

  TreeResult result;
  // seg[p][q]: words of a balanced segment from p to q.
  std::vector<std::vector<std::optional<detail::Segment>>> seg(n, std::vector<std::optional<detail::Segment>>(n));
  for (Nfa::State p = 0; p < n; ++p) {
    auto fwd = detail::pending_reach(a, codes, p, opt, result);
    for (Nfa::State q = 0; q < n; ++q) {
      if (fwd[q]) seg[p][q] = std::move(fwd[q]);
    }
  }
  for (Nfa::State q = 0; q < n; ++q) {
    auto bwd = detail::pending_reach(rev, codes, q, opt, result);
    for (Nfa::State p = 0; p < n; ++p) {
      if (!bwd[p] || seg[p][q]) continue;
      std::reverse(bwd[p]->u.begin(), bwd[p]->u.end());
      std::reverse(bwd[p]->v.begin(), bwd[p]->v.end());
      seg[p][q] = std::move(bwd[p]);
    }
  }

  // Breadth-first over states along segments.
  std::vector<std::optional<Nfa::State>> parent(n);
  std::vector<bool> visited(n, false);
  std::deque<Nfa::State> queue;
  std::optional<Nfa::State> goal;
  for (auto q : a.initial_states()) {
    if (visited[q]) continue;
    visited[q] = true;
    queue.push_back(q);
  }
  while (!queue.empty() && !goal) {
    auto p = queue.front();
    queue.pop_front();
    if (a.is_final(p)) {
      goal = p;
      break;
    }
    for (Nfa::State q = 0; q < n; ++q) {
      if (visited[q] || !seg[p][q]) continue;
      visited[q] = true;
      parent[q] = p;
      queue.push_back(q);
    }
  }
  if (!goal) {
    result.decision = Decision{false, std::nullopt};
    return result;
  }
  std::vector<Nfa::State> path{*goal};
  while (parent[path.back()]) path.push_back(*parent[path.back()]);
  std::reverse(path.begin(), path.end());
  WordTuple w(2);
  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    const auto& s = *seg[path[i]][path[i + 1]];
    for (int c : s.u) w[0].push_back(sigma[static_cast<std::size_t>(c)]);
    for (int c : s.v) w[1].push_back(sigma[static_cast<std::size_t>(c)]);
  }
  if (opt.validate && !is_subsequence(w[0], w[1])) throw WitnessError("rat_subseq witness violates u ⊑ v");
  result.decision = Decision{true, std::move(w)};
  return result;
}

namespace detail {

/// Projective relations are rational; only a single subsequence pair is
/// decidable there.
inline TreeResult projective_subseq(const RegRelation& r, const ConstraintSet& I, const TreeOptions& opt) {
  const auto pairs = I.proper_pairs();
  if (r.arity() != 2 || pairs.size() > 1) {
    throw DispatchError("projective relations support only a binary relation with one subsequence pair");
  }
  Nfa a = r.automaton();
  const bool swapped = !pairs.empty() && pairs[0].first == 2;
  if (swapped) {
    a = map_labels(a, [](const Letter& l) -> std::optional<Letter> { return Letter{l[1], l[0]}; });
  }
  TreeResult res;
  if (pairs.empty()) {
    // Any member will do; ⊑ from ε always holds, so ask for (ε-free) emptiness.
    auto e = is_empty(a);
    if (e.empty) return res;
    WordTuple w(2);
    for (const auto& l : *e.witness) {
      for (std::size_t i = 0; i < 2; ++i) {
        if (l[i] != kPad && l[i] != kEps) w[i].push_back(l[i]);
      }
    }
    res.decision = Decision{true, std::move(w)};
    return res;
  }
  res = rat_subseq_stats(a, r.alphabet(), opt);
  if (swapped && res.decision.witness) std::swap((*res.decision.witness)[0], (*res.decision.witness)[1]);
  if (opt.validate && res.decision.witness) check_subseq_witness(r, I, *res.decision.witness);
  return res;
}

}  // namespace detail

/// Depth-first construction of the saturation tree for R ∩_I ⊑.
///
/// Nodes carry the automaton state and the residuals α_ij = w_i \ w_j of the
/// Σ-projected branch words. A node is final when its state is final and all
/// residuals are empty; it is saturated when an ancestor on the same branch
/// has the same state and componentwise ⊑-smaller residuals. Saturated nodes
/// are leaves, which makes the tree finite. With global subsumption every
/// recorded node counts as a dominator and the tree is built breadth first.
inline TreeResult tree_solve_stats(const RegRelation& r, const ConstraintSet& I,
                                   const TreeOptions& opt = {}) {
  if (I.arity() != r.arity()) throw ArityError("constraint arity does not match the relation");
  if (r.discipline() == Discipline::Projective) return detail::projective_subseq(r, I, opt);
  const std::size_t k = r.arity();
  auto nfa = trim(r.automaton());
  nfa.sort_edges();
  detail::LetterCodec codec(nfa, r.alphabet(), kPad);
  std::vector<ConstraintSet::Pair> pairs = I.proper_pairs();
  using Seq = std::vector<int>;

  TreeResult result;
  std::vector<Seq> words(k);

  struct Frame {
    Nfa::State q;
    std::vector<Seq> alphas;
    std::size_t next = 0;
  };
  std::vector<Frame> stack;
  std::vector<std::vector<std::size_t>> by_state(nfa.num_states());
  std::vector<std::vector<std::vector<Seq>>> expanded(nfa.num_states());

  auto residuals = [&]() {
    std::vector<Seq> out;
    out.reserve(pairs.size());
    for (const auto& [i, j] : pairs) out.push_back(subseq_residual(words[i - 1], words[j - 1]));
    return out;
  };
  auto all_empty = [](const std::vector<Seq>& a) {
    return std::all_of(a.begin(), a.end(), [](const Seq& s) { return s.empty(); });
  };
  auto push_letter = [&](Nfa::LetterId l) {
    const auto& code = codec.codes[l];
    for (std::size_t i = 0; i < k; ++i) {
      if (code[i] >= 0) words[i].push_back(code[i]);
    }
  };
  auto pop_letter = [&](Nfa::LetterId l) {
    const auto& code = codec.codes[l];
    for (std::size_t i = 0; i < k; ++i) {
      if (code[i] >= 0) words[i].pop_back();
    }
  };
  auto dominates = [&](const std::vector<Seq>& smaller, const std::vector<Seq>& alphas) {
    for (std::size_t p = 0; p < pairs.size(); ++p) {
      if (!is_subsequence(smaller[p], alphas[p])) return false;
    }
    return true;
  };
  auto saturated = [&](Nfa::State q, const std::vector<Seq>& alphas) {
    return std::any_of(by_state[q].begin(), by_state[q].end(),
                       [&](std::size_t idx) { return dominates(stack[idx].alphas, alphas); });
  };
  auto finish = [&]() {
    WordTuple w(k);
    for (std::size_t i = 0; i < k; ++i) {
      for (int c : words[i]) w[i].push_back(r.alphabet()[static_cast<std::size_t>(c)]);
    }
    if (opt.validate) detail::check_subseq_witness(r, I, w);
    result.decision = Decision{true, std::move(w)};
    return result;
  };
  if (opt.saturation && opt.global_subsumption) {
    // Breadth first: small residuals are recorded early and prune the rest.
    // Each state keeps an antichain of recorded residual vectors.
    struct Node {
      Nfa::State q;
      std::vector<Seq> words;
      std::size_t depth;
    };
    std::deque<Node> queue;
    auto admit = [&](Nfa::State q, const std::vector<Seq>& alphas) {
      auto& seen = expanded[q];
      if (std::any_of(seen.begin(), seen.end(), [&](const std::vector<Seq>& s) { return dominates(s, alphas); })) {
        return false;
      }
      std::erase_if(seen, [&](const std::vector<Seq>& s) { return dominates(alphas, s); });
      seen.push_back(alphas);
      return true;
    };
    for (auto q0 : nfa.initial_states()) {
      if (++result.nodes > opt.node_budget) throw BudgetExceeded(result.nodes, result.max_depth);
      if (nfa.is_final(q0)) return finish();
      if (admit(q0, std::vector<Seq>(pairs.size()))) queue.push_back(Node{q0, std::vector<Seq>(k), 0});
    }
    while (!queue.empty()) {
      Node n = std::move(queue.front());
      queue.pop_front();
      for (const auto& e : nfa.edges(n.q)) {
        words = n.words;
        push_letter(e.letter);
        result.max_depth = std::max(result.max_depth, n.depth + 1);
        if (++result.nodes > opt.node_budget) throw BudgetExceeded(result.nodes, result.max_depth);
        auto alphas = residuals();
        if (nfa.is_final(e.to) && all_empty(alphas)) return finish();
        if (admit(e.to, alphas)) queue.push_back(Node{e.to, words, n.depth + 1});
      }
    }
    result.decision = Decision{false, std::nullopt};
    return result;
  }

  // Depth first with ancestor saturation (or a depth cap).
  // Letters read by the edge that created each frame (none for roots).
  std::vector<Nfa::LetterId> via;

  for (auto q0 : nfa.initial_states()) {
    std::vector<Seq> root_alphas(pairs.size());
    if (++result.nodes > opt.node_budget) throw BudgetExceeded(result.nodes, result.max_depth);
    if (nfa.is_final(q0)) return finish();
    if (opt.saturation && saturated(q0, root_alphas)) continue;
    stack.push_back(Frame{q0, std::move(root_alphas)});
    by_state[q0].push_back(0);
    while (!stack.empty()) {
      auto& top = stack.back();
      const auto& out = nfa.edges(top.q);
      if (top.next == out.size()) {
        by_state[top.q].pop_back();
        stack.pop_back();
        if (!via.empty()) {
          pop_letter(via.back());
          via.pop_back();
        }
        continue;
      }
      const auto e = out[top.next++];
      push_letter(e.letter);
      const std::size_t depth = stack.size();
      result.max_depth = std::max(result.max_depth, depth);
      if (++result.nodes > opt.node_budget) throw BudgetExceeded(result.nodes, result.max_depth);
      auto alphas = residuals();
      if (nfa.is_final(e.to) && all_empty(alphas)) return finish();
      bool leaf = opt.saturation ? saturated(e.to, alphas) : depth >= opt.depth_cap;
      if (!opt.saturation && leaf) result.complete = false;
      if (leaf) {
        pop_letter(e.letter);
        continue;
      }
      by_state[e.to].push_back(stack.size());
      stack.push_back(Frame{e.to, std::move(alphas)});
      via.push_back(e.letter);
    }
  }
  result.decision = Decision{false, std::nullopt};
  return result;
}

/// Decides R ∩_I ⊑ ≠ ∅ for a regular relation R and any constraint set I.
inline Decision tree_solve(const RegRelation& r, const ConstraintSet& I,
                           const TreeOptions& opt = {}) {
  return tree_solve_stats(r, I, opt).decision;
}

}  // namespace relkit

#endif  // RELKIT_SUBSEQ_HPP
