#ifndef RELKIT_BOUNDED_HPP
#define RELKIT_BOUNDED_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "relkit/constraints.hpp"
#include "relkit/error.hpp"
#include "relkit/nfa.hpp"
#include "relkit/oracle.hpp"
#include "relkit/relations.hpp"
#include "relkit/scr.hpp"

namespace relkit {

enum class Verdict { NonEmpty, Empty, Unknown };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::NonEmpty: return "NONEMPTY";
    case Verdict::Empty: return "EMPTY";
    case Verdict::Unknown: return "UNKNOWN";
  }
  return "?";
}

/// Verdict of a bounded or small-model search.
struct ThreeValued {
  Verdict verdict = Verdict::Unknown;
  std::optional<WordTuple> witness;
  std::size_t cap_used = 0;
  bool certified = false;
};

namespace detail {

inline std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
  constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
  if (a != 0 && b > kMax / a) return kMax;
  return a * b;
}

inline std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) {
  constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
  return a > kMax - b ? kMax : a + b;
}

inline std::uint64_t sat_pow(std::uint64_t base, std::size_t exp) {
  std::uint64_t out = 1;
  for (std::size_t i = 0; i < exp; ++i) out = sat_mul(out, base);
  return out;
}

}  // namespace detail

/// Semi-decision by enumeration: every tuple of R whose words have length
/// ≤ cap is tried, in nondecreasing total length. Empty is reported (and
/// certified) only when `certified_bound` ≤ cap, i.e. a small-model bound
/// guarantees that a witness, if any, would have been found.
inline ThreeValued bounded_search(const AnyRelation& r, const WordPredicate& s, const ConstraintSet& I,
                                  std::size_t cap, std::optional<std::uint64_t> certified_bound = {}) {
  if (I.arity() != arity_of(r)) throw ArityError("constraint arity does not match the relation");
  ThreeValued out;
  out.cap_used = cap;
  const std::size_t total = detail::sat_mul(cap, arity_of(r)) > kNoCap
                                ? kNoCap
                                : static_cast<std::size_t>(cap * arity_of(r));
  auto found = brute_genint(r, I, s, total, cap);
  if (found.witness) {
    if (!member(r, *found.witness) || !satisfies(*found.witness, I, s)) {
      throw WitnessError("bounded_search witness failed revalidation");
    }
    out.verdict = Verdict::NonEmpty;
    out.witness = std::move(found.witness);
    out.certified = true;
    return out;
  }
  if (certified_bound && *certified_bound <= cap) {
    out.verdict = Verdict::Empty;
    out.certified = true;
  }
  return out;
}

inline ThreeValued bounded_search(const AnyRelation& r, const RatRelation& s, const ConstraintSet& I,
                                  std::size_t cap, std::optional<std::uint64_t> certified_bound = {}) {
  return bounded_search(
      r, [&s](const Word& u, const Word& v) { return rat_member(s, {u, v}); }, I, cap, certified_bound);
}

inline ThreeValued bounded_search(const AnyRelation& r, const ScrRelation& s, const ConstraintSet& I,
                                  std::size_t cap, std::optional<std::uint64_t> certified_bound = {}) {
  return bounded_search(
      r, [&s](const Word& u, const Word& v) { return scr_member(s, {u, v}); }, I, cap, certified_bound);
}

/// Witness-length bound for GenInt over the suffix order and REC:
/// s_max · t · 2^m · |Σ|^m · (m²+1) with s_max = m²+1 and t the product of
/// the component sizes, maximized over the products of R.
inline std::uint64_t small_model_cap_suffix(const RecRelation& r, const ConstraintSet& I) {
  if (I.arity() != r.arity()) throw ArityError("constraint arity does not match the relation");
  const std::uint64_t m = r.arity();
  const std::uint64_t s_max = m * m + 1;
  const std::uint64_t factor = detail::sat_mul(
      detail::sat_mul(s_max, detail::sat_pow(2, m)),
      detail::sat_mul(detail::sat_pow(r.alphabet().size(), m), m * m + 1));
  std::uint64_t best = 0;
  for (const auto& product : r.products()) {
    std::uint64_t t = 1;
    for (const auto& comp : product) t = detail::sat_mul(t, comp.num_states());
    best = std::max(best, detail::sat_mul(t, factor));
  }
  return best;
}

/// Witness-length bound for GenInt over an SCR relation, REC and a DAG I:
/// along a topological order, len_1 = |N_1| and
/// len_{l+1} = |N_{l+1}| · (len_1 + ... + len_l) · |I(l+1)| · |Q_S| · |Σ| + 2,
/// where I(l+1) are the pairs entering coordinate l+1 (len = |N| when there
/// are none). Returns the maximum over products of the sum of the len_l.
inline std::uint64_t small_model_cap_scr(const RecRelation& r, const ScrRelation& s, const ConstraintSet& I) {
  if (I.arity() != r.arity()) throw ArityError("constraint arity does not match the relation");
  if (I.has_degenerate() || classify_shape(I) == Shape::Cyclic) {
    throw ShapeError("the SCR small-model bound needs a DAG of constraints");
  }
  const auto order = topological_order(I);
  const std::uint64_t qs = s.automaton().num_states();
  const std::uint64_t sigma = alphabet_union(r.alphabet(), s.alphabet()).size();
  std::uint64_t best = 0;
  for (const auto& product : r.products()) {
    std::uint64_t sum = 0;
    for (auto v : order) {
      std::uint64_t incoming = 0;
      for (const auto& [i, j] : I.pairs()) {
        if (j - 1 == v) ++incoming;
      }
      const std::uint64_t n = product[v].num_states();
      std::uint64_t len = n;
      if (incoming > 0) {
        len = detail::sat_add(
            detail::sat_mul(detail::sat_mul(detail::sat_mul(n, sum), incoming), detail::sat_mul(qs, sigma)), 2);
      }
      sum = detail::sat_add(sum, len);
    }
    best = std::max(best, sum);
  }
  return best;
}

namespace detail {

/// R restricted to tuples constant on each class of `q`, as a relation over
/// the quotient coordinates.
inline RecRelation quotient_relation(const RecRelation& r, const Quotient& q) {
  std::vector<std::vector<Nfa>> products;
  for (const auto& product : r.products()) {
    std::vector<std::optional<Nfa>> merged(q.count);
    for (std::size_t v = 0; v < r.arity(); ++v) {
      auto& slot = merged[q.component[v]];
      slot = slot ? trim(intersect(*slot, product[v])) : product[v];
    }
    std::vector<Nfa> comps;
    for (auto& n : merged) comps.push_back(std::move(*n));
    products.push_back(std::move(comps));
  }
  return RecRelation(r.alphabet(), q.count, std::move(products));
}

inline WordTuple expand(const WordTuple& w, const Quotient& q) {
  WordTuple out;
  for (auto c : q.component) out.push_back(w[c]);
  return out;
}

}  // namespace detail

/// The designated relation of a small-model solve.
using SmallModelRelation = std::variant<std::monostate /* suffix */, ScrRelation>;

struct SmallModelOptions {
  /// SCR mode: treat S as a partial order and quotient mutually constrained
  /// coordinates, so cyclic I is accepted.
  bool assume_partial_order = false;
};

/// Bounded search up to min(user_cap, computed bound); Empty is certified
/// exactly when the computed bound was reached.
inline ThreeValued solve_small_model(const RecRelation& r, const SmallModelRelation& s, const ConstraintSet& I,
                                     std::size_t user_cap, const SmallModelOptions& opt = {}) {
  if (I.arity() != r.arity()) throw ArityError("constraint arity does not match the relation");
  const bool suffix_mode = std::holds_alternative<std::monostate>(s);
  const bool quotient = suffix_mode || (classify_shape(I) == Shape::Cyclic && opt.assume_partial_order);
  if (!suffix_mode && I.has_degenerate() && !opt.assume_partial_order) {
    throw ShapeError("pairs (i,i) need the partial-order assumption in SCR mode");
  }
  if (!suffix_mode && !quotient && classify_shape(I) == Shape::Cyclic) {
    throw ShapeError("SCR small-model solving needs a DAG of constraints");
  }
  std::optional<Quotient> q;
  if (quotient) q = scc_quotient(I);
  const RecRelation rq = q ? detail::quotient_relation(r, *q) : r;
  const ConstraintSet iq = q ? q->pairs : ConstraintSet(I.arity(), I.proper_pairs());

  std::uint64_t bound = 0;
  WordPredicate pred;
  if (suffix_mode) {
    bound = small_model_cap_suffix(rq, iq);
    pred = is_suffix;
  } else {
    const auto& scr = std::get<ScrRelation>(s);
    bound = small_model_cap_scr(rq, scr, iq);
    pred = [&scr](const Word& u, const Word& v) { return scr_member(scr, {u, v}); };
  }
  const std::size_t cap = bound < user_cap ? static_cast<std::size_t>(bound) : user_cap;
  auto res = bounded_search(AnyRelation(rq), pred, iq, cap, bound);
  if (res.witness && q) res.witness = detail::expand(*res.witness, *q);
  if (res.witness) {
    // A class member pair (w,w) outside S means S is not a partial order.
    if (q && !suffix_mode && !satisfies(*res.witness, I, pred)) {
      throw ShapeError("S is not reflexive on the witness; the partial-order assumption does not hold");
    }
    // Revalidate on the original instance, including pairs inside a class.
    if (!rec_member(r, *res.witness) || !satisfies(*res.witness, I, pred)) {
      throw WitnessError("solve_small_model witness failed revalidation");
    }
  }
  return res;
}

}  // namespace relkit

#endif  // RELKIT_BOUNDED_HPP
