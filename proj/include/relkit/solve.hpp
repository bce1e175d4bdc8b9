#ifndef RELKIT_SOLVE_HPP
#define RELKIT_SOLVE_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <variant>

#include "relkit/acyclic.hpp"
#include "relkit/bounded.hpp"
#include "relkit/constraints.hpp"
#include "relkit/error.hpp"
#include "relkit/graph.hpp"
#include "relkit/oracle.hpp"
#include "relkit/relations.hpp"
#include "relkit/scr.hpp"
#include "relkit/subseq.hpp"

namespace relkit {

/// Cap used by the small-model route when the caller gives none.
constexpr std::size_t kDefaultSmallModelCap = 8;

/// The subsequence order as an SCR relation: the closure of the identity.
inline ScrRelation subsequence_scr(const Alphabet& sigma) {
  Nfa id;
  id.add_state();
  id.set_initial(0);
  id.set_final(0);
  for (const auto& a : sigma) id.add_transition(0, id.add_letter({a, a}), 0);
  if (id.alphabet().empty()) id.add_letter({kPad, kPad});
  return scr_close(id, sigma);
}

inline const char* relation_class(const AnyRelation& r) {
  if (std::holds_alternative<RecRelation>(r)) return "REC";
  if (std::holds_alternative<RegRelation>(r)) return "REG";
  return "RAT";
}

/// Route of a GenInt instance R ∩_I S as a function of the class of R, the
/// identity of S and the shape of I.
inline DispatchPlan classify_genint(const AnyRelation& r, const SRelation& s, const ConstraintSet& I,
                                    bool partial_order = false) {
  const std::string head = std::string("GenInt(") + relation_class(r) + ", " + s.name + "): ";
  const Shape shape = classify_shape(I);
  const bool binary_pair = arity_of(r) == 2 && I.pairs().size() == 1 && I.pairs()[0] == ConstraintSet::Pair{1, 2};
  const bool scr_like = s.kind == SKind::Subsequence || s.scr.has_value();
  if (std::holds_alternative<RecRelation>(r)) {
    if (I.empty() || (shape == Shape::UndirectedAcyclic && !I.has_degenerate())) {
      return {Route::AcyclicRec, head + "acyclic, PSPACE"};
    }
    if (s.kind == SKind::Subsequence) return {Route::TreeSubseq, head + "decidable, NEXPTIME"};
    if (s.kind == SKind::Suffix) return {Route::SmallModel, head + "decidable, NEXPTIME (small model)"};
    if (s.scr && (shape != Shape::Cyclic || partial_order || s.kind == SKind::ScrPartialOrder)) {
      if (shape == Shape::Cyclic || I.has_degenerate()) {
        return {Route::SmallModel, head + "partial order, decidable (small model)"};
      }
      return {Route::SmallModel, head + "DAG constraints, decidable (small model)"};
    }
    if (s.kind == SKind::Subword) return {Route::BoundedOnly, head + "open problem; bounded search only"};
    return {Route::BoundedOnly, head + "undecidable or not covered; bounded search only"};
  }
  // Projective REG files are rational relations; they take the SCR route.
  const auto* reg = std::get_if<RegRelation>(&r);
  if (s.kind == SKind::Subsequence && reg && reg->discipline() == Discipline::Strict) {
    return {Route::TreeSubseq, head + "decidable, non-multiply-recursive"};
  }
  if (scr_like && binary_pair) return {Route::ScrPipeline, head + "decidable, non-multiply-recursive"};
  return {Route::BoundedOnly, head + "undecidable; bounded search only"};
}

struct SolveOptions {
  std::optional<std::size_t> cap;
  TreeOptions tree;
  bool partial_order = false;
};

struct SolveResult {
  ThreeValued result;
  DispatchPlan plan;
};

namespace detail {

inline RatRelation rat_view(const SRelation& s, const Alphabet& sigma) {
  if (s.rat) return *s.rat;
  if (s.scr) return scr_as_rat(*s.scr);
  return builtin_rat(s.name, sigma);
}

inline WordPredicate solver_predicate(const SRelation& s, const Alphabet& sigma) {
  if (s.scr) {
    auto scr = *s.scr;
    return [scr](const Word& u, const Word& v) { return scr_member(scr, {u, v}); };
  }
  auto rat = rat_view(s, sigma);
  return [rat](const Word& u, const Word& v) { return rat_member(rat, {u, v}); };
}

inline ThreeValued from_decision(const Decision& d) {
  ThreeValued out;
  out.verdict = d.nonempty ? Verdict::NonEmpty : Verdict::Empty;
  out.witness = d.witness;
  out.certified = true;
  return out;
}

}  // namespace detail

/// Decides or semi-decides R ∩_I S ≠ ∅ along the route of classify_genint.
/// The bounded route needs a cap and raises DispatchError without one.
inline SolveResult solve_genint(const AnyRelation& r, const SRelation& s, const ConstraintSet& I,
                                const SolveOptions& opt = {}) {
  if (I.arity() != arity_of(r)) throw ArityError("constraint arity does not match the relation");
  SolveResult out;
  out.plan = classify_genint(r, s, I, opt.partial_order);
  const auto& sigma = alphabet_of(r);
  switch (out.plan.route) {
    case Route::AcyclicRec:
      out.result = detail::from_decision(solve_acyclic(std::get<RecRelation>(r), detail::rat_view(s, sigma), I));
      break;
    case Route::TreeSubseq: {
      const RegRelation reg = std::holds_alternative<RecRelation>(r) ? rec_to_reg(std::get<RecRelation>(r))
                                                                      : std::get<RegRelation>(r);
      out.result = detail::from_decision(tree_solve(reg, I, opt.tree));
      break;
    }
    case Route::ScrPipeline: {
      const ScrRelation scr = s.scr ? *s.scr : subsequence_scr(sigma);
      const Decision d = std::holds_alternative<RegRelation>(r)
                             ? int_rat_scr(std::get<RegRelation>(r), scr, opt.tree)
                             : int_rat_scr(std::get<RatRelation>(r), scr, opt.tree);
      out.result = detail::from_decision(d);
      break;
    }
    case Route::SmallModel: {
      const auto& rec = std::get<RecRelation>(r);
      const std::size_t cap = opt.cap.value_or(kDefaultSmallModelCap);
      if (s.scr) {
        SmallModelOptions smo;
        smo.assume_partial_order = opt.partial_order || s.kind == SKind::ScrPartialOrder;
        out.result = solve_small_model(rec, *s.scr, I, cap, smo);
      } else {
        out.result = solve_small_model(rec, std::monostate{}, I, cap);
      }
      break;
    }
    case Route::BoundedOnly:
      if (!opt.cap) throw DispatchError(out.plan.status_line + " (give a cap for bounded search)");
      out.result = bounded_search(r, detail::solver_predicate(s, sigma), I, *opt.cap);
      break;
  }
  return out;
}

}  // namespace relkit

#endif  // RELKIT_SOLVE_HPP
