#ifndef RELKIT_CLI_HPP
#define RELKIT_CLI_HPP

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "relkit/bounded.hpp"
#include "relkit/constraints.hpp"
#include "relkit/error.hpp"
#include "relkit/graph.hpp"
#include "relkit/io.hpp"
#include "relkit/oracle.hpp"
#include "relkit/random.hpp"
#include "relkit/reductions.hpp"
#include "relkit/solve.hpp"

namespace relkit::cli {

enum ExitCode : int {
  kOk = 0,
  kInternal = 1,
  kUsage = 2,
  kParse = 3,
  kDispatch = 4,
  kBudget = 5,
};

/// `NONEMPTY certified route=TreeSubseq`, `UNKNOWN cap=6 route=BoundedOnly`.
inline std::string verdict_line(const ThreeValued& r, const std::string& route) {
  std::string line = to_string(r.verdict);
  if (r.verdict == Verdict::Unknown) {
    line += " cap=" + std::to_string(r.cap_used);
  } else if (r.certified) {
    line += " certified";
  }
  return line + " route=" + route;
}

/// A builtin name, or the path of a binary rat, reg or scr relation file.
inline SRelation load_s(const std::string& spec, bool partial_order) {
  if (canonical_builtin(spec)) return SRelation::builtin_named(spec);
  auto f = parse_relation_file(detail::read_file(spec));
  if (f.arity != 2) throw ArityError("the relation S must be binary");
  const std::string label = f.name.empty() ? to_string(f.kind) : f.name;
  switch (f.kind) {
    case RelationKind::Scr: return SRelation::from_scr(to_scr(f), partial_order, label);
    case RelationKind::Rat: return SRelation::from_rat(std::get<RatRelation>(to_relation(f)), label);
    case RelationKind::Reg: return SRelation::from_rat(reg_to_rat(std::get<RegRelation>(to_relation(f))), label);
    case RelationKind::Rec: break;
  }
  throw Error("S cannot be a rec relation file");
}

inline TreeOptions tree_options_from_env() {
  TreeOptions t;
  if (const char* env = std::getenv("RELKIT_NODE_BUDGET")) {
    try {
      t.node_budget = std::stoul(env);
    } catch (const std::logic_error&) {
      throw Error("RELKIT_NODE_BUDGET must be a number");
    }
  }
  return t;
}

inline std::map<std::string, std::string> parse_bindings(const std::vector<std::string>& items) {
  std::map<std::string, std::string> out;
  for (const auto& item : items) {
    for (const auto& part : detail::split_on(item, ',')) {
      auto eq = part.find('=');
      if (eq == std::string::npos || eq == 0 || eq + 1 == part.size()) {
        throw Error("binding '" + part + "' is not of the form var=node");
      }
      out[part.substr(0, eq)] = part.substr(eq + 1);
    }
  }
  return out;
}

inline void write_output(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream f(path);
  if (!f) throw Error("cannot write '" + path + "'");
  f << text;
}

/// Runs the command line; returns the exit status.
inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"relkit: word relations, generalized intersection and CRPQ(S) evaluation"};
  app.require_subcommand(1);

  // solve
  std::string rel_path, s_spec = "subsequence", pairs_text;
  std::optional<std::size_t> cap;
  bool partial_order = false;
  auto* solve = app.add_subcommand("solve", "decide R ∩_I S ≠ ∅ for a relation file");
  solve->add_option("--rel", rel_path, "relation file")->required();
  solve->add_option("--s", s_spec, "builtin name or binary relation file")->capture_default_str();
  solve->add_option("--pairs", pairs_text, "constraint pairs, e.g. \"1,2 2,3\" (default: file's pairs line)");
  solve->add_option("--cap", cap, "per-word length cap for bounded and small-model search");
  solve->add_flag("--partial-order", partial_order, "treat an scr S as a partial order");

  // oracle
  std::size_t oracle_cap = 6;
  auto* oracle = app.add_subcommand("oracle", "brute-force search up to a per-word cap");
  oracle->add_option("--rel", rel_path, "relation file")->required();
  oracle->add_option("--s", s_spec, "builtin name or binary relation file")->capture_default_str();
  oracle->add_option("--pairs", pairs_text, "constraint pairs (default: file's pairs line)");
  oracle->add_option("--cap", oracle_cap, "per-word length cap")->capture_default_str();

  // query
  std::string graph_path, query_path, query_text;
  std::vector<std::string> binds, regs;
  std::optional<std::string> query_s;
  auto* query = app.add_subcommand("query", "evaluate a CRPQ(S)/ECRPQ(S) query on a graph");
  query->add_option("--graph", graph_path, "graph file")->required();
  auto* qfile = query->add_option("--query", query_path, "query file");
  auto* qtext = query->add_option("--query-text", query_text, "query text");
  qfile->excludes(qtext);
  query->add_option("--bind", binds, "free-variable bindings var=node (repeatable, comma-separated)");
  query->add_option("--reg", regs, "regular relation for a reg atom, NAME=FILE (repeatable)");
  query->add_option("--s", query_s, "override S: builtin name or binary relation file");
  query->add_option("--cap", cap, "bounded mode with this per-word cap");
  query->add_flag("--partial-order", partial_order, "treat an scr S as a partial order");

  // classify
  std::string cls = "crpq", shape_text;
  auto* classify = app.add_subcommand("classify", "print the dispatch route and decidability status");
  classify->add_option("--class", cls, "crpq or ecrpq")->check(CLI::IsMember({"crpq", "ecrpq"}));
  classify->add_option("--s", s_spec, "subsequence, suffix, subword, prefix, equality, equal_length, scr, "
                                      "scr-po or rat")->capture_default_str();
  classify->add_option("--shape", shape_text, "none, acyclic, dag or cyclic")
      ->check(CLI::IsMember({"none", "acyclic", "dag", "cyclic"}));
  classify->add_option("--query", query_path, "classify a query file instead");
  classify->add_option("--pairs", pairs_text, "constraint pairs instead of --shape");

  // gen
  std::string gen_kind, in_path, out_path, variant = "chain", alphabet_text = "a b";
  std::uint64_t seed = 1;
  std::size_t states = 4, arity = 2;
  auto* gen = app.add_subcommand("gen", "compile an instance file (or a random seed) into a relation file");
  gen->add_option("kind", gen_kind, "lba, pcp, pep or random")
      ->required()
      ->check(CLI::IsMember({"lba", "pcp", "pep", "random"}));
  gen->add_option("--in", in_path, "instance file (lba, pcp, pep)");
  gen->add_option("--out", out_path, "output relation file (default stdout)");
  gen->add_option("--variant", variant, "pcp: chain, fanout or fanin")
      ->check(CLI::IsMember({"chain", "fanout", "fanin"}))
      ->capture_default_str();
  gen->add_option("--seed", seed, "random: seed")->capture_default_str();
  gen->add_option("--states", states, "random: maximum number of states")->capture_default_str();
  gen->add_option("--arity", arity, "random: arity")->capture_default_str();
  gen->add_option("--alphabet", alphabet_text, "random: alphabet")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  }

  try {
    if (solve->parsed() || oracle->parsed()) {
      auto file = parse_relation_file(detail::read_file(rel_path));
      auto r = to_relation(file);
      ConstraintSet I;
      if (!pairs_text.empty()) {
        I = parse_pairs(pairs_text, arity_of(r));
      } else if (file.pairs) {
        I = *file.pairs;
      } else {
        err << "usage error: no --pairs and no pairs line in " << rel_path << "\n";
        return kUsage;
      }
      if (oracle->parsed()) {
        WordPredicate pred;
        if (canonical_builtin(s_spec)) {
          pred = direct_predicate(s_spec);
        } else {
          pred = detail::solver_predicate(load_s(s_spec, false), alphabet_of(r));
        }
        const std::size_t total = oracle_cap * arity_of(r);
        auto found = brute_genint(r, I, pred, total, oracle_cap);
        ThreeValued v;
        v.cap_used = oracle_cap;
        if (found.witness) {
          v.verdict = Verdict::NonEmpty;
          v.witness = found.witness;
          v.certified = true;
        }
        out << verdict_line(v, "Oracle") << "\n";
        if (v.witness) out << print_witness(*v.witness);
        return kOk;
      }
      SolveOptions opt;
      opt.cap = cap;
      opt.tree = tree_options_from_env();
      opt.partial_order = partial_order;
      auto res = solve_genint(r, load_s(s_spec, partial_order), I, opt);
      out << verdict_line(res.result, to_string(res.plan.route)) << "\n";
      if (res.result.witness) out << print_witness(*res.result.witness);
      return kOk;
    }

    if (query->parsed()) {
      auto g = parse_graph(detail::read_file(graph_path));
      QueryAst q;
      if (!query_path.empty()) q = parse_query_file(detail::read_file(query_path));
      else if (!query_text.empty()) q = parse_query(query_text);
      else {
        err << "usage error: give --query or --query-text\n";
        return kUsage;
      }
      EvalOptions opt;
      opt.tree = tree_options_from_env();
      if (cap) {
        opt.mode = EvalMode::Bounded;
        opt.cap = *cap;
      }
      if (query_s) opt.s = load_s(*query_s, partial_order);
      for (const auto& item : regs) {
        auto eq = item.find('=');
        if (eq == std::string::npos) throw Error("--reg expects NAME=FILE");
        auto f = parse_relation_file(detail::read_file(item.substr(eq + 1)));
        auto rel = to_relation(f);
        if (!std::holds_alternative<RegRelation>(rel)) throw Error("reg atoms need a reg relation file");
        opt.relations.emplace(item.substr(0, eq), std::get<RegRelation>(rel));
      }
      auto res = evaluate(g, q, parse_bindings(binds), opt);
      out << verdict_line(res.result, to_string(res.plan.route)) << "\n";
      if (res.result.witness) {
        auto vars = q.path_vars();
        for (std::size_t i = 0; i < res.result.witness->size(); ++i) {
          out << vars[i] << " = " << detail::print_word((*res.result.witness)[i]) << "\n";
        }
      }
      for (const auto& v : q.bound_vars) {
        auto it = res.binding.find(v);
        if (it != res.binding.end()) out << "node " << v << " = " << it->second << "\n";
      }
      return kOk;
    }

    if (classify->parsed()) {
      DispatchPlan plan;
      if (!query_path.empty()) {
        auto q = parse_query_file(detail::read_file(query_path));
        const auto name = q.s_name.empty() ? std::string(builtin_name::kSubsequence) : q.s_name;
        const auto I = q.constraints();
        plan = classify_query(q.is_ecrpq() ? QueryClass::Ecrpq : QueryClass::Crpq, skind_of_name(name),
                              classify_shape(I), I.empty(), canonical_builtin(name).value_or(name));
      } else {
        Shape shape = Shape::UndirectedAcyclic;
        bool none = false;
        if (!pairs_text.empty()) {
          std::size_t m = 0;
          for (const auto& p : detail::split_ws(pairs_text)) {
            for (const auto& x : detail::split_on(p, ',')) m = std::max<std::size_t>(m, std::stoul(x));
          }
          auto I = parse_pairs(pairs_text, m);
          shape = classify_shape(I);
          none = I.empty();
        } else if (shape_text == "none") {
          none = true;
        } else if (shape_text == "dag") {
          shape = Shape::Dag;
        } else if (shape_text == "cyclic") {
          shape = Shape::Cyclic;
        }
        const auto label = canonical_builtin(s_spec).value_or(s_spec);
        plan = classify_query(cls == "ecrpq" ? QueryClass::Ecrpq : QueryClass::Crpq, skind_of_name(s_spec), shape,
                              none, label);
      }
      out << "route=" << to_string(plan.route) << " " << plan.status_line << "\n";
      return kOk;
    }

    if (gen->parsed()) {
      RelationFile f;
      if (gen_kind == "random") {
        Rng rng(seed);
        auto sigma = detail::split_ws(alphabet_text);
        f = relation_file(random_reg(rng, sigma, arity, states));
        f.pairs = random_constraints(rng, arity, 3);
      } else {
        if (in_path.empty()) {
          err << "usage error: gen " << gen_kind << " needs --in\n";
          return kUsage;
        }
        const auto text = detail::read_file(in_path);
        if (gen_kind == "lba") {
          f = relation_file(lba_to_regrel(parse_lba(text)));
          f.name = "lba";
          f.pairs = ConstraintSet(2, {{2, 1}});  // second word a suffix of the first
        } else if (gen_kind == "pcp") {
          const auto v = variant == "fanout" ? PcpVariant::FanOut
                         : variant == "fanin" ? PcpVariant::FanIn
                                              : PcpVariant::Chain;
          auto inst = pcp_to_rat(parse_pcp(text), v);
          f = relation_file(inst.relation);
          f.pairs = inst.constraints;
        } else {
          f = relation_file(pep_to_reg(parse_pep(text).instance));
          f.name = "pep";
          f.pairs = ConstraintSet(2, {{1, 2}});
        }
      }
      write_output(out_path, print_relation_file(f), out);
      return kOk;
    }
  } catch (const BudgetExceeded& e) {
    err << "budget exceeded: " << e.nodes() << " nodes, max depth " << e.depth()
        << " (raise RELKIT_NODE_BUDGET)\n";
    return kBudget;
  } catch (const DispatchError& e) {
    err << "dispatch error: " << e.what() << "\n";
    return kDispatch;
  } catch (const ShapeError& e) {
    err << "dispatch error: " << e.what() << "\n";
    return kDispatch;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kParse;
  } catch (const AlphabetError& e) {
    err << "parse error: " << e.what() << "\n";
    return kParse;
  } catch (const WitnessError& e) {
    err << "internal error: " << e.what() << "\n";
    return kInternal;
  } catch (const Error& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}

}  // namespace relkit::cli

#endif  // RELKIT_CLI_HPP
