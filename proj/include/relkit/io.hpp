#ifndef RELKIT_IO_HPP
#define RELKIT_IO_HPP

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "relkit/constraints.hpp"
#include "relkit/error.hpp"
#include "relkit/graph.hpp"
#include "relkit/nfa.hpp"
#include "relkit/reductions.hpp"
#include "relkit/regex.hpp"
#include "relkit/relations.hpp"
#include "relkit/scr.hpp"
#include "relkit/symbol.hpp"

// Line-oriented text formats. Blank lines and lines starting with "//" are
// ignored; parse errors report the 1-based line number as their position.

namespace relkit {

namespace detail {

inline std::string_view trim_view(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

inline std::vector<std::string> split_ws(std::string_view s) {
  std::vector<std::string> out;
  std::istringstream in{std::string(s)};
  for (std::string tok; in >> tok;) out.push_back(tok);
  return out;
}

inline std::vector<std::string> split_on(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.size(); ++i) {
    if (i == s.size() || s[i] == sep) {
      out.emplace_back(trim_view(s.substr(start, i - start)));
      start = i + 1;
    }
  }
  return out;
}

/// A significant line: its number and the text after a `key:` or `key `
/// prefix.
struct Line {
  std::size_t number;
  std::string key;
  std::string rest;
};

inline std::vector<Line> lines_of(std::string_view text) {
  std::vector<Line> out;
  std::size_t number = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    ++number;
    auto line = trim_view(text.substr(start, end - start));
    start = end + 1;
    if (line.empty() || line.substr(0, 2) == "//") continue;
    auto colon = line.find(':');
    auto space = line.find_first_of(" \t");
    Line l{number, {}, {}};
    if (colon != std::string_view::npos && (space == std::string_view::npos || colon < space)) {
      l.key = std::string(trim_view(line.substr(0, colon)));
      l.rest = std::string(trim_view(line.substr(colon + 1)));
    } else {
      l.key = std::string(line.substr(0, space));
      l.rest = space == std::string_view::npos ? "" : std::string(trim_view(line.substr(space)));
    }
    out.push_back(std::move(l));
  }
  return out;
}

inline std::size_t parse_count(const Line& l) {
  try {
    std::size_t used = 0;
    auto v = std::stoul(l.rest, &used);
    if (used != l.rest.size()) throw ParseError("expected a number", l.number);
    return v;
  } catch (const std::logic_error&) {
    throw ParseError("expected a number", l.number);
  }
}

inline std::size_t parse_state(const std::string& tok, std::size_t n, std::size_t line) {
  try {
    std::size_t used = 0;
    auto v = std::stoul(tok, &used);
    if (used != tok.size() || v >= n) throw ParseError("bad state '" + tok + "'", line);
    return v;
  } catch (const std::logic_error&) {
    throw ParseError("bad state '" + tok + "'", line);
  }
}

/// Space-separated word; "eps" alone is the empty word.
inline Word parse_word(std::string_view s) {
  auto toks = split_ws(s);
  if (toks.size() == 1 && toks[0] == kEps) return {};
  return toks;
}

inline std::string print_word(const Word& w) { return w.empty() ? kEps : to_string(w); }

inline std::string join(const std::vector<std::string>& v, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? sep : "") + v[i];
  return out;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace detail

// ----------------------------------------------------------------- relation

enum class RelationKind { Rec, Reg, Rat, Scr };

inline const char* to_string(RelationKind k) {
  switch (k) {
    case RelationKind::Rec: return "rec";
    case RelationKind::Reg: return "reg";
    case RelationKind::Rat: return "rat";
    case RelationKind::Scr: return "scr";
  }
  return "?";
}

/// A relation file as written: automaton states are numbered and kept as
/// given, so printing a parsed file reproduces it.
struct RelationFile {
  RelationKind kind = RelationKind::Reg;
  std::size_t arity = 0;
  Alphabet alphabet;
  Discipline discipline = Discipline::Strict;  // reg only
  std::string name;                            // optional tag
  std::optional<ConstraintSet> pairs;          // optional default I
  Nfa automaton;                               // reg, rat, scr
  std::vector<std::vector<std::string>> products;  // rec: one regex per component
};

inline RelationFile parse_relation_file(std::string_view text) {
  RelationFile f;
  bool have_kind = false, have_arity = false, have_alphabet = false, have_states = false;
  std::size_t n = 0;
  std::optional<std::string> pairs_text;
  std::size_t pairs_line = 0;
  for (const auto& l : detail::lines_of(text)) {
    if (l.key == "kind") {
      if (l.rest == "rec") f.kind = RelationKind::Rec;
      else if (l.rest == "reg") f.kind = RelationKind::Reg;
      else if (l.rest == "rat") f.kind = RelationKind::Rat;
      else if (l.rest == "scr") f.kind = RelationKind::Scr;
      else throw ParseError("unknown relation kind '" + l.rest + "'", l.number);
      have_kind = true;
    } else if (l.key == "arity") {
      f.arity = detail::parse_count(l);
      if (f.arity == 0) throw ParseError("arity must be positive", l.number);
      have_arity = true;
    } else if (l.key == "alphabet") {
      f.alphabet = detail::split_ws(l.rest);
      try {
        check_alphabet(f.alphabet);
      } catch (const AlphabetError& e) {
        throw ParseError(e.what(), l.number);
      }
      have_alphabet = true;
    } else if (l.key == "pad") {
      if (l.rest != kPad) throw ParseError("only '_' is supported as pad", l.number);
    } else if (l.key == "discipline") {
      if (l.rest == "strict") f.discipline = Discipline::Strict;
      else if (l.rest == "projective") f.discipline = Discipline::Projective;
      else throw ParseError("unknown discipline '" + l.rest + "'", l.number);
    } else if (l.key == "name") {
      f.name = l.rest;
    } else if (l.key == "pairs") {
      pairs_text = l.rest;
      pairs_line = l.number;
    } else if (l.key == "states") {
      n = detail::parse_count(l);
      f.automaton = Nfa();
      f.automaton.add_states(n);
      have_states = true;
    } else if (l.key == "initial" || l.key == "final") {
      if (!have_states) throw ParseError("'" + l.key + "' before 'states'", l.number);
      for (const auto& tok : detail::split_ws(l.rest)) {
        auto q = static_cast<Nfa::State>(detail::parse_state(tok, n, l.number));
        if (l.key == "initial") f.automaton.set_initial(q);
        else f.automaton.set_final(q);
      }
    } else if (l.key == "t") {
      if (!have_states || !have_arity) throw ParseError("transition before 'states'/'arity'", l.number);
      auto toks = detail::split_ws(l.rest);
      if (toks.size() != 3) throw ParseError("expected 't: q letter q2'", l.number);
      auto from = static_cast<Nfa::State>(detail::parse_state(toks[0], n, l.number));
      auto to = static_cast<Nfa::State>(detail::parse_state(toks[2], n, l.number));
      auto letter = detail::split_on(toks[1], ',');
      const bool eps = std::all_of(letter.begin(), letter.end(), [](const auto& s) { return s == kEps; });
      if (eps && (letter.size() == 1 || letter.size() == f.arity)) {
        f.automaton.add_epsilon(from, to);
        continue;
      }
      if (letter.size() != f.arity) throw ParseError("letter arity differs from 'arity'", l.number);
      f.automaton.add_transition(from, f.automaton.add_letter(letter), to);
    } else if (l.key == "product") {
      auto comps = detail::split_on(l.rest, ',');
      if (!have_arity || comps.size() != f.arity) throw ParseError("product arity differs from 'arity'", l.number);
      f.products.push_back(std::move(comps));
    } else {
      throw ParseError("unknown line '" + l.key + "'", l.number);
    }
  }
  if (!have_kind || !have_arity || !have_alphabet) throw ParseError("missing kind, arity or alphabet header", 0);
  if (f.kind == RelationKind::Rec) {
    if (have_states) throw ParseError("rec relations list products, not states", 0);
  } else if (!have_states) {
    throw ParseError("missing 'states' line", 0);
  }
  if (f.kind == RelationKind::Scr && f.arity != 2) throw ParseError("scr relations are binary", 0);
  if (pairs_text) {
    try {
      f.pairs = parse_pairs(*pairs_text, f.arity);
    } catch (const Error& e) {
      throw ParseError(e.what(), pairs_line);
    }
  }
  return f;
}

inline std::string print_relation_file(const RelationFile& f) {
  std::ostringstream out;
  out << "kind: " << to_string(f.kind) << "\n";
  out << "arity: " << f.arity << "\n";
  out << "alphabet: " << detail::join(f.alphabet, " ") << "\n";
  if (f.kind == RelationKind::Reg || f.kind == RelationKind::Scr) out << "pad: " << kPad << "\n";
  if (f.kind == RelationKind::Reg && f.discipline == Discipline::Projective) out << "discipline: projective\n";
  if (!f.name.empty()) out << "name: " << f.name << "\n";
  if (f.pairs) out << "pairs: " << to_string(*f.pairs) << "\n";
  if (f.kind == RelationKind::Rec) {
    for (const auto& p : f.products) out << "product: " << detail::join(p, " , ") << "\n";
    return out.str();
  }
  const auto& a = f.automaton;
  out << "states: " << a.num_states() << "\n";
  std::vector<std::string> ids;
  for (auto q : a.initial_states()) ids.push_back(std::to_string(q));
  out << "initial: " << detail::join(ids, " ") << "\n";
  ids.clear();
  for (auto q : a.final_states()) ids.push_back(std::to_string(q));
  out << "final: " << detail::join(ids, " ") << "\n";
  for (Nfa::State q = 0; q < a.num_states(); ++q) {
    for (const auto& e : a.edges(q)) {
      out << "t: " << q << " " << detail::join(a.letter(e.letter), ",") << " " << e.to << "\n";
    }
    for (auto to : a.epsilon_edges(q)) out << "t: " << q << " " << kEps << " " << to << "\n";
  }
  return out.str();
}

/// The REC, REG or RAT relation described by a file.
inline AnyRelation to_relation(const RelationFile& f) {
  switch (f.kind) {
    case RelationKind::Rec: {
      std::vector<std::vector<Nfa>> products;
      for (const auto& p : f.products) {
        std::vector<Nfa> comps;
        for (const auto& re : p) comps.push_back(compile_regex(re, f.alphabet));
        products.push_back(std::move(comps));
      }
      return RecRelation(f.alphabet, f.arity, std::move(products));
    }
    case RelationKind::Reg: {
      auto nfa = f.automaton;
      if (nfa.alphabet().empty()) nfa.add_letter(Letter(f.arity, kPad));
      return RegRelation(f.alphabet, nfa, f.discipline);
    }
    case RelationKind::Rat: {
      auto nfa = f.automaton;
      if (nfa.alphabet().empty()) nfa.add_letter(Letter(f.arity, kEps));
      return RatRelation(f.alphabet, nfa, f.name);
    }
    case RelationKind::Scr: return scr_close(f.automaton, f.alphabet).as_reg();
  }
  throw Error("unreachable relation kind");
}

/// The subsequence closure of an scr file's automaton.
inline ScrRelation to_scr(const RelationFile& f) {
  if (f.kind != RelationKind::Scr) throw Error("not an scr relation file");
  auto nfa = f.automaton;
  if (nfa.alphabet().empty()) nfa.add_letter(Letter{kPad, kPad});
  return scr_close(nfa, f.alphabet);
}

inline RelationFile relation_file(const RegRelation& r) {
  RelationFile f;
  f.kind = RelationKind::Reg;
  f.arity = r.arity();
  f.alphabet = r.alphabet();
  f.discipline = r.discipline();
  f.automaton = r.automaton();
  return f;
}

inline RelationFile relation_file(const RatRelation& r) {
  RelationFile f;
  f.kind = RelationKind::Rat;
  f.arity = r.arity();
  f.alphabet = r.alphabet();
  f.name = r.name();
  f.automaton = r.automaton();
  return f;
}

inline RelationFile relation_file(const ScrRelation& s) {
  RelationFile f;
  f.kind = RelationKind::Scr;
  f.arity = 2;
  f.alphabet = s.alphabet();
  f.automaton = s.automaton();
  return f;
}

// -------------------------------------------------------------------- graph

/// `alphabet: ..` (optional), `node v` and `edge v a w` lines.
inline GraphDb parse_graph(std::string_view text) {
  std::optional<GraphDb> g;
  for (const auto& l : detail::lines_of(text)) {
    try {
      if (l.key == "alphabet") {
        if (g) throw ParseError("'alphabet' must come first", l.number);
        g.emplace(detail::split_ws(l.rest));
        continue;
      }
      if (!g) g.emplace();
      auto toks = detail::split_ws(l.rest);
      if (l.key == "node") {
        if (toks.size() != 1) throw ParseError("expected 'node v'", l.number);
        g->add_node(toks[0]);
      } else if (l.key == "edge") {
        if (toks.size() != 3) throw ParseError("expected 'edge v a w'", l.number);
        g->add_edge(toks[0], toks[1], toks[2]);
      } else {
        throw ParseError("unknown line '" + l.key + "'", l.number);
      }
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      throw ParseError(e.what(), l.number);
    }
  }
  return g ? *g : GraphDb();
}

inline std::string print_graph(const GraphDb& g) {
  std::ostringstream out;
  if (g.declared_alphabet()) out << "alphabet: " << detail::join(g.alphabet(), " ") << "\n";
  for (const auto& v : g.nodes()) out << "node " << v << "\n";
  for (const auto& e : g.edges()) {
    out << "edge " << g.nodes()[e.from] << " " << e.label << " " << g.nodes()[e.to] << "\n";
  }
  return out.str();
}

/// A query file: the query text, possibly over several lines.
inline QueryAst parse_query_file(std::string_view text) {
  std::string joined;
  std::istringstream in{std::string(text)};
  for (std::string line; std::getline(in, line);) {
    auto t = detail::trim_view(line);
    if (t.substr(0, 2) == "//") continue;
    joined += std::string(t) + " ";
  }
  return parse_query(joined);
}

// ---------------------------------------------------------------------- PCP

/// `alphabet: a b` then one `pair: u | v` line per index.
inline PcpInstance parse_pcp(std::string_view text) {
  PcpInstance p;
  for (const auto& l : detail::lines_of(text)) {
    if (l.key == "alphabet") {
      p.sigma = detail::split_ws(l.rest);
    } else if (l.key == "pair") {
      auto parts = detail::split_on(l.rest, '|');
      if (parts.size() != 2) throw ParseError("expected 'pair: u | v'", l.number);
      p.u.push_back(detail::parse_word(parts[0]));
      p.v.push_back(detail::parse_word(parts[1]));
    } else {
      throw ParseError("unknown line '" + l.key + "'", l.number);
    }
  }
  try {
    validate_pcp(p);
  } catch (const Error& e) {
    throw ParseError(e.what(), 0);
  }
  return p;
}

inline std::string print_pcp(const PcpInstance& p) {
  std::ostringstream out;
  out << "alphabet: " << detail::join(p.sigma, " ") << "\n";
  for (std::size_t i = 0; i < p.u.size(); ++i) {
    out << "pair: " << detail::print_word(p.u[i]) << " | " << detail::print_word(p.v[i]) << "\n";
  }
  return out.str();
}

// ---------------------------------------------------------------------- PEP

struct PepFile {
  PepInstance instance;
  std::string language;  // regex over the source alphabet
};

/// `source:`, `target:`, one `map: a -> σ(a) | σ'(a)` per source symbol and
/// `language: regex`.
inline PepFile parse_pep(std::string_view text) {
  PepFile f;
  std::optional<std::size_t> lang_line;
  for (const auto& l : detail::lines_of(text)) {
    if (l.key == "source") {
      f.instance.sigma = detail::split_ws(l.rest);
    } else if (l.key == "target") {
      f.instance.gamma = detail::split_ws(l.rest);
    } else if (l.key == "map") {
      auto arrow = l.rest.find("->");
      if (arrow == std::string::npos) throw ParseError("expected 'map: a -> u | v'", l.number);
      auto a = std::string(detail::trim_view(std::string_view(l.rest).substr(0, arrow)));
      auto parts = detail::split_on(std::string_view(l.rest).substr(arrow + 2), '|');
      if (a.empty() || parts.size() != 2) throw ParseError("expected 'map: a -> u | v'", l.number);
      if (f.instance.morphism.count(a)) throw ParseError("symbol '" + a + "' mapped twice", l.number);
      f.instance.morphism[a] = detail::parse_word(parts[0]);
      f.instance.morphism_prime[a] = detail::parse_word(parts[1]);
    } else if (l.key == "language") {
      f.language = l.rest;
      lang_line = l.number;
    } else {
      throw ParseError("unknown line '" + l.key + "'", l.number);
    }
  }
  if (!lang_line) throw ParseError("missing 'language' line", 0);
  try {
    f.instance.language = compile_regex(f.language, f.instance.sigma);
  } catch (const Error& e) {
    throw ParseError(e.what(), *lang_line);
  }
  try {
    validate_pep(f.instance);
  } catch (const Error& e) {
    throw ParseError(e.what(), 0);
  }
  return f;
}

inline std::string print_pep(const PepFile& f) {
  std::ostringstream out;
  out << "source: " << detail::join(f.instance.sigma, " ") << "\n";
  out << "target: " << detail::join(f.instance.gamma, " ") << "\n";
  for (const auto& a : f.instance.sigma) {
    out << "map: " << a << " -> " << detail::print_word(f.instance.morphism.at(a)) << " | "
        << detail::print_word(f.instance.morphism_prime.at(a)) << "\n";
  }
  out << "language: " << f.language << "\n";
  return out.str();
}

// ---------------------------------------------------------------------- LBA

/// `tape:`, `markers: left right`, `states:`, `initial:`, `final:`,
/// `input:` (eps for the empty word) and `t: q read -> next write L|R|S`.
inline Lba parse_lba(std::string_view text) {
  Lba lba;
  for (const auto& l : detail::lines_of(text)) {
    auto toks = detail::split_ws(l.rest);
    if (l.key == "tape") {
      lba.tape = toks;
    } else if (l.key == "markers") {
      if (toks.size() != 2) throw ParseError("expected 'markers: left right'", l.number);
      lba.left_marker = toks[0];
      lba.right_marker = toks[1];
    } else if (l.key == "states") {
      lba.states = toks;
    } else if (l.key == "initial") {
      if (toks.size() != 1) throw ParseError("expected one initial state", l.number);
      lba.initial = toks[0];
    } else if (l.key == "final") {
      lba.finals = toks;
    } else if (l.key == "input") {
      lba.input = detail::parse_word(l.rest);
    } else if (l.key == "t") {
      if (toks.size() != 6 || toks[2] != "->") throw ParseError("expected 't: q a -> p b L|R|S'", l.number);
      LbaTransition t{toks[0], toks[1], toks[3], toks[4], Move::Stay};
      if (toks[5] == "L") t.move = Move::Left;
      else if (toks[5] == "R") t.move = Move::Right;
      else if (toks[5] != "S") throw ParseError("move must be L, R or S", l.number);
      lba.transitions.push_back(std::move(t));
    } else {
      throw ParseError("unknown line '" + l.key + "'", l.number);
    }
  }
  try {
    validate_lba(lba);
  } catch (const Error& e) {
    throw ParseError(e.what(), 0);
  }
  return lba;
}

inline std::string print_lba(const Lba& lba) {
  std::ostringstream out;
  out << "tape: " << detail::join(lba.tape, " ") << "\n";
  out << "markers: " << lba.left_marker << " " << lba.right_marker << "\n";
  out << "states: " << detail::join(lba.states, " ") << "\n";
  out << "initial: " << lba.initial << "\n";
  out << "final: " << detail::join(lba.finals, " ") << "\n";
  out << "input: " << detail::print_word(lba.input) << "\n";
  for (const auto& t : lba.transitions) {
    const char* mv = t.move == Move::Left ? "L" : t.move == Move::Right ? "R" : "S";
    out << "t: " << t.state << " " << t.read << " -> " << t.next << " " << t.write << " " << mv << "\n";
  }
  return out.str();
}

// ---------------------------------------------------------------- witnesses

/// `w1 = a b` lines; the empty word prints as `w1 = eps`.
inline std::string print_witness(const WordTuple& t) {
  std::string out;
  for (std::size_t i = 0; i < t.size(); ++i) {
    out += "w" + std::to_string(i + 1) + " = " + detail::print_word(t[i]) + "\n";
  }
  return out;
}

}  // namespace relkit

#endif  // RELKIT_IO_HPP
