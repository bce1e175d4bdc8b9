#ifndef RELKIT_REGEX_HPP
#define RELKIT_REGEX_HPP

#include <cstddef>
#include <string>
#include <string_view>
#include <utility>

#include "relkit/error.hpp"
#include "relkit/nfa.hpp"
#include "relkit/symbol.hpp"

namespace relkit {

namespace detail {

// Thompson construction directly into an epsilon-NFA.
//
//   alt    := concat ('|' concat)*
//   concat := repeat*
//   repeat := atom ('*' | '+' | '?')*
//   atom   := '(' alt ')' | symbol | 'ε' | 'eps' | '∅' | 'Σ' | 'S'
class RegexCompiler {
 public:
  RegexCompiler(std::string_view text, const Alphabet& sigma)
      : text_(text), sigma_(sigma), nfa_(letters_of(sigma)) {}

  Nfa compile() {
    auto frag = parse_alt();
    skip_space();
    if (pos_ < text_.size()) {
      throw ParseError("unexpected '" + std::string(1, text_[pos_]) + "' in regex", pos_);
    }
    nfa_.set_initial(frag.first);
    nfa_.set_final(frag.second);
    return trim(eliminate_epsilon(nfa_));
  }

 private:
  using Frag = std::pair<Nfa::State, Nfa::State>;

  static constexpr std::string_view kEpsilonSign = "\xCE\xB5";  // ε
  static constexpr std::string_view kEmptySign = "\xE2\x88\x85";  // ∅
  static constexpr std::string_view kSigmaSign = "\xCE\xA3";  // Σ

  void skip_space() {
    while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t')) ++pos_;
  }

  bool at_operator() const {
    char c = text_[pos_];
    return c == '|' || c == '*' || c == '+' || c == '?' || c == '(' || c == ')';
  }

  bool starts_with(std::string_view s) const { return text_.substr(pos_, s.size()) == s; }

  Frag fresh() {
    auto a = nfa_.add_state();
    auto b = nfa_.add_state();
    return {a, b};
  }

  Frag parse_alt() {
    auto left = parse_concat();
    skip_space();
    while (pos_ < text_.size() && text_[pos_] == '|') {
      ++pos_;
      auto right = parse_concat();
      auto f = fresh();
      nfa_.add_epsilon(f.first, left.first);
      nfa_.add_epsilon(f.first, right.first);
      nfa_.add_epsilon(left.second, f.second);
      nfa_.add_epsilon(right.second, f.second);
      left = f;
      skip_space();
    }
    return left;
  }

  Frag parse_concat() {
    auto result = fresh();
    nfa_.add_epsilon(result.first, result.second);
    bool first = true;
    for (;;) {
      skip_space();
      if (pos_ >= text_.size() || text_[pos_] == '|' || text_[pos_] == ')') break;
      auto next = parse_repeat();
      if (first) {
        result = next;
        first = false;
      } else {
        nfa_.add_epsilon(result.second, next.first);
        result.second = next.second;
      }
    }
    return result;
  }

  Frag parse_repeat() {
    auto inner = parse_atom();
    for (;;) {
      skip_space();
      if (pos_ >= text_.size()) break;
      char c = text_[pos_];
      if (c != '*' && c != '+' && c != '?') break;
      ++pos_;
      auto f = fresh();
      nfa_.add_epsilon(f.first, inner.first);
      nfa_.add_epsilon(inner.second, f.second);
      if (c != '+') nfa_.add_epsilon(f.first, f.second);
      if (c != '?') nfa_.add_epsilon(inner.second, inner.first);
      inner = f;
    }
    return inner;
  }

  Frag parse_atom() {
    skip_space();
    if (pos_ >= text_.size()) throw ParseError("unexpected end of regex", pos_);
    const std::size_t start = pos_;
    if (text_[pos_] == '(') {
      ++pos_;
      auto inner = parse_alt();
      skip_space();
      if (pos_ >= text_.size() || text_[pos_] != ')') throw ParseError("expected ')'", pos_);
      ++pos_;
      return inner;
    }
    if (at_operator()) {
      throw ParseError("unexpected '" + std::string(1, text_[pos_]) + "' in regex", start);
    }
    // Longest alphabet symbol first, so multi-character tokens win.
    std::size_t best = 0;
    Nfa::LetterId best_id = 0;
    for (std::size_t i = 0; i < sigma_.size(); ++i) {
      const auto& s = sigma_[i];
      if (s.size() > best && starts_with(s)) {
        best = s.size();
        best_id = static_cast<Nfa::LetterId>(i);
      }
    }
    auto f = fresh();
    if (best > 0) {
      pos_ += best;
      nfa_.add_transition(f.first, best_id, f.second);
      return f;
    }
    if (starts_with(kEpsilonSign) || starts_with(kEps)) {
      pos_ += starts_with(kEps) ? kEps.size() : kEpsilonSign.size();
      nfa_.add_epsilon(f.first, f.second);
      return f;
    }
    if (starts_with(kEmptySign)) {
      pos_ += kEmptySign.size();
      return f;
    }
    if (starts_with(kSigmaSign) || text_[pos_] == 'S') {
      pos_ += text_[pos_] == 'S' ? 1 : kSigmaSign.size();
      for (Nfa::LetterId l = 0; l < sigma_.size(); ++l) nfa_.add_transition(f.first, l, f.second);
      return f;
    }
    std::size_t end = pos_;
    while (end < text_.size() && text_[end] != ' ' && !is_operator_char(text_[end])) ++end;
    throw AlphabetError("regex symbol '" + std::string(text_.substr(pos_, end - pos_)) +
                        "' at position " + std::to_string(pos_) + " is not in the alphabet");
  }

  static bool is_operator_char(char c) {
    return c == '|' || c == '*' || c == '+' || c == '?' || c == '(' || c == ')';
  }

  std::string_view text_;
  const Alphabet& sigma_;
  Nfa nfa_;
  std::size_t pos_ = 0;
};

}  // namespace detail

/// Compiles a regular expression over `sigma` into an epsilon-free NFA.
///
/// Concatenation is juxtaposition (whitespace is ignored), with `|`, `*`,
/// `+`, `?` and parentheses. `ε` or `eps` denotes the empty word, `∅` the
/// empty language, and `Σ` (or `S` when it is not itself a symbol) any
/// single symbol. Multi-character symbols are matched longest first.
inline Nfa compile_regex(std::string_view pattern, const Alphabet& sigma) {
  check_alphabet(sigma);
  return detail::RegexCompiler(pattern, sigma).compile();
}

}  // namespace relkit

#endif  // RELKIT_REGEX_HPP
