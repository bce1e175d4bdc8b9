#ifndef RELKIT_SYMBOL_HPP
#define RELKIT_SYMBOL_HPP

#include <algorithm>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "relkit/error.hpp"

namespace relkit {

/// An opaque alphabet token (no whitespace, no commas).
using Symbol = std::string;
/// A word over an alphabet of symbols.
using Word = std::vector<Symbol>;
/// A letter of an automaton: a k-tuple of tokens (k = 1 for plain words).
using Letter = std::vector<Symbol>;
/// An m-tuple of words, the element type of every relation.
using WordTuple = std::vector<Word>;
using Alphabet = std::vector<Symbol>;

/// Padding token of synchronized (convolution) letters.
inline const Symbol kPad = "_";
/// Epsilon token of asynchronous (multi-tape) letters.
inline const Symbol kEps = "eps";

inline bool is_reserved(std::string_view token) {
  return token == kPad || token == kEps;
}

inline bool is_valid_symbol(std::string_view token) {
  if (token.empty()) return false;
  return std::none_of(token.begin(), token.end(), [](char c) {
    return c == ',' || c == ' ' || c == '\t' || c == '\n' || c == '\r';
  });
}

/// Throws AlphabetError unless every token is an ordinary, distinct symbol.
inline void check_alphabet(const Alphabet& sigma) {
  for (std::size_t i = 0; i < sigma.size(); ++i) {
    if (!is_valid_symbol(sigma[i]) || is_reserved(sigma[i])) {
      throw AlphabetError("invalid alphabet symbol '" + sigma[i] + "'");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (sigma[j] == sigma[i]) {
        throw AlphabetError("duplicate alphabet symbol '" + sigma[i] + "'");
      }
    }
  }
}

inline bool contains(const Alphabet& sigma, const Symbol& s) {
  return std::find(sigma.begin(), sigma.end(), s) != sigma.end();
}

/// Union preserving the order of `a` followed by the new symbols of `b`.
inline Alphabet alphabet_union(const Alphabet& a, const Alphabet& b) {
  Alphabet out = a;
  for (const auto& s : b) {
    if (!contains(out, s)) out.push_back(s);
  }
  return out;
}

/// Builds a word from a string whose characters are one-character symbols.
inline Word chars(std::string_view text) {
  Word w;
  w.reserve(text.size());
  for (char c : text) w.emplace_back(1, c);
  return w;
}

/// Space-separated rendering used in witness lines.
inline std::string to_string(const Word& w) {
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) out += ' ';
    out += w[i];
  }
  return out;
}

/// Compact rendering for diagnostics: symbols concatenated, "" for empty.
inline std::string to_compact(const Word& w) {
  std::string out;
  for (const auto& s : w) out += s;
  return "\"" + out + "\"";
}

inline std::string to_compact(const WordTuple& t) {
  std::string out = "(";
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (i) out += ",";
    out += to_compact(t[i]);
  }
  return out + ")";
}

inline std::size_t total_length(const WordTuple& t) {
  std::size_t n = 0;
  for (const auto& w : t) n += w.size();
  return n;
}

}  // namespace relkit

#endif  // RELKIT_SYMBOL_HPP
