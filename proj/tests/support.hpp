#ifndef RELKIT_TESTS_SUPPORT_HPP
#define RELKIT_TESTS_SUPPORT_HPP

// Reference predicates for the tests. They work on plain std::string and
// share no code with the library.

#include <functional>
#include <string>
#include <vector>

#include "relkit/oracle.hpp"
#include "relkit/symbol.hpp"

namespace support {

inline std::string str(const relkit::Word& w) {
  std::string s;
  for (const auto& x : w) s += x;
  return s;
}

inline bool ref_prefix(const std::string& u, const std::string& v) { return v.compare(0, u.size(), u) == 0; }

inline bool ref_suffix(const std::string& u, const std::string& v) {
  return u.size() <= v.size() && v.compare(v.size() - u.size(), u.size(), u) == 0;
}

inline bool ref_subword(const std::string& u, const std::string& v) { return v.find(u) != std::string::npos; }

// Deliberately the exponential textbook recursion, not a greedy scan.
inline bool ref_subseq(const std::string& u, const std::string& v) {
  if (u.empty()) return true;
  if (v.empty()) return false;
  if (u[0] == v[0] && ref_subseq(u.substr(1), v.substr(1))) return true;
  return ref_subseq(u, v.substr(1));
}

inline bool ref_equal_length(const std::string& u, const std::string& v) { return u.size() == v.size(); }

using RefPredicate = std::function<bool(const std::string&, const std::string&)>;

inline RefPredicate ref_predicate(const std::string& name) {
  if (name == "prefix") return ref_prefix;
  if (name == "suffix") return ref_suffix;
  if (name == "subword") return ref_subword;
  if (name == "subsequence") return ref_subseq;
  if (name == "equal_length") return ref_equal_length;
  return [](const std::string& u, const std::string& v) { return u == v; };
}

inline relkit::WordPredicate as_word_predicate(RefPredicate p) {
  return [p](const relkit::Word& u, const relkit::Word& v) { return p(str(u), str(v)); };
}

/// Every string over single-character symbols of length at most n.
inline std::vector<std::string> all_strings(const std::string& letters, std::size_t n) {
  std::vector<std::string> out{""};
  std::size_t begin = 0;
  for (std::size_t len = 1; len <= n; ++len) {
    const std::size_t end = out.size();
    for (std::size_t i = begin; i < end; ++i) {
      for (char c : letters) out.push_back(out[i] + c);
    }
    begin = end;
  }
  return out;
}

inline relkit::Word word(const std::string& s) { return relkit::chars(s); }

}  // namespace support

#endif  // RELKIT_TESTS_SUPPORT_HPP
