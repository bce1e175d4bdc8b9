#ifndef RELKIT_CONSTRAINTS_HPP
#define RELKIT_CONSTRAINTS_HPP

#include <algorithm>
#include <cstddef>
#include <functional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "relkit/error.hpp"

namespace relkit {

/// Pairs (i, j) of 1-based coordinates constrained by the relation S.
class ConstraintSet {
 public:
  using Pair = std::pair<std::size_t, std::size_t>;

  ConstraintSet() = default;

  ConstraintSet(std::size_t m, std::vector<Pair> pairs) : m_(m) {
    for (const auto& [i, j] : pairs) {
      if (i < 1 || j < 1 || i > m || j > m) {
        throw ArityError("constraint (" + std::to_string(i) + "," + std::to_string(j) +
                         ") out of range for arity " + std::to_string(m));
      }
    }
    std::sort(pairs.begin(), pairs.end());
    pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
    pairs_ = std::move(pairs);
  }

  std::size_t arity() const noexcept { return m_; }
  const std::vector<Pair>& pairs() const noexcept { return pairs_; }
  bool empty() const noexcept { return pairs_.empty(); }

  bool contains(std::size_t i, std::size_t j) const {
    return std::binary_search(pairs_.begin(), pairs_.end(), Pair{i, j});
  }

  bool has_degenerate() const {
    return std::any_of(pairs_.begin(), pairs_.end(), [](const Pair& p) { return p.first == p.second; });
  }

  /// Pairs with i != j.
  std::vector<Pair> proper_pairs() const {
    std::vector<Pair> out;
    for (const auto& p : pairs_) {
      if (p.first != p.second) out.push_back(p);
    }
    return out;
  }

  friend bool operator==(const ConstraintSet&, const ConstraintSet&) = default;

 private:
  std::size_t m_ = 0;
  std::vector<Pair> pairs_;
};

/// Parses "1,2 2,3" (whitespace- or semicolon-separated i,j pairs).
inline ConstraintSet parse_pairs(const std::string& text, std::size_t m) {
  std::vector<ConstraintSet::Pair> pairs;
  std::string normalized = text;
  std::replace(normalized.begin(), normalized.end(), ';', ' ');
  std::istringstream in(normalized);
  std::string item;
  while (in >> item) {
    auto comma = item.find(',');
    if (comma == std::string::npos) throw ParseError("expected i,j in pair list", text.find(item));
    try {
      std::size_t used = 0;
      auto i = std::stoul(item.substr(0, comma), &used);
      if (used != comma) throw std::invalid_argument("i");
      auto rest = item.substr(comma + 1);
      auto j = std::stoul(rest, &used);
      if (used != rest.size()) throw std::invalid_argument("j");
      pairs.emplace_back(i, j);
    } catch (const std::logic_error&) {
      throw ParseError("malformed pair '" + item + "'", text.find(item));
    }
  }
  return ConstraintSet(m, std::move(pairs));
}

inline std::string to_string(const ConstraintSet& I) {
  std::string out;
  for (const auto& [i, j] : I.pairs()) {
    if (!out.empty()) out += ' ';
    out += std::to_string(i) + "," + std::to_string(j);
  }
  return out;
}

enum class Shape { UndirectedAcyclic, Dag, Cyclic };

inline const char* to_string(Shape s) {
  switch (s) {
    case Shape::UndirectedAcyclic: return "undirected-acyclic";
    case Shape::Dag: return "dag";
    case Shape::Cyclic: return "cyclic";
  }
  return "?";
}

/// Topological order of coordinates (0-based) if the proper pairs form a
/// DAG, else empty.
inline std::vector<std::size_t> topological_order(const ConstraintSet& I) {
  const std::size_t m = I.arity();
  std::vector<std::size_t> indeg(m, 0);
  std::vector<std::vector<std::size_t>> out(m);
  for (const auto& [i, j] : I.proper_pairs()) {
    out[i - 1].push_back(j - 1);
    ++indeg[j - 1];
  }
  std::vector<std::size_t> order, ready;
  for (std::size_t v = m; v-- > 0;) {
    if (indeg[v] == 0) ready.push_back(v);
  }
  while (!ready.empty()) {
    auto v = ready.back();
    ready.pop_back();
    order.push_back(v);
    for (auto w : out[v]) {
      if (--indeg[w] == 0) ready.push_back(w);
    }
  }
  if (order.size() != m) return {};
  return order;
}

/// Strongest applicable shape. Pairs (i,i) are ignored; (i,j) together with
/// (j,i) is a cycle of the undirected multigraph G_I.
inline Shape classify_shape(const ConstraintSet& I) {
  const std::size_t m = I.arity();
  std::vector<std::size_t> parent(m);
  for (std::size_t v = 0; v < m; ++v) parent[v] = v;
  std::function<std::size_t(std::size_t)> find = [&](std::size_t v) {
    return parent[v] == v ? v : parent[v] = find(parent[v]);
  };
  bool forest = true;
  for (const auto& [i, j] : I.proper_pairs()) {
    auto a = find(i - 1), b = find(j - 1);
    if (a == b) {
      forest = false;
      break;
    }
    parent[a] = b;
  }
  if (forest) return Shape::UndirectedAcyclic;
  if (m == 0 || !topological_order(I).empty()) return Shape::Dag;
  return Shape::Cyclic;
}

/// Strongly connected components of the directed pair graph, numbered in a
/// topological order of the quotient. `component[v]` is 0-based.
struct Quotient {
  std::vector<std::size_t> component;
  std::size_t count = 0;
  ConstraintSet pairs;  // quotient constraints (proper pairs only)
};

inline Quotient scc_quotient(const ConstraintSet& I) {
  const std::size_t m = I.arity();
  std::vector<std::vector<std::size_t>> adj(m);
  for (const auto& [i, j] : I.proper_pairs()) adj[i - 1].push_back(j - 1);
  // Tarjan's algorithm; it emits components in reverse topological order.
  std::vector<int> index(m, -1), low(m, 0);
  std::vector<bool> on_stack(m, false);
  std::vector<std::size_t> stack, comp(m, 0);
  std::vector<std::vector<std::size_t>> comps;
  int counter = 0;
  std::function<void(std::size_t)> strong = [&](std::size_t v) {
    index[v] = low[v] = counter++;
    stack.push_back(v);
    on_stack[v] = true;
    for (auto w : adj[v]) {
      if (index[w] < 0) {
        strong(w);
        low[v] = std::min(low[v], low[w]);
      } else if (on_stack[w]) {
        low[v] = std::min(low[v], index[w]);
      }
    }
    if (low[v] == index[v]) {
      std::vector<std::size_t> c;
      std::size_t w;
      do {
        w = stack.back();
        stack.pop_back();
        on_stack[w] = false;
        c.push_back(w);
      } while (w != v);
      comps.push_back(std::move(c));
    }
  };
  for (std::size_t v = 0; v < m; ++v) {
    if (index[v] < 0) strong(v);
  }
  Quotient q;
  q.count = comps.size();
  q.component.assign(m, 0);
  for (std::size_t c = 0; c < comps.size(); ++c) {
    for (auto v : comps[c]) q.component[v] = comps.size() - 1 - c;
  }
  std::vector<ConstraintSet::Pair> pairs;
  for (const auto& [i, j] : I.proper_pairs()) {
    auto a = q.component[i - 1], b = q.component[j - 1];
    if (a != b) pairs.emplace_back(a + 1, b + 1);
  }
  q.pairs = ConstraintSet(q.count, std::move(pairs));
  return q;
}

}  // namespace relkit

#endif  // RELKIT_CONSTRAINTS_HPP
