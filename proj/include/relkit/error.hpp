#ifndef RELKIT_ERROR_HPP
#define RELKIT_ERROR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace relkit {

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed text input (regex, query, relation or instance file).
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : Error(what + " at position " + std::to_string(position)),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

class AlphabetError : public Error {
 public:
  using Error::Error;
};

class ArityError : public Error {
 public:
  using Error::Error;
};

/// Constraint-set shape does not meet a solver's precondition.
class ShapeError : public Error {
 public:
  using Error::Error;
};

/// Exact evaluation requested on a route that only admits bounded search.
class DispatchError : public Error {
 public:
  using Error::Error;
};

/// The tree solver exceeded its node budget.
class BudgetExceeded : public Error {
 public:
  BudgetExceeded(std::size_t nodes, std::size_t depth)
      : Error("node budget exceeded after " + std::to_string(nodes) +
              " nodes (max depth " + std::to_string(depth) + ")"),
        nodes_(nodes),
        depth_(depth) {}

  std::size_t nodes() const noexcept { return nodes_; }
  std::size_t depth() const noexcept { return depth_; }

 private:
  std::size_t nodes_;
  std::size_t depth_;
};

/// A solver produced a witness that failed independent revalidation.
class WitnessError : public Error {
 public:
  using Error::Error;
};

}  // namespace relkit

#endif  // RELKIT_ERROR_HPP
