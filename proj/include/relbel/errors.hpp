#pragma once

#include <stdexcept>
#include <string>

namespace relbel {

// Thrown when a caller passes arguments outside an operation's domain
// (non-finite values, out-of-range probabilities, malformed data, ...).
// The CLI maps this to exit code 2.
class invalid_input : public std::invalid_argument {
 public:
  explicit invalid_input(const std::string& what) : std::invalid_argument(what) {}
};

// Thrown when an iterative routine fails to reach its tolerance
// (root brackets lost, solver iteration cap, loss of positive definiteness).
// The CLI maps this to exit code 3.
class numeric_error : public std::runtime_error {
 public:
  explicit numeric_error(const std::string& what) : std::runtime_error(what) {}
};

// Thrown when a design matrix is not of full column rank; callers that can
// handle linear dependence route the problem to the reduced-basis path.
class rank_deficient : public numeric_error {
 public:
  explicit rank_deficient(const std::string& what) : numeric_error(what) {}
};

namespace detail {

inline void require(bool cond, const std::string& msg) {
  if (!cond) throw invalid_input(msg);
}

}  // namespace detail
}  // namespace relbel
