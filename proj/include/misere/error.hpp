#ifndef MISERE_ERROR_HPP_
#define MISERE_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace misere {

  // Malformed input: game codes, positions, presentations, JSON files.
  class InputError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
  };

  // A configured resource cap (memo entries, universe size, subset count)
  // was hit before the computation finished.
  class BudgetExceeded : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
  };

  // A precondition on an analysis does not hold, e.g. a heap lies outside
  // the range covered by the pretending function.
  class RangeError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
  };

  // An internal invariant failed; indicates a bug rather than bad input.
  class LogicError : public std::logic_error {
   public:
    using std::logic_error::logic_error;
  };

}  // namespace misere

#endif  // MISERE_ERROR_HPP_
