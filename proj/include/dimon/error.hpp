#ifndef DIMON_ERROR_HPP_
#define DIMON_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace dimon {

  // Raised for violated preconditions (bad degree, index out of range, ...).
  class Error : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
  };

  // Raised when a computation hits a configured size/step limit, or when a
  // capped result is used where a complete one is required.
  class CappedError : public Error {
   public:
    using Error::Error;
  };

}  // namespace dimon

#endif  // DIMON_ERROR_HPP_
