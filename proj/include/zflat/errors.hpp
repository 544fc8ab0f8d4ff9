#pragma once

#include <stdexcept>
#include <string>

namespace zflat {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The requested computation exceeds the enumeration budget it was given.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

class HasColoops : public Error {
 public:
  using Error::Error;
};

class HasLoops : public Error {
 public:
  using Error::Error;
};

class NotATExpansion : public Error {
 public:
  using Error::Error;
};

class DecompositionMismatch : public Error {
 public:
  using Error::Error;
};

class MalformedTree : public Error {
 public:
  using Error::Error;
};

class InvalidTangle : public Error {
 public:
  using Error::Error;
};

class InputOrderNotPositroid : public Error {
 public:
  using Error::Error;
};

inline void require_budget(int n, int limit, const char* what) {
  if (n > limit) {
    throw BudgetExceeded(std::string(what) + ": " + std::to_string(n) + " elements exceeds budget of " +
                         std::to_string(limit));
  }
}

}  // namespace zflat
