#pragma once

#include <stdexcept>
#include <string>

namespace circov {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition on the arguments of an operation does not hold.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// A brute-force routine was asked to work beyond its enumeration budget.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

/// A set W does not define a circulant minor. `where()` names the element of W
/// whose backward walk failed, or -1 when the failure is about parameters.
class MalformedW : public Error {
 public:
  MalformedW(const std::string& what, int where = -1) : Error(what), where_(where) {}
  int where() const { return where_; }

 private:
  int where_;
};

/// An internal consistency check failed. These indicate bugs, never bad input.
class InternalInvariant : public Error {
 public:
  using Error::Error;
};

class IsomorphismMismatch : public InternalInvariant {
 public:
  using InternalInvariant::InternalInvariant;
};

class ColumnCountMismatch : public InternalInvariant {
 public:
  using InternalInvariant::InternalInvariant;
};

class ConstructionFailure : public InternalInvariant {
 public:
  ConstructionFailure(const std::string& what, int index)
      : InternalInvariant(what), index_(index) {}
  int index() const { return index_; }

 private:
  int index_;
};

class NoPath : public Error {
 public:
  using Error::Error;
};

class Infeasible : public Error {
 public:
  using Error::Error;
};

class Unbounded : public Error {
 public:
  using Error::Error;
};

/// A supplied inequality is violated by some cover, so it cannot be a face.
class InvalidInequality : public Error {
 public:
  using Error::Error;
};

}  // namespace circov
