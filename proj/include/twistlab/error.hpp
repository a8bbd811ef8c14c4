#pragma once

#include <stdexcept>
#include <string>

namespace twistlab {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Dimension mismatch or malformed argument to an internal routine.
class ContractError : public Error {
 public:
  using Error::Error;
};

/// A documented precondition of an operation does not hold.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// A value was queried outside the domain on which it is defined.
class DomainError : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

/// An enumeration would exceed its configured size cap.
class CapacityError : public Error {
 public:
  CapacityError(const std::string& what, std::size_t cap)
      : Error(what + " (cap " + std::to_string(cap) + ")"), cap_(cap) {}
  std::size_t cap() const noexcept { return cap_; }

 private:
  std::size_t cap_;
};

}  // namespace twistlab
