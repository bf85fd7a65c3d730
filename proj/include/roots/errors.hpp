#pragma once

#include <stdexcept>
#include <string>

namespace roots {

/// Base class for every error raised by the solver library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Zero or non-finite input where a positive finite magnitude is required.
class DegenerateInput : public Error {
 public:
  using Error::Error;
};

/// A derivative (or coefficient) of an order the problem does not supply.
class UnsupportedOrder : public Error {
 public:
  UnsupportedOrder(const std::string& what, int order)
      : Error(what), order_(order) {}
  int order() const noexcept { return order_; }

 private:
  int order_;
};

/// Argument outside the function's domain (e.g. log of a non-positive value).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// f'(x) vanished; no Newton-type step is defined.
class DerivativeSingularity : public Error {
 public:
  using Error::Error;
};

/// f(z) == f(x) with |f(x)| not negligible, so the divided difference is undefined.
class DegenerateStep : public Error {
 public:
  using Error::Error;
};

/// Reference-root Newton iteration did not settle.
class RootBootstrapFailure : public Error {
 public:
  using Error::Error;
};

/// Too few error samples to estimate an order.
class InsufficientData : public Error {
 public:
  using Error::Error;
};

/// Caller broke a documented precondition.
class ContractViolation : public Error {
 public:
  using Error::Error;
};

}  // namespace roots
