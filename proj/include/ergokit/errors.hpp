#pragma once

#include <stdexcept>
#include <string>

namespace ergokit {

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NotHermitianError : public Error {
 public:
  using Error::Error;
};

class NotUnitaryError : public Error {
 public:
  using Error::Error;
};

class DimensionMismatchError : public Error {
 public:
  using Error::Error;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

class PositivityError : public Error {
 public:
  using Error::Error;
};

class NotDiagonalError : public Error {
 public:
  using Error::Error;
};

class DegenerateHamiltonianError : public Error {
 public:
  using Error::Error;
};

class EntropyMismatchError : public Error {
 public:
  using Error::Error;
};

class NotZeroErgotropyError : public Error {
 public:
  using Error::Error;
};

class SupportViolationError : public Error {
 public:
  using Error::Error;
};

/// Integration step rejected; carries a usable step suggestion.
class StepTooLargeError : public Error {
 public:
  StepTooLargeError(const std::string& what, double suggested)
      : Error(what), suggested_dt(suggested) {}
  double suggested_dt;
};

class UnitarityLossError : public Error {
 public:
  using Error::Error;
};

/// Input is passive: nothing to extract, power bound is vacuous.
class PassiveInputError : public Error {
 public:
  using Error::Error;
};

class NegativeSpectrumError : public Error {
 public:
  using Error::Error;
};

class ZeroVarianceError : public Error {
 public:
  using Error::Error;
};

/// Input outside the regime a quantity is defined for (e.g. beta <= 0).
class NotApplicableError : public Error {
 public:
  using Error::Error;
};

}  // namespace ergokit
