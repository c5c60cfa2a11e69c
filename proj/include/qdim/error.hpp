#pragma once

#include <stdexcept>
#include <string>

namespace qdim {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// An enumeration would exceed its configured word budget.
class BudgetExceeded : public Error {
public:
  using Error::Error;
};

/// Some composition stopped contracting ("contraction violated").
class ContractionViolated : public Error {
public:
  using Error::Error;
};

/// A derivative vanished on the base interval ("not conformal").
class NotConformal : public Error {
public:
  using Error::Error;
};

/// A placed map sends J outside J ("placement violates nesting").
class NestingViolated : public Error {
public:
  using Error::Error;
};

/// Transfer matrix of a potential is not primitive ("potential not mixing").
class NotMixing : public Error {
public:
  using Error::Error;
};

/// A pressure function has no sign change in the search range.
class RootOutOfRange : public Error {
public:
  using Error::Error;
};

/// Input data (schedule, measure, config) is malformed.
class InvalidInput : public Error {
public:
  using Error::Error;
};

}  // namespace qdim
