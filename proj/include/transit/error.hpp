#pragma once

#include <stdexcept>
#include <string>

namespace transit {

/// Base of every exception thrown by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidGraph : public Error {
 public:
  using Error::Error;
};

class NotAPath : public Error {
 public:
  using Error::Error;
};

class IngestError : public Error {
 public:
  using Error::Error;
};

/// Native binary / text container could not be decoded.
class FormatError : public IngestError {
 public:
  using IngestError::IngestError;
};

class GenerationError : public Error {
 public:
  using Error::Error;
};

class QueryError : public Error {
 public:
  using Error::Error;
};

/// A documented precondition was violated by the caller (e.g. Early pruning on an unsorted graph).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

class NoJourney : public Error {
 public:
  using Error::Error;
};

class OracleScaleError : public Error {
 public:
  using Error::Error;
};

class UndefinedCorrelation : public Error {
 public:
  using Error::Error;
};

}  // namespace transit
