#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace folbridge {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SourceLocation {
  std::size_t line = 1;
  std::size_t column = 1;
};

std::string to_string(const SourceLocation& loc);

class ParseError : public Error {
 public:
  ParseError(SourceLocation loc, std::string expected, std::string found);

  const SourceLocation& location() const { return loc_; }
  const std::string& expected() const { return expected_; }

 private:
  SourceLocation loc_;
  std::string expected_;
};

/// Unknown identifier or duplicate declaration.
class ScopeError : public Error {
 public:
  using Error::Error;
};

/// Wrong number of arguments, branches or pattern variables.
class ArityError : public Error {
 public:
  using Error::Error;
};

class TypeError : public Error {
 public:
  TypeError(std::string what, std::string expected, std::string found);

  const std::string& expected() const { return expected_; }
  const std::string& found() const { return found_; }

 private:
  std::string expected_;
  std::string found_;
};

class FuelExhausted : public Error {
 public:
  FuelExhausted() : Error("reduction fuel exhausted") {}
};

class Uninhabited : public Error {
 public:
  using Error::Error;
};

class TransformError : public Error {
 public:
  enum class Code {
    UnknownConstant,
    AlreadyPresent,
    UnknownHypothesis,
    NotAnEquation,
    NoFixpointFound,
    NoMatchOnBoundVar,
    NotAlgebraic,
  };

  TransformError(Code code, std::string what) : Error(std::move(what)), code_(code) {}

  Code code() const { return code_; }

 private:
  Code code_;
};

const char* to_string(TransformError::Code code);

/// A transformation stage failed; carries the stage name.
class PipelineError : public Error {
 public:
  PipelineError(std::string stage, std::string what)
      : Error("stage " + stage + ": " + what), stage_(std::move(stage)) {}

  const std::string& stage() const { return stage_; }

 private:
  std::string stage_;
};

class CertificationFailed : public PipelineError {
 public:
  CertificationFailed(std::string stage, std::string hypothesis, std::string reason)
      : PipelineError(std::move(stage),
                      "certification failed for " + hypothesis + ": " + reason),
        hypothesis_(std::move(hypothesis)) {}

  const std::string& hypothesis() const { return hypothesis_; }

 private:
  std::string hypothesis_;
};

class NotFirstOrder : public Error {
 public:
  NotFirstOrder(std::string statement, std::string reason)
      : Error("goal is not first-order (" + reason + "): " + statement),
        statement_(std::move(statement)) {}

  const std::string& statement() const { return statement_; }

 private:
  std::string statement_;
};

class SolverError : public Error {
 public:
  using Error::Error;
};

}  // namespace folbridge
