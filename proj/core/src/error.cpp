#include "folbridge/error.hpp"

namespace folbridge {

std::string to_string(const SourceLocation& loc) {
  return std::to_string(loc.line) + ":" + std::to_string(loc.column);
}

ParseError::ParseError(SourceLocation loc, std::string expected, std::string found)
    : Error(to_string(loc) + ": expected " + expected + ", found " + found),
      loc_(loc),
      expected_(std::move(expected)) {}

TypeError::TypeError(std::string what, std::string expected, std::string found)
    : Error(what + " (expected " + expected + ", found " + found + ")"),
      expected_(std::move(expected)),
      found_(std::move(found)) {}

const char* to_string(TransformError::Code code) {
  switch (code) {
    case TransformError::Code::UnknownConstant: return "UnknownConstant";
    case TransformError::Code::AlreadyPresent: return "AlreadyPresent";
    case TransformError::Code::UnknownHypothesis: return "UnknownHypothesis";
    case TransformError::Code::NotAnEquation: return "NotAnEquation";
    case TransformError::Code::NoFixpointFound: return "NoFixpointFound";
    case TransformError::Code::NoMatchOnBoundVar: return "NoMatchOnBoundVar";
    case TransformError::Code::NotAlgebraic: return "NotAlgebraic";
  }
  return "?";
}

}  // namespace folbridge
