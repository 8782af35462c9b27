#pragma once

#include <stdexcept>
#include <string>

namespace csl {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Malformed graph: duplicate edge, self loop, unknown node, ...
struct GraphError : Error {
  using Error::Error;
};

/// Input file rejected; line is 1-based, 0 when not tied to a line.
struct ParseError : Error {
  int line = 0;
  ParseError(const std::string& msg, int line_no)
      : Error("line " + std::to_string(line_no) + ": " + msg), line(line_no) {}
  explicit ParseError(const std::string& msg) : Error(msg) {}
};

/// Node or edge budget exceeded (model universe, orientation search, ...).
struct BoundError : Error {
  using Error::Error;
};

/// Partial order violates irreflexivity/antisymmetry or mismatches a graph.
struct OrderError : Error {
  using Error::Error;
};

/// Invalid structural causal model.
struct ScmError : Error {
  using Error::Error;
};

/// An operation precondition failed; the caller asked for something undefined.
struct PreconditionError : Error {
  using Error::Error;
};

/// Latent projection produced conflicting edge marks for one node pair, so
/// the result does not fit the simple-graph edge classes handled here.
struct RegimeError : Error {
  using Error::Error;
};

}  // namespace csl
