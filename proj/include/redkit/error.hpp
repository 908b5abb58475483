#pragma once

#include <stdexcept>
#include <string>

namespace redkit {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// DIMACS / JSON input problems; carries the 1-based input line when known.
struct ParseError : Error {
  ParseError(int line_, const std::string& what_)
      : Error("parse error (line " + std::to_string(line_) + "): " + what_),
        line(line_) {}
  int line;
};

// A configured enumeration/search cap would be exceeded.
struct CapExceeded : Error {
  using Error::Error;
};

// Requested object cannot exist under the given parameters.
struct Infeasible : Error {
  using Error::Error;
};

// A routine whose guarantee depends on a hypothesis detected that the
// hypothesis cannot hold (e.g. the dense-subgraph search found no qualifying
// pair). Carries the stage name for pipeline reports.
struct StageFailure : Error {
  StageFailure(const std::string& stage_, const std::string& what_)
      : Error(stage_ + ": " + what_), stage(stage_) {}
  std::string stage;
};

}  // namespace redkit
