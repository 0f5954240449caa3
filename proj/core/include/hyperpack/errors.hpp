#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace hyperpack {

// Base class for every error thrown by the library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Argument outside the mathematical domain of an operation.
struct DomainError : Error {
  using Error::Error;
};

// Triangle inequality fails (collapsed vertex triangle).
struct DegenerateTriangle : Error {
  using Error::Error;
};

// A vertex triangle of the tetrahedron is invalid for the given lengths.
struct DegenerateTetrahedron : Error {
  using Error::Error;
};

// Two independent routes to the same quantity disagree beyond tolerance.
struct CrossCheckFailure : Error {
  using Error::Error;
};

// An integration path left the set of valid configurations.
struct PathLeavesAdmissible : Error {
  using Error::Error;
};

// Malformed input document.
struct ParseError : Error {
  using Error::Error;
};

// Structurally well-formed input violating a data invariant.
struct ValidationError : Error {
  using Error::Error;
};

// Lookup of a nonexistent edge/tet/vertex id.
struct UnknownId : Error {
  using Error::Error;
};

// Operation requires an admissible metric state.
struct InadmissibleState : Error {
  InadmissibleState(const std::string& what, std::vector<int> bad_tets = {})
      : Error(what), offending_tets(std::move(bad_tets)) {}
  std::vector<int> offending_tets;
};

// A certificate hypothesis does not hold; lists the violating edges.
struct HypothesisFailed : Error {
  HypothesisFailed(const std::string& what, std::vector<int> edges = {})
      : Error(what), violating_edges(std::move(edges)) {}
  std::vector<int> violating_edges;
};

}  // namespace hyperpack
