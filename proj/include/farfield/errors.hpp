#ifndef FARFIELD_ERRORS_HPP
#define FARFIELD_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace farfield {

// Base class for all library errors.
struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Operands live in different ambient dimensions (or component counts differ).
struct DimensionMismatch : Error {
  explicit DimensionMismatch(const std::string& what) : Error(what) {}
};

// Helmholtz solve hit a nonzero coefficient at a kernel degree; the caller
// must split off the eigencomponent first.
struct ResonantComponent : Error {
  explicit ResonantComponent(const std::string& what) : Error(what) {}
};

// Source grades fall outside the inversion window.
struct MalformedSource : Error {
  explicit MalformedSource(const std::string& what) : Error(what) {}
};

struct NotTwoDimensional : Error {
  explicit NotTwoDimensional(const std::string& what) : Error(what) {}
};

struct NotDivergenceFree : Error {
  explicit NotDivergenceFree(const std::string& what) : Error(what) {}
};

// Quadrature grid too coarse to resolve a compactly supported field.
struct UnresolvedSupport : Error {
  explicit UnresolvedSupport(const std::string& what) : Error(what) {}
};

struct StencilOutOfDomain : Error {
  explicit StencilOutOfDomain(const std::string& what) : Error(what) {}
};

struct StepUnstable : Error {
  explicit StepUnstable(const std::string& what) : Error(what) {}
};

// Malformed or unparsable document (CLI input).
struct DocumentError : Error {
  explicit DocumentError(const std::string& what) : Error(what) {}
};

}  // namespace farfield

#endif
