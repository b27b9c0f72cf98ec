#pragma once

#include <stdexcept>
#include <string>

namespace fibra {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent user data (schema violations, bad descriptors, dimension mismatch).
class InputError : public Error {
 public:
  using Error::Error;
};

/// The data is well-formed but the requested computation is structurally impossible
/// (singular adjunction system, non-integral self-intersection).
class StructuralError : public Error {
 public:
  using Error::Error;
};

/// The input falls outside what the engine can decide (inequality hypotheses not met,
/// undetermined monodromy on positive-genus components).
class UnsupportedError : public Error {
 public:
  using Error::Error;
};

/// Two independent computations of the same quantity disagreed. Always a defect in the engine.
class EngineBugError : public Error {
 public:
  using Error::Error;
};

}  // namespace fibra
