#pragma once

#include <stdexcept>
#include <string>

namespace passim {

// Base class for all library errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Invalid user/configuration input (bad config values, unresolvable paths).
struct ConfigError : Error {
  using Error::Error;
};

// Invalid arguments to a library operation (negative gaps, empty series, ...).
struct InputError : Error {
  using Error::Error;
};

// A point lies farther from the route polyline than the lateral tolerance.
struct OffRouteError : Error {
  using Error::Error;
};

// Tracks do not share a sampling grid and cannot be combined directly.
struct ResampleError : Error {
  using Error::Error;
};

// A track never reaches the end of its event window.
struct IncompleteTravelError : Error {
  using Error::Error;
};

// Two vehicles occupied overlapping space during a simulation run.
struct CollisionError : Error {
  using Error::Error;
};

// Rank correlation is undefined (a ranked vector is constant).
struct CorrelationUndefinedError : Error {
  using Error::Error;
};

// Malformed input file; message carries the file name and row number.
struct SchemaError : Error {
  using Error::Error;
};

}  // namespace passim
