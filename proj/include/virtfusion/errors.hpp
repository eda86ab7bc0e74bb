// SPDX-License-Identifier: Apache-2.0
//
// Exception hierarchy shared by all virtfusion modules.

#pragma once

#include <stdexcept>
#include <string>

namespace virtfusion {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Bad value, shape mismatch, empty input, degenerate geometry.
class InvalidArgumentError : public Error {
public:
  using Error::Error;
};

/// Malformed bytes: OBJ/PLY/JSON parse failures. Carries context in the message.
class ParseError : public Error {
public:
  using Error::Error;
};

/// Structurally well-formed data that violates a documented invariant
/// (duplicate asset id, sem/instance mismatch, ...).
class ValidationError : public Error {
public:
  using Error::Error;
};

/// Missing or inconsistent configuration (unknown class id, k/template mismatch).
class ConfigError : public Error {
public:
  using Error::Error;
};

/// Index or value outside its documented range (timestep, label > 65535).
class RangeError : public Error {
public:
  using Error::Error;
};

/// Arithmetic result not representable.
class OverflowError : public Error {
public:
  using Error::Error;
};

/// External service failed after all retries; message carries the transport cause.
class UpstreamError : public Error {
public:
  using Error::Error;
};

/// A pipeline stage failed; message names the stage and artifact.
class StageError : public Error {
public:
  using Error::Error;
};

}  // namespace virtfusion
