// Copyright 2026 the rmsa authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace rmsa {

/// Base class for everything thrown by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input text: broken JSON, a CSV row that does not scan, an
/// unparseable number. Maps to exit code 2 in the CLI.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// Well-formed input that violates a domain contract (weights that do not
/// sum to one, an out-of-range parameter, a partition that misses a point).
/// Maps to exit code 3 in the CLI.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// A quantity that is undefined for the given input, e.g. normalizing by a
/// zero variance or a function that vanishes almost everywhere.
class DegenerateError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

}  // namespace rmsa
