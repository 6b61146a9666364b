// Copyright 2026 The aware-opt Authors
//
// Licensed under the Apache License, Version 2.0.
// See LICENSE for license information.
// SPDX-License-Identifier: Apache-2.0

#ifndef AWAREOPT_ERRORS_HPP
#define AWAREOPT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace aware {

// Base class for all errors raised by this library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Structurally invalid textual IR. Carries a 1-based source location.
class ParseError : public Error {
 public:
  ParseError(std::string message, int line, int column)
      : Error(message + " (line " + std::to_string(line) + ", column " +
              std::to_string(column) + ")"),
        line_(line),
        column_(column) {}

  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

// Bad pass catalog data: missing flags, duplicate indices, cyclic deps,
// asymmetric conflicts.
class CatalogError : public Error {
 public:
  using Error::Error;
};

// A flag or pass index that is not in the catalog.
class UnknownPassError : public Error {
 public:
  using Error::Error;
};

// repair_sequence cannot produce a valid sequence (conflicting required
// dependencies).
class RepairImpossibleError : public Error {
 public:
  using Error::Error;
};

// Knowledge-base mutations that violate store invariants.
class InvalidSequenceError : public Error {
 public:
  using Error::Error;
};

class NegativeCollisionError : public Error {
 public:
  using Error::Error;
};

class EmptyStoreError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

class SchemaVersionMismatchError : public Error {
 public:
  using Error::Error;
};

// Program id not present in the workspace registry.
class UnknownProgramError : public Error {
 public:
  using Error::Error;
};

// Prompt template problems (missing/unknown placeholder).
class TemplateError : public Error {
 public:
  using Error::Error;
};

// Remote policy endpoint unreachable after retries.
class PolicyUnreachableError : public Error {
 public:
  using Error::Error;
};

// Remote policy replied with a body we cannot interpret.
class MalformedResponseError : public Error {
 public:
  using Error::Error;
};

// Dataset construction preconditions.
class IncompleteTrajectoryError : public Error {
 public:
  using Error::Error;
};

class RejectedSampleError : public Error {
 public:
  using Error::Error;
};

// Report comparison over different program sets.
class MismatchedProgramsError : public Error {
 public:
  using Error::Error;
};

}  // namespace aware

#endif  // AWAREOPT_ERRORS_HPP
