// Copyright 2026 The fockpart Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace fockpart {

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

class InvalidDimension : public Error {
 public:
  explicit InvalidDimension(const std::string& msg) : Error(msg) {}
};

class PauliViolation : public Error {
 public:
  explicit PauliViolation(const std::string& msg) : Error(msg) {}
};

class IncompatibleStates : public Error {
 public:
  explicit IncompatibleStates(const std::string& msg) : Error(msg) {}
};

class ZeroState : public Error {
 public:
  explicit ZeroState(const std::string& msg) : Error(msg) {}
};

class TruncationExceeded : public Error {
 public:
  explicit TruncationExceeded(const std::string& msg) : Error(msg) {}
};

/// A distinguishable-statistics tensor lies outside the canonically ordered
/// monomial subspace, so it has no occupation-number reading.
class NotModeOrdered : public Error {
 public:
  explicit NotModeOrdered(const std::string& msg) : Error(msg) {}
};

class SymmetryViolation : public Error {
 public:
  explicit SymmetryViolation(const std::string& msg) : Error(msg) {}
};

class InvalidCut : public Error {
 public:
  explicit InvalidCut(const std::string& msg) : Error(msg) {}
};

class UnknownGalleryState : public Error {
 public:
  explicit UnknownGalleryState(const std::string& msg) : Error(msg) {}
};

class InvalidParameter : public Error {
 public:
  explicit InvalidParameter(const std::string& msg) : Error(msg) {}
};

class UnboundName : public Error {
 public:
  explicit UnboundName(const std::string& msg) : Error(msg) {}
};

class TypeMismatch : public Error {
 public:
  explicit TypeMismatch(const std::string& msg) : Error(msg) {}
};

/// Parse error with source position and the token set that was expected.
class SyntaxError : public Error {
 public:
  SyntaxError(int line, int col, const std::string& expected, const std::string& got)
      : Error("syntax error at " + std::to_string(line) + ":" + std::to_string(col) +
              ": expected " + expected + ", got " + got),
        line_(line),
        col_(col),
        expected_(expected) {}

  int line() const { return line_; }
  int col() const { return col_; }
  const std::string& expected() const { return expected_; }

 private:
  int line_;
  int col_;
  std::string expected_;
};

/// Evaluation failure annotated with the statement it originated from.
class EvalError : public Error {
 public:
  EvalError(int statement_index, int line, const std::string& msg)
      : Error("statement " + std::to_string(statement_index) + " (line " +
              std::to_string(line) + "): " + msg),
        statement_index_(statement_index),
        line_(line) {}

  int statement_index() const { return statement_index_; }
  int line() const { return line_; }

 private:
  int statement_index_;
  int line_;
};

}  // namespace fockpart
