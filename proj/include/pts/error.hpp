/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The pts authors
 */

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pts {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class SyntaxError : public Error {
public:
  SyntaxError(const std::string &msg, std::size_t pos)
      : Error("syntax error at offset " + std::to_string(pos) + ": " + msg),
        pos_(pos) {}

  std::size_t position() const noexcept { return pos_; }

private:
  std::size_t pos_;
};

/// A construct is not legal in the requested logic / fragment.
class DialectError : public Error {
public:
  using Error::Error;
};

/// Free variables of a formula are not covered by the team or assignment.
class VarsNotInDomain : public Error {
public:
  using Error::Error;
};

class NonemptyRequired : public Error {
public:
  using Error::Error;
};

class ArityMismatch : public Error {
public:
  using Error::Error;
};

/// A real-arithmetic formula does not have the shape produced by fopt_to_real.
class ShapeError : public Error {
public:
  using Error::Error;
};

class EvalError : public Error {
public:
  using Error::Error;
};

class DivisionByZero : public EvalError {
public:
  using EvalError::EvalError;
};

} // namespace pts
