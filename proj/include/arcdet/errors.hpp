#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace arcdet {

/// Error categories surfaced through the C API as status codes.
enum class ErrorCode {
  Parse = 1,
  InvalidArgument = 2,
  FieldMismatch = 3,
  DivisionByZero = 4,
  TruncationInsufficient = 5,
  BudgetExceeded = 6,
  Validation = 7,
  Io = 8,
  InternalInvariant = 9,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t position, const std::string& message)
      : Error(ErrorCode::Parse,
              "parse error at position " + std::to_string(position) + ": " + message),
        position_(position) {}
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

class InvalidArgument : public Error {
 public:
  explicit InvalidArgument(const std::string& what)
      : Error(ErrorCode::InvalidArgument, what) {}
};

class FieldMismatch : public Error {
 public:
  explicit FieldMismatch(const std::string& what) : Error(ErrorCode::FieldMismatch, what) {}
};

class DivisionByZero : public Error {
 public:
  DivisionByZero() : Error(ErrorCode::DivisionByZero, "division by zero") {}
};

/// Raised whenever a finite t-order is needed but every stored coefficient vanished.
class TruncationInsufficient : public Error {
 public:
  explicit TruncationInsufficient(const std::string& what)
      : Error(ErrorCode::TruncationInsufficient, what) {}
};

class BudgetExceeded : public Error {
 public:
  explicit BudgetExceeded(const std::string& what) : Error(ErrorCode::BudgetExceeded, what) {}
};

class ValidationError : public Error {
 public:
  explicit ValidationError(const std::string& what) : Error(ErrorCode::Validation, what) {}
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& what) : Error(ErrorCode::Io, what) {}
};

class InternalInvariant : public Error {
 public:
  explicit InternalInvariant(const std::string& what)
      : Error(ErrorCode::InternalInvariant, what) {}
};

}  // namespace arcdet
