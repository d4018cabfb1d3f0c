#pragma once

#include <stdexcept>
#include <string>

#include "rbg/lexer.hpp"

namespace rbg {

// Base class for every error raised while loading or running a game.
class RbgError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class LexError : public RbgError {
 public:
  LexError(SourcePosition position, const std::string& message)
      : RbgError(to_string(position) + ": " + message), position_(position) {}
  SourcePosition position() const { return position_; }

 private:
  SourcePosition position_;
};

class MacroError : public RbgError {
 public:
  enum class Kind { unknown_macro, arity_mismatch, recursion_limit, duplicate_definition, malformed };

  MacroError(Kind kind, SourcePosition position, const std::string& message)
      : RbgError(to_string(position) + ": " + message), kind_(kind), position_(position) {}
  Kind kind() const { return kind_; }
  SourcePosition position() const { return position_; }

 private:
  Kind kind_;
  SourcePosition position_;
};

class ParseError : public RbgError {
 public:
  ParseError(SourcePosition position, const std::string& expected, const std::string& found)
      : RbgError(to_string(position) + ": expected " + expected + ", found " + found),
        position_(position),
        expected_(expected) {}
  SourcePosition position() const { return position_; }
  const std::string& expected() const { return expected_; }

 private:
  SourcePosition position_;
  std::string expected_;
};

class ValidationError : public RbgError {
 public:
  ValidationError(SourcePosition position, const std::string& message)
      : RbgError(to_string(position) + ": " + message), position_(position) {}
  explicit ValidationError(const std::string& message) : RbgError(message) {}
  SourcePosition position() const { return position_; }

 private:
  SourcePosition position_;
};

class BoardError : public RbgError {
 public:
  enum class Kind { ragged_rows, unknown_piece, unknown_vertex, duplicate_vertex, empty_board };

  BoardError(Kind kind, const std::string& message) : RbgError(message), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

class NotStraight : public RbgError {
 public:
  using RbgError::RbgError;
};

// Runtime straightness guard: a single move grew beyond the modifier limit.
class MoveLimitExceeded : public RbgError {
 public:
  using RbgError::RbgError;
};

class IllegalMove : public RbgError {
 public:
  using RbgError::RbgError;
};

class LoadError : public RbgError {
 public:
  using RbgError::RbgError;
};

}  // namespace rbg
