#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace rbg {

struct SourcePosition {
  int line = 1;
  int column = 1;

  bool operator==(const SourcePosition&) const = default;
};

std::string to_string(SourcePosition position);

enum class TokenKind { identifier, integer, symbol, section_keyword };

/// A lexical token of an `.rbg` source. Section keywords carry their leading
/// `#` (`#players`, `#anySquare`, ...).
struct Token {
  TokenKind kind = TokenKind::symbol;
  std::string text;
  SourcePosition position;
  std::size_t offset = 0;

  bool is_symbol(std::string_view s) const { return kind == TokenKind::symbol && text == s; }
  bool is_identifier() const { return kind == TokenKind::identifier; }
};

/// Splits `source` into tokens. `//` comments and whitespace are dropped.
/// Throws LexError on a character that starts no token.
std::vector<Token> tokenize(std::string_view source);

}  // namespace rbg
