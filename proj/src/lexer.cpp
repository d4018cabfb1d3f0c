#include "rbg/lexer.hpp"

#include <array>
#include <cctype>

#include "rbg/errors.hpp"

namespace rbg {

std::string to_string(SourcePosition position) {
  return std::to_string(position.line) + ":" + std::to_string(position.column);
}

namespace {

// Longest symbols first so that maximal munch is a linear scan.
constexpr std::array<std::string_view, 25> kSymbols = {
    "->>", "->", "{?", "{!", "{$", "[$", "==", "!=", "<=", ">=", "{", "}", "[",
    "]",   "(",  ")",  "*",  "+",  "-",  ";",  ",",  "=",  "<",  ">",  ":",
};

bool is_identifier_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool is_identifier_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

class Lexer {
 public:
  explicit Lexer(std::string_view source) : source_(source) {}

  std::vector<Token> run() {
    std::vector<Token> tokens;
    while (skip_blank_and_comments()) {
      const std::size_t start = pos_;
      const SourcePosition where = position_;
      const char c = source_[pos_];
      Token token;
      token.position = where;
      token.offset = start;
      if (is_identifier_start(c)) {
        token.kind = TokenKind::identifier;
        advance_while(is_identifier_char);
      } else if (std::isdigit(static_cast<unsigned char>(c))) {
        token.kind = TokenKind::integer;
        advance_while([](char ch) { return std::isdigit(static_cast<unsigned char>(ch)) != 0; });
      } else if (c == '#') {
        advance(1);
        if (pos_ >= source_.size() || !is_identifier_start(source_[pos_])) {
          throw LexError(where, "'#' must be followed by a section or macro name");
        }
        token.kind = TokenKind::section_keyword;
        advance_while(is_identifier_char);
      } else {
        token.kind = TokenKind::symbol;
        const std::string_view rest = source_.substr(pos_);
        std::size_t length = 0;
        for (std::string_view symbol : kSymbols) {
          if (rest.starts_with(symbol)) {
            length = symbol.size();
            break;
          }
        }
        if (length == 0) {
          throw LexError(where, std::string("unexpected character '") + c + "'");
        }
        advance(length);
      }
      token.text = std::string(source_.substr(start, pos_ - start));
      tokens.push_back(std::move(token));
    }
    return tokens;
  }

 private:
  // Returns false at end of input.
  bool skip_blank_and_comments() {
    while (pos_ < source_.size()) {
      const char c = source_[pos_];
      if (std::isspace(static_cast<unsigned char>(c))) {
        advance(1);
      } else if (c == '/' && pos_ + 1 < source_.size() && source_[pos_ + 1] == '/') {
        while (pos_ < source_.size() && source_[pos_] != '\n') advance(1);
      } else {
        return true;
      }
    }
    return false;
  }

  template <typename Pred>
  void advance_while(Pred pred) {
    while (pos_ < source_.size() && pred(source_[pos_])) advance(1);
  }

  void advance(std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
      if (source_[pos_] == '\n') {
        ++position_.line;
        position_.column = 1;
      } else {
        ++position_.column;
      }
      ++pos_;
    }
  }

  std::string_view source_;
  std::size_t pos_ = 0;
  SourcePosition position_;
};

}  // namespace

std::vector<Token> tokenize(std::string_view source) { return Lexer(source).run(); }

}  // namespace rbg
