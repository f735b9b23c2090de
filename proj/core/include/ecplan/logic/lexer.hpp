#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace ecplan::logic {

enum class TokenKind : std::uint8_t {
  Identifier,  // lowercase-initial name
  Variable,    // uppercase- or underscore-initial name
  Integer,
  Directive,   // #const, #pos, ...
  LParen, RParen, LBrace, RBrace, LBracket, RBracket,
  Comma, Semicolon, Dot, Colon, At,
  If,          // :-
  WeakIf,      // :~
  Plus, Minus, Star,
  Less, LessEqual, Greater, GreaterEqual, Equal, NotEqual,
  End,
};

struct Token {
  TokenKind kind = TokenKind::End;
  std::string text;
  std::int64_t number = 0;
  std::size_t line = 1;
  std::size_t column = 1;
};

/// Tokenizes rule text. `%` starts a comment running to end of line. The
/// Unicode comparison signs are accepted as aliases of <=, >=, !=.
std::vector<Token> tokenize(std::string_view text);

std::string describe(TokenKind kind);

}  // namespace ecplan::logic
