#pragma once

#include <string_view>
#include <vector>

#include "ecplan/logic/lexer.hpp"
#include "ecplan/logic/program.hpp"

namespace ecplan::logic {

/// Parses rule text: normal rules, facts, integrity constraints, cardinality
/// choice rules, weak constraints and `#const` directives. The predicate
/// `cont` is read as `contd`. Every statement is safety-checked.
Program parse_program(std::string_view text);

Program load_program(const std::string& path);

/// Parses one ground atom such as `delta_x(2,-1)`.
GroundAtom parse_ground_atom(std::string_view text);

/// Parses atoms separated by whitespace, commas or periods.
AtomSet parse_ground_atoms(std::string_view text);

/// Throws SafetyError if a variable of a head, a negated literal, a
/// comparison or a weak-constraint tuple has no binding positive occurrence.
void check_safety(const Program& program);

/// Cursor over a token vector, shared with the example-file reader.
class TokenCursor {
 public:
  explicit TokenCursor(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

  [[nodiscard]] const Token& peek(std::size_t ahead = 0) const;
  const Token& next();
  [[nodiscard]] bool at(TokenKind kind) const { return peek().kind == kind; }
  bool accept(TokenKind kind);
  const Token& expect(TokenKind kind, std::string_view context);
  [[noreturn]] void fail(const std::string& message) const;

 private:
  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

Term parse_term(TokenCursor& cursor);
Atom parse_atom(TokenCursor& cursor);
Value to_value(const Term& term);
GroundAtom to_ground(const Atom& atom);

}  // namespace ecplan::logic
