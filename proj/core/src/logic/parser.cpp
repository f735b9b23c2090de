#include "ecplan/logic/parser.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "analysis.hpp"
#include "ecplan/logic/errors.hpp"

namespace ecplan::logic {

const Token& TokenCursor::peek(std::size_t ahead) const {
  const std::size_t i = std::min(pos_ + ahead, tokens_.size() - 1);
  return tokens_[i];
}

const Token& TokenCursor::next() {
  const Token& token = tokens_[pos_];
  if (pos_ + 1 < tokens_.size()) ++pos_;
  return token;
}

bool TokenCursor::accept(TokenKind kind) {
  if (!at(kind)) return false;
  next();
  return true;
}

const Token& TokenCursor::expect(TokenKind kind, std::string_view context) {
  if (!at(kind)) {
    fail("expected " + describe(kind) + " " + std::string(context) + ", found " +
         (peek().text.empty() ? describe(peek().kind) : "'" + peek().text + "'"));
  }
  return next();
}

void TokenCursor::fail(const std::string& message) const {
  throw ParseError(peek().line, peek().column, message);
}

namespace {

std::string canonical_predicate(std::string name) {
  if (name == "cont") return "contd";
  return name;
}

Term parse_additive(TokenCursor& cursor);

Term parse_primary(TokenCursor& cursor) {
  const Token& token = cursor.peek();
  switch (token.kind) {
    case TokenKind::Integer:
      return Term::integer(cursor.next().number);
    case TokenKind::Variable:
      return Term::variable(cursor.next().text);
    case TokenKind::Identifier: {
      std::string name = cursor.next().text;
      if (!cursor.at(TokenKind::LParen)) {
        if (name == "t") return Term::time();
        return Term::symbol(std::move(name));
      }
      cursor.next();
      std::vector<Term> args;
      args.push_back(parse_additive(cursor));
      while (cursor.accept(TokenKind::Comma)) args.push_back(parse_additive(cursor));
      cursor.expect(TokenKind::RParen, "closing argument list");
      return Term::function(std::move(name), std::move(args));
    }
    case TokenKind::LParen: {
      cursor.next();
      Term inner = parse_additive(cursor);
      cursor.expect(TokenKind::RParen, "closing parenthesis");
      return inner;
    }
    default:
      cursor.fail("expected a term, found " +
                  (token.text.empty() ? describe(token.kind) : "'" + token.text + "'"));
  }
}

Term parse_unary(TokenCursor& cursor) {
  if (cursor.accept(TokenKind::Minus)) {
    Term operand = parse_unary(cursor);
    if (operand.kind == Term::Kind::Constant && operand.value.is_integer())
      return Term::integer(-operand.value.number());
    return Term::negation(std::move(operand));
  }
  return parse_primary(cursor);
}

Term parse_multiplicative(TokenCursor& cursor) {
  Term lhs = parse_unary(cursor);
  while (cursor.accept(TokenKind::Star)) lhs = Term::binary('*', std::move(lhs), parse_unary(cursor));
  return lhs;
}

Term parse_additive(TokenCursor& cursor) {
  Term lhs = parse_multiplicative(cursor);
  while (cursor.at(TokenKind::Plus) || cursor.at(TokenKind::Minus)) {
    const char op = cursor.next().kind == TokenKind::Plus ? '+' : '-';
    lhs = Term::binary(op, std::move(lhs), parse_multiplicative(cursor));
  }
  return lhs;
}

std::optional<CompareOp> comparison_at(const TokenCursor& cursor) {
  switch (cursor.peek().kind) {
    case TokenKind::Less: return CompareOp::Less;
    case TokenKind::LessEqual: return CompareOp::LessEqual;
    case TokenKind::Greater: return CompareOp::Greater;
    case TokenKind::GreaterEqual: return CompareOp::GreaterEqual;
    case TokenKind::Equal: return CompareOp::Equal;
    case TokenKind::NotEqual: return CompareOp::NotEqual;
    default: return std::nullopt;
  }
}

Atom term_to_atom(Term term, const Token& where) {
  if (term.kind == Term::Kind::Constant && term.value.kind() == Value::Kind::Symbol)
    return Atom{canonical_predicate(term.value.name()), {}};
  if (term.kind == Term::Kind::Function)
    return Atom{canonical_predicate(std::move(term.name)), std::move(term.args)};
  throw ParseError(where.line, where.column, "expected an atom, found term " + term.str());
}

/// Appends one body literal; a chained comparison `a <= X <= b` appends two.
void parse_literal(TokenCursor& cursor, std::vector<Literal>& out) {
  const Token start = cursor.peek();
  if (start.kind == TokenKind::Identifier && start.text == "not") {
    cursor.next();
    out.emplace_back(Negated{parse_atom(cursor)});
    return;
  }
  Term first = parse_additive(cursor);
  auto op = comparison_at(cursor);
  if (!op) {
    out.emplace_back(term_to_atom(std::move(first), start));
    return;
  }
  cursor.next();
  Term second = parse_additive(cursor);
  if (auto op2 = comparison_at(cursor)) {
    cursor.next();
    Term third = parse_additive(cursor);
    out.emplace_back(Comparison{std::move(first), *op, second});
    out.emplace_back(Comparison{std::move(second), *op2, std::move(third)});
    return;
  }
  out.emplace_back(Comparison{std::move(first), *op, std::move(second)});
}

std::vector<Literal> parse_body(TokenCursor& cursor) {
  std::vector<Literal> body;
  parse_literal(cursor, body);
  while (cursor.accept(TokenKind::Comma)) parse_literal(cursor, body);
  return body;
}

struct StatementInfo {
  std::size_t index;
  std::size_t line;
};

void require_bound(const std::vector<std::string>& vars, const std::set<std::string>& bound,
                   const StatementInfo& info) {
  for (const auto& v : vars) {
    if (!bound.contains(v)) throw SafetyError(info.index, v, info.line);
  }
}

void check_body(const std::vector<Literal>& body, const std::set<std::string>& bound,
                const StatementInfo& info) {
  for (const auto& literal : body) require_bound(detail::variables_of(literal), bound, info);
}

void check_rule(const NormalRule& rule, const StatementInfo& info) {
  const auto bound = detail::positively_bound(rule.body);
  check_body(rule.body, bound, info);
  std::vector<std::string> head_vars;
  for (const auto& a : rule.head.args) a.collect_variables(head_vars);
  require_bound(head_vars, bound, info);
}

void check_constraint(const Constraint& c, const StatementInfo& info) {
  check_body(c.body, detail::positively_bound(c.body), info);
}

void check_choice(const ChoiceRule& choice, const StatementInfo& info) {
  const auto global = detail::positively_bound(choice.body);
  check_body(choice.body, global, info);
  for (const auto& element : choice.elements) {
    const auto local = detail::positively_bound(element.condition, global);
    check_body(element.condition, local, info);
    std::vector<std::string> vars;
    for (const auto& a : element.atom.args) a.collect_variables(vars);
    require_bound(vars, local, info);
  }
}

void check_weak(const WeakConstraint& w, const StatementInfo& info) {
  const auto bound = detail::positively_bound(w.body);
  check_body(w.body, bound, info);
  std::vector<std::string> vars;
  w.weight.collect_variables(vars);
  w.priority.collect_variables(vars);
  for (const auto& term : w.terms) term.collect_variables(vars);
  require_bound(vars, bound, info);
}

class ProgramParser {
 public:
  explicit ProgramParser(std::string_view text) : cursor_(tokenize(text)) {}

  Program run() {
    while (!cursor_.at(TokenKind::End)) statement();
    return std::move(program_);
  }

 private:
  void statement() {
    const StatementInfo info{++statements_, cursor_.peek().line};
    const Token& token = cursor_.peek();
    if (token.kind == TokenKind::Directive) {
      directive();
    } else if (token.kind == TokenKind::If) {
      cursor_.next();
      Constraint c{parse_body(cursor_)};
      cursor_.expect(TokenKind::Dot, "ending constraint");
      check_constraint(c, info);
      program_.constraints.push_back(std::move(c));
    } else if (token.kind == TokenKind::WeakIf) {
      weak(info);
    } else if (token.kind == TokenKind::LBrace ||
               (token.kind == TokenKind::Integer && cursor_.peek(1).kind == TokenKind::LBrace)) {
      choice(info);
    } else {
      rule(info);
    }
  }

  void directive() {
    const Token& token = cursor_.next();
    if (token.text != "#const")
      throw ParseError(token.line, token.column, "unsupported directive " + token.text);
    const Token& name = cursor_.peek();
    if (name.kind != TokenKind::Identifier && name.kind != TokenKind::Variable)
      cursor_.fail("expected constant name after #const");
    std::string key = cursor_.next().text;
    cursor_.expect(TokenKind::Equal, "in #const");
    Term value = parse_additive(cursor_);
    cursor_.expect(TokenKind::Dot, "ending #const");
    program_.constants.insert_or_assign(key, to_value(value));
  }

  void rule(const StatementInfo& info) {
    const Token start = cursor_.peek();
    Atom head = term_to_atom(parse_additive(cursor_), start);
    std::vector<Literal> body;
    if (cursor_.accept(TokenKind::If)) body = parse_body(cursor_);
    cursor_.expect(TokenKind::Dot, "ending rule");
    NormalRule r{std::move(head), std::move(body)};
    check_rule(r, info);
    const bool ground_fact = r.body.empty() &&
                             std::all_of(r.head.args.begin(), r.head.args.end(), [](const Term& a) {
                               return a.is_ground() && !a.mentions_time();
                             });
    if (ground_fact) {
      program_.facts.insert(to_ground(r.head));
    } else {
      program_.rules.push_back(std::move(r));
    }
  }

  void choice(const StatementInfo& info) {
    ChoiceRule c;
    if (cursor_.at(TokenKind::Integer)) c.lower = cursor_.next().number;
    if (c.lower < 0) cursor_.fail("choice lower bound must be non-negative");
    cursor_.expect(TokenKind::LBrace, "opening choice");
    if (!cursor_.at(TokenKind::RBrace)) {
      do {
        ChoiceElement element;
        element.atom = parse_atom(cursor_);
        if (cursor_.accept(TokenKind::Colon)) element.condition = parse_body(cursor_);
        c.elements.push_back(std::move(element));
      } while (cursor_.accept(TokenKind::Semicolon));
    }
    cursor_.expect(TokenKind::RBrace, "closing choice");
    if (!cursor_.at(TokenKind::Dot) && !cursor_.at(TokenKind::If)) c.upper = parse_additive(cursor_);
    if (cursor_.accept(TokenKind::If)) c.body = parse_body(cursor_);
    cursor_.expect(TokenKind::Dot, "ending choice rule");
    check_choice(c, info);
    program_.choices.push_back(std::move(c));
  }

  void weak(const StatementInfo& info) {
    cursor_.expect(TokenKind::WeakIf, "opening weak constraint");
    WeakConstraint w;
    w.body = parse_body(cursor_);
    cursor_.expect(TokenKind::Dot, "ending weak constraint body");
    cursor_.expect(TokenKind::LBracket, "opening weak constraint weight");
    w.weight = parse_additive(cursor_);
    w.priority = Term::integer(0);
    if (cursor_.accept(TokenKind::At)) w.priority = parse_additive(cursor_);
    while (cursor_.accept(TokenKind::Comma)) w.terms.push_back(parse_additive(cursor_));
    cursor_.expect(TokenKind::RBracket, "closing weak constraint weight");
    check_weak(w, info);
    program_.weak_constraints.push_back(std::move(w));
  }

  TokenCursor cursor_;
  Program program_;
  std::size_t statements_ = 0;
};

}  // namespace

Term parse_term(TokenCursor& cursor) { return parse_additive(cursor); }

Atom parse_atom(TokenCursor& cursor) {
  const Token start = cursor.peek();
  return term_to_atom(parse_primary(cursor), start);
}

Value to_value(const Term& term) {
  switch (term.kind) {
    case Term::Kind::Constant:
      return term.value;
    case Term::Kind::Function: {
      std::vector<Value> args;
      args.reserve(term.args.size());
      for (const auto& a : term.args) args.push_back(to_value(a));
      return Value::function(term.name, std::move(args));
    }
    case Term::Kind::Binary: {
      const Value l = to_value(term.args[0]);
      const Value r = to_value(term.args[1]);
      if (!l.is_integer() || !r.is_integer())
        throw EvaluationError("arithmetic on non-integer term " + term.str());
      switch (term.op) {
        case '+': return Value::integer(l.number() + r.number());
        case '-': return Value::integer(l.number() - r.number());
        default: return Value::integer(l.number() * r.number());
      }
    }
    case Term::Kind::Negation: {
      const Value v = to_value(term.args[0]);
      if (!v.is_integer()) throw EvaluationError("negation of non-integer term " + term.str());
      return Value::integer(-v.number());
    }
    case Term::Kind::Variable:
    case Term::Kind::Time:
      break;
  }
  throw EvaluationError("term is not ground: " + term.str());
}

GroundAtom to_ground(const Atom& atom) {
  GroundAtom g{atom.predicate, {}};
  g.args.reserve(atom.args.size());
  for (const auto& a : atom.args) g.args.push_back(to_value(a));
  return g;
}

Program parse_program(std::string_view text) { return ProgramParser(text).run(); }

Program load_program(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open rule file " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_program(buffer.str());
}

GroundAtom parse_ground_atom(std::string_view text) {
  TokenCursor cursor(tokenize(text));
  Atom atom = parse_atom(cursor);
  if (!cursor.at(TokenKind::End)) cursor.fail("trailing input after atom");
  return to_ground(atom);
}

AtomSet parse_ground_atoms(std::string_view text) {
  TokenCursor cursor(tokenize(text));
  AtomSet atoms;
  while (!cursor.at(TokenKind::End)) {
    if (cursor.accept(TokenKind::Comma) || cursor.accept(TokenKind::Dot)) continue;
    atoms.insert(to_ground(parse_atom(cursor)));
  }
  return atoms;
}

void check_safety(const Program& program) {
  std::size_t index = 0;
  for (const auto& r : program.rules) check_rule(r, {++index, 0});
  for (const auto& c : program.constraints) check_constraint(c, {++index, 0});
  for (const auto& c : program.choices) check_choice(c, {++index, 0});
  for (const auto& w : program.weak_constraints) check_weak(w, {++index, 0});
}

}  // namespace ecplan::logic
