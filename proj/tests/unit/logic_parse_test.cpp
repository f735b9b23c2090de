#include <gtest/gtest.h>

#include "ecplan/logic/errors.hpp"
#include "ecplan/logic/parser.hpp"

using namespace ecplan::logic;

namespace {

std::size_t count_kind(const std::vector<Literal>& body, std::size_t index) {
  std::size_t n = 0;
  for (const auto& l : body) n += l.index() == index ? 1 : 0;
  return n;
}

}  // namespace

TEST(Parse, InertiaRule) {
  const Program p = parse_program("holds(F,t) :- init(F,t).");
  ASSERT_EQ(p.rules.size(), 1U);
  EXPECT_EQ(p.rules[0].head.predicate, "holds");
  EXPECT_EQ(p.rules[0].head.args[1].kind, Term::Kind::Time);
}

TEST(Parse, ShippedEastRule) {
  const Program p = parse_program(
      "init(east,t) :- V>70, D1<1, D2>0, delta_y(R,D1), delta_x(R,D2), guess(R,V).");
  ASSERT_EQ(p.rules.size(), 1U);
  EXPECT_EQ(count_kind(p.rules[0].body, 2), 3U);
  EXPECT_EQ(count_kind(p.rules[0].body, 0), 3U);
}

TEST(Parse, UnsafeNegation) {
  try {
    parse_program("p(X) :- not q(X).");
    FAIL() << "expected SafetyError";
  } catch (const SafetyError& e) {
    EXPECT_EQ(e.statement(), 1U);
    EXPECT_EQ(e.variable(), "X");
  }
}

TEST(Parse, UnsafeStatementIndex) {
  try {
    parse_program("a. b :- a.\nc(Y) :- b, Y > 1.");
    FAIL() << "expected SafetyError";
  } catch (const SafetyError& e) {
    EXPECT_EQ(e.statement(), 3U);
    EXPECT_EQ(e.variable(), "Y");
  }
}

TEST(Parse, ParseErrorHasLocation) {
  try {
    parse_program("p(1).\nq(2) :- p(1)");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2U);
  }
}

TEST(Parse, ContSpellingCanonicalized) {
  const Program p = parse_program("cont(east,t) :- guess(R,V), V>70.");
  EXPECT_EQ(p.rules[0].head.predicate, "contd");
}

TEST(Parse, ChainedComparison) {
  const Program p = parse_program("ok(R) :- guess(R,V), 70 <= V <= 80.");
  EXPECT_EQ(count_kind(p.rules[0].body, 2), 2U);
}

TEST(Parse, ChoiceAndWeak) {
  const Program p = parse_program(
      "0{ target(R): dist(R,D), D<=1; target(R): guess(R,V), 70<=V<=80 }M.\n"
      ":~ target(R), dist(R,D). [D@1, R, D]\n"
      ":~ target(R), min_dist(R), guess(R,V). [-V@2, R, V]\n");
  ASSERT_EQ(p.choices.size(), 1U);
  EXPECT_EQ(p.choices[0].elements.size(), 2U);
  EXPECT_EQ(p.choices[0].lower, 0);
  ASSERT_TRUE(p.choices[0].upper.has_value());
  ASSERT_EQ(p.weak_constraints.size(), 2U);
  EXPECT_EQ(p.weak_constraints[1].weight.kind, Term::Kind::Negation);
  EXPECT_EQ(p.weak_constraints[1].terms.size(), 2U);
}

TEST(Parse, FunctionTerms) {
  const Program p = parse_program("init(move(C)) :- food(C,D,V), V>30, not wall(C).");
  EXPECT_EQ(p.rules[0].head.args[0].kind, Term::Kind::Function);
  const GroundAtom g = parse_ground_atom("init(move(north))");
  EXPECT_EQ(g.str(), "init(move(north))");
}

TEST(Parse, GroundFactsAndConstants) {
  const Program p = parse_program("#const n=3. a(1). b(-2). % comment\nc(X) :- a(X).");
  EXPECT_EQ(p.facts.size(), 2U);
  EXPECT_EQ(p.constants.at("n").number(), 3);
  EXPECT_TRUE(p.facts.contains(parse_ground_atom("b(-2)")));
}

TEST(Parse, GroundAtomList) {
  const AtomSet s = parse_ground_atoms("dist(2,2). delta_x(2,2), delta_y(2,0) guess(2,80)");
  EXPECT_EQ(s.size(), 4U);
}

TEST(Parse, PrintRoundTrip) {
  const std::string text = "holds(F,t) :- holds(F,t-1), contd(F,t).\nq(X) :- p(X), not r(X), X != 2.\n";
  const Program a = parse_program(text);
  const Program b = parse_program(a.str());
  EXPECT_EQ(a.str(), b.str());
}
