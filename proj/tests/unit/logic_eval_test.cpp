#include <gtest/gtest.h>

#include <random>

#include "ecplan/logic/errors.hpp"
#include "ecplan/logic/evaluator.hpp"
#include "ecplan/logic/grounder.hpp"
#include "ecplan/logic/parser.hpp"
#include "support/asp_oracle.hpp"

using namespace ecplan::logic;

namespace {

const char* kInertia =
    "holds(F,t) :- init(F,t).\n"
    "holds(F,t) :- holds(F,t-1), contd(F,t).\n";

}  // namespace

TEST(Evaluate, InitStartsHolding) {
  const auto out = evaluate_stratified(parse_program(kInertia), parse_ground_atoms("init(east,1)"), 1);
  EXPECT_TRUE(out.contains(parse_ground_atom("holds(east,1)")));
}

TEST(Evaluate, EmptyProgramIsIdentity) {
  const AtomSet facts = parse_ground_atoms("a(1) b(x) c");
  EXPECT_EQ(evaluate_stratified(Program{}, facts), facts);
}

TEST(Evaluate, NoContdNoPersistence) {
  const auto out = evaluate_stratified(parse_program(kInertia), parse_ground_atoms("holds(a,1)"), 2);
  EXPECT_FALSE(out.contains(parse_ground_atom("holds(a,2)")));
  const auto with = evaluate_stratified(parse_program(kInertia), parse_ground_atoms("holds(a,1) contd(a,2)"), 2);
  EXPECT_TRUE(with.contains(parse_ground_atom("holds(a,2)")));
}

TEST(Evaluate, TimeRequired) {
  EXPECT_THROW(evaluate_stratified(parse_program(kInertia), parse_ground_atoms("init(a,1)")), EvaluationError);
}

TEST(Evaluate, ArithmeticMatching) {
  const Program p = parse_program("next(D) :- d(D+1). prev(E) :- d(E-1). neg(-X) :- d(X).");
  const auto out = evaluate_stratified(p, parse_ground_atoms("d(3)"));
  EXPECT_TRUE(out.contains(parse_ground_atom("next(2)")));
  EXPECT_TRUE(out.contains(parse_ground_atom("prev(4)")));
  EXPECT_TRUE(out.contains(parse_ground_atom("neg(-3)")));
}

TEST(Evaluate, RecursionAndNegation) {
  const Program p = parse_program(
      "reach(X) :- start(X).\n"
      "reach(Y) :- reach(X), edge(X,Y).\n"
      "unreached(X) :- node(X), not reach(X).\n");
  const auto out = evaluate_stratified(
      p, parse_ground_atoms("start(1) edge(1,2) edge(2,3) node(1) node(2) node(3) node(4)"));
  EXPECT_TRUE(out.contains(parse_ground_atom("reach(3)")));
  EXPECT_TRUE(out.contains(parse_ground_atom("unreached(4)")));
  EXPECT_FALSE(out.contains(parse_ground_atom("unreached(3)")));
}

TEST(Evaluate, NegativeCycleRejected) {
  EXPECT_THROW(evaluate_stratified(parse_program("p :- q, not r. r :- p."), {}), StratificationError);
  EXPECT_THROW(Evaluator(parse_program("p :- not p.")), StratificationError);
}

TEST(Evaluate, IntegrityConstraint) {
  const Program p = parse_program("b :- a. :- b.");
  EXPECT_THROW(evaluate_stratified(p, parse_ground_atoms("a")), Unsatisfiable);
  EXPECT_NO_THROW(evaluate_stratified(p, {}));
}

TEST(Evaluate, ConstantsSubstituted) {
  const Program p = parse_program("#const lim=2. small(X) :- n(X), X < lim.");
  const auto out = evaluate_stratified(p, parse_ground_atoms("n(1) n(2)"));
  EXPECT_TRUE(out.contains(parse_ground_atom("small(1)")));
  EXPECT_FALSE(out.contains(parse_ground_atom("small(2)")));
}

TEST(Evaluate, FunctionSymbolsMatch) {
  const Program p = parse_program(
      "init(move(C)) :- food(C,D1,V1), V1>30, D1<4, ghost(C,D2,V2), V2<80, D2<6, not wall(C).");
  const auto out = evaluate_stratified(p, parse_ground_atoms("food(north,3,40) ghost(north,5,70)"));
  EXPECT_TRUE(out.contains(parse_ground_atom("init(move(north))")));
  const auto blocked = evaluate_stratified(p, parse_ground_atoms("food(north,3,40) ghost(north,5,70) wall(north)"));
  EXPECT_FALSE(blocked.contains(parse_ground_atom("init(move(north))")));
}

TEST(Evaluate, StrataOrdered) {
  const auto strata = stratify(parse_program("b(X) :- a(X). c(X) :- a(X), not b(X)."));
  std::size_t pos_b = 0, pos_c = 0;
  for (std::size_t i = 0; i < strata.size(); ++i) {
    for (const auto& s : strata[i]) {
      if (s.name == "b") pos_b = i;
      if (s.name == "c") pos_c = i;
    }
  }
  EXPECT_LT(pos_b, pos_c);
}

TEST(Ground, ProductOfDomains) {
  const Program p = parse_program("q(R) :- p(R).");
  const Program g = ground(p, {{"R", {Value::integer(1), Value::integer(2)}}});
  EXPECT_EQ(g.rules.size(), 2U);
}

TEST(Ground, ComparisonFolding) {
  const Program p = parse_program("ok(R) :- guess(R,V), V > 70.");
  const Program g = ground(p, {{"R", {Value::integer(1)}}, {"V", {Value::integer(80), Value::integer(60)}}});
  ASSERT_EQ(g.rules.size(), 1U);
  EXPECT_EQ(g.rules[0].body.size(), 1U);
  EXPECT_EQ(to_string(g.rules[0].body[0]), "guess(1,80)");
}

TEST(Ground, MissingSort) {
  EXPECT_THROW(ground(parse_program("q(R) :- p(R)."), {}), UniverseError);
  EXPECT_THROW(ground(parse_program("q(R) :- p(R)."), {{"R", {}}}), UniverseError);
}

TEST(Ground, IllTypedInstancesDropped) {
  const Program p = parse_program("q(X) :- p(X+1).");
  const Program g = ground(p, {{"X", {Value::integer(1), Value::symbol("a")}}});
  ASSERT_EQ(g.rules.size(), 1U);
  EXPECT_EQ(to_string(g.rules[0]), "q(1) :- p(2).");
}

TEST(Ground, TimeEnumerated) {
  const Program g = ground(parse_program(kInertia),
                           {{"F", {Value::symbol("a")}}, {"t", {Value::integer(1), Value::integer(2)}}});
  EXPECT_EQ(g.rules.size(), 4U);
  const auto out = evaluate_stratified(g, parse_ground_atoms("init(a,1) contd(a,2)"));
  EXPECT_TRUE(out.contains(parse_ground_atom("holds(a,2)")));
}

TEST(Ground, GroundEvaluationAgrees) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 50; ++i) {
    const auto prog = ecplan::testing::random_program(rng);
    const Program p = parse_program(prog.text());
    std::vector<Value> dom;
    for (int c = 1; c <= prog.domain; ++c) dom.push_back(Value::integer(c));
    EXPECT_EQ(evaluate_stratified(p, {}), evaluate_stratified(ground(p, {{"X", dom}}), {})) << prog.text();
  }
}

// Independent oracle: reduct-minimality over every interpretation.
TEST(Oracle, MatchesBruteForceAnswerSets) {
  std::mt19937_64 rng(2024);
  for (int i = 0; i < 300; ++i) {
    const auto prog = ecplan::testing::random_program(rng);
    ASSERT_LE(prog.atom_count(), 12);
    const auto expected = ecplan::testing::brute_force_answer_sets(prog);
    ASSERT_EQ(expected.size(), 1U) << prog.text();
    AtomSet want;
    for (const auto& [p, c] : expected[0]) want.insert(GroundAtom("p" + std::to_string(p), {Value::integer(c)}));
    EXPECT_EQ(evaluate_stratified(parse_program(prog.text()), {}), want) << prog.text();
  }
}

TEST(Properties, ModelAndSupported) {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 100; ++i) {
    const auto prog = ecplan::testing::random_program(rng);
    const Program p = parse_program(prog.text());
    std::vector<Value> dom;
    for (int c = 1; c <= prog.domain; ++c) dom.push_back(Value::integer(c));
    const Program g = ground(p, {{"X", dom}});
    const AtomSet m = evaluate_stratified(p, {});
    auto body_true = [&](const NormalRule& r) {
      for (const auto& l : r.body) {
        if (const auto* a = std::get_if<Atom>(&l)) {
          if (!m.contains(to_ground(*a))) return false;
        } else if (const auto* n = std::get_if<Negated>(&l)) {
          if (m.contains(to_ground(n->atom))) return false;
        }
      }
      return true;
    };
    for (const auto& r : g.rules) {
      if (body_true(r)) EXPECT_TRUE(m.contains(to_ground(r.head)));
    }
    for (const auto& atom : m) {
      bool supported = g.facts.contains(atom);
      for (const auto& r : g.rules) supported |= to_ground(r.head) == atom && body_true(r);
      EXPECT_TRUE(supported) << atom.str();
    }
  }
}

TEST(Properties, MonotoneWithoutNegation) {
  const Program p = parse_program("r(X,Y) :- e(X,Y). r(X,Z) :- r(X,Y), e(Y,Z).");
  const AtomSet small = parse_ground_atoms("e(1,2) e(2,3)");
  AtomSet big = small;
  big.insert(parse_ground_atom("e(3,4)"));
  const auto a = evaluate_stratified(p, small);
  const auto b = evaluate_stratified(p, big);
  for (const auto& atom : a) EXPECT_TRUE(b.contains(atom));
}

TEST(Properties, Deterministic) {
  std::mt19937_64 rng(3);
  const auto prog = ecplan::testing::random_program(rng);
  const Program p = parse_program(prog.text());
  EXPECT_EQ(evaluate_stratified(p, {}), evaluate_stratified(p, {}));
}
