#include <gtest/gtest.h>

#include "ecplan/logic/errors.hpp"
#include "ecplan/logic/optimizer.hpp"
#include "ecplan/logic/parser.hpp"

using namespace ecplan::logic;

namespace {

const char* kTargets =
    "0{ target(R): dist(R,D), D<=1; target(R): guess(R,V), 70<=V<=80 }M.\n";

}  // namespace

TEST(Optimal, NearestTargetChosen) {
  // Brute force over the singletons: {1} costs 1, {3}... only the dist-1 rock
  // is eligible through the first element, the other through its guess.
  const Program p = parse_program(std::string(kTargets) + ":~ target(R), dist(R,D). [D@1, R, D]\n"
                                  "picked :- target(R).\n:- not picked.\n");
  const auto r = solve_optimal(p, parse_ground_atoms("dist(1,1) dist(2,3) guess(1,50) guess(2,75)"));
  EXPECT_EQ(r.chosen, parse_ground_atoms("target(1)"));
  EXPECT_EQ(r.cost.at(1), 1);
}

TEST(Optimal, GuessGuard) {
  const Program p = parse_program(std::string(kTargets) + ":~ target(R), guess(R,V). [-V@2, R, V]\n");
  const auto r = solve_optimal(p, parse_ground_atoms("dist(1,4) dist(2,4) guess(1,70) guess(2,90)"));
  EXPECT_EQ(r.chosen, parse_ground_atoms("target(1)"));
  EXPECT_EQ(r.cost.at(2), -70);
}

TEST(Optimal, EmptyChoiceAdmitsEmpty) {
  const Program p = parse_program(std::string(kTargets) + ":~ target(R), dist(R,D). [D@1, R, D]\n");
  const auto r = solve_optimal(p, parse_ground_atoms("dist(1,5) guess(1,10)"));
  EXPECT_TRUE(r.chosen.empty());
  EXPECT_EQ(r.answer_set, parse_ground_atoms("dist(1,5) guess(1,10)"));
}

TEST(Optimal, PriorityOrder) {
  // Level 2 dominates level 1 regardless of magnitude.
  const Program p = parse_program(
      "1{ pick(a); pick(b) }1.\n"
      ":~ pick(a). [100@1]\n"
      ":~ pick(b). [1@2]\n");
  const auto r = solve_optimal(p, {});
  EXPECT_EQ(r.chosen, parse_ground_atoms("pick(a)"));
}

TEST(Optimal, TieBreaksLexicographic) {
  const Program p = parse_program("1{ pick(b); pick(a) }1.");
  EXPECT_EQ(solve_optimal(p, {}).chosen, parse_ground_atoms("pick(a)"));
}

TEST(Optimal, BoundsRespected) {
  const Program p = parse_program("#const m=2. 2{ x(1); x(2); x(3) }m. :~ x(N). [N@1, N]");
  const auto r = solve_optimal(p, {});
  EXPECT_EQ(r.chosen, parse_ground_atoms("x(1) x(2)"));
  EXPECT_EQ(r.cost.at(1), 3);
}

TEST(Optimal, Unsatisfiable) {
  EXPECT_THROW(solve_optimal(parse_program("1{ x(1) }1. :- x(1)."), {}), Unsatisfiable);
}

TEST(Optimal, TooManyChoices) {
  std::string text = "{ c(X) : n(X) }.";
  std::string facts;
  for (int i = 0; i < 21; ++i) facts += "n(" + std::to_string(i) + ") ";
  EXPECT_THROW(solve_optimal(parse_program(text), parse_ground_atoms(facts)), TooManyChoices);
}
