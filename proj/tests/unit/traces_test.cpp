#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "ecplan/domains/common.hpp"
#include "ecplan/logic/parser.hpp"
#include "ecplan/traces/traces.hpp"
#include "support/assets.hpp"

using namespace ecplan;
using logic::parse_ground_atom;
using logic::parse_ground_atoms;
using ecplan::testing::theory;

namespace {

std::vector<std::optional<logic::GroundAtom>> rocksample_atoms() {
  std::vector<std::optional<logic::GroundAtom>> atoms;
  for (int d = 0; d < 4; ++d) atoms.emplace_back(logic::GroundAtom(direction_name(d)));
  atoms.emplace_back();  // sample
  atoms.emplace_back();  // check(0)
  return atoms;
}

Trace trace_of(const std::vector<int>& actions) {
  Trace t;
  for (std::size_t i = 0; i < actions.size(); ++i)
    t.steps.push_back({parse_ground_atoms("dist(0," + std::to_string(i) + ")"), actions[i], 0.0});
  return t;
}

Trace with_return(double r) {
  Trace t;
  t.discounted_return = r;
  return t;
}

std::size_t count_head(const std::vector<Cdpi>& cdpis, const std::string& head) {
  std::size_t n = 0;
  for (const auto& c : cdpis) n += c.inclusions.begin()->predicate == head ? 1 : 0;
  return n;
}

}  // namespace

TEST(SelectTraces, StrictlyAboveMean) {
  const auto s = select_traces({with_return(10), with_return(20), with_return(30)});
  ASSERT_EQ(s.size(), 1U);
  EXPECT_EQ(s[0].discounted_return, 30);
  EXPECT_TRUE(select_traces({with_return(5), with_return(5)}).empty());
  EXPECT_TRUE(select_traces({with_return(5)}).empty());
}

TEST(SelectTraces, BoundaryTraceExcluded) {
  // The trace at exactly the mean is not selected.
  const auto s = select_traces({with_return(10), with_return(20), with_return(30), with_return(20)});
  ASSERT_EQ(s.size(), 1U);
  EXPECT_EQ(s[0].discounted_return, 30);
}

TEST(Cdpi, SyntheticTraceCounts) {
  const auto cdpis = emit_cdpis(trace_of({kEast, kEast, kNorth, kSouth, kSouth, kSouth}), rocksample_atoms());
  EXPECT_EQ(count_head(cdpis, "init"), 2U);
  EXPECT_EQ(count_head(cdpis, "contd"), 3U);
  ASSERT_EQ(cdpis.size(), 5U);
  EXPECT_EQ(cdpis[0].inclusions, parse_ground_atoms("init(east)"));
  EXPECT_EQ(cdpis[0].exclusions, parse_ground_atoms("init(north) init(south) init(west)"));
  EXPECT_EQ(cdpis[1].inclusions, parse_ground_atoms("contd(east)"));
  EXPECT_EQ(cdpis[1].exclusions, parse_ground_atoms("contd(north) contd(south) contd(west)"));
  EXPECT_EQ(cdpis[1].context, parse_ground_atoms("dist(0,1)"));
  EXPECT_EQ(cdpis[2].context, parse_ground_atoms("dist(0,3)"));
}

TEST(Cdpi, NoRunsNoExamples) {
  EXPECT_TRUE(emit_cdpis(trace_of({kEast, kNorth, kEast}), rocksample_atoms()).empty());
  EXPECT_TRUE(emit_cdpis(trace_of({4, 4, 5, 5}), rocksample_atoms()).empty());
}

TEST(Cdpi, RunCountsProperty) {
  std::mt19937_64 gen(5);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<int> actions(1 + gen() % 30);
    for (auto& a : actions) a = static_cast<int>(gen() % 6);
    std::size_t runs = 0, extra = 0;
    for (std::size_t i = 0; i < actions.size();) {
      std::size_t j = i + 1;
      while (j < actions.size() && actions[j] == actions[i]) ++j;
      if (j - i > 1 && actions[i] < 4) {
        ++runs;
        extra += j - i - 1;
      }
      i = j;
    }
    const auto cdpis = emit_cdpis(trace_of(actions), rocksample_atoms());
    EXPECT_EQ(count_head(cdpis, "init"), runs);
    EXPECT_EQ(count_head(cdpis, "contd"), extra);
    for (const auto& c : cdpis) {
      EXPECT_EQ(c.inclusions.size(), 1U);
      EXPECT_EQ(c.exclusions.size(), 3U);
      for (const auto& a : c.inclusions) EXPECT_FALSE(c.exclusions.contains(a));
    }
  }
}

TEST(Cdpi, EastRunExample) {
  Trace t;
  t.steps.push_back({parse_ground_atoms("dist(2,2) delta_x(2,2) delta_y(2,0) guess(2,80)"), kEast, 0});
  t.steps.push_back({parse_ground_atoms("dist(2,1) delta_x(2,1) delta_y(2,0) guess(2,80)"), kEast, 0});
  const auto cdpis = emit_cdpis(t, rocksample_atoms());
  ASSERT_EQ(cdpis.size(), 2U);
  const std::string text = format_ilasp({cdpis[0]});
  EXPECT_EQ(text,
            "#pos(e0, {init(east)}, {init(north), init(south), init(west)}, "
            "{delta_x(2,2). delta_y(2,0). dist(2,2). guess(2,80).}).\n");
  EXPECT_TRUE(cdpis[1].context.contains(parse_ground_atom("delta_x(2,1)")));
}

TEST(Ilasp, EmptyExport) {
  const auto path = std::filesystem::temp_directory_path() / "ecplan_empty.las";
  export_ilasp({}, path.string());
  EXPECT_EQ(std::filesystem::file_size(path), 0U);
  EXPECT_TRUE(load_ilasp(path.string()).empty());
}

TEST(Ilasp, RoundTripAndDeterminism) {
  auto t = trace_of({kEast, kEast, kNorth, kSouth, kSouth, kSouth});
  t.steps[4].features = parse_ground_atoms("delta_x(1,-3) delta_y(1,2) guess(1,70) dist(1,5)");
  const auto cdpis = emit_cdpis(t, rocksample_atoms(), "t7_");
  const auto a = std::filesystem::temp_directory_path() / "ecplan_a.las";
  const auto b = std::filesystem::temp_directory_path() / "ecplan_b.las";
  export_ilasp(cdpis, a.string());
  export_ilasp(cdpis, b.string());
  std::ifstream fa(a), fb(b);
  std::stringstream sa, sb;
  sa << fa.rdbuf();
  sb << fb.rdbuf();
  EXPECT_EQ(sa.str(), sb.str());
  EXPECT_EQ(load_ilasp(a.string()), cdpis);
  EXPECT_THROW((void)load_ilasp("/nonexistent/dir/x.las"), IoError);
}

TEST(Coverage, PocmanRule) {
  const auto prelude = theory("prelude.lp");
  const auto rule = theory("pocman_theory.lp");
  Cdpi positive{"p", parse_ground_atoms("init(move(north))"), {}, parse_ground_atoms("food(north,3,40) ghost(north,5,70)")};
  EXPECT_DOUBLE_EQ(check_coverage(rule, prelude, {positive}), 1.0);
  Cdpi walled = positive;
  walled.context.insert(parse_ground_atom("wall(north)"));
  EXPECT_DOUBLE_EQ(check_coverage(rule, prelude, {walled}), 0.0);
  EXPECT_DOUBLE_EQ(check_coverage(rule, prelude, {positive, walled}), 0.5);
  EXPECT_DOUBLE_EQ(check_coverage(rule, prelude, {}), 1.0);
  Cdpi excluded = positive;
  excluded.exclusions = parse_ground_atoms("init(move(south))");
  EXPECT_DOUBLE_EQ(check_coverage(rule, prelude, {excluded}), 1.0);
  excluded.context.insert(parse_ground_atom("food(south,1,90)"));
  excluded.context.insert(parse_ground_atom("ghost(south,5,10)"));
  EXPECT_DOUBLE_EQ(check_coverage(rule, prelude, {excluded}), 0.0);
}

TEST(Coverage, RocksampleTheoryEastRun) {
  const Cdpi e{"e", parse_ground_atoms("init(east)"), parse_ground_atoms("init(north) init(south) init(west)"),
               parse_ground_atoms("dist(2,2) delta_x(2,2) delta_y(2,0) guess(2,80)")};
  EXPECT_DOUBLE_EQ(check_coverage(theory("rocksample_theory.lp"), theory("prelude.lp"), {e}), 1.0);
  const Cdpi c{"c", parse_ground_atoms("contd(east)"), parse_ground_atoms("contd(north) contd(south) contd(west)"),
               parse_ground_atoms("dist(2,1) delta_x(2,1) delta_y(2,0) guess(2,80)")};
  EXPECT_DOUBLE_EQ(check_coverage(theory("rocksample_theory.lp"), theory("prelude.lp"), {c}), 1.0);
}

TEST(Coverage, MonotoneUnderRelaxation) {
  std::mt19937_64 gen(17);
  std::vector<Cdpi> suite;
  for (int i = 0; i < 120; ++i) {
    const auto v = gen() % 11 * 10, d = 1 + gen() % 6;
    suite.push_back({"x" + std::to_string(i), parse_ground_atoms("init(east)"), parse_ground_atoms("init(west)"),
                     parse_ground_atoms("guess(0," + std::to_string(v) + ") dist(0," + std::to_string(d) + ")")});
  }
  const auto prelude = theory("prelude.lp");
  double previous = -1;
  for (int bound = 100; bound >= -10; bound -= 10) {
    const auto rule = logic::parse_program("init(east) :- guess(R,V), V>" + std::to_string(bound) + ", dist(R,D), D<5.");
    const double cov = check_coverage(rule, prelude, suite);
    EXPECT_GE(cov, previous);
    previous = cov;
  }
  EXPECT_GT(previous, 0.0);
}

TEST(Archive, RoundTrip) {
  Trace a = trace_of({kEast, kEast, kNorth});
  a.discounted_return = 12.5;
  a.seed = 77;
  a.steps[1].reward = -1.5;
  Trace b = trace_of({kWest});
  b.discounted_return = -3;
  b.seed = 1ULL << 60;
  std::stringstream ss;
  write_trace_archive({a, b}, ss);
  const auto back = read_trace_archive(ss);
  ASSERT_EQ(back.size(), 2U);
  for (std::size_t i = 0; i < 2; ++i) {
    const Trace& x = i ? b : a;
    EXPECT_EQ(back[i].discounted_return, x.discounted_return);
    EXPECT_EQ(back[i].seed, x.seed);
    ASSERT_EQ(back[i].steps.size(), x.steps.size());
    for (std::size_t k = 0; k < x.steps.size(); ++k) {
      EXPECT_EQ(back[i].steps[k].features, x.steps[k].features);
      EXPECT_EQ(back[i].steps[k].action, x.steps[k].action);
      EXPECT_EQ(back[i].steps[k].reward, x.steps[k].reward);
    }
  }
}
