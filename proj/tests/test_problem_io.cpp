#include <gtest/gtest.h>

#include "random_instances.hpp"
#include "wordsat/problem_io.hpp"

using namespace wordsat;

namespace {

std::size_t error_line(const std::string& text) {
  try {
    parse_problem(text);
  } catch (const ParseError& e) {
    return e.line();
  }
  return 0;
}

}  // namespace

TEST(Parse, FullExample) {
  EquationSystem s = parse_problem(
      "# example\n"
      "Variables {XYZ}\n"
      "Terminals {ab}\n"
      "\n"
      "Equation: aZXb = aXaY\n"
      "Bound: X 8\n"
      "LinConstraint: 2 X -1 Y <= 3\n"
      "LinConstraint: 1 Z = 1\n");
  EXPECT_EQ(s.variables, "XYZ");
  EXPECT_EQ(s.letters, "ab");
  ASSERT_EQ(s.equations.size(), 1u);
  EXPECT_EQ(s.equations[0], make_equation("aZXb", "aXaY"));
  EXPECT_EQ(s.bounds, (Bounds{{'X', 8}}));
  ASSERT_EQ(s.constraints.size(), 2u);
  EXPECT_EQ(s.constraints[0], (LinearConstraint{{{'X', 2}, {'Y', -1}}, 3, Relation::less_equal}));
  EXPECT_EQ(s.constraints[1], (LinearConstraint{{{'Z', 1}}, 1, Relation::equal}));
}

TEST(Parse, EmptySidesAndSpacing) {
  EquationSystem s = parse_problem("Variables {X}\nTerminals {a}\nEquation:  = X\nEquation: Xa =\n");
  ASSERT_EQ(s.equations.size(), 2u);
  EXPECT_TRUE(s.equations[0].lhs.empty());
  EXPECT_TRUE(s.equations[1].rhs.empty());
  EXPECT_EQ(parse_problem("Variables {}\nTerminals {ab}\nEquation: ab = ab\n").equations.size(), 1u);
}

TEST(Parse, Errors) {
  const std::string head = "Variables {XY}\nTerminals {ab}\n";
  EXPECT_EQ(error_line(head + "Equation: aQ = a\n"), 3u);
  EXPECT_EQ(error_line(head + "Equation: aX a\n"), 3u);
  EXPECT_EQ(error_line(head + "Bound: Z 3\n"), 3u);
  EXPECT_EQ(error_line(head + "Bound: X -3\n"), 3u);
  EXPECT_EQ(error_line(head + "LinConstraint: 1 X < 3\n"), 3u);
  EXPECT_EQ(error_line(head + "LinConstraint: X 1 <= 3\n"), 3u);
  EXPECT_EQ(error_line(head + "Frobnicate: 1\n"), 3u);
  EXPECT_EQ(error_line("Variables {Xa}\n"), 1u);
  EXPECT_EQ(error_line("Terminals {aX}\n"), 1u);
  EXPECT_EQ(error_line("Variables {XX}\n"), 1u);
  EXPECT_EQ(error_line("Equation: a = a\n"), 1u);
  EXPECT_THROW(parse_problem("Variables {X}\nTerminals {a}\nVariables {Y}\n"), InvalidInput);
}

TEST(Write, RoundTrip) {
  EquationSystem s = make_system({{"aZXb", "aXaY"}, {"", "Z"}});
  s.bounds = {{'X', 3}, {'Z', 0}};
  s.constraints.push_back({{{'X', 1}, {'Y', -2}}, -1, Relation::less_equal});
  s.constraints.push_back({{{'Z', 3}}, 0, Relation::equal});
  const std::string text = write_problem(s);
  EXPECT_EQ(parse_problem(text), s);
  EXPECT_EQ(write_problem(parse_problem(text)), text);

  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    auto inst = fixtures::random_small_instance(seed);
    inst.sys.bounds = inst.bounds;
    EXPECT_EQ(parse_problem(write_problem(inst.sys)), inst.sys) << write_problem(inst.sys);
  }
}
