#include <gtest/gtest.h>

#include <set>
#include <sstream>

#include "random_instances.hpp"
#include "wordsat/automaton.hpp"

using namespace wordsat;

namespace {

const Bounds kOnes{{'X', 1}, {'Y', 1}, {'Z', 1}};

std::set<Substitution> two_solutions() {
  return {{{'Z', "a"}, {'X', "a"}, {'Y', "b"}}, {{'Z', "a"}, {'X', ""}, {'Y', "b"}}};
}

}  // namespace

TEST(Successors, TwoSolutionInstanceFromLocationOneOne) {
  EquationAutomaton a(make_equation("aZXb", "aXaY"), kOnes, "ab");
  AutomatonState s{1, 1, {}};
  auto next = successors(s, a);
  std::set<std::pair<std::size_t, std::size_t>> locations;
  for (const auto& t : next) locations.insert({t.i, t.j});
  std::set<std::pair<std::size_t, std::size_t>> expected{{2, 1}, {1, 2}, {2, 2}};
  EXPECT_EQ(locations, expected);
  // Diagonal moves bind Z^(0) and X^(0) together to a, b or lambda.
  std::size_t diagonal = 0;
  for (const auto& t : next)
    if (t.i == 2 && t.j == 2) ++diagonal;
  EXPECT_EQ(diagonal, 3u);
}

TEST(Successors, AcceptingAndStuckStates) {
  EquationAutomaton a(make_equation("a", "a"), {}, "ab");
  EXPECT_TRUE(successors({1, 1, {}}, a).empty());
  EquationAutomaton b(make_equation("a", "b"), {}, "ab");
  EXPECT_TRUE(successors({0, 0, {}}, b).empty());
}

TEST(Successors, BoundCellOnlyMovesOnItsValue) {
  EquationAutomaton a(make_equation("X", "a"), {{'X', 1}}, "ab");
  PartialFilledAssignment bound =
      PartialFilledAssignment().extend(Operand::slot({'X', 0}), 'b');
  EXPECT_TRUE(successors({0, 0, bound}, a).empty());
}

TEST(ReachableSearch, Examples) {
  EXPECT_TRUE(reachable_search(make_equation("aZXb", "aXaY"), kOnes, "ab").satisfiable);
  EXPECT_FALSE(reachable_search(make_equation("a", "b"), {}, "ab").satisfiable);
  EXPECT_TRUE(reachable_search(make_equation("XaXbYbZ", "aXYYbZZbaa"),
                               {{'X', 8}, {'Y', 6}, {'Z', 6}}, "ab")
                  .satisfiable);
}

TEST(EnumerateSolutions, Examples) {
  EXPECT_EQ(enumerate_solutions(make_equation("aZXb", "aXaY"), kOnes, "ab").solutions,
            two_solutions());
  EXPECT_EQ(enumerate_solutions(make_equation("a", "a"), {}, "a").solutions,
            std::set<Substitution>{Substitution{}});
  std::set<Substitution> only_a{{{'X', "a"}}};
  EXPECT_EQ(enumerate_solutions(make_equation("X", "a"), {{'X', 1}}, "ab").solutions, only_a);
}

TEST(EnumerateSolutions, StateLimit) {
  EXPECT_THROW(enumerate_solutions(make_equation("XaXbYbZ", "aXYYbZZbaa"),
                                   {{'X', 8}, {'Y', 6}, {'Z', 6}}, "ab", 100),
               ResourceLimit);
}

TEST(BruteForce, Examples) {
  EquationSystem two_solutions_sys = make_system({{"aZXb", "aXaY"}});
  EXPECT_EQ(brute_force_solve(two_solutions_sys, kOnes).solutions, two_solutions());
  EXPECT_TRUE(brute_force_solve(make_system({{"ab", "ba"}}), {}).solutions.empty());

  EquationSystem zero_coeff = make_system({{"aAaB", "aCAb"}});
  zero_coeff.constraints.push_back({{{'A', 0}, {'B', 1}, {'C', -1}}, 0, Relation::equal});
  auto sols = brute_force_solve(zero_coeff, {{'A', 2}, {'B', 2}, {'C', 2}}).solutions;
  EXPECT_TRUE(sols.count({{'A', ""}, {'B', "b"}, {'C', "a"}}));
}

TEST(BruteForce, CandidateLimit) {
  EquationSystem s = make_system({{"aXYZ", "ZYXb"}});
  EXPECT_THROW(brute_force_solve(s, {{'X', 6}, {'Y', 6}, {'Z', 6}}, 1000), ResourceLimit);
}

TEST(Oracles, AgreeOnRandomEquations) {
  for (std::uint64_t seed = 0; seed < 500; ++seed) {
    auto inst = fixtures::random_small_instance(seed, {.constraints = false, .systems = false});
    const auto& e = inst.sys.equations.front();
    OracleResult brute = brute_force_solve(inst.sys, inst.bounds);
    EXPECT_EQ(reachable_search(e, inst.bounds, inst.sys.letters).satisfiable, brute.satisfiable)
        << to_string(e);
    // enumerate_solutions only maps the equation's own variables.
    std::set<Substitution> restricted;
    const std::string vars = variables_of(e);
    for (const auto& s : brute.solutions) {
      Substitution r;
      for (char v : vars) r[v] = s.at(v);
      restricted.insert(r);
    }
    OracleResult enumerated = enumerate_solutions(e, inst.bounds, inst.sys.letters);
    EXPECT_EQ(enumerated.solutions, restricted) << to_string(e);
    for (const auto& s : enumerated.solutions) {
      EquationSystem just_e = inst.sys;
      just_e.bounds = inst.bounds;
      Substitution full = s;
      for (char v : inst.sys.variables) full.try_emplace(v, "");
      EXPECT_TRUE(verify_solution(full, just_e));
    }
  }
}

TEST(Oracles, RaisingABoundNeverShrinksSolutions) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    auto inst = fixtures::random_small_instance(seed, {.max_bound = 2});
    Bounds larger = inst.bounds;
    larger[inst.sys.variables[0]] += 1;
    auto small = brute_force_solve(inst.sys, inst.bounds).solutions;
    auto big = brute_force_solve(inst.sys, larger).solutions;
    for (const auto& s : small) EXPECT_TRUE(big.count(s));
  }
}

TEST(Dot, GroupsStatesByLocation) {
  EquationAutomaton a(make_equation("aZXb", "aXaY"), kOnes, "ab");
  std::ostringstream out;
  write_automaton_dot(a, out);
  const std::string dot = out.str();
  EXPECT_NE(dot.find("digraph"), std::string::npos);
  EXPECT_NE(dot.find("subgraph cluster"), std::string::npos);
}
