#include <gtest/gtest.h>

#include "random_instances.hpp"
#include "wordsat/core.hpp"

using namespace wordsat;

namespace {

FilledVariable fv(char x, std::uint32_t i) { return {x, i}; }

}  // namespace

TEST(Pattern, UppercaseIsVariable) {
  Pattern p = pattern_from_string("aXb");
  ASSERT_EQ(p.size(), 3u);
  EXPECT_TRUE(p[0].is_letter());
  EXPECT_TRUE(p[1].is_variable());
  EXPECT_EQ(to_string(p), "aXb");
  EXPECT_EQ(variables_of(make_equation("XaY", "YZ")), "XYZ");
}

TEST(System, MakeSystemInfersAlphabets) {
  EquationSystem s = make_system({{"aZXb", "aXaY"}});
  EXPECT_EQ(s.letters, "ab");
  EXPECT_EQ(s.variables, "ZXY");
  EXPECT_NO_THROW(s.validate());
}

TEST(System, ValidateRejectsUndeclaredAndOverlap) {
  EquationSystem s = make_system({{"aX", "Xa"}});
  s.letters = "b";
  EXPECT_THROW(s.validate(), InvalidInput);
  EquationSystem t = make_system({{"aX", "Xa"}});
  t.constraints.push_back({{{'Q', 1}}, 0, Relation::less_equal});
  EXPECT_THROW(t.validate(), InvalidInput);
}

TEST(FillPattern, TwoSolutionInstanceLayout) {
  Bounds b{{'X', 1}, {'Y', 1}, {'Z', 1}};
  FilledPattern u = fill_pattern(pattern_from_string("aZXb"), b);
  FilledPattern expected{Cell::letter('a'), Cell::slot(fv('Z', 0)),
                         Cell::slot(fv('X', 0)), Cell::letter('b')};
  EXPECT_EQ(u, expected);
}

TEST(FillPattern, LettersOnlyUnchanged) {
  FilledPattern u = fill_pattern(pattern_from_string("ab"), {});
  ASSERT_EQ(u.size(), 2u);
  EXPECT_EQ(u[0].letter(), 'a');
  EXPECT_EQ(u[1].letter(), 'b');
}

TEST(FillPattern, UnaryPowersGridArithmetic) {
  Bounds b{{'X', 8}, {'Y', 6}, {'Z', 6}};
  auto u = fill_pattern(pattern_from_string("XaXbYbZ"), b);
  auto v = fill_pattern(pattern_from_string("aXYYbZZbaa"), b);
  EXPECT_EQ(u.size(), 31u);
  EXPECT_EQ(v.size(), 37u);
  EXPECT_EQ((u.size() + 1) * (v.size() + 1), 1216u);
}

TEST(FillPattern, RepeatedOccurrencesShareSlotsAndZeroBoundIsEmpty) {
  auto u = fill_pattern(pattern_from_string("XaX"), {{'X', 2}});
  ASSERT_EQ(u.size(), 5u);
  EXPECT_EQ(u[0], u[3]);
  EXPECT_EQ(u[1], u[4]);
  EXPECT_EQ(fill_pattern(pattern_from_string("XaX"), {{'X', 0}}).size(), 1u);
  EXPECT_THROW(fill_pattern(pattern_from_string("Y"), {{'X', 1}}), InvalidInput);
}

TEST(FillPattern, LengthFormulaOnRandomPatterns) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    PortableRng rng(seed);
    Pattern p = fixtures::random_pattern(rng, "ab", "XYZ", 10);
    Bounds b{{'X', rng.below(5)}, {'Y', rng.below(5)}, {'Z', rng.below(5)}};
    std::size_t expected = 0;
    for (const Symbol& s : p) expected += s.is_letter() ? 1 : b[s.id];
    EXPECT_EQ(fill_pattern(p, b).size(), expected);
  }
}

TEST(InducedAssignment, Examples) {
  auto f = induced_filled_assignment({{'X', "ab"}}, {{'X', 3}});
  EXPECT_EQ(f.at(fv('X', 0)), FilledValue('a'));
  EXPECT_EQ(f.at(fv('X', 1)), FilledValue('b'));
  EXPECT_EQ(f.at(fv('X', 2)), kLambda);

  auto g = induced_filled_assignment({{'X', ""}}, {{'X', 2}});
  EXPECT_EQ(g.at(fv('X', 0)), kLambda);
  EXPECT_EQ(g.at(fv('X', 1)), kLambda);

  auto h = induced_filled_assignment({{'Z', "a"}, {'X', ""}, {'Y', "b"}},
                                     {{'X', 1}, {'Y', 1}, {'Z', 1}});
  EXPECT_EQ(h.at(fv('Z', 0)), FilledValue('a'));
  EXPECT_EQ(h.at(fv('X', 0)), kLambda);
  EXPECT_EQ(h.at(fv('Y', 0)), FilledValue('b'));

  EXPECT_THROW(induced_filled_assignment({{'X', "abc"}}, {{'X', 2}}), InvalidInput);
}

TEST(Decode, ExamplesAndMidWordLambda) {
  Bounds b{{'X', 2}};
  EXPECT_EQ(decode_filled_assignment({{fv('X', 0), 'a'}, {fv('X', 1), kLambda}}, b).at('X'), "a");
  EXPECT_EQ(decode_filled_assignment({{fv('X', 0), kLambda}, {fv('X', 1), kLambda}}, b).at('X'), "");
  EXPECT_EQ(decode_filled_assignment({{fv('X', 0), kLambda}, {fv('X', 1), 'b'}}, b).at('X'), "b");
}

TEST(Decode, RoundTripsInducedAssignments) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    PortableRng rng(seed);
    Bounds b;
    Substitution s;
    for (char v : std::string("XYZ")) {
      b[v] = rng.below(5);
      Word w;
      for (std::size_t k = rng.below(b[v] + 1); k > 0; --k) w.push_back("ab"[rng.below(2)]);
      s[v] = w;
    }
    EXPECT_EQ(decode_filled_assignment(induced_filled_assignment(s, b), b), s);
  }
}

TEST(ApplySubstitution, Examples) {
  EXPECT_EQ(apply_substitution({{'X', "a"}, {'Y', "b"}}, pattern_from_string("XabY")), "aabb");
  EXPECT_EQ(apply_substitution({}, pattern_from_string("ab")), "ab");
  Substitution s{{'A', ""}, {'B', "b"}, {'C', "a"}};
  EXPECT_EQ(apply_substitution(s, pattern_from_string("aAaB")), "aab");
  EXPECT_EQ(apply_substitution(s, pattern_from_string("aCAb")), "aab");
  EXPECT_THROW(apply_substitution({}, pattern_from_string("X")), InvalidInput);
}

TEST(Verify, Examples) {
  EquationSystem two_solutions = make_system({{"aZXb", "aXaY"}});
  EXPECT_TRUE(verify_solution({{'Z', "a"}, {'X', "a"}, {'Y', "b"}}, two_solutions));
  EXPECT_FALSE(verify_solution({{'Z', "a"}, {'X', "a"}, {'Y', "a"}}, two_solutions));

  EquationSystem grid_case = make_system({{"XaXbYbZ", "aXYYbZZbaa"}});
  grid_case.bounds = {{'X', 8}, {'Y', 6}, {'Z', 6}};
  EXPECT_TRUE(verify_solution({{'X', "aaaaaaaa"}, {'Y', "aaaa"}, {'Z', "aa"}}, grid_case));
  grid_case.bounds['X'] = 7;
  EXPECT_FALSE(verify_solution({{'X', "aaaaaaaa"}, {'Y', "aaaa"}, {'Z', "aa"}}, grid_case));
}

TEST(Verify, LinearConstraints) {
  EquationSystem s = make_system({{"X", "X"}});
  s.constraints.push_back({{{'X', 1}}, 1, Relation::less_equal});
  EXPECT_TRUE(verify_solution({{'X', "a"}}, s));
  EXPECT_FALSE(verify_solution({{'X', "aa"}}, s));
}

TEST(Verify, AgreesWithCharacterComparison) {
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    auto inst = fixtures::random_small_instance(seed, {.constraints = false, .systems = false});
    PortableRng rng(seed + 1000);
    Substitution s;
    for (char v : inst.sys.variables) {
      Word w;
      for (std::size_t k = rng.below(3); k > 0; --k) w.push_back(inst.sys.letters[rng.below(inst.sys.letters.size())]);
      s[v] = w;
    }
    const auto& e = inst.sys.equations.front();
    Word l, r;
    for (const Symbol& x : e.lhs) l += x.is_letter() ? Word(1, x.id) : s[x.id];
    for (const Symbol& x : e.rhs) r += x.is_letter() ? Word(1, x.id) : s[x.id];
    EXPECT_EQ(verify_solution(s, inst.sys), l == r) << to_string(e);
  }
}

TEST(PartialAssignment, Compatible) {
  PartialFilledAssignment init;
  auto a = Operand::letter('a');
  auto b = Operand::letter('b');
  auto x = Operand::slot(fv('X', 0));
  EXPECT_TRUE(compatible(a, a, init));
  EXPECT_FALSE(compatible(a, b, init));
  EXPECT_TRUE(compatible(x, a, init));
  EXPECT_TRUE(compatible(a, x, init));
  EXPECT_FALSE(compatible(Operand::lambda(), a, init));
  EXPECT_TRUE(compatible(Operand::lambda(), Operand::lambda(), init));
}

TEST(PartialAssignment, Extend) {
  auto x = Operand::slot(fv('X', 0));
  PartialFilledAssignment s = PartialFilledAssignment().extend(x, 'a');
  EXPECT_EQ(s.lookup(x), std::optional<FilledValue>(FilledValue('a')));
  EXPECT_EQ(s.extend(x, 'a'), s);
  EXPECT_EQ(s.extend(x, 'b').lookup(x), std::optional<FilledValue>(FilledValue('a')));
  EXPECT_EQ(s.extend(Operand::letter('a'), 'b'), s);
  EXPECT_FALSE(PartialFilledAssignment().lookup(x).has_value());
  EXPECT_EQ(s.lookup(Operand::letter('b')), std::optional<FilledValue>(FilledValue('b')));
}

TEST(PartialAssignment, CompatibleIsSymmetricAndReflexive) {
  PartialFilledAssignment s = PartialFilledAssignment()
                                  .extend(Operand::slot(fv('X', 0)), 'a')
                                  .extend(Operand::slot(fv('Y', 0)), kLambda);
  std::vector<Operand> ops{Operand::letter('a'), Operand::letter('b'), Operand::lambda(),
                           Operand::slot(fv('X', 0)), Operand::slot(fv('Y', 0)),
                           Operand::slot(fv('Z', 0))};
  for (const auto& p : ops) {
    EXPECT_TRUE(compatible(p, p, s));
    for (const auto& q : ops) EXPECT_EQ(compatible(p, q, s), compatible(q, p, s));
  }
}
