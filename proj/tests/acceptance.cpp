// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any
// failure.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "random_instances.hpp"
#include "wordsat/automaton.hpp"
#include "wordsat/benchgen.hpp"
#include "wordsat/driver.hpp"
#include "wordsat/linear.hpp"
#include "wordsat/preprocess.hpp"

using namespace wordsat;

namespace {

/// Collects the reasons a criterion failed.
struct Check {
  std::vector<std::string> failures;
  std::string note;
  void expect(bool ok, const std::string& what) {
    if (!ok) failures.push_back(what);
  }
};

struct Criterion {
  int id;
  std::string title;
  double limit_seconds;
  std::function<void(Check&)> body;
};

std::string show(const Substitution& s) {
  std::string out;
  for (const auto& [v, w] : s) {
    if (!out.empty()) out += ' ';
    out += v;
    out += '=';
    out += w.empty() ? "eps" : w;
  }
  return out;
}

std::size_t total_length(const Substitution& s) {
  std::size_t n = 0;
  for (const auto& [v, w] : s) n += w.size();
  return n;
}

void two_solutions(Check& c) {
  EquationSystem s = make_system({{"aZXb", "aXaY"}});
  Bounds b{{'X', 1}, {'Y', 1}, {'Z', 1}};
  std::set<Substitution> expected{{{'Z', "a"}, {'X', "a"}, {'Y', "b"}},
                                  {{'Z', "a"}, {'X', ""}, {'Y', "b"}}};
  OracleResult oracle = enumerate_solutions(s.equations[0], b, s.letters);
  c.expect(oracle.solutions == expected, "oracle enumeration differs from the two known solutions");
  for (bool pre : {true, false}) {
    SolverConfig cfg;
    cfg.preprocess = pre;
    SolveResult r = solve_bounded(s, b, cfg);
    c.expect(r.status == Status::sat, "solve_bounded is not SAT");
    if (r.substitution)
      c.expect(expected.count(*r.substitution) != 0,
               "model " + show(*r.substitution) + " is not a known solution");
  }
}

void unary_powers(Check& c) {
  EquationSystem s = make_system({{"XaXbYbZ", "aXYYbZZbaa"}});
  Bounds b{{'X', 8}, {'Y', 6}, {'Z', 6}};
  SolverConfig plain;
  plain.refine_bounds = false;
  Encoding enc = encode_bounded(s, b, plain);
  c.expect(enc.registry.count<GridKey>() == 1216,
           "grid variables: " + std::to_string(enc.registry.count<GridKey>()));
  EquationSystem bounded = s;
  bounded.bounds = b;
  c.expect(verify_solution({{'X', "aaaaaaaa"}, {'Y', "aaaa"}, {'Z', "aa"}}, bounded),
           "X=a^8, Y=a^4, Z=a^2 does not verify");
  SolveResult r = solve_bounded(s, b);
  c.expect(r.status == Status::sat, "solve_bounded is not SAT");
  if (r.substitution) c.expect(verify_solution(*r.substitution, bounded), "model does not verify");
}

void zero_coefficient_mdd(Check& c) {
  // X1, X2, X3 are A, B, C.
  EquationSystem s = make_system({{"aAaB", "aCAb"}});
  Bounds b{{'A', 2}, {'B', 2}, {'C', 2}};
  LinearAbstraction a = length_abstraction(s.equations[0]);
  std::map<char, std::int64_t> stored{{'A', 0}, {'B', 1}, {'C', -1}};
  c.expect(a.coefficients == stored && a.target == 0, "abstraction coefficients or target");
  LinearAbstraction drawn = a.negated();
  c.expect(drawn.coefficients.at('B') == -1 && drawn.coefficients.at('C') == 1,
           "negated form is not 0*I1 - I2 + I3 = 0");
  Mdd m = reduce_mdd(build_mdd(a, b, s.variables));
  c.expect(m.node_count() == 6, "reduced MDD has " + std::to_string(m.node_count()) + " nodes");
  Mdd n = reduce_mdd(build_mdd(drawn, b, s.variables));
  c.expect(n.layer(1) == std::set<std::int64_t>{0, -1, -2}, "middle layer is not {0,-1,-2}");
  SolverConfig cfg;
  cfg.preprocess = false;
  cfg.mdd_guiding = true;
  EquationSystem with_constraint = s;
  with_constraint.constraints.push_back(a.as_constraint());
  for (const EquationSystem* sys : {&s, &with_constraint}) {
    SolveResult r = solve_bounded(*sys, b, cfg);
    c.expect(r.status == Status::sat, "solve_bounded with MDDs is not SAT");
    EquationSystem bounded = *sys;
    bounded.bounds = b;
    if (r.substitution) c.expect(verify_solution(*r.substitution, bounded), "model does not verify");
  }
  c.expect(brute_force_solve(with_constraint, b).solutions.count({{'A', ""}, {'B', "b"}, {'C', "a"}}),
           "A=eps, B=b, C=a is missing from the solution set");
}

void preprocessing_examples(Check& c) {
  c.expect(strip_common_affixes(make_equation("aaX", "aabY")) == make_equation("X", "bY"),
           "aaX = aabY does not strip to X = bY");
  for (auto [l, r] : std::vector<std::pair<const char*, const char*>>{
           {"abX", "aabY"}, {"ababab", "XaabY"}, {"aX", "Xb"}}) {
    PreprocessVerdict v = preprocess_pipeline(make_system({{l, r}}));
    c.expect(v.status == Status::unsat, std::string(l) + " = " + r + " is not UNSAT");
    SolveResult s = solve_iterative(make_system({{l, r}}));
    c.expect(s.status == Status::unsat, std::string(l) + " = " + r + " not UNSAT end to end");
  }
  EquationSystem sys = make_system({{"X", "aab"}, {"Y", "a"}, {"aX", "Yaab"}});
  PreprocessVerdict v = preprocess_pipeline(sys);
  c.expect(v.status == Status::sat && v.witness && v.witness->at('X') == "aab" &&
               v.witness->at('Y') == "a",
           "substitution system is not SAT with X=aab, Y=a");
}

void oracle_suite(Check& c) {
  std::size_t compared = 0, sat = 0, single = 0;
  for (std::uint64_t seed = 0; seed < 600; ++seed) {
    auto inst = fixtures::random_small_instance(seed);
    const std::string tag = "seed " + std::to_string(seed);
    OracleResult truth = brute_force_solve(inst.sys, inst.bounds);
    if (inst.sys.equations.size() == 1 && inst.sys.constraints.empty())
      c.expect(reachable_search(inst.sys.equations[0], inst.bounds, inst.sys.letters).satisfiable ==
                   truth.satisfiable,
               tag + ": reachable_search disagrees");
    SolveResult r = solve_bounded(inst.sys, inst.bounds);
    c.expect(r.status == (truth.satisfiable ? Status::sat : Status::unsat),
             tag + ": pipeline disagrees");
    Encoding enc = encode_bounded(inst.sys, inst.bounds);
    auto models = enumerate_models(enc.formula, enc.cell_variables(), 1'000'000);
    c.expect(!models.limit_reached && fixtures::decode_projected(enc, models) == truth.solutions,
             tag + ": projected models differ from the solution set");
    ++compared;
    sat += truth.satisfiable ? 1 : 0;
    single += inst.sys.equations.size() == 1 && inst.sys.constraints.empty() ? 1 : 0;
  }
  c.expect(compared >= 500, "fewer than 500 instances");
  c.note = std::to_string(compared) + " instances, " + std::to_string(sat) + " satisfiable, " +
           std::to_string(single) + " checked against the automaton";
}

void toggles(Check& c) {
  for (std::uint64_t seed = 0; seed < 600; ++seed) {
    auto inst = fixtures::random_small_instance(seed);
    const bool truth = brute_force_solve(inst.sys, inst.bounds).satisfiable;
    for (int mask = 0; mask < 8; ++mask) {
      SolverConfig cfg;
      cfg.preprocess = mask & 1;
      cfg.refine_bounds = mask & 2;
      cfg.mdd_guiding = mask & 4;
      SolveResult r = solve_bounded(inst.sys, inst.bounds, cfg);
      c.expect(r.status == (truth ? Status::sat : Status::unsat),
               "seed " + std::to_string(seed) + " mask " + std::to_string(mask));
    }
  }
}

void track2(Check& c) {
  for (std::size_t n : {2, 3}) {
    EquationSystem s{"ab", "", {gen_track2(n)}, {}, {}};
    s.variables = variables_of(s.equations[0]);
    std::sort(s.variables.begin(), s.variables.end());
    const auto start = std::chrono::steady_clock::now();
    SolveResult r = solve_iterative(s);
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    c.expect(r.status == Status::sat && r.substitution && verify_solution(*r.substitution, s),
             "n=" + std::to_string(n) + " is not solved with a verified model");
    c.expect(secs < 60, "n=" + std::to_string(n) + " took " + std::to_string(secs) + " s");
  }
  auto shortest = [](std::size_t n, std::size_t bound) {
    EquationSystem s{"ab", "", {gen_track2(n)}, {}, {}};
    s.variables = variables_of(s.equations[0]);
    Bounds b;
    for (char v : s.variables) b[v] = bound;
    std::size_t best = SIZE_MAX;
    for (const auto& sol : brute_force_solve(s, b).solutions) best = std::min(best, total_length(sol));
    return best;
  };
  const std::size_t one = shortest(1, 4), two = shortest(2, 4);
  c.note = "shortest total solution length n=1: " + std::to_string(one) +
           ", n=2: " + std::to_string(two);
  c.expect(one != SIZE_MAX && two != SIZE_MAX && two > one,
           "minimal lengths n=1: " + std::to_string(one) + ", n=2: " + std::to_string(two));
}

CnfFormula random_cnf(PortableRng& rng, int max_vars) {
  CnfFormula f;
  f.num_variables = 1 + static_cast<int>(rng.below(max_vars));
  // Around the 3-SAT threshold so both verdicts are common.
  const std::size_t clauses = rng.below(6 * static_cast<std::size_t>(f.num_variables) + 1);
  for (std::size_t k = 0; k < clauses; ++k) {
    std::vector<int> cl;
    for (std::size_t t = 1 + rng.below(3); t > 0; --t) {
      int v = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(f.num_variables)));
      cl.push_back(rng.coin() ? v : -v);
    }
    f.clauses.push_back(std::move(cl));
  }
  return f;
}

bool truth_table(const CnfFormula& f) {
  std::vector<bool> m(static_cast<std::size_t>(f.num_variables) + 1);
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << f.num_variables); ++bits) {
    for (int v = 1; v <= f.num_variables; ++v) m[v] = (bits >> (v - 1)) & 1;
    if (satisfies(f, m)) return true;
  }
  return false;
}

std::string dimacs_text(const CnfFormula& f) {
  std::ostringstream out;
  write_dimacs(f, out);
  return out.str();
}

bool round_trips(const CnfFormula& f) {
  const std::string text = dimacs_text(f);
  std::istringstream in(text);
  return dimacs_text(read_dimacs(in)) == text;
}

void sat_backend(Check& c) {
  PortableRng rng(2024);
  std::size_t sat = 0;
  for (int k = 0; k < 1000; ++k) {
    CnfFormula f = random_cnf(rng, 20);
    SolverVerdict v = solve(f);
    const bool expected = truth_table(f);
    sat += expected ? 1 : 0;
    c.expect((v.status == SatStatus::satisfiable) == expected, "formula " + std::to_string(k));
    c.expect(round_trips(f), "round trip of formula " + std::to_string(k));
  }
  c.expect(sat > 0 && sat < 1000, "random formulas are all one verdict");
  c.note = std::to_string(sat) + " of 1000 formulas satisfiable";
  // Encodings of the two fixed instances above.
  c.expect(round_trips(encode_bounded(make_system({{"aZXb", "aXaY"}}),
                                      {{'X', 1}, {'Y', 1}, {'Z', 1}})
                           .formula),
           "aZXb = aXaY encoding");
  c.expect(round_trips(encode_bounded(make_system({{"XaXbYbZ", "aXYYbZZbaa"}}),
                                      {{'X', 8}, {'Y', 6}, {'Z', 6}})
                           .formula),
           "XaXbYbZ = aXYYbZZbaa encoding");
}

void generators(Check& c) {
  for (int track : {1, 4, 5}) {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
      GenSpec spec = default_spec(track);
      spec.seed = seed;
      Instance inst = generate(spec);
      const std::string tag = inst.name;
      c.expect(inst.satisfiable && inst.witness && verify_solution(*inst.witness, inst.system),
               tag + ": witness does not verify");
      c.expect(serialize(inst) == serialize(generate(spec)), tag + ": regeneration differs");
    }
  }
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "aZXb = aXaY, bounds 1", 1, two_solutions},
      {2, "XaXbYbZ = aXYYbZZbaa, grid size and model", 10, unary_powers},
      {3, "aAaB = aCAb, abstraction and MDD", 1, zero_coefficient_mdd},
      {4, "preprocessing verdicts", 1, preprocessing_examples},
      {5, "oracle equivalence on random instances", 300, oracle_suite},
      {6, "toggle invariance", 300, toggles},
      {7, "exponentially long solutions (track 2)", 120, track2},
      {8, "SAT backend and DIMACS", 60, sat_backend},
      {9, "generator witnesses and determinism", 60, generators},
  };
  int failed = 0;
  for (const auto& cr : criteria) {
    Check check;
    const auto start = std::chrono::steady_clock::now();
    try {
      cr.body(check);
    } catch (const std::exception& e) {
      check.failures.push_back(std::string("exception: ") + e.what());
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (secs >= cr.limit_seconds)
      check.failures.push_back("took " + std::to_string(secs) + " s, limit " +
                               std::to_string(cr.limit_seconds) + " s");
    const bool ok = check.failures.empty();
    failed += ok ? 0 : 1;
    std::printf("criterion %d: %s  %s (%.2f s)\n", cr.id, ok ? "PASS" : "FAIL", cr.title.c_str(),
                secs);
    if (!check.note.empty()) std::printf("    %s\n", check.note.c_str());
    for (std::size_t k = 0; k < check.failures.size() && k < 10; ++k)
      std::printf("    %s\n", check.failures[k].c_str());
    if (check.failures.size() > 10)
      std::printf("    ... %zu more\n", check.failures.size() - 10);
  }
  return failed == 0 ? 0 : 1;
}
