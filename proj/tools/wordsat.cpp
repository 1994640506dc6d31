// Command-line front end: solve, oracle, encode and generate.

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include "wordsat/automaton.hpp"
#include "wordsat/benchgen.hpp"
#include "wordsat/driver.hpp"
#include "wordsat/problem_io.hpp"

namespace {

using namespace wordsat;

constexpr int kExitSat = 10;
constexpr int kExitUnsat = 20;
constexpr int kExitOther = 0;
constexpr int kExitError = 1;

int exit_code(Status s) {
  switch (s) {
    case Status::sat:
      return kExitSat;
    case Status::unsat:
      return kExitUnsat;
    case Status::unknown:
      break;
  }
  return kExitOther;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path + "'");
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

/// "X=3" pairs.
Bounds parse_bound_flags(const std::vector<std::string>& flags) {
  Bounds b;
  for (const auto& f : flags) {
    auto eq = f.find('=');
    if (eq != 1 || f.size() < 3)
      throw InvalidInput("bound '" + f + "' is not of the form X=N");
    try {
      std::size_t used = 0;
      unsigned long n = std::stoul(f.substr(2), &used);
      if (used != f.size() - 2) throw std::invalid_argument(f);
      b[f[0]] = n;
    } catch (const std::logic_error&) {
      throw InvalidInput("bound '" + f + "' is not of the form X=N");
    }
  }
  return b;
}

Bounds fixed_bounds(const EquationSystem& sys, const Bounds& overrides,
                    std::size_t fallback) {
  Bounds b = sys.bounds;
  for (const auto& [v, n] : overrides) b[v] = n;
  for (char v : sys.variables) b.try_emplace(v, fallback);
  return b;
}

std::string replace_all(std::string s, const std::string& from, const std::string& to) {
  for (std::size_t at = s.find(from); at != std::string::npos;
       at = s.find(from, at + to.size()))
    s.replace(at, from.size(), to);
  return s;
}

/// Runs `command` on a DIMACS file. "{cnf}" and "{out}" are replaced by the
/// file paths; without "{out}" the solver's stdout is captured instead.
SolverVerdict run_external(const std::string& command, const CnfFormula& f) {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path();
  const std::string stem =
      "wordsat_" + std::to_string(std::chrono::steady_clock::now().time_since_epoch().count());
  const std::string cnf = (dir / (stem + ".cnf")).string();
  const std::string out = (dir / (stem + ".out")).string();
  {
    std::ofstream file(cnf);
    write_dimacs(f, file);
  }
  std::string cmd = command;
  if (cmd.find("{cnf}") == std::string::npos) cmd += " {cnf}";
  if (cmd.find("{out}") == std::string::npos) cmd += " > {out}";
  cmd = replace_all(replace_all(cmd, "{cnf}", cnf), "{out}", out);
  // Solvers exit with 10/20, so the status is not an error signal.
  [[maybe_unused]] int status = std::system(cmd.c_str());
  std::string text = slurp(out);
  std::remove(cnf.c_str());
  std::remove(out.c_str());
  return read_external_model(text, f);
}

std::string solution_line(const Substitution& s, const std::string& order) {
  std::string line;
  for (char v : order) {
    if (!line.empty()) line += ' ';
    line += v;
    line += '=';
    auto it = s.find(v);
    if (it != s.end()) line += it->second;
  }
  return line;
}

struct CommonOptions {
  std::string file;
  std::vector<std::string> bounds;
  std::size_t default_bound = 1;
};

void add_common(CLI::App* cmd, CommonOptions& o) {
  cmd->add_option("file", o.file, "Problem file")->required()->check(CLI::ExistingFile);
  cmd->add_option("-b,--bound", o.bounds, "Bound override X=N (repeatable)");
  cmd->add_option("--default-bound", o.default_bound,
                  "Bound for variables without one (fixed bounds)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bounded word equations with length constraints, solved via SAT"};
  app.require_subcommand(1);

  // solve
  CommonOptions solve_opts;
  SolverConfig cfg;
  bool fixed = false;
  bool stats = false;
  bool no_pre = false, no_refine = false, no_mdd = false, no_fold = false;
  double timeout = 0;
  std::string external;
  auto* solve_cmd = app.add_subcommand("solve", "Run the solving pipeline");
  add_common(solve_cmd, solve_opts);
  solve_cmd->add_flag("--fixed", fixed, "Solve once at fixed bounds instead of deepening");
  solve_cmd->add_option("--max-iterations", cfg.max_iterations, "Deepening iterations")
      ->check(CLI::PositiveNumber);
  solve_cmd->add_option("--ceiling", cfg.bound_ceiling, "Hard ceiling of the bound cap");
  solve_cmd->add_flag("--no-ceiling", cfg.no_ceiling, "Cap bounds at 2^n only");
  solve_cmd->add_flag("--no-preprocess", no_pre, "Skip preprocessing");
  solve_cmd->add_flag("--no-refine", no_refine, "Skip bound refinement");
  solve_cmd->add_flag("--no-mdd", no_mdd, "Skip length-abstraction MDDs");
  solve_cmd->add_flag("--no-fold", no_fold, "Keep letter comparisons as variables");
  solve_cmd->add_option("--dimacs", cfg.dimacs_path, "Write the last CNF here");
  solve_cmd->add_option("--map", cfg.map_path, "Write the variable map here");
  solve_cmd->add_option("--mdd-dot", cfg.mdd_dot_path, "Write the MDDs as DOT here");
  solve_cmd->add_option("--model", cfg.external_model_path,
                        "Read the SAT verdict from this solver output (with --fixed)");
  solve_cmd->add_option("--external-solver", external,
                        "Solver command; {cnf} and {out} name the files");
  solve_cmd->add_option("--timeout", timeout, "Seconds");
  solve_cmd->add_flag("--stats", stats, "Print statistics to stderr");

  // oracle
  CommonOptions oracle_opts;
  bool enumerate = false;
  bool brute = false;
  std::string dot_path;
  auto* oracle_cmd = app.add_subcommand("oracle", "Explicit-state solving at fixed bounds");
  add_common(oracle_cmd, oracle_opts);
  oracle_cmd->add_flag("--enumerate", enumerate, "List every solution");
  oracle_cmd->add_flag("--brute-force", brute, "Enumerate substitutions instead of the automaton");
  oracle_cmd->add_option("--dot", dot_path, "Write the first equation's automaton as DOT");

  // encode
  CommonOptions encode_opts;
  std::string out_path, map_path;
  bool enc_no_mdd = false, enc_no_refine = false, enc_no_fold = false;
  auto* encode_cmd = app.add_subcommand("encode", "Write the CNF at fixed bounds");
  add_common(encode_cmd, encode_opts);
  encode_cmd->add_option("-o,--output", out_path, "DIMACS output")->required();
  encode_cmd->add_option("--map", map_path, "Variable map output");
  encode_cmd->add_flag("--no-mdd", enc_no_mdd, "Skip length-abstraction MDDs");
  encode_cmd->add_flag("--no-refine", enc_no_refine, "Skip bound refinement");
  encode_cmd->add_flag("--no-fold", enc_no_fold, "Keep letter comparisons as variables");

  // generate
  int track = 1;
  std::uint64_t seed = 1;
  std::size_t count = 1;
  std::string out_dir = ".";
  std::optional<std::size_t> family, variables, letters, length, equations;
  bool contradiction = false;
  auto* gen_cmd = app.add_subcommand("generate", "Write benchmark instances");
  gen_cmd->add_option("--track", track, "Track 1..5")->check(CLI::Range(1, 5));
  gen_cmd->add_option("--seed", seed, "First seed; instance k uses seed + k");
  gen_cmd->add_option("--count", count, "Number of instances");
  gen_cmd->add_option("--out-dir", out_dir, "Output directory");
  gen_cmd->add_option("--family", family, "Family index n (tracks 2, 3)");
  gen_cmd->add_option("--variables", variables, "Variable pool size");
  gen_cmd->add_option("--letters", letters, "Alphabet size");
  gen_cmd->add_option("--length", length, "Planted word length");
  gen_cmd->add_option("--equations", equations, "Equations per system");
  gen_cmd->add_flag("--contradiction", contradiction,
                    "Track 5: add an unsatisfiable length constraint");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitError;
  }

  try {
    if (*solve_cmd) {
      EquationSystem sys = parse_problem(slurp(solve_opts.file));
      cfg.mode = fixed ? SolveMode::fixed_bounds : SolveMode::iterative;
      cfg.overrides = parse_bound_flags(solve_opts.bounds);
      cfg.default_bound = solve_opts.default_bound;
      cfg.preprocess = !no_pre;
      cfg.refine_bounds = !no_refine;
      cfg.mdd_guiding = !no_mdd;
      cfg.fold_constants = !no_fold;
      if (timeout > 0)
        cfg.timeout = std::chrono::milliseconds(static_cast<long long>(timeout * 1000));
      if (!external.empty())
        cfg.backend = [&](const CnfFormula& f) { return run_external(external, f); };
      if (!cfg.external_model_path.empty() && !fixed)
        throw InvalidInput("--model needs --fixed");
      SolveResult r = solve(sys, cfg);
      std::cout << format_result(r);
      if (stats) std::cerr << format_stats(r);
      return exit_code(r.status);
    }

    if (*oracle_cmd) {
      EquationSystem sys = parse_problem(slurp(oracle_opts.file));
      Bounds b = fixed_bounds(sys, parse_bound_flags(oracle_opts.bounds),
                              oracle_opts.default_bound);
      if (!dot_path.empty()) {
        if (sys.equations.empty()) throw InvalidInput("no equation to draw");
        std::ofstream out(dot_path);
        write_automaton_dot(EquationAutomaton(sys.equations.front(), b, sys.letters), out);
      }
      const bool automaton = !brute && sys.equations.size() == 1 && sys.constraints.empty() &&
                             variables_of(sys.equations.front()).size() == sys.variables.size();
      OracleResult res;
      if (automaton && enumerate)
        res = enumerate_solutions(sys.equations.front(), b, sys.letters);
      else if (automaton)
        res = reachable_search(sys.equations.front(), b, sys.letters);
      else
        res = brute_force_solve(sys, b);
      std::cout << (res.satisfiable ? "SAT\n" : "UNSAT\n");
      if (enumerate)
        for (const auto& s : res.solutions) std::cout << solution_line(s, sys.variables) << '\n';
      return res.satisfiable ? kExitSat : kExitUnsat;
    }

    if (*encode_cmd) {
      EquationSystem sys = parse_problem(slurp(encode_opts.file));
      Bounds b = fixed_bounds(sys, parse_bound_flags(encode_opts.bounds),
                              encode_opts.default_bound);
      SolverConfig ec;
      ec.mdd_guiding = !enc_no_mdd;
      ec.refine_bounds = !enc_no_refine;
      ec.fold_constants = !enc_no_fold;
      ec.dimacs_path = out_path;
      ec.map_path = map_path;
      Encoding enc = encode_bounded(sys, b, ec);
      std::cerr << "c " << enc.formula.num_variables << " variables, "
                << enc.formula.clause_count() << " clauses\n";
      return kExitOther;
    }

    if (*gen_cmd) {
      std::filesystem::create_directories(out_dir);
      for (std::size_t k = 0; k < count; ++k) {
        GenSpec spec = default_spec(track);
        spec.seed = seed + k;
        if (family) spec.family = *family;
        if (variables) spec.variables = *variables;
        if (letters) spec.letters = *letters;
        if (length) spec.length = *length;
        if (equations) spec.equations = *equations;
        spec.contradiction = contradiction;
        Instance inst = generate(spec);
        const auto path = std::filesystem::path(out_dir) / (inst.name + ".txt");
        std::ofstream out(path, std::ios::binary);
        out << serialize(inst);
        if (!out) throw Error("cannot write '" + path.string() + "'");
        std::cout << path.string() << '\n';
      }
      return kExitOther;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  }
  return kExitOther;
}
