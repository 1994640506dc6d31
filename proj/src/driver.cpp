#include "wordsat/driver.hpp"

#include <algorithm>
#include <fstream>
#include <iterator>
#include <limits>
#include <sstream>

#include "wordsat/encoder.hpp"
#include "wordsat/linear.hpp"

namespace wordsat {

namespace {

using Clock = std::chrono::steady_clock;
using Deadline = std::optional<Clock::time_point>;

struct Pass {
  Status status = Status::unknown;
  std::optional<Substitution> substitution;
  Bounds bounds;
  int cnf_variables = 0;
  std::size_t cnf_clauses = 0;
  std::string decided_by;
};

Bounds refine_fixpoint(const EquationSystem& sys, Bounds b) {
  for (;;) {
    Bounds prev = b;
    for (const auto& e : sys.equations) b = refine_bounds(length_abstraction(e), b);
    // Bounds only shrink, so this terminates.
    if (b == prev) return b;
  }
}

void require_total(const EquationSystem& sys, const Bounds& b) {
  for (char v : sys.variables)
    if (!b.count(v))
      throw InvalidInput(std::string("no bound for variable '") + v + "'");
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open '" + path + "' for writing");
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path + "'");
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::string bounds_text(const Bounds& b) {
  std::string out;
  for (const auto& [v, n] : b) {
    if (!out.empty()) out += ' ';
    out += v;
    out += '=' + std::to_string(n);
  }
  return out;
}

struct Prepared {
  Bounds bounds;
  std::vector<Mdd> mdds;
};

Prepared prepare(const EquationSystem& sys, const Bounds& b,
                 const SolverConfig& cfg) {
  Prepared p;
  p.bounds = cfg.refine_bounds ? refine_fixpoint(sys, b) : b;
  for (const auto& c : sys.constraints)
    p.mdds.push_back(reduce_mdd(build_mdd(c, p.bounds, sys.variables)));
  if (cfg.mdd_guiding)
    for (const auto& e : sys.equations)
      p.mdds.push_back(
          reduce_mdd(build_mdd(length_abstraction(e), p.bounds, sys.variables)));
  if (!cfg.mdd_dot_path.empty()) {
    auto out = open_output(cfg.mdd_dot_path);
    for (std::size_t k = 0; k < p.mdds.size(); ++k)
      write_mdd_dot(p.mdds[k], out, "mdd" + std::to_string(k));
  }
  return p;
}

void export_encoding(const Encoding& enc, const SolverConfig& cfg) {
  if (!cfg.dimacs_path.empty()) {
    auto out = open_output(cfg.dimacs_path);
    write_dimacs(enc.formula, out, {"bounds " + bounds_text(enc.bounds)});
  }
  if (!cfg.map_path.empty()) {
    auto out = open_output(cfg.map_path);
    enc.registry.write_map(out);
  }
}

/// One bounded attempt on `working`; models are verified against
/// `original`, whose bounds are the requested ones.
Pass bounded_pass(const EquationSystem& original, const EquationSystem& working,
                  const Bounds& b, const SolverConfig& cfg, Deadline deadline) {
  Pass p;
  Prepared prep = prepare(working, b, cfg);
  p.bounds = prep.bounds;
  if (std::any_of(prep.mdds.begin(), prep.mdds.end(),
                  [](const Mdd& m) { return m.empty(); })) {
    p.status = Status::unsat;
    p.decided_by = "length";
    return p;
  }

  Encoding enc = encode_system(working, p.bounds, prep.mdds, {cfg.fold_constants});
  p.cnf_variables = enc.formula.num_variables;
  p.cnf_clauses = enc.formula.clause_count();
  export_encoding(enc, cfg);

  SolverVerdict v;
  if (!cfg.external_model_path.empty()) {
    v = read_external_model(read_file(cfg.external_model_path), enc.formula);
  } else if (cfg.backend) {
    v = cfg.backend(enc.formula);
  } else {
    SolveLimits limits;
    limits.deadline = deadline;
    v = solve(enc.formula, limits);
  }

  switch (v.status) {
    case SatStatus::satisfiable: {
      if (!satisfies(enc.formula, v.model))
        throw SoundnessError("backend model violates the encoding");
      Substitution s = enc.decode(v.model);
      if (!verify_solution(s, original))
        throw SoundnessError("decoded substitution does not solve the system");
      p.status = Status::sat;
      p.substitution = std::move(s);
      p.decided_by = "sat";
      break;
    }
    case SatStatus::unsatisfiable:
      p.status = Status::unsat;
      p.decided_by = "sat";
      break;
    case SatStatus::unknown:
      p.decided_by = "timeout";
      break;
  }
  return p;
}

Deadline deadline_of(const SolverConfig& cfg) {
  if (!cfg.timeout) return std::nullopt;
  return Clock::now() + *cfg.timeout;
}

void absorb(SolveResult& r, Pass&& p) {
  r.status = p.status;
  r.substitution = std::move(p.substitution);
  r.stats.bounds = std::move(p.bounds);
  r.stats.cnf_variables = p.cnf_variables;
  r.stats.cnf_clauses = p.cnf_clauses;
  r.stats.decided_by = std::move(p.decided_by);
}

/// False when the witness respects the equations and constraints but not the
/// bounds; throws when it does not even solve the equations.
bool witness_fits(const Substitution& w, const EquationSystem& sys) {
  if (verify_solution(w, sys)) return true;
  EquationSystem unbounded = sys;
  unbounded.bounds.clear();
  if (!verify_solution(w, unbounded))
    throw SoundnessError("preprocessing witness does not solve the system");
  return false;
}

double seconds_since(Clock::time_point t) {
  return std::chrono::duration<double>(Clock::now() - t).count();
}

}  // namespace

SolveResult solve_bounded(const EquationSystem& sys, const Bounds& b,
                          const SolverConfig& cfg) {
  const auto start = Clock::now();
  sys.validate();
  require_total(sys, b);
  SolveResult r;
  r.variables = sys.variables;
  r.stats.iterations = 1;
  r.stats.bounds = b;

  EquationSystem bounded = sys;
  bounded.bounds = b;
  EquationSystem working = bounded;
  if (cfg.preprocess) {
    PreprocessOptions opts;
    opts.bounds = &b;
    PreprocessVerdict v = preprocess_pipeline(bounded, opts);
    if (v.status == Status::sat && !witness_fits(*v.witness, bounded)) {
      // Solves the equations but exceeds a bound; let the encoding decide.
    } else if (v.status != Status::unknown) {
      r.status = v.status;
      r.substitution = std::move(v.witness);
      r.stats.decided_by = "preprocess";
      r.stats.seconds = seconds_since(start);
      return r;
    } else {
      working = std::move(v.residual);
    }
  }
  absorb(r, bounded_pass(bounded, working, b, cfg, deadline_of(cfg)));
  r.stats.seconds = seconds_since(start);
  return r;
}

Encoding encode_bounded(const EquationSystem& sys, const Bounds& b,
                        const SolverConfig& cfg) {
  sys.validate();
  require_total(sys, b);
  Prepared prep = prepare(sys, b, cfg);
  Encoding enc = encode_system(sys, prep.bounds, prep.mdds, {cfg.fold_constants});
  export_encoding(enc, cfg);
  return enc;
}

std::size_t bound_cap(const EquationSystem& sys, const SolverConfig& cfg) {
  std::size_t n = 0;
  for (const auto& e : sys.equations) n = std::max({n, e.lhs.size(), e.rhs.size()});
  std::size_t cap = n >= 63 ? std::numeric_limits<std::size_t>::max()
                            : std::size_t{1} << n;
  if (!cfg.no_ceiling) cap = std::min(cap, cfg.bound_ceiling);
  return std::max<std::size_t>(cap, 1);
}

SolveResult solve_iterative(const EquationSystem& sys, const SolverConfig& cfg) {
  const auto start = Clock::now();
  const Deadline deadline = deadline_of(cfg);
  sys.validate();
  if (cfg.max_iterations == 0)
    throw InvalidInput("max_iterations must be at least 1");
  SolveResult r;
  r.variables = sys.variables;

  Bounds frozen = sys.bounds;
  for (const auto& [v, n] : cfg.overrides) frozen[v] = n;
  EquationSystem base = sys;
  base.bounds = frozen;

  EquationSystem working = base;
  if (cfg.preprocess) {
    PreprocessVerdict v = preprocess_pipeline(base);
    if (v.status == Status::sat && !witness_fits(*v.witness, base)) {
      // Frozen bounds rule the witness out; search within them instead.
    } else if (v.status != Status::unknown) {
      r.status = v.status;
      r.substitution = std::move(v.witness);
      r.stats.decided_by = "preprocess";
      r.stats.seconds = seconds_since(start);
      return r;
    } else {
      working = std::move(v.residual);
    }
  }

  const std::size_t cap = bound_cap(sys, cfg);
  const bool any_free = std::any_of(sys.variables.begin(), sys.variables.end(),
                                    [&](char v) { return !frozen.count(v); });
  r.stats.decided_by = "cap";
  for (std::size_t i = 1; i <= cfg.max_iterations; ++i) {
    if (deadline && Clock::now() >= *deadline) {
      r.stats.decided_by = "timeout";
      break;
    }
    const std::size_t square =
        i > 0xFFFFFFFFu ? std::numeric_limits<std::size_t>::max() : i * i;
    const std::size_t bound = std::min(square, cap);
    Bounds b = frozen;
    for (char v : sys.variables) b.try_emplace(v, bound);

    EquationSystem bounded = base;
    bounded.bounds = b;
    working.bounds = b;
    r.stats.iterations = i;
    r.stats.bounds = b;

    bool infeasible = false;
    if (cfg.preprocess)
      for (const auto& e : working.equations)
        if (!feasible(length_abstraction(e), b)) infeasible = true;
    if (!infeasible) {
      Pass p = bounded_pass(bounded, working, b, cfg, deadline);
      if (p.status == Status::sat) {
        absorb(r, std::move(p));
        break;
      }
      r.stats.cnf_variables = p.cnf_variables;
      r.stats.cnf_clauses = p.cnf_clauses;
      if (p.decided_by == "timeout") {
        r.stats.decided_by = "timeout";
        break;
      }
    }
    if (bound >= cap || !any_free) break;
  }
  // A bounded refutation says nothing about longer solutions.
  if (r.status != Status::sat) r.status = Status::unknown;
  r.stats.seconds = seconds_since(start);
  return r;
}

SolveResult solve(const EquationSystem& sys, const SolverConfig& cfg) {
  if (cfg.mode == SolveMode::iterative) return solve_iterative(sys, cfg);
  Bounds b = sys.bounds;
  for (const auto& [v, n] : cfg.overrides) b[v] = n;
  for (char v : sys.variables) b.try_emplace(v, cfg.default_bound);
  return solve_bounded(sys, b, cfg);
}

std::string format_result(const SolveResult& r) {
  switch (r.status) {
    case Status::unsat:
      return "UNSAT\n";
    case Status::unknown:
      return "UNKNOWN\n";
    case Status::sat:
      break;
  }
  std::string out = "SAT\n";
  for (char v : r.variables) {
    out += v;
    out += " = ";
    if (r.substitution) {
      auto it = r.substitution->find(v);
      if (it != r.substitution->end()) out += it->second;
    }
    out += '\n';
  }
  return out;
}

std::string format_stats(const SolveResult& r) {
  std::ostringstream out;
  out << "c status " << to_string(r.status) << '\n'
      << "c decided-by " << r.stats.decided_by << '\n'
      << "c iterations " << r.stats.iterations << '\n'
      << "c bounds " << bounds_text(r.stats.bounds) << '\n'
      << "c cnf " << r.stats.cnf_variables << " variables, " << r.stats.cnf_clauses
      << " clauses\n"
      << "c time " << r.stats.seconds << " s\n";
  return out.str();
}

}  // namespace wordsat
