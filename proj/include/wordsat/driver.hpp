#pragma once

// Solve pipeline: preprocessing, bound refinement, MDD construction,
// encoding, SAT solving, decoding and verification. Fixed-bounds and
// iterative-deepening modes.

#include <chrono>
#include <cstddef>
#include <functional>
#include <optional>
#include <string>

#include "wordsat/core.hpp"
#include "wordsat/encoder.hpp"
#include "wordsat/preprocess.hpp"
#include "wordsat/sat.hpp"

namespace wordsat {

enum class SolveMode : std::uint8_t { fixed_bounds, iterative };

struct SolverConfig {
  SolveMode mode = SolveMode::iterative;
  std::size_t max_iterations = 64;
  /// Frozen across iterations; in fixed mode they override sys.bounds.
  Bounds overrides;
  /// Fixed mode: bound for variables with neither an override nor a bound in
  /// the problem.
  std::size_t default_bound = 1;
  /// Iterative mode caps bounds at min(2^n, bound_ceiling), n the longest
  /// equation side. no_ceiling drops the ceiling.
  std::size_t bound_ceiling = 128;
  bool no_ceiling = false;

  bool preprocess = true;
  bool refine_bounds = true;
  bool mdd_guiding = true;
  bool fold_constants = true;

  /// Exports of the last encoded formula; empty means no export.
  std::string dimacs_path;
  std::string map_path;
  /// DOT rendering of the MDDs of the last encoding.
  std::string mdd_dot_path;
  /// Read the verdict from an external solver's output file instead of
  /// solving (fixed mode only).
  std::string external_model_path;
  /// Replaces the internal solver when set.
  std::function<SolverVerdict(const CnfFormula&)> backend;

  std::optional<std::chrono::milliseconds> timeout;
};

struct SolveStats {
  std::size_t iterations = 0;
  Bounds bounds;  // of the last encoding
  int cnf_variables = 0;
  std::size_t cnf_clauses = 0;
  double seconds = 0;
  /// "preprocess", "length", "sat", "cap" or "timeout".
  std::string decided_by;
};

struct SolveResult {
  Status status = Status::unknown;
  std::optional<Substitution> substitution;
  /// Declaration order for printing.
  std::string variables;
  SolveStats stats;
};

/// `b` must bound every declared variable. Both SAT and UNSAT are
/// definitive for the bounded problem. Throws SoundnessError if a model does
/// not verify.
SolveResult solve_bounded(const EquationSystem& sys, const Bounds& b,
                          const SolverConfig& cfg = {});

/// Bounds i^2 for i = 1, 2, ... up to the cap. UNSAT only comes from
/// preprocessing; an exhausted schedule gives UNKNOWN.
SolveResult solve_iterative(const EquationSystem& sys,
                            const SolverConfig& cfg = {});

/// Dispatches on cfg.mode. Fixed mode completes sys.bounds with overrides
/// and default_bound.
SolveResult solve(const EquationSystem& sys, const SolverConfig& cfg = {});

/// The formula a bounded pass hands to the SAT backend, without
/// preprocessing: bounds refined per cfg, MDDs for the constraints (and for
/// the length abstractions when guiding is on), then the encoding. An empty
/// MDD shows up as an empty clause.
Encoding encode_bounded(const EquationSystem& sys, const Bounds& b,
                        const SolverConfig& cfg = {});

/// Bound cap of the iterative schedule.
std::size_t bound_cap(const EquationSystem& sys, const SolverConfig& cfg);

/// "SAT\n" plus "<V> = <word>" per declared variable, or "UNSAT\n" /
/// "UNKNOWN\n".
std::string format_result(const SolveResult& r);
std::string format_stats(const SolveResult& r);

}  // namespace wordsat
