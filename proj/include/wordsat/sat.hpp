#pragma once

// CNF satisfiability: an in-process CDCL solver, all-models enumeration, and
// DIMACS / SAT-competition text interchange.

#include <chrono>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "wordsat/cnf.hpp"
#include "wordsat/core.hpp"

namespace wordsat {

enum class SatStatus : std::uint8_t { satisfiable, unsatisfiable, unknown };

struct SolverVerdict {
  SatStatus status = SatStatus::unknown;
  /// model[v] for v in 1..num_variables; model[0] is unused.
  std::vector<bool> model;

  bool value(int var) const { return model.at(static_cast<std::size_t>(var)); }
};

struct SolveLimits {
  std::optional<std::uint64_t> max_conflicts;
  std::optional<std::chrono::steady_clock::time_point> deadline;
};

class DimacsError : public Error {
 public:
  using Error::Error;
};

/// A model that does not satisfy the formula it claims to satisfy.
class IntegrityError : public Error {
 public:
  using Error::Error;
};

/// Incremental CDCL solver: two watched literals, VSIDS decision order with
/// phase saving, first-UIP learning, Luby restarts, and activity-based
/// learnt-clause deletion. Clauses may be added between solve() calls.
class Solver {
 public:
  Solver();
  ~Solver();
  Solver(const Solver&) = delete;
  Solver& operator=(const Solver&) = delete;

  void reserve_variables(int n);
  int variable_count() const;

  /// Returns false once the clause set is known to be unsatisfiable.
  bool add_clause(std::span<const int> literals);

  SatStatus solve(const SolveLimits& limits = {});

  /// Valid after solve() returned satisfiable.
  bool model_value(int var) const;
  std::vector<bool> model() const;

  std::uint64_t conflicts() const;
  std::uint64_t decisions() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

bool satisfies(const CnfFormula& f, const std::vector<bool>& model);

/// Solves with a fresh solver. Every SAT model is re-checked against the
/// clauses before it is returned.
SolverVerdict solve(const CnfFormula& f, const SolveLimits& limits = {});

struct ModelEnumeration {
  /// Each model is the list of projected variables that are true, in
  /// projection order.
  std::vector<std::vector<int>> models;
  bool limit_reached = false;
};

/// Enumerates distinct models projected onto `projection` by adding one
/// blocking clause per model. Stops after `limit` models (flagging
/// limit_reached when more exist).
ModelEnumeration enumerate_models(const CnfFormula& f,
                                  std::span<const int> projection,
                                  std::size_t limit);

/// "p cnf <vars> <clauses>" followed by one zero-terminated clause per line.
/// Comment lines come first; assumptions are written as trailing unit
/// clauses.
void write_dimacs(const CnfFormula& f, std::ostream& out,
                  const std::vector<std::string>& comments = {});

CnfFormula read_dimacs(std::istream& in);

/// Parses SAT-competition solver output ("s ..." status line and "v ..."
/// literal lines). Variables not mentioned default to false. A SAT model
/// is checked against `f`.
SolverVerdict read_external_model(std::string_view text, const CnfFormula& f);

}  // namespace wordsat
