#pragma once

// Explicit-state equation automaton over filled patterns, plus a brute-force
// enumerator over all bounded substitutions. Both are exact and slow; they
// exist to solve tiny instances and to check everything else.

#include <cstddef>
#include <iosfwd>
#include <set>
#include <string>
#include <vector>

#include "wordsat/core.hpp"

namespace wordsat {

struct AutomatonState {
  std::size_t i = 0;  // position in the filled lhs
  std::size_t j = 0;  // position in the filled rhs
  PartialFilledAssignment assignment;

  friend bool operator==(const AutomatonState&,
                         const AutomatonState&) = default;
  friend auto operator<=>(const AutomatonState&,
                          const AutomatonState&) = default;
};

struct OracleResult {
  bool satisfiable = false;
  /// Only filled by the enumerating entry points.
  std::set<Substitution> solutions;
};

/// A bounded single equation prepared for the automaton.
class EquationAutomaton {
 public:
  EquationAutomaton(const WordEquation& e, const Bounds& b,
                    std::string letters);

  const FilledPattern& lhs() const { return lhs_; }
  const FilledPattern& rhs() const { return rhs_; }
  const std::string& letters() const { return letters_; }
  /// Variables of the equation with their bounds.
  const Bounds& bounds() const { return bounds_; }

  AutomatonState initial() const { return {}; }
  bool accepting(const AutomatonState& s) const {
    return s.i == lhs_.size() && s.j == rhs_.size();
  }

 private:
  FilledPattern lhs_;
  FilledPattern rhs_;
  std::string letters_;
  Bounds bounds_;
};

/// Diagonal moves on every a in letters+lambda compatible with both cells,
/// horizontal lambda moves on the lhs cell, vertical lambda moves on the rhs
/// cell. Duplicate targets are merged.
std::vector<AutomatonState> successors(const AutomatonState& st,
                                       const EquationAutomaton& a);

/// Memoized depth-first reachability of an accepting state.
OracleResult reachable_search(const WordEquation& e, const Bounds& b,
                              const std::string& letters);

/// All solutions decoded from reachable accepting states. Throws
/// ResourceLimit once more than `state_limit` states were visited.
OracleResult enumerate_solutions(const WordEquation& e, const Bounds& b,
                                 const std::string& letters,
                                 std::size_t state_limit = 1'000'000);

/// Every substitution with |S(X)| <= b_X over sys.letters, filtered by
/// verify_solution. Covers all declared variables. Throws ResourceLimit if
/// the candidate count exceeds `candidate_limit`.
OracleResult brute_force_solve(const EquationSystem& sys, const Bounds& b,
                               std::size_t candidate_limit = 5'000'000);

/// Reachable state graph with states grouped into one cluster per location.
void write_automaton_dot(const EquationAutomaton& a, std::ostream& out,
                         std::size_t state_limit = 10'000);

}  // namespace wordsat
