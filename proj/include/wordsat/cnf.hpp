#pragma once

#include <cstddef>
#include <vector>

namespace wordsat {

/// Clause database over variables 1..num_variables. Literals are signed
/// DIMACS integers.
struct CnfFormula {
  int num_variables = 0;
  std::vector<std::vector<int>> clauses;
  /// Literals asserted as unit clauses on top of `clauses`.
  std::vector<int> assumptions;

  std::size_t clause_count() const { return clauses.size() + assumptions.size(); }

  friend bool operator==(const CnfFormula&, const CnfFormula&) = default;
};

}  // namespace wordsat
