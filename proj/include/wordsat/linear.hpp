#pragma once

// Length abstraction of word equations, bound refinement, and layered
// decision diagrams (MDDs) over substitution lengths.

#include <cstdint>
#include <iosfwd>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "wordsat/core.hpp"

namespace wordsat {

/// sum_X coefficients[X] * |S(X)| = target, with
/// coefficients[X] = |u|_X - |v|_X and target = sum_a (|v|_a - |u|_a).
struct LinearAbstraction {
  std::map<char, std::int64_t> coefficients;
  std::int64_t target = 0;

  LinearAbstraction negated() const;
  LinearConstraint as_constraint() const;

  friend bool operator==(const LinearAbstraction&,
                         const LinearAbstraction&) = default;
};

LinearAbstraction length_abstraction(const WordEquation& e);

/// Tightens the bounds of variables with a nonzero coefficient using the
/// closed-form upper bound derived from the abstraction. A bound is replaced
/// only when the derived value lies strictly between 0 and the old bound.
Bounds refine_bounds(const LinearAbstraction& a, const Bounds& b);

/// Feasibility of the abstraction over all natural-number lengths (no
/// bounds): sign and gcd conditions only. Sound but not complete.
bool feasible_unbounded(const LinearAbstraction& a);

struct MddNode {
  int layer = -1;  // -1 is the root layer
  std::int64_t sum = 0;

  friend auto operator<=>(const MddNode&, const MddNode&) = default;
};

/// Layered DAG of partial sums. Layer l (0-based) corresponds to variables[l];
/// an edge from (l-1, s) to (l, s + k * coefficients[l]) exists for every
/// k in [0, bounds[l]].
class Mdd {
 public:
  std::string variables;
  std::vector<std::int64_t> coefficients;
  std::vector<std::size_t> bounds;
  /// sums[l + 1] holds the partial sums present at layer l.
  std::vector<std::set<std::int64_t>> sums;
  /// Subset of the last layer.
  std::set<std::int64_t> accepting;

  std::size_t layer_count() const { return variables.size(); }
  bool contains(MddNode n) const;
  bool empty() const { return accepting.empty(); }
  std::size_t node_count() const;
  std::vector<MddNode> nodes() const;
  int last_layer() const { return static_cast<int>(variables.size()) - 1; }
  const std::set<std::int64_t>& layer(int l) const { return sums[l + 1]; }
};

/// Builds the forward layers of `c` over the variables of `order` that carry a
/// coefficient in `c` (in that order). Equality constraints accept exactly
/// the bound; <= constraints accept every last-layer sum not above it.
Mdd build_mdd(const LinearConstraint& c, const Bounds& b,
              const std::string& order);
Mdd build_mdd(const LinearAbstraction& a, const Bounds& b,
              const std::string& order);

/// Keeps only nodes from which an accepting node is reachable.
Mdd reduce_mdd(const Mdd& m);

bool feasible(const LinearAbstraction& a, const Bounds& b);

/// Graphviz rendering, one rank per layer.
void write_mdd_dot(const Mdd& m, std::ostream& out,
                   const std::string& name = "mdd");

}  // namespace wordsat
