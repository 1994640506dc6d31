#pragma once

// Cheap sound simplifications and unsatisfiability checks run before
// encoding.

#include <optional>

#include "wordsat/core.hpp"

namespace wordsat {

enum class Status : std::uint8_t { sat, unsat, unknown };

const char* to_string(Status s);

struct PreprocessVerdict {
  Status status = Status::unknown;
  std::optional<Substitution> witness;  // iff status == sat
  EquationSystem residual;              // meaningful iff status == unknown
};

struct PreprocessOptions {
  bool parikh_check = true;
  /// When set, the length-abstraction feasibility check uses these bounds
  /// (an MDD); otherwise only the unbounded sign/gcd test runs.
  const Bounds* bounds = nullptr;
};

/// Removes the longest common prefix, then the longest common suffix of what
/// remains.
WordEquation strip_common_affixes(const WordEquation& e);

/// Letter clash before the first variable, scanning from the left and from
/// the right.
Status prefix_suffix_mismatch(const WordEquation& e);

/// If one side is ground, every maximal letter run of the other side must
/// occur in it.
Status constant_sequence_mismatch(const WordEquation& e);

/// Equal-length prefixes (or suffixes) with identical variable counts must
/// have identical letter counts.
Status parikh_mismatch(const WordEquation& e);

/// Propagates ground definitions X = w through the system. The definitions
/// stay in the residual, so the solution set is unchanged.
PreprocessVerdict substitution_reasoning(const EquationSystem& sys,
                                         const PreprocessOptions& opts = {});

PreprocessVerdict preprocess_pipeline(const EquationSystem& sys,
                                      const PreprocessOptions& opts = {});

}  // namespace wordsat
