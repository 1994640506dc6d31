#pragma once

// Seeded generators for five benchmark families: planted random equations
// (1), the exponential-solution family (2), that family with separators
// replaced by random equation sides (3), systems of planted equations (4),
// and such systems with linear length constraints (5).
//
// Planted instances: every variable gets a hidden word of length
// 1..max_factor. A random word is built from letters and copies of hidden
// words; each side independently replaces occurrences of hidden words by
// their variable with probability 1/2. Both sides then map back to the same
// word, so the hidden assignment is a solution.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <string>

#include "wordsat/core.hpp"

namespace wordsat {

struct GenSpec {
  int track = 1;
  std::uint64_t seed = 1;
  std::size_t variables = 15;  // at most 26
  std::size_t letters = 10;    // at most 26
  std::size_t length = 300;    // of the planted word per equation
  std::size_t equations = 1;
  std::size_t max_factor = 3;
  /// Family index of tracks 2 and 3.
  std::size_t family = 2;
  /// Track 3: how many separator pairs get replaced (clamped to n-1).
  std::size_t replacements = SIZE_MAX;
  /// Track 5: number of witness-derived constraints.
  std::size_t constraints = 3;
  /// Track 5: add sum |X| <= -1 instead of witness-derived constraints.
  bool contradiction = false;
};

/// Track defaults: 1 -> 15 variables, 10 letters, length 300; 4 -> 100
/// equations with 10 variables, 6 letters, length 60; 5 -> as 4 but 30
/// equations; 2 and 3 -> family 2.
GenSpec default_spec(int track);

struct Instance {
  EquationSystem system;
  /// Present for instances satisfiable by construction.
  std::optional<Substitution> witness;
  bool satisfiable = true;
  std::string name;
};

Instance gen_track1(const GenSpec& spec);
/// Throws InvalidInput for n = 0 or n > 26. Variables X_1..X_n are named
/// A, B, ...
WordEquation gen_track2(std::size_t n);
/// The solution X_k = a^(2^k) of gen_track2(n).
Substitution track2_solution(std::size_t n);
Instance gen_track3(const GenSpec& spec);
Instance gen_track4(const GenSpec& spec);
Instance gen_track5(const GenSpec& spec);
Instance generate(const GenSpec& spec);

/// Problem-file text with a comment header (generator parameters and
/// witness). Equal specs give byte-identical output.
std::string serialize(const Instance& inst);

/// Unbiased integer sampling on top of mt19937_64, independent of the
/// standard library's distribution implementations.
class PortableRng {
 public:
  explicit PortableRng(std::uint64_t seed) : engine_(seed) {}
  /// Uniform in [0, n); n must be positive.
  std::uint64_t below(std::uint64_t n);
  /// Uniform in [lo, hi].
  std::int64_t between(std::int64_t lo, std::int64_t hi);
  bool coin() { return below(2) == 1; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace wordsat
