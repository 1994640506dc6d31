#pragma once

// Alphabets, patterns, bounded word equations, filled variables and
// substitutions.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace wordsat {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A bound, declaration or arity problem in an otherwise well-formed input.
class InvalidInput : public Error {
 public:
  using Error::Error;
};

/// An explicit size cutoff was exceeded by an exhaustive procedure.
class ResourceLimit : public Error {
 public:
  using Error::Error;
};

/// A solver claimed SAT but the decoded substitution does not verify.
class SoundnessError : public Error {
 public:
  using Error::Error;
};

enum class SymbolKind : std::uint8_t { letter, variable };

struct Symbol {
  SymbolKind kind = SymbolKind::letter;
  char id = 0;

  static constexpr Symbol letter(char c) { return {SymbolKind::letter, c}; }
  static constexpr Symbol variable(char c) { return {SymbolKind::variable, c}; }

  constexpr bool is_letter() const { return kind == SymbolKind::letter; }
  constexpr bool is_variable() const { return kind == SymbolKind::variable; }

  friend constexpr auto operator<=>(const Symbol&, const Symbol&) = default;
};

using Pattern = std::vector<Symbol>;
/// A word over the letter alphabet.
using Word = std::string;

struct WordEquation {
  Pattern lhs;
  Pattern rhs;

  friend bool operator==(const WordEquation&, const WordEquation&) = default;
};

/// Per-variable maximal substitution lengths.
using Bounds = std::map<char, std::size_t>;

/// Variable -> word. Letters are fixed implicitly.
using Substitution = std::map<char, Word>;

enum class Relation : std::uint8_t { less_equal, equal };

/// sum_X coefficients[X] * |S(X)|  (<= | =)  bound
struct LinearConstraint {
  std::map<char, std::int64_t> coefficients;
  std::int64_t bound = 0;
  Relation relation = Relation::less_equal;

  bool holds(const std::map<char, std::size_t>& lengths) const;

  friend bool operator==(const LinearConstraint&,
                         const LinearConstraint&) = default;
};

struct EquationSystem {
  std::string letters;    // declaration order
  std::string variables;  // declaration order
  std::vector<WordEquation> equations;
  std::vector<LinearConstraint> constraints;
  /// Possibly partial; missing variables are unbounded until a driver fills
  /// them in.
  Bounds bounds;

  bool is_letter(char c) const;
  bool is_variable(char c) const;

  /// Throws InvalidInput if alphabets overlap or an undeclared symbol is used.
  void validate() const;

  friend bool operator==(const EquationSystem&,
                         const EquationSystem&) = default;
};

/// Uppercase ASCII characters become variables, everything else letters.
Pattern pattern_from_string(std::string_view text);
std::string to_string(const Pattern& p);
std::string to_string(const WordEquation& e);
WordEquation make_equation(std::string_view lhs, std::string_view rhs);

/// Builds a system whose alphabets are the symbols occurring in the given
/// equations, in order of first occurrence.
EquationSystem make_system(
    const std::vector<std::pair<std::string, std::string>>& equations);

/// Variables of a pattern in order of first occurrence.
std::string variables_of(const Pattern& p);
std::string variables_of(const WordEquation& e);

bool is_ground(const Pattern& p);

// ---------------------------------------------------------------------------
// Filled patterns
// ---------------------------------------------------------------------------

/// The index-th single-character slot X^(index) of variable `base`.
struct FilledVariable {
  char base = 0;
  std::uint32_t index = 0;

  friend constexpr auto operator<=>(const FilledVariable&,
                                    const FilledVariable&) = default;
};

/// A position of a filled pattern: a letter or a filled variable.
class Cell {
 public:
  static constexpr Cell letter(char c) { return Cell(c, {}); }
  static constexpr Cell slot(FilledVariable v) { return Cell(0, v); }

  constexpr bool is_letter() const { return letter_ != 0; }
  constexpr char letter() const { return letter_; }
  constexpr FilledVariable variable() const { return variable_; }

  friend constexpr auto operator<=>(const Cell&, const Cell&) = default;

 private:
  constexpr Cell(char l, FilledVariable v) : letter_(l), variable_(v) {}
  char letter_;
  FilledVariable variable_;
};

using FilledPattern = std::vector<Cell>;

/// A letter, or std::nullopt for the padding symbol lambda.
using FilledValue = std::optional<char>;
inline constexpr FilledValue kLambda = std::nullopt;

using FilledAssignment = std::map<FilledVariable, FilledValue>;

FilledPattern fill_pattern(const Pattern& p, const Bounds& b);

FilledAssignment induced_filled_assignment(const Substitution& s,
                                           const Bounds& b);

/// Concatenates the slots of every bounded variable, dropping lambda
/// wherever it occurs.
Substitution decode_filled_assignment(const FilledAssignment& f,
                                      const Bounds& b);

Word apply_substitution(const Substitution& s, const Pattern& p);

/// True iff every equation holds, every bound in sys.bounds is respected and
/// every linear constraint holds for the induced length vector. Variables
/// that occur nowhere may be absent from `s`.
bool verify_solution(const Substitution& s, const EquationSystem& sys);

// ---------------------------------------------------------------------------
// Partial filled assignments (automaton states)
// ---------------------------------------------------------------------------

/// Anything that can appear on either side of the congruence: a letter, a
/// filled variable, or lambda itself.
class Operand {
 public:
  static constexpr Operand letter(char c) { return Operand(Kind::letter, c, {}); }
  static constexpr Operand slot(FilledVariable v) {
    return Operand(Kind::slot, 0, v);
  }
  static constexpr Operand lambda() { return Operand(Kind::lambda, 0, {}); }
  static constexpr Operand of(const Cell& c) {
    return c.is_letter() ? letter(c.letter()) : slot(c.variable());
  }

  constexpr bool is_slot() const { return kind_ == Kind::slot; }
  constexpr FilledVariable variable() const { return variable_; }

  friend class PartialFilledAssignment;

 private:
  enum class Kind : std::uint8_t { letter, slot, lambda };
  constexpr Operand(Kind k, char c, FilledVariable v)
      : kind_(k), letter_(c), variable_(v) {}
  Kind kind_;
  char letter_;
  FilledVariable variable_;
};

/// Letters and lambda are implicitly bound to themselves; filled variables
/// are bound on first extension and never rebound.
class PartialFilledAssignment {
 public:
  /// std::nullopt when the operand is an unbound filled variable.
  std::optional<FilledValue> lookup(const Operand& x) const;

  /// Binds x to v if x is an unbound filled variable; otherwise returns an
  /// unchanged copy.
  PartialFilledAssignment extend(const Operand& x, FilledValue v) const;

  const std::map<FilledVariable, FilledValue>& bindings() const {
    return bindings_;
  }

  friend bool operator==(const PartialFilledAssignment&,
                         const PartialFilledAssignment&) = default;
  friend auto operator<=>(const PartialFilledAssignment&,
                          const PartialFilledAssignment&) = default;

 private:
  std::map<FilledVariable, FilledValue> bindings_;
};

/// x ~ y under s: equal images, or either image undefined.
bool compatible(const Operand& x, const Operand& y,
                const PartialFilledAssignment& s);

}  // namespace wordsat
