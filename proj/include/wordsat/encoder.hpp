#pragma once

// Propositional encoding of bounded word-equation systems: letter cells,
// character matching, the reachability grid over filled-pattern positions,
// one-hot substitution lengths, and MDD path constraints.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "wordsat/cnf.hpp"
#include "wordsat/core.hpp"
#include "wordsat/linear.hpp"

namespace wordsat {

/// K(X,i,a): slot X^(i) holds a (lambda when value is empty).
struct CellKey {
  char var = 0;
  std::uint32_t index = 0;
  FilledValue value;
  friend auto operator<=>(const CellKey&, const CellKey&) = default;
};
/// WM(eq,i,j): lhs cell i and rhs cell j carry the same symbol.
struct MatchKey {
  std::size_t eq = 0, i = 0, j = 0;
  friend auto operator<=>(const MatchKey&, const MatchKey&) = default;
};
/// S(eq,i,j): the walk over equation eq visits location (i,j).
struct GridKey {
  std::size_t eq = 0, i = 0, j = 0;
  friend auto operator<=>(const GridKey&, const GridKey&) = default;
};
/// OH(X,len): |S(X)| = len.
struct OneHotKey {
  char var = 0;
  std::size_t length = 0;
  friend auto operator<=>(const OneHotKey&, const OneHotKey&) = default;
};
/// M(c,layer,sum): node of the MDD of constraint c lies on the length path.
struct MddKey {
  std::size_t constraint = 0;
  int layer = 0;
  std::int64_t sum = 0;
  friend auto operator<=>(const MddKey&, const MddKey&) = default;
};
struct AuxKey {
  std::size_t id = 0;
  friend auto operator<=>(const AuxKey&, const AuxKey&) = default;
};

using VariableKey =
    std::variant<CellKey, MatchKey, GridKey, OneHotKey, MddKey, AuxKey>;

std::string describe(const VariableKey& k);

/// Bijection between semantic keys and DIMACS variables 1..size().
class VariableRegistry {
 public:
  /// Throws std::logic_error if the key is already registered.
  int add(const VariableKey& k);
  /// 0 when absent.
  int find(const VariableKey& k) const;
  /// Throws std::out_of_range when absent.
  int at(const VariableKey& k) const;
  const VariableKey& key(int var) const { return keys_.at(var - 1); }
  int size() const { return static_cast<int>(keys_.size()); }

  template <class T>
  std::size_t count() const {
    std::size_t n = 0;
    for (const auto& k : keys_) n += std::holds_alternative<T>(k) ? 1 : 0;
    return n;
  }

  /// One "<number> <key>" line per variable.
  void write_map(std::ostream& out) const;

 private:
  std::vector<VariableKey> keys_;
  std::map<VariableKey, int> index_;
};

/// A literal or a propositional constant.
class Term {
 public:
  static constexpr Term constant(bool v) { return Term(0, v); }
  static constexpr Term literal(int lit) { return Term(lit, false); }

  constexpr bool is_constant() const { return lit_ == 0; }
  constexpr bool is_true() const { return lit_ == 0 && value_; }
  constexpr bool is_false() const { return lit_ == 0 && !value_; }
  constexpr int lit() const { return lit_; }
  constexpr Term operator~() const {
    return is_constant() ? constant(!value_) : literal(-lit_);
  }

  friend constexpr bool operator==(const Term&, const Term&) = default;

 private:
  constexpr Term(int lit, bool v) : lit_(lit), value_(v) {}
  int lit_;
  bool value_;
};

struct EncodeOptions {
  /// Fold letter comparisons to constants. When off, constants are carried
  /// by one auxiliary variable fixed to true and every WM is registered.
  bool fold_constants = true;
};

struct Encoding {
  CnfFormula formula;
  VariableRegistry registry;
  std::string letters;
  std::string variables;
  Bounds bounds;
  std::vector<std::pair<FilledPattern, FilledPattern>> equations;

  /// All K variables, in registration order.
  std::vector<int> cell_variables() const;
  FilledAssignment decode_cells(const std::vector<bool>& model) const;
  Substitution decode(const std::vector<bool>& model) const;
};

/// Incremental builder. encode_system() runs the blocks in the canonical
/// order: cells, one-hot lengths, equations, MDDs.
class Encoder {
 public:
  /// `variables` fixes the registration order; bounded variables missing
  /// from it are appended in key order.
  Encoder(std::string letters, const std::string& variables, Bounds bounds,
          EncodeOptions opts = {});

  const VariableRegistry& registry() const { return enc_.registry; }
  const CnfFormula& formula() const { return enc_.formula; }

  Term word_literal(const Cell& c, FilledValue a);

  /// Exactly-one per slot, plus lambda-suffix chains.
  void encode_cells();
  void encode_onehot();

  /// Fills the equation's sides and returns its id.
  std::size_t declare_equation(const WordEquation& e);
  void encode_match(std::size_t eq);
  /// Registers every S(eq,i,j), emits the grid constraints and asserts the
  /// initial and accepting locations.
  void encode_grid(std::size_t eq);
  std::size_t add_equation(const WordEquation& e);

  /// `m` should be reduced; an empty MDD yields the empty clause.
  void encode_mdd(const Mdd& m, std::size_t constraint);

  Encoding finish() &&;

 private:
  Term match(std::size_t eq, std::size_t i, std::size_t j) const;
  Term grid(std::size_t eq, std::size_t i, std::size_t j) const;
  Term lambda_at(const FilledPattern& p, std::size_t i);
  Term materialize(Term t);
  int fresh();
  /// AND of the terms as a single term, adding an auxiliary if needed.
  Term conjunction(const std::vector<Term>& terms);
  void emit(std::vector<Term> clause);

  Encoding enc_;
  EncodeOptions opts_;
  std::vector<std::map<std::pair<std::size_t, std::size_t>, Term>> matches_;
  std::size_t aux_count_ = 0;
  int true_var_ = 0;
};

/// Bounds must cover every declared variable. `mdds` are numbered by
/// position.
Encoding encode_system(const EquationSystem& sys, const Bounds& b,
                       const std::vector<Mdd>& mdds = {},
                       EncodeOptions opts = {});

}  // namespace wordsat
