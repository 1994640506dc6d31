#include "wordsat/core.hpp"

#include <algorithm>
#include <cctype>

namespace wordsat {

bool LinearConstraint::holds(const std::map<char, std::size_t>& lengths) const {
  std::int64_t sum = 0;
  for (const auto& [var, coeff] : coefficients) {
    auto it = lengths.find(var);
    if (it == lengths.end()) return false;
    sum += coeff * static_cast<std::int64_t>(it->second);
  }
  return relation == Relation::equal ? sum == bound : sum <= bound;
}

bool EquationSystem::is_letter(char c) const {
  return letters.find(c) != std::string::npos;
}

bool EquationSystem::is_variable(char c) const {
  return variables.find(c) != std::string::npos;
}

void EquationSystem::validate() const {
  for (char c : letters) {
    if (is_variable(c))
      throw InvalidInput(std::string("symbol '") + c +
                         "' declared both as letter and as variable");
    if (std::count(letters.begin(), letters.end(), c) != 1)
      throw InvalidInput(std::string("letter '") + c + "' declared twice");
  }
  for (char c : variables)
    if (std::count(variables.begin(), variables.end(), c) != 1)
      throw InvalidInput(std::string("variable '") + c + "' declared twice");

  auto check = [&](const Pattern& p) {
    for (const Symbol& s : p) {
      bool ok = s.is_letter() ? is_letter(s.id) : is_variable(s.id);
      if (!ok)
        throw InvalidInput(std::string("undeclared ") +
                           (s.is_letter() ? "letter" : "variable") + " '" +
                           s.id + "'");
    }
  };
  for (const auto& e : equations) {
    check(e.lhs);
    check(e.rhs);
  }
  for (const auto& c : constraints)
    for (const auto& [var, coeff] : c.coefficients)
      if (!is_variable(var))
        throw InvalidInput(std::string("constraint uses undeclared variable '") +
                           var + "'");
  for (const auto& [var, bound] : bounds)
    if (!is_variable(var))
      throw InvalidInput(std::string("bound for undeclared variable '") + var +
                         "'");
}

Pattern pattern_from_string(std::string_view text) {
  Pattern p;
  p.reserve(text.size());
  for (char c : text)
    p.push_back(std::isupper(static_cast<unsigned char>(c)) ? Symbol::variable(c)
                                                             : Symbol::letter(c));
  return p;
}

std::string to_string(const Pattern& p) {
  std::string out;
  out.reserve(p.size());
  for (const Symbol& s : p) out.push_back(s.id);
  return out;
}

std::string to_string(const WordEquation& e) {
  return to_string(e.lhs) + " = " + to_string(e.rhs);
}

WordEquation make_equation(std::string_view lhs, std::string_view rhs) {
  return {pattern_from_string(lhs), pattern_from_string(rhs)};
}

EquationSystem make_system(
    const std::vector<std::pair<std::string, std::string>>& equations) {
  EquationSystem sys;
  for (const auto& [l, r] : equations) {
    WordEquation e = make_equation(l, r);
    for (const Pattern* side : {&e.lhs, &e.rhs})
      for (const Symbol& s : *side) {
        std::string& alphabet = s.is_letter() ? sys.letters : sys.variables;
        if (alphabet.find(s.id) == std::string::npos) alphabet.push_back(s.id);
      }
    sys.equations.push_back(std::move(e));
  }
  return sys;
}

std::string variables_of(const Pattern& p) {
  std::string out;
  for (const Symbol& s : p)
    if (s.is_variable() && out.find(s.id) == std::string::npos)
      out.push_back(s.id);
  return out;
}

std::string variables_of(const WordEquation& e) {
  std::string out = variables_of(e.lhs);
  for (char c : variables_of(e.rhs))
    if (out.find(c) == std::string::npos) out.push_back(c);
  return out;
}

bool is_ground(const Pattern& p) {
  return std::all_of(p.begin(), p.end(),
                     [](const Symbol& s) { return s.is_letter(); });
}

FilledPattern fill_pattern(const Pattern& p, const Bounds& b) {
  FilledPattern out;
  for (const Symbol& s : p) {
    if (s.is_letter()) {
      out.push_back(Cell::letter(s.id));
      continue;
    }
    auto it = b.find(s.id);
    if (it == b.end())
      throw InvalidInput(std::string("no bound for variable '") + s.id + "'");
    for (std::uint32_t i = 0; i < it->second; ++i)
      out.push_back(Cell::slot({s.id, i}));
  }
  return out;
}

FilledAssignment induced_filled_assignment(const Substitution& s,
                                           const Bounds& b) {
  FilledAssignment out;
  for (const auto& [var, bound] : b) {
    auto it = s.find(var);
    const Word empty;
    const Word& w = it == s.end() ? empty : it->second;
    if (w.size() > bound)
      throw InvalidInput(std::string("substitution of '") + var +
                         "' exceeds its bound");
    for (std::uint32_t i = 0; i < bound; ++i)
      out[{var, i}] = i < w.size() ? FilledValue(w[i]) : kLambda;
  }
  return out;
}

Substitution decode_filled_assignment(const FilledAssignment& f,
                                      const Bounds& b) {
  Substitution out;
  for (const auto& [var, bound] : b) {
    Word w;
    for (std::uint32_t i = 0; i < bound; ++i) {
      auto it = f.find({var, i});
      if (it != f.end() && it->second) w.push_back(*it->second);
    }
    out[var] = std::move(w);
  }
  return out;
}

Word apply_substitution(const Substitution& s, const Pattern& p) {
  Word out;
  for (const Symbol& sym : p) {
    if (sym.is_letter()) {
      out.push_back(sym.id);
      continue;
    }
    auto it = s.find(sym.id);
    if (it == s.end())
      throw InvalidInput(std::string("substitution does not map '") + sym.id +
                         "'");
    out += it->second;
  }
  return out;
}

bool verify_solution(const Substitution& s, const EquationSystem& sys) {
  auto mapped = [&](const Pattern& p) {
    return std::all_of(p.begin(), p.end(), [&](const Symbol& sym) {
      return sym.is_letter() || s.count(sym.id) != 0;
    });
  };
  for (const auto& e : sys.equations) {
    if (!mapped(e.lhs) || !mapped(e.rhs)) return false;
    if (apply_substitution(s, e.lhs) != apply_substitution(s, e.rhs))
      return false;
  }
  for (const auto& [var, bound] : sys.bounds) {
    auto it = s.find(var);
    if (it != s.end() && it->second.size() > bound) return false;
  }
  std::map<char, std::size_t> lengths;
  for (const auto& [var, word] : s) lengths[var] = word.size();
  for (const auto& c : sys.constraints) {
    // Unmapped variables are read as empty; they occur in no equation.
    auto filled = lengths;
    for (const auto& [var, coeff] : c.coefficients) filled.try_emplace(var, 0);
    if (!c.holds(filled)) return false;
  }
  return true;
}

std::optional<FilledValue> PartialFilledAssignment::lookup(
    const Operand& x) const {
  switch (x.kind_) {
    case Operand::Kind::letter:
      return FilledValue(x.letter_);
    case Operand::Kind::lambda:
      return FilledValue(kLambda);
    case Operand::Kind::slot: {
      auto it = bindings_.find(x.variable_);
      if (it == bindings_.end()) return std::nullopt;
      return it->second;
    }
  }
  return std::nullopt;
}

PartialFilledAssignment PartialFilledAssignment::extend(const Operand& x,
                                                        FilledValue v) const {
  PartialFilledAssignment out = *this;
  if (x.is_slot()) out.bindings_.try_emplace(x.variable(), v);
  return out;
}

bool compatible(const Operand& x, const Operand& y,
                const PartialFilledAssignment& s) {
  auto sx = s.lookup(x);
  auto sy = s.lookup(y);
  return !sx || !sy || *sx == *sy;
}

}  // namespace wordsat
