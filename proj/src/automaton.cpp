#include "wordsat/automaton.hpp"

#include <algorithm>
#include <map>
#include <ostream>
#include <unordered_map>
#include <unordered_set>

namespace wordsat {

namespace {

// Value codes shared by both assignment representations.
constexpr int kUnbound = -1;
constexpr int kLambdaCode = 0;  // letters are 1 + index into the alphabet

struct Move {
  std::size_t di;
  std::size_t dj;
  int value;  // code bound to the consumed cell(s)
};

/// The transition rule. `u`/`v` are the codes of the current cells, or
/// std::nullopt past the end of the respective side.
std::vector<Move> moves(std::optional<int> u, std::optional<int> v,
                        int letter_count) {
  std::vector<Move> out;
  auto fits = [](int cell, int a) { return cell == kUnbound || cell == a; };
  if (u && v)
    for (int a = kLambdaCode; a <= letter_count; ++a)
      if (fits(*u, a) && fits(*v, a)) out.push_back({1, 1, a});
  if (u && fits(*u, kLambdaCode)) out.push_back({1, 0, kLambdaCode});
  if (v && fits(*v, kLambdaCode)) out.push_back({0, 1, kLambdaCode});
  return out;
}

int letter_code(const std::string& letters, char c) {
  auto pos = letters.find(c);
  // Letters outside the alphabet can only ever match themselves, so any
  // code distinct from every alphabet entry works.
  return pos == std::string::npos ? static_cast<int>(letters.size()) + 1 +
                                        static_cast<unsigned char>(c)
                                  : static_cast<int>(pos) + 1;
}

FilledValue decode_value(const std::string& letters, int code) {
  return code == kLambdaCode ? kLambda : FilledValue(letters[code - 1]);
}

/// Dense state representation for search: slot codes indexed by the position
/// of each filled variable in the automaton's slot table.
class DenseSpace {
 public:
  explicit DenseSpace(const EquationAutomaton& a) : a_(a) {
    for (const FilledPattern* side : {&a.lhs(), &a.rhs()})
      for (const Cell& c : *side)
        if (!c.is_letter()) slots_.try_emplace(c.variable(), slots_.size());
    index_of_cell(a.lhs(), lhs_);
    index_of_cell(a.rhs(), rhs_);
  }

  struct State {
    std::size_t i = 0, j = 0;
    std::string codes;  // one signed char per slot
  };

  State initial() const {
    return {0, 0, std::string(slots_.size(), static_cast<char>(kUnbound))};
  }

  std::string key(const State& s) const {
    std::string k = std::to_string(s.i) + ',' + std::to_string(s.j) + ':';
    return k + s.codes;
  }

  bool accepting(const State& s) const {
    return s.i == a_.lhs().size() && s.j == a_.rhs().size();
  }

  template <typename F>
  void for_each_successor(const State& s, F&& f) const {
    auto code = [&](const std::vector<int>& idx, const FilledPattern& side,
                    std::size_t p) -> std::optional<int> {
      if (p >= side.size()) return std::nullopt;
      if (side[p].is_letter()) return letter_code(a_.letters(), side[p].letter());
      return static_cast<signed char>(s.codes[idx[p]]);
    };
    auto u = code(lhs_, a_.lhs(), s.i);
    auto v = code(rhs_, a_.rhs(), s.j);
    const int letters = static_cast<int>(a_.letters().size());
    for (const Move& m : moves(u, v, letters)) {
      State n{s.i + m.di, s.j + m.dj, s.codes};
      auto bind = [&](const std::vector<int>& idx, std::size_t p) {
        int slot = idx[p];
        if (slot >= 0 && static_cast<signed char>(n.codes[slot]) == kUnbound)
          n.codes[slot] = static_cast<char>(m.value);
      };
      if (m.di) bind(lhs_, s.i);
      if (m.dj) bind(rhs_, s.j);
      f(std::move(n));
    }
  }

  Substitution decode(const State& s) const {
    FilledAssignment f;
    for (const auto& [fv, idx] : slots_) {
      int c = static_cast<signed char>(s.codes[idx]);
      if (c != kUnbound) f[fv] = decode_value(a_.letters(), c);
    }
    return decode_filled_assignment(f, a_.bounds());
  }

  PartialFilledAssignment to_partial(const State& s) const {
    PartialFilledAssignment p;
    for (const auto& [fv, idx] : slots_) {
      int c = static_cast<signed char>(s.codes[idx]);
      if (c != kUnbound)
        p = p.extend(Operand::slot(fv), decode_value(a_.letters(), c));
    }
    return p;
  }

 private:
  void index_of_cell(const FilledPattern& side, std::vector<int>& idx) {
    for (const Cell& c : side)
      idx.push_back(c.is_letter() ? -1 : static_cast<int>(slots_.at(c.variable())));
  }

  const EquationAutomaton& a_;
  std::map<FilledVariable, std::size_t> slots_;
  std::vector<int> lhs_;
  std::vector<int> rhs_;
};

/// Depth-first exploration. `on_accept` returns false to stop early.
template <typename OnAccept>
std::size_t explore(const DenseSpace& space, std::size_t state_limit,
                    OnAccept&& on_accept) {
  std::unordered_set<std::string> visited;
  std::vector<DenseSpace::State> stack{space.initial()};
  visited.insert(space.key(stack.back()));
  while (!stack.empty()) {
    DenseSpace::State s = std::move(stack.back());
    stack.pop_back();
    if (space.accepting(s) && !on_accept(s)) break;
    space.for_each_successor(s, [&](DenseSpace::State n) {
      if (visited.insert(space.key(n)).second) stack.push_back(std::move(n));
    });
    if (visited.size() > state_limit)
      throw ResourceLimit("automaton state limit exceeded");
  }
  return visited.size();
}

}  // namespace

EquationAutomaton::EquationAutomaton(const WordEquation& e, const Bounds& b,
                                     std::string letters)
    : letters_(std::move(letters)) {
  for (const Pattern* side : {&e.lhs, &e.rhs})
    for (const Symbol& s : *side)
      if (s.is_letter() && letters_.find(s.id) == std::string::npos)
        letters_.push_back(s.id);
  for (char x : variables_of(e)) {
    auto it = b.find(x);
    if (it == b.end())
      throw InvalidInput(std::string("no bound for variable '") + x + "'");
    bounds_[x] = it->second;
  }
  lhs_ = fill_pattern(e.lhs, bounds_);
  rhs_ = fill_pattern(e.rhs, bounds_);
}

std::vector<AutomatonState> successors(const AutomatonState& st,
                                       const EquationAutomaton& a) {
  const std::string& letters = a.letters();
  auto operand = [](const FilledPattern& side,
                    std::size_t p) -> std::optional<Operand> {
    if (p >= side.size()) return std::nullopt;
    return Operand::of(side[p]);
  };
  auto code_of = [&](const std::optional<Operand>& x) -> std::optional<int> {
    if (!x) return std::nullopt;
    auto v = st.assignment.lookup(*x);
    if (!v) return kUnbound;
    return *v ? letter_code(letters, **v) : kLambdaCode;
  };
  auto u = operand(a.lhs(), st.i);
  auto v = operand(a.rhs(), st.j);

  std::vector<AutomatonState> out;
  for (const Move& m : moves(code_of(u), code_of(v),
                             static_cast<int>(letters.size()))) {
    FilledValue value = decode_value(letters, m.value);
    AutomatonState n{st.i + m.di, st.j + m.dj, st.assignment};
    if (m.di) n.assignment = n.assignment.extend(*u, value);
    if (m.dj) n.assignment = n.assignment.extend(*v, value);
    if (std::find(out.begin(), out.end(), n) == out.end())
      out.push_back(std::move(n));
  }
  return out;
}

OracleResult reachable_search(const WordEquation& e, const Bounds& b,
                              const std::string& letters) {
  EquationAutomaton a(e, b, letters);
  DenseSpace space(a);
  OracleResult r;
  explore(space, static_cast<std::size_t>(-1), [&](const DenseSpace::State&) {
    r.satisfiable = true;
    return false;
  });
  return r;
}

OracleResult enumerate_solutions(const WordEquation& e, const Bounds& b,
                                 const std::string& letters,
                                 std::size_t state_limit) {
  EquationAutomaton a(e, b, letters);
  DenseSpace space(a);
  OracleResult r;
  explore(space, state_limit, [&](const DenseSpace::State& s) {
    r.solutions.insert(space.decode(s));
    return true;
  });
  r.satisfiable = !r.solutions.empty();
  return r;
}

OracleResult brute_force_solve(const EquationSystem& sys, const Bounds& b,
                               std::size_t candidate_limit) {
  const std::string& vars = sys.variables;
  const std::size_t sigma = sys.letters.size();

  // Candidate words per variable, shortest first.
  std::vector<std::vector<Word>> domains;
  double candidates = 1;
  for (char x : vars) {
    auto it = b.find(x);
    if (it == b.end())
      throw InvalidInput(std::string("no bound for variable '") + x + "'");
    std::vector<Word> words{Word()};
    std::size_t begin = 0;
    for (std::size_t len = 1; len <= it->second; ++len) {
      std::size_t end = words.size();
      if (sigma == 0) break;
      for (std::size_t w = begin; w < end; ++w)
        for (char c : sys.letters) words.push_back(words[w] + c);
      begin = end;
      if (words.size() > candidate_limit)
        throw ResourceLimit("brute-force candidate limit exceeded");
    }
    candidates *= static_cast<double>(words.size());
    if (candidates > static_cast<double>(candidate_limit))
      throw ResourceLimit("brute-force candidate limit exceeded");
    domains.push_back(std::move(words));
  }

  EquationSystem checked = sys;
  checked.bounds = b;
  OracleResult r;
  std::vector<std::size_t> odometer(vars.size(), 0);
  Substitution s;
  for (char x : vars) s[x] = Word();
  while (true) {
    for (std::size_t k = 0; k < vars.size(); ++k)
      s[vars[k]] = domains[k][odometer[k]];
    if (verify_solution(s, checked)) r.solutions.insert(s);
    std::size_t k = 0;
    while (k < vars.size() && ++odometer[k] == domains[k].size()) {
      odometer[k] = 0;
      ++k;
    }
    if (k == vars.size()) break;
  }
  r.satisfiable = !r.solutions.empty();
  return r;
}

void write_automaton_dot(const EquationAutomaton& a, std::ostream& out,
                         std::size_t state_limit) {
  DenseSpace space(a);
  std::unordered_map<std::string, std::size_t> ids;
  std::vector<DenseSpace::State> states;
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  std::vector<DenseSpace::State> stack{space.initial()};
  ids[space.key(stack.back())] = 0;
  states.push_back(stack.back());
  while (!stack.empty()) {
    DenseSpace::State s = std::move(stack.back());
    stack.pop_back();
    std::size_t from = ids.at(space.key(s));
    space.for_each_successor(s, [&](DenseSpace::State n) {
      auto [it, inserted] = ids.try_emplace(space.key(n), states.size());
      if (inserted) {
        states.push_back(n);
        stack.push_back(std::move(n));
      }
      edges.emplace_back(from, it->second);
    });
    if (states.size() > state_limit)
      throw ResourceLimit("automaton state limit exceeded");
  }

  std::map<std::pair<std::size_t, std::size_t>, std::vector<std::size_t>> groups;
  for (std::size_t k = 0; k < states.size(); ++k)
    groups[{states[k].i, states[k].j}].push_back(k);

  out << "digraph automaton {\n  compound=true;\n";
  for (const auto& [loc, members] : groups) {
    out << "  subgraph cluster_" << loc.first << '_' << loc.second << " {\n"
        << "    label=\"(" << loc.first << "," << loc.second << ")\";\n";
    for (std::size_t k : members) {
      std::string label;
      const PartialFilledAssignment partial = space.to_partial(states[k]);
      for (const auto& [fv, val] : partial.bindings()) {
        if (!label.empty()) label += ' ';
        label += std::string(1, fv.base) + std::to_string(fv.index) + "=" +
                 (val ? std::string(1, *val) : std::string("λ"));
      }
      bool acc = space.accepting(states[k]);
      out << "    s" << k << " [label=\"" << (label.empty() ? "init" : label)
          << "\"" << (acc ? ", peripheries=2" : "") << "];\n";
    }
    out << "  }\n";
  }
  for (const auto& [from, to] : edges) out << "  s" << from << " -> s" << to << ";\n";
  out << "}\n";
}

}  // namespace wordsat
