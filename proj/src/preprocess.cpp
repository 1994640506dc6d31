#include "wordsat/preprocess.hpp"

#include <algorithm>
#include <map>

#include "wordsat/linear.hpp"

namespace wordsat {

const char* to_string(Status s) {
  switch (s) {
    case Status::sat:
      return "SAT";
    case Status::unsat:
      return "UNSAT";
    case Status::unknown:
      return "UNKNOWN";
  }
  return "UNKNOWN";
}

WordEquation strip_common_affixes(const WordEquation& e) {
  const Pattern& u = e.lhs;
  const Pattern& v = e.rhs;
  std::size_t n = std::min(u.size(), v.size());
  std::size_t prefix = 0;
  while (prefix < n && u[prefix] == v[prefix]) ++prefix;
  std::size_t suffix = 0;
  while (suffix < n - prefix &&
         u[u.size() - 1 - suffix] == v[v.size() - 1 - suffix])
    ++suffix;
  return {Pattern(u.begin() + prefix, u.end() - suffix),
          Pattern(v.begin() + prefix, v.end() - suffix)};
}

namespace {

template <typename It>
bool letter_clash(It u, It u_end, It v, It v_end) {
  for (; u != u_end && v != v_end; ++u, ++v) {
    if (u->is_variable() || v->is_variable()) return false;
    if (u->id != v->id) return true;
  }
  return false;
}

template <typename It>
bool parikh_clash(It u, It u_end, It v, It v_end) {
  std::map<char, long> variable_diff;
  std::map<char, long> letter_diff;
  auto bump = [](std::map<char, long>& m, char c, long d) {
    auto& slot = m[c];
    slot += d;
    if (slot == 0) m.erase(c);
  };
  for (; u != u_end && v != v_end; ++u, ++v) {
    bump(u->is_variable() ? variable_diff : letter_diff, u->id, 1);
    bump(v->is_variable() ? variable_diff : letter_diff, v->id, -1);
    if (variable_diff.empty() && !letter_diff.empty()) return true;
  }
  return false;
}

std::vector<std::string> letter_runs(const Pattern& p) {
  std::vector<std::string> runs;
  std::string cur;
  for (const Symbol& s : p) {
    if (s.is_letter()) {
      cur.push_back(s.id);
    } else if (!cur.empty()) {
      runs.push_back(std::move(cur));
      cur.clear();
    }
  }
  if (!cur.empty()) runs.push_back(std::move(cur));
  return runs;
}

bool is_trivial(const WordEquation& e) { return e.lhs == e.rhs; }

Status check_equation(const WordEquation& e, const PreprocessOptions& opts) {
  if (prefix_suffix_mismatch(e) == Status::unsat) return Status::unsat;
  if (constant_sequence_mismatch(e) == Status::unsat) return Status::unsat;
  if (opts.parikh_check && parikh_mismatch(e) == Status::unsat)
    return Status::unsat;
  LinearAbstraction a = length_abstraction(e);
  if (!feasible_unbounded(a)) return Status::unsat;
  if (opts.bounds && !feasible(a, *opts.bounds)) return Status::unsat;
  return Status::unknown;
}

/// No length vector at all satisfies `c`.
bool constraint_infeasible(const LinearConstraint& c) {
  if (c.relation == Relation::equal)
    return !feasible_unbounded({c.coefficients, c.bound});
  // The left-hand side can only grow from 0 when no coefficient is negative.
  return c.bound < 0 && std::none_of(c.coefficients.begin(), c.coefficients.end(),
                                     [](const auto& kv) { return kv.second < 0; });
}

/// X = w or w = X with w ground.
std::optional<std::pair<char, Word>> ground_definition(const WordEquation& e) {
  auto single_var = [](const Pattern& p) {
    return p.size() == 1 && p[0].is_variable();
  };
  if (single_var(e.lhs) && is_ground(e.rhs))
    return std::pair{e.lhs[0].id, to_string(e.rhs)};
  if (single_var(e.rhs) && is_ground(e.lhs))
    return std::pair{e.rhs[0].id, to_string(e.lhs)};
  return std::nullopt;
}

Pattern substitute(const Pattern& p, const std::map<char, Word>& defs) {
  Pattern out;
  for (const Symbol& s : p) {
    auto it = s.is_variable() ? defs.find(s.id) : defs.end();
    if (it == defs.end()) {
      out.push_back(s);
      continue;
    }
    for (char c : it->second) out.push_back(Symbol::letter(c));
  }
  return out;
}

PreprocessVerdict unsat_verdict() {
  PreprocessVerdict v;
  v.status = Status::unsat;
  return v;
}

}  // namespace

Status prefix_suffix_mismatch(const WordEquation& e) {
  const Pattern& u = e.lhs;
  const Pattern& v = e.rhs;
  if (letter_clash(u.begin(), u.end(), v.begin(), v.end()) ||
      letter_clash(u.rbegin(), u.rend(), v.rbegin(), v.rend()))
    return Status::unsat;
  return Status::unknown;
}

Status constant_sequence_mismatch(const WordEquation& e) {
  for (const auto& [constant, mixed] :
       {std::pair{&e.lhs, &e.rhs}, std::pair{&e.rhs, &e.lhs}}) {
    if (!is_ground(*constant)) continue;
    const std::string word = to_string(*constant);
    for (const std::string& run : letter_runs(*mixed))
      if (word.find(run) == std::string::npos) return Status::unsat;
  }
  return Status::unknown;
}

Status parikh_mismatch(const WordEquation& e) {
  const Pattern& u = e.lhs;
  const Pattern& v = e.rhs;
  if (parikh_clash(u.begin(), u.end(), v.begin(), v.end()) ||
      parikh_clash(u.rbegin(), u.rend(), v.rbegin(), v.rend()))
    return Status::unsat;
  return Status::unknown;
}

PreprocessVerdict substitution_reasoning(const EquationSystem& sys,
                                         const PreprocessOptions& opts) {
  std::map<char, Word> defs;
  std::vector<WordEquation> definitions;
  std::vector<WordEquation> others;
  for (const auto& e : sys.equations) {
    auto def = ground_definition(e);
    if (!def) {
      others.push_back(e);
      continue;
    }
    auto [it, inserted] = defs.try_emplace(def->first, def->second);
    if (!inserted) {
      if (it->second != def->second) return unsat_verdict();
      continue;
    }
    definitions.push_back(e);
  }

  PreprocessVerdict out;
  out.residual = sys;
  if (defs.empty()) return out;

  std::vector<WordEquation> remaining;
  for (const auto& e : others) {
    WordEquation s{substitute(e.lhs, defs), substitute(e.rhs, defs)};
    if (s == e) {
      remaining.push_back(e);
      continue;
    }
    s = strip_common_affixes(s);
    if (is_trivial(s)) continue;
    if (check_equation(s, opts) == Status::unsat) return unsat_verdict();
    remaining.push_back(std::move(s));
  }

  if (remaining.empty()) {
    Substitution witness;
    for (char x : sys.variables) {
      auto it = defs.find(x);
      witness[x] = it == defs.end() ? Word() : it->second;
    }
    if (verify_solution(witness, sys)) {
      out.status = Status::sat;
      out.witness = std::move(witness);
      out.residual = {};
      return out;
    }
  }

  out.residual.equations = std::move(definitions);
  for (auto& e : remaining) out.residual.equations.push_back(std::move(e));
  return out;
}

PreprocessVerdict preprocess_pipeline(const EquationSystem& sys,
                                      const PreprocessOptions& opts) {
  for (const auto& c : sys.constraints)
    if (constraint_infeasible(c)) return unsat_verdict();
  EquationSystem cur = sys;
  // Each round either shrinks the system or stops; the cap only guards
  // against pathological ping-pong.
  for (int round = 0; round < 64; ++round) {
    std::vector<WordEquation> next;
    for (const auto& e : cur.equations) {
      WordEquation s = strip_common_affixes(e);
      if (is_trivial(s)) continue;
      if (check_equation(s, opts) == Status::unsat) return unsat_verdict();
      WordEquation mirrored{s.rhs, s.lhs};
      if (std::find(next.begin(), next.end(), s) != next.end() ||
          std::find(next.begin(), next.end(), mirrored) != next.end())
        continue;
      next.push_back(std::move(s));
    }
    bool changed = next != cur.equations;
    cur.equations = std::move(next);

    PreprocessVerdict v = substitution_reasoning(cur, opts);
    if (v.status == Status::unsat) return v;
    if (v.status == Status::sat) {
      if (verify_solution(*v.witness, sys)) return v;
      break;
    }
    if (!changed && v.residual == cur) break;
    cur = std::move(v.residual);
  }

  if (cur.equations.empty()) {
    Substitution witness;
    for (char x : sys.variables) witness[x] = Word();
    if (verify_solution(witness, sys)) {
      PreprocessVerdict v;
      v.status = Status::sat;
      v.witness = std::move(witness);
      return v;
    }
  }
  PreprocessVerdict v;
  v.residual = std::move(cur);
  return v;
}

}  // namespace wordsat
