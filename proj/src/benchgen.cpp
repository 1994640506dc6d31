#include "wordsat/benchgen.hpp"

#include <algorithm>
#include <limits>

#include "wordsat/problem_io.hpp"

namespace wordsat {

namespace {

constexpr std::string_view kVariablePool = "ABCDEFGHIJKLMNOPQRSTUVWXYZ";
constexpr std::string_view kLetterPool = "abcdefghijklmnopqrstuvwxyz";

void check_spec(const GenSpec& s) {
  if (s.variables > kVariablePool.size())
    throw InvalidInput("at most 26 variables are supported");
  if (s.letters == 0 || s.letters > kLetterPool.size())
    throw InvalidInput("letter count must be in 1..26");
  if (s.max_factor == 0) throw InvalidInput("max_factor must be positive");
}

std::string name_of(const GenSpec& s) {
  return "track" + std::to_string(s.track) + "_s" + std::to_string(s.seed);
}

/// Hidden words for `vars`.
Substitution plant(PortableRng& rng, const std::string& vars,
                   std::string_view letters, std::size_t max_factor) {
  Substitution w;
  for (char v : vars) {
    const std::size_t len =
        1 + static_cast<std::size_t>(rng.below(max_factor));
    Word word;
    for (std::size_t k = 0; k < len; ++k) word.push_back(letters[rng.below(letters.size())]);
    w[v] = std::move(word);
  }
  return w;
}

Pattern abstract_side(PortableRng& rng, const Word& w, const Substitution& hidden) {
  Pattern p;
  std::size_t i = 0;
  std::vector<char> candidates;
  while (i < w.size()) {
    candidates.clear();
    for (const auto& [v, word] : hidden)
      if (w.compare(i, word.size(), word) == 0) candidates.push_back(v);
    if (!candidates.empty() && rng.coin()) {
      char v = candidates[rng.below(candidates.size())];
      p.push_back(Symbol::variable(v));
      i += hidden.at(v).size();
    } else {
      p.push_back(Symbol::letter(w[i]));
      ++i;
    }
  }
  return p;
}

WordEquation planted_equation(PortableRng& rng, const Substitution& hidden,
                              std::string_view letters, std::size_t length) {
  std::vector<char> vars;
  for (const auto& [v, word] : hidden) vars.push_back(v);
  Word w;
  while (w.size() < length) {
    if (!vars.empty() && rng.below(10) < 3) {
      const Word& piece = hidden.at(vars[rng.below(vars.size())]);
      if (w.size() + piece.size() <= length) {
        w += piece;
        continue;
      }
    }
    w.push_back(letters[rng.below(letters.size())]);
  }
  return {abstract_side(rng, w, hidden), abstract_side(rng, w, hidden)};
}

/// Declares exactly the occurring variables (in pool order) and the spec's
/// letters, and restricts the witness accordingly.
Instance assemble(const GenSpec& spec, std::vector<WordEquation> eqs,
                  const Substitution& hidden, std::string_view letters) {
  Instance inst;
  inst.name = name_of(spec);
  inst.system.letters = std::string(letters);
  std::string occurring;
  for (const auto& e : eqs) occurring += variables_of(e);
  for (char v : kVariablePool)
    if (occurring.find(v) != std::string::npos) inst.system.variables.push_back(v);
  for (const auto& e : eqs)
    for (const auto* side : {&e.lhs, &e.rhs})
      for (const Symbol& s : *side)
        if (s.is_letter() && inst.system.letters.find(s.id) == std::string::npos)
          inst.system.letters.push_back(s.id);
  inst.system.equations = std::move(eqs);
  Substitution w;
  for (char v : inst.system.variables) w[v] = hidden.at(v);
  inst.witness = std::move(w);
  return inst;
}

Instance planted_system(const GenSpec& spec) {
  check_spec(spec);
  PortableRng rng(spec.seed);
  const std::string_view letters = kLetterPool.substr(0, spec.letters);
  const std::string pool(kVariablePool.substr(0, spec.variables));
  Substitution hidden = plant(rng, pool, letters, spec.max_factor);
  std::vector<WordEquation> eqs;
  for (std::size_t k = 0; k < spec.equations; ++k)
    eqs.push_back(planted_equation(rng, hidden, letters, spec.length));
  return assemble(spec, std::move(eqs), hidden, letters);
}

}  // namespace

std::uint64_t PortableRng::below(std::uint64_t n) {
  if (n == 0) throw InvalidInput("empty sampling range");
  const std::uint64_t max = std::numeric_limits<std::uint64_t>::max();
  const std::uint64_t limit = max - (max % n + 1) % n;
  std::uint64_t x;
  do {
    x = engine_();
  } while (x > limit);
  return x % n;
}

std::int64_t PortableRng::between(std::int64_t lo, std::int64_t hi) {
  return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo) + 1));
}

GenSpec default_spec(int track) {
  GenSpec s;
  s.track = track;
  switch (track) {
    case 1:
      break;
    case 2:
    case 3:
      s.variables = 3;
      s.letters = 2;
      s.length = 4;
      break;
    case 4:
    case 5:
      s.variables = 10;
      s.letters = 6;
      s.length = 60;
      s.equations = track == 4 ? 100 : 30;
      break;
    default:
      throw InvalidInput("track must be 1..5");
  }
  return s;
}

Instance gen_track1(const GenSpec& spec) {
  GenSpec s = spec;
  s.equations = 1;
  return planted_system(s);
}

WordEquation gen_track2(std::size_t n) {
  if (n == 0 || n > kVariablePool.size())
    throw InvalidInput("track 2 family index must be in 1..26");
  auto X = [](std::size_t k) { return Symbol::variable(kVariablePool[k - 1]); };
  const Symbol a = Symbol::letter('a');
  const Symbol b = Symbol::letter('b');
  WordEquation e;
  // lhs: X_n a X_n b X_{n-1} b ... b X_1
  e.lhs = {X(n), a, X(n)};
  for (std::size_t k = n - 1; k >= 1; --k) {
    e.lhs.push_back(b);
    e.lhs.push_back(X(k));
  }
  // rhs: a X_n X_{n-1} X_{n-1} b ... b X_1 X_1 b a a
  e.rhs = {a, X(n)};
  for (std::size_t k = n - 1; k >= 1; --k) {
    e.rhs.push_back(X(k));
    e.rhs.push_back(X(k));
    e.rhs.push_back(b);
  }
  e.rhs.push_back(a);
  e.rhs.push_back(a);
  return e;
}

Substitution track2_solution(std::size_t n) {
  Substitution s;
  for (std::size_t k = 1; k <= n; ++k)
    s[kVariablePool[k - 1]] = Word(std::size_t{1} << k, 'a');
  return s;
}

Instance gen_track3(const GenSpec& spec) {
  check_spec(spec);
  const std::size_t n = spec.family;
  WordEquation skeleton = gen_track2(n);
  PortableRng rng(spec.seed);
  const std::string_view letters = kLetterPool.substr(0, std::max<std::size_t>(spec.letters, 2));

  // Both sides carry n-1 separators 'b', and the k-th ones line up in the
  // skeleton's solution, so replacing the k-th pair by the two sides of a
  // solvable equation keeps the combined system solvable.
  const std::size_t pairs = std::min(spec.replacements, n - 1);
  std::size_t next_var = n;
  Substitution hidden = track2_solution(n);
  std::vector<std::pair<Pattern, Pattern>> parts;
  for (std::size_t k = 0; k < pairs; ++k) {
    const std::size_t fresh =
        std::min<std::size_t>(1 + rng.below(std::max<std::size_t>(spec.variables, 1)),
                              kVariablePool.size() - next_var);
    const std::string vars(kVariablePool.substr(next_var, fresh));
    next_var += fresh;
    Substitution local = plant(rng, vars, letters, spec.max_factor);
    WordEquation e = planted_equation(rng, local, letters, spec.length);
    parts.emplace_back(e.lhs, e.rhs);
    hidden.insert(local.begin(), local.end());
  }

  auto splice = [&](const Pattern& side, bool left) {
    Pattern out;
    std::size_t seen = 0;
    for (const Symbol& s : side) {
      if (s == Symbol::letter('b') && seen < pairs) {
        const Pattern& r = left ? parts[seen].first : parts[seen].second;
        out.insert(out.end(), r.begin(), r.end());
        ++seen;
      } else {
        out.push_back(s);
      }
    }
    return out;
  };
  std::vector<WordEquation> eqs{{splice(skeleton.lhs, true), splice(skeleton.rhs, false)}};
  Instance inst = assemble(spec, std::move(eqs), hidden, "ab");
  return inst;
}

Instance gen_track4(const GenSpec& spec) { return planted_system(spec); }

Instance gen_track5(const GenSpec& spec) {
  Instance inst = planted_system(spec);
  // A separate stream keeps the equations identical across constraint
  // settings.
  PortableRng rng(spec.seed ^ 0x9e3779b97f4a7c15ULL);
  const std::string& vars = inst.system.variables;
  if (spec.contradiction) {
    LinearConstraint c;
    for (char v : vars) c.coefficients[v] = 1;
    c.bound = -1;
    inst.system.constraints.push_back(std::move(c));
    inst.satisfiable = false;
    inst.witness.reset();
    return inst;
  }
  if (vars.empty()) return inst;
  for (std::size_t k = 0; k < spec.constraints; ++k) {
    LinearConstraint c;
    const std::size_t terms = 1 + rng.below(std::min<std::size_t>(3, vars.size()));
    for (std::size_t t = 0; t < terms; ++t) {
      std::int64_t coeff = rng.between(-3, 2);
      if (coeff >= 0) ++coeff;  // nonzero, in [-3, 3]
      c.coefficients[vars[rng.below(vars.size())]] += coeff;
    }
    std::int64_t value = 0;
    for (const auto& [v, coeff] : c.coefficients)
      value += coeff * static_cast<std::int64_t>(inst.witness->at(v).size());
    if (rng.below(3) == 0) {
      c.relation = Relation::equal;
      c.bound = value;
    } else {
      c.bound = value + rng.between(0, 2);
    }
    inst.system.constraints.push_back(std::move(c));
  }
  return inst;
}

Instance generate(const GenSpec& spec) {
  switch (spec.track) {
    case 1:
      return gen_track1(spec);
    case 2: {
      Instance inst;
      inst.name = name_of(spec);
      WordEquation e = gen_track2(spec.family);
      inst.system.letters = "ab";
      inst.system.variables = variables_of(e);
      std::sort(inst.system.variables.begin(), inst.system.variables.end());
      inst.system.equations.push_back(std::move(e));
      inst.witness = track2_solution(spec.family);
      return inst;
    }
    case 3:
      return gen_track3(spec);
    case 4:
      return gen_track4(spec);
    case 5:
      return gen_track5(spec);
    default:
      throw InvalidInput("track must be 1..5");
  }
}

std::string serialize(const Instance& inst) {
  std::string out = "# " + inst.name + "\n";
  out += inst.satisfiable ? "# satisfiable by construction\n"
                          : "# unsatisfiable by construction\n";
  if (inst.witness)
    for (const auto& [v, w] : *inst.witness)
      out += std::string("# witness ") + v + " = " + w + "\n";
  return out + write_problem(inst.system);
}

}  // namespace wordsat
