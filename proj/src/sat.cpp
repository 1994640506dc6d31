#include "wordsat/sat.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

namespace wordsat {

//===----------------------------------------------------------------------===//
// CDCL core
//===----------------------------------------------------------------------===//

namespace {

// Literal 2*v is variable v (0-based) positive, 2*v+1 negative.
using Lit = std::uint32_t;
constexpr Lit kNoLit = static_cast<Lit>(-1);

inline Lit from_dimacs(int lit) {
  return 2 * static_cast<Lit>(std::abs(lit) - 1) + (lit < 0 ? 1 : 0);
}
inline int var_of(Lit l) { return static_cast<int>(l >> 1); }
inline Lit negate(Lit l) { return l ^ 1; }

constexpr std::int8_t kFalse = 0;
constexpr std::int8_t kTrue = 1;
constexpr std::int8_t kUndef = 2;

/// Max-heap of variables keyed by activity.
class VarHeap {
 public:
  explicit VarHeap(const std::vector<double>& activity) : act_(activity) {}

  void grow(int n) { index_.resize(static_cast<std::size_t>(n), -1); }
  bool contains(int v) const { return index_[v] >= 0; }
  bool empty() const { return heap_.empty(); }

  void insert(int v) {
    if (contains(v)) return;
    index_[v] = static_cast<int>(heap_.size());
    heap_.push_back(v);
    up(index_[v]);
  }

  void increased(int v) {
    if (contains(v)) up(index_[v]);
  }

  int pop() {
    int top = heap_.front();
    heap_.front() = heap_.back();
    index_[heap_.front()] = 0;
    heap_.pop_back();
    index_[top] = -1;
    if (!heap_.empty()) down(0);
    return top;
  }

 private:
  bool before(int a, int b) const { return act_[a] > act_[b]; }

  void up(int i) {
    int v = heap_[i];
    while (i > 0) {
      int parent = (i - 1) / 2;
      if (!before(v, heap_[parent])) break;
      heap_[i] = heap_[parent];
      index_[heap_[i]] = i;
      i = parent;
    }
    heap_[i] = v;
    index_[v] = i;
  }

  void down(int i) {
    int v = heap_[i];
    const int n = static_cast<int>(heap_.size());
    while (2 * i + 1 < n) {
      int child = 2 * i + 1;
      if (child + 1 < n && before(heap_[child + 1], heap_[child])) ++child;
      if (!before(heap_[child], v)) break;
      heap_[i] = heap_[child];
      index_[heap_[i]] = i;
      i = child;
    }
    heap_[i] = v;
    index_[v] = i;
  }

  const std::vector<double>& act_;
  std::vector<int> heap_;
  std::vector<int> index_;
};

double luby(double y, int x) {
  int size = 1, seq = 0;
  while (size < x + 1) {
    ++seq;
    size = 2 * size + 1;
  }
  while (size - 1 != x) {
    size = (size - 1) >> 1;
    --seq;
    x = x % size;
  }
  return std::pow(y, seq);
}

}  // namespace

struct Solver::Impl {
  struct Clause {
    std::vector<Lit> lits;
    bool learnt = false;
    bool deleted = false;
    double activity = 0;
  };
  struct Watcher {
    std::uint32_t clause;
    Lit blocker;
  };

  int nvars = 0;
  std::vector<Clause> clauses;
  std::vector<std::uint32_t> learnts;
  std::vector<std::vector<Watcher>> watches;
  std::vector<std::int8_t> assigns;
  std::vector<int> level;
  std::vector<int> reason;
  std::vector<std::uint8_t> phase;
  std::vector<double> activity;
  std::vector<std::uint8_t> seen;
  std::vector<Lit> trail;
  std::vector<int> trail_lim;
  std::size_t qhead = 0;
  VarHeap order{activity};
  double var_inc = 1;
  double cla_inc = 1;
  double max_learnts = 0;
  bool ok = true;
  std::vector<bool> model;
  std::uint64_t conflicts = 0;
  std::uint64_t decisions = 0;

  std::int8_t value(Lit l) const {
    std::int8_t a = assigns[var_of(l)];
    return a == kUndef ? kUndef : static_cast<std::int8_t>(a ^ (l & 1));
  }
  int decision_level() const { return static_cast<int>(trail_lim.size()); }

  void grow(int n) {
    if (n <= nvars) return;
    nvars = n;
    const auto sz = static_cast<std::size_t>(n);
    watches.resize(2 * sz);
    assigns.resize(sz, kUndef);
    level.resize(sz, 0);
    reason.resize(sz, -1);
    phase.resize(sz, 1);
    activity.resize(sz, 0);
    seen.resize(sz, 0);
    order.grow(n);
    for (int v = 0; v < n; ++v)
      if (assigns[v] == kUndef) order.insert(v);
  }

  void enqueue(Lit l, int from) {
    int v = var_of(l);
    assigns[v] = static_cast<std::int8_t>((l & 1) ? kFalse : kTrue);
    level[v] = decision_level();
    reason[v] = from;
    trail.push_back(l);
  }

  void attach(std::uint32_t idx) {
    const Clause& c = clauses[idx];
    watches[c.lits[0]].push_back({idx, c.lits[1]});
    watches[c.lits[1]].push_back({idx, c.lits[0]});
  }

  int propagate() {
    int confl = -1;
    while (qhead < trail.size()) {
      Lit false_lit = negate(trail[qhead++]);
      auto& ws = watches[false_lit];
      std::size_t i = 0, j = 0;
      while (i < ws.size()) {
        Watcher w = ws[i];
        if (value(w.blocker) == kTrue) {
          ws[j++] = ws[i++];
          continue;
        }
        Clause& c = clauses[w.clause];
        ++i;
        if (c.deleted) continue;
        if (c.lits[0] == false_lit) std::swap(c.lits[0], c.lits[1]);
        Lit first = c.lits[0];
        Watcher kept{w.clause, first};
        if (first != w.blocker && value(first) == kTrue) {
          ws[j++] = kept;
          continue;
        }
        bool moved = false;
        for (std::size_t k = 2; k < c.lits.size(); ++k) {
          if (value(c.lits[k]) != kFalse) {
            std::swap(c.lits[1], c.lits[k]);
            watches[c.lits[1]].push_back({w.clause, first});
            moved = true;
            break;
          }
        }
        if (moved) continue;
        ws[j++] = kept;
        if (value(first) == kFalse) {
          confl = static_cast<int>(w.clause);
          qhead = trail.size();
          while (i < ws.size()) ws[j++] = ws[i++];
        } else {
          enqueue(first, static_cast<int>(w.clause));
        }
      }
      ws.resize(j);
    }
    return confl;
  }

  void bump_var(int v) {
    if ((activity[v] += var_inc) > 1e100) {
      for (double& a : activity) a *= 1e-100;
      var_inc *= 1e-100;
    }
    order.increased(v);
  }

  void bump_clause(Clause& c) {
    if ((c.activity += cla_inc) > 1e20) {
      for (std::uint32_t idx : learnts) clauses[idx].activity *= 1e-20;
      cla_inc *= 1e-20;
    }
  }

  void cancel_until(int lvl) {
    if (decision_level() <= lvl) return;
    for (std::size_t k = trail.size(); k-- > static_cast<std::size_t>(trail_lim[lvl]);) {
      int v = var_of(trail[k]);
      phase[v] = static_cast<std::uint8_t>(trail[k] & 1);
      assigns[v] = kUndef;
      reason[v] = -1;
      order.insert(v);
    }
    trail.resize(static_cast<std::size_t>(trail_lim[lvl]));
    trail_lim.resize(static_cast<std::size_t>(lvl));
    qhead = trail.size();
  }

  /// First-UIP learning with local minimization. Returns the backjump level.
  int analyze(int confl, std::vector<Lit>& learnt) {
    learnt.assign(1, kNoLit);
    int path = 0;
    Lit p = kNoLit;
    std::size_t idx = trail.size();
    do {
      Clause& c = clauses[static_cast<std::size_t>(confl)];
      if (c.learnt) bump_clause(c);
      for (std::size_t k = (p == kNoLit ? 0 : 1); k < c.lits.size(); ++k) {
        Lit q = c.lits[k];
        int v = var_of(q);
        if (seen[v] || level[v] == 0) continue;
        bump_var(v);
        seen[v] = 1;
        if (level[v] >= decision_level())
          ++path;
        else
          learnt.push_back(q);
      }
      while (!seen[var_of(trail[--idx])]) {
      }
      p = trail[idx];
      confl = reason[var_of(p)];
      seen[var_of(p)] = 0;
      --path;
    } while (path > 0);
    learnt[0] = negate(p);

    std::vector<Lit> to_clear(learnt.begin() + 1, learnt.end());
    std::size_t keep = 1;
    for (std::size_t k = 1; k < learnt.size(); ++k) {
      int v = var_of(learnt[k]);
      bool redundant = reason[v] >= 0;
      if (redundant) {
        const Clause& r = clauses[static_cast<std::size_t>(reason[v])];
        for (std::size_t m = 1; m < r.lits.size(); ++m) {
          int u = var_of(r.lits[m]);
          if (!seen[u] && level[u] > 0) {
            redundant = false;
            break;
          }
        }
      }
      if (!redundant) learnt[keep++] = learnt[k];
    }
    learnt.resize(keep);
    for (Lit l : to_clear) seen[var_of(l)] = 0;

    if (learnt.size() == 1) return 0;
    std::size_t max_i = 1;
    for (std::size_t k = 2; k < learnt.size(); ++k)
      if (level[var_of(learnt[k])] > level[var_of(learnt[max_i])]) max_i = k;
    std::swap(learnt[1], learnt[max_i]);
    return level[var_of(learnt[1])];
  }

  bool locked(std::uint32_t idx) const {
    const Clause& c = clauses[idx];
    int v = var_of(c.lits[0]);
    return reason[v] == static_cast<int>(idx) && value(c.lits[0]) == kTrue;
  }

  void reduce_db() {
    std::sort(learnts.begin(), learnts.end(), [&](std::uint32_t a, std::uint32_t b) {
      return clauses[a].activity < clauses[b].activity;
    });
    std::vector<std::uint32_t> kept;
    const std::size_t half = learnts.size() / 2;
    for (std::size_t k = 0; k < learnts.size(); ++k) {
      std::uint32_t idx = learnts[k];
      Clause& c = clauses[idx];
      if (k < half && c.lits.size() > 2 && !locked(idx)) {
        c.deleted = true;
        c.lits.clear();
        c.lits.shrink_to_fit();
      } else {
        kept.push_back(idx);
      }
    }
    learnts.swap(kept);
    for (auto& ws : watches)
      ws.erase(std::remove_if(ws.begin(), ws.end(),
                              [&](const Watcher& w) { return clauses[w.clause].deleted; }),
               ws.end());
  }

  Lit pick_branch() {
    while (!order.empty()) {
      int v = order.pop();
      if (assigns[v] == kUndef) return 2 * static_cast<Lit>(v) + phase[v];
    }
    return kNoLit;
  }

  bool out_of_budget(const SolveLimits& limits, std::uint64_t start) const {
    if (limits.max_conflicts && conflicts - start >= *limits.max_conflicts)
      return true;
    if (limits.deadline && std::chrono::steady_clock::now() >= *limits.deadline)
      return true;
    return false;
  }

  // kUndef signals a restart.
  std::int8_t search(double budget, const SolveLimits& limits,
                     std::uint64_t start, bool& stopped) {
    std::uint64_t local = 0;
    std::vector<Lit> learnt;
    for (;;) {
      int confl = propagate();
      if (confl >= 0) {
        ++conflicts;
        ++local;
        if (decision_level() == 0) return kFalse;
        int back = analyze(confl, learnt);
        cancel_until(back);
        if (learnt.size() == 1) {
          enqueue(learnt[0], -1);
        } else {
          auto idx = static_cast<std::uint32_t>(clauses.size());
          clauses.push_back({learnt, true, false, 0});
          bump_clause(clauses.back());
          learnts.push_back(idx);
          attach(idx);
          enqueue(learnt[0], static_cast<int>(idx));
        }
        var_inc /= 0.95;
        cla_inc /= 0.999;
        if (out_of_budget(limits, start)) {
          stopped = true;
          cancel_until(0);
          return kUndef;
        }
        continue;
      }
      if (static_cast<double>(local) >= budget) {
        cancel_until(0);
        return kUndef;
      }
      if (static_cast<double>(learnts.size()) - static_cast<double>(trail.size()) >=
          max_learnts)
        reduce_db();
      Lit next = pick_branch();
      if (next == kNoLit) return kTrue;
      ++decisions;
      trail_lim.push_back(static_cast<int>(trail.size()));
      enqueue(next, -1);
    }
  }
};

Solver::Solver() : impl_(std::make_unique<Impl>()) {}
Solver::~Solver() = default;

void Solver::reserve_variables(int n) { impl_->grow(n); }
int Solver::variable_count() const { return impl_->nvars; }

bool Solver::add_clause(std::span<const int> literals) {
  Impl& s = *impl_;
  if (!s.ok) return false;
  s.cancel_until(0);
  std::vector<Lit> lits;
  lits.reserve(literals.size());
  for (int l : literals) {
    if (l == 0) throw InvalidInput("literal 0 inside a clause");
    s.grow(std::abs(l));
    lits.push_back(from_dimacs(l));
  }
  std::sort(lits.begin(), lits.end());
  lits.erase(std::unique(lits.begin(), lits.end()), lits.end());
  std::size_t keep = 0;
  for (std::size_t k = 0; k < lits.size(); ++k) {
    if (k + 1 < lits.size() && lits[k + 1] == negate(lits[k])) return true;
    std::int8_t val = s.value(lits[k]);
    if (val == kTrue) return true;
    if (val == kFalse) continue;
    lits[keep++] = lits[k];
  }
  lits.resize(keep);
  if (lits.empty()) {
    s.ok = false;
    return false;
  }
  if (lits.size() == 1) {
    s.enqueue(lits[0], -1);
    if (s.propagate() >= 0) s.ok = false;
    return s.ok;
  }
  auto idx = static_cast<std::uint32_t>(s.clauses.size());
  s.clauses.push_back({std::move(lits), false, false, 0});
  s.attach(idx);
  return true;
}

SatStatus Solver::solve(const SolveLimits& limits) {
  Impl& s = *impl_;
  if (!s.ok) return SatStatus::unsatisfiable;
  s.cancel_until(0);
  if (s.propagate() >= 0) {
    s.ok = false;
    return SatStatus::unsatisfiable;
  }
  std::size_t problem = s.clauses.size() - s.learnts.size();
  s.max_learnts = std::max(2000.0, static_cast<double>(problem) / 3.0);
  const std::uint64_t start = s.conflicts;
  for (int restart = 0;; ++restart) {
    bool stopped = false;
    std::int8_t r = s.search(luby(2, restart) * 100, limits, start, stopped);
    if (r == kTrue) {
      s.model.assign(static_cast<std::size_t>(s.nvars) + 1, false);
      for (int v = 0; v < s.nvars; ++v)
        s.model[static_cast<std::size_t>(v) + 1] = s.assigns[v] == kTrue;
      s.cancel_until(0);
      return SatStatus::satisfiable;
    }
    if (r == kFalse) {
      s.ok = false;
      return SatStatus::unsatisfiable;
    }
    if (stopped) return SatStatus::unknown;
    s.max_learnts *= 1.1;
  }
}

bool Solver::model_value(int var) const {
  return impl_->model.at(static_cast<std::size_t>(var));
}
std::vector<bool> Solver::model() const { return impl_->model; }
std::uint64_t Solver::conflicts() const { return impl_->conflicts; }
std::uint64_t Solver::decisions() const { return impl_->decisions; }

//===----------------------------------------------------------------------===//
// Formula-level entry points
//===----------------------------------------------------------------------===//

namespace {

void check_literals(const CnfFormula& f) {
  auto check = [&](int l) {
    if (l == 0 || std::abs(l) > f.num_variables)
      throw InvalidInput("literal " + std::to_string(l) +
                         " outside the declared variable range");
  };
  for (const auto& c : f.clauses)
    for (int l : c) check(l);
  for (int l : f.assumptions) check(l);
}

void load(Solver& s, const CnfFormula& f) {
  check_literals(f);
  s.reserve_variables(f.num_variables);
  for (const auto& c : f.clauses) s.add_clause(c);
  for (int l : f.assumptions) s.add_clause(std::span<const int>(&l, 1));
}

}  // namespace

bool satisfies(const CnfFormula& f, const std::vector<bool>& model) {
  auto holds = [&](int l) {
    auto v = static_cast<std::size_t>(std::abs(l));
    return v < model.size() && model[v] == (l > 0);
  };
  for (const auto& c : f.clauses)
    if (std::none_of(c.begin(), c.end(), holds)) return false;
  return std::all_of(f.assumptions.begin(), f.assumptions.end(), holds);
}

SolverVerdict solve(const CnfFormula& f, const SolveLimits& limits) {
  Solver s;
  load(s, f);
  SolverVerdict v;
  v.status = s.solve(limits);
  if (v.status == SatStatus::satisfiable) {
    v.model = s.model();
    v.model.resize(static_cast<std::size_t>(f.num_variables) + 1, false);
    if (!satisfies(f, v.model))
      throw IntegrityError("internal solver produced a non-model");
  }
  return v;
}

ModelEnumeration enumerate_models(const CnfFormula& f,
                                  std::span<const int> projection,
                                  std::size_t limit) {
  if (limit == 0) throw InvalidInput("model enumeration limit must be >= 1");
  Solver s;
  load(s, f);
  ModelEnumeration out;
  std::vector<int> block;
  while (s.solve() == SatStatus::satisfiable) {
    if (out.models.size() == limit) {
      out.limit_reached = true;
      break;
    }
    std::vector<int> model;
    block.clear();
    for (int v : projection) {
      bool val = s.model_value(v);
      if (val) model.push_back(v);
      block.push_back(val ? -v : v);
    }
    out.models.push_back(std::move(model));
    if (!s.add_clause(block)) break;
  }
  return out;
}

//===----------------------------------------------------------------------===//
// Text formats
//===----------------------------------------------------------------------===//

void write_dimacs(const CnfFormula& f, std::ostream& out,
                  const std::vector<std::string>& comments) {
  for (const auto& c : comments) out << "c " << c << '\n';
  out << "p cnf " << f.num_variables << ' ' << f.clause_count() << '\n';
  for (const auto& clause : f.clauses) {
    for (int l : clause) out << l << ' ';
    out << "0\n";
  }
  for (int l : f.assumptions) out << l << " 0\n";
  if (!out) throw Error("failed to write DIMACS output");
}

CnfFormula read_dimacs(std::istream& in) {
  CnfFormula f;
  bool header = false;
  long declared_clauses = 0;
  std::vector<int> clause;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ls(line);
    std::string first;
    if (!(ls >> first)) continue;
    if (first[0] == 'c') continue;
    if (first == "%") break;
    if (first == "p") {
      std::string fmt;
      if (header || !(ls >> fmt >> f.num_variables >> declared_clauses) ||
          fmt != "cnf" || f.num_variables < 0 || declared_clauses < 0)
        throw DimacsError("line " + std::to_string(line_no) +
                          ": malformed problem line");
      header = true;
      continue;
    }
    if (!header)
      throw DimacsError("line " + std::to_string(line_no) +
                        ": clause before problem line");
    std::istringstream tokens(line);
    std::string tok;
    while (tokens >> tok) {
      int lit = 0;
      try {
        std::size_t used = 0;
        lit = std::stoi(tok, &used);
        if (used != tok.size()) throw std::invalid_argument(tok);
      } catch (const std::exception&) {
        throw DimacsError("line " + std::to_string(line_no) + ": bad literal '" +
                          tok + "'");
      }
      if (lit == 0) {
        f.clauses.push_back(std::move(clause));
        clause.clear();
      } else {
        if (std::abs(lit) > f.num_variables)
          throw DimacsError("line " + std::to_string(line_no) + ": literal " +
                            tok + " exceeds the declared variable count");
        clause.push_back(lit);
      }
    }
  }
  if (!header) throw DimacsError("missing problem line");
  if (!clause.empty()) throw DimacsError("last clause is not terminated by 0");
  if (static_cast<long>(f.clauses.size()) != declared_clauses)
    throw DimacsError("clause count differs from the problem line");
  return f;
}

SolverVerdict read_external_model(std::string_view text, const CnfFormula& f) {
  SolverVerdict v;
  bool have_status = false;
  bool terminated = false;
  std::vector<bool> model(static_cast<std::size_t>(f.num_variables) + 1, false);
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  auto fail = [&](const std::string& what) {
    throw DimacsError("model line " + std::to_string(line_no) + ": " + what);
  };
  auto set_status = [&](const std::string& s) {
    if (s == "SATISFIABLE" || s == "SAT")
      v.status = SatStatus::satisfiable;
    else if (s == "UNSATISFIABLE" || s == "UNSAT")
      v.status = SatStatus::unsatisfiable;
    else if (s == "UNKNOWN" || s == "INDET" || s == "INDETERMINATE")
      v.status = SatStatus::unknown;
    else
      fail("unknown status '" + s + "'");
    if (have_status) fail("duplicate status line");
    have_status = true;
  };
  auto literals = [&](std::istringstream& ls) {
    std::string tok;
    while (ls >> tok) {
      int lit = 0;
      try {
        std::size_t used = 0;
        lit = std::stoi(tok, &used);
        if (used != tok.size()) throw std::invalid_argument(tok);
      } catch (const std::exception&) {
        fail("bad literal '" + tok + "'");
      }
      if (lit == 0) {
        terminated = true;
        continue;
      }
      if (std::abs(lit) > f.num_variables) fail("literal out of range");
      model[static_cast<std::size_t>(std::abs(lit))] = lit > 0;
    }
  };
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ls(line);
    std::string first;
    if (!(ls >> first)) continue;
    if (first == "c") continue;
    if (first == "s") {
      std::string status;
      if (!(ls >> status)) fail("empty status line");
      set_status(status);
    } else if (first == "v") {
      literals(ls);
    } else if (first == "SAT" || first == "UNSAT" || first == "INDET") {
      set_status(first);
    } else if (have_status && (std::isdigit(static_cast<unsigned char>(first[0])) ||
                               first[0] == '-')) {
      std::istringstream whole(line);
      literals(whole);
    } else {
      fail("unexpected text '" + first + "'");
    }
  }
  if (!have_status) throw DimacsError("no status line in solver output");
  if (v.status == SatStatus::satisfiable) {
    if (!terminated) throw DimacsError("model is not terminated by 0");
    if (!satisfies(f, model))
      throw IntegrityError("external model violates the formula");
    v.model = std::move(model);
  }
  return v;
}

}  // namespace wordsat
