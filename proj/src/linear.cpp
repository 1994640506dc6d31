#include "wordsat/linear.hpp"

#include <cstdlib>
#include <numeric>
#include <ostream>

namespace wordsat {

namespace {

std::int64_t floor_div(std::int64_t num, std::int64_t den) {
  std::int64_t q = num / den;
  if ((num % den != 0) && ((num < 0) != (den < 0))) --q;
  return q;
}

}  // namespace

LinearAbstraction LinearAbstraction::negated() const {
  LinearAbstraction out;
  for (const auto& [var, c] : coefficients) out.coefficients[var] = -c;
  out.target = -target;
  return out;
}

LinearConstraint LinearAbstraction::as_constraint() const {
  return {coefficients, target, Relation::equal};
}

LinearAbstraction length_abstraction(const WordEquation& e) {
  LinearAbstraction a;
  for (const Symbol& s : e.lhs) {
    if (s.is_variable())
      ++a.coefficients[s.id];
    else
      --a.target;
  }
  for (const Symbol& s : e.rhs) {
    if (s.is_variable())
      --a.coefficients[s.id];
    else
      ++a.target;
  }
  return a;
}

Bounds refine_bounds(const LinearAbstraction& a, const Bounds& b) {
  Bounds out = b;
  for (const auto& [var, coeff] : a.coefficients) {
    if (coeff == 0) continue;
    const LinearAbstraction n = coeff > 0 ? a : a.negated();
    const std::int64_t ck = n.coefficients.at(var);
    // Every other variable with a negative coefficient can at most add
    // |c_j| * b_j to the right-hand side; positive ones only subtract.
    std::int64_t numerator = n.target;
    bool bounded = true;
    for (const auto& [other, cj] : n.coefficients) {
      if (other == var || cj >= 0) continue;
      auto it = b.find(other);
      if (it == b.end()) {
        bounded = false;
        break;
      }
      numerator -= cj * static_cast<std::int64_t>(it->second);
    }
    if (!bounded) continue;
    const std::int64_t refined = floor_div(numerator, ck);
    auto it = out.find(var);
    if (it == out.end()) continue;
    if (refined > 0 && static_cast<std::size_t>(refined) < it->second)
      it->second = static_cast<std::size_t>(refined);
  }
  return out;
}

bool feasible_unbounded(const LinearAbstraction& a) {
  bool any_pos = false, any_neg = false;
  std::int64_t g = 0;
  for (const auto& [var, c] : a.coefficients) {
    if (c > 0) any_pos = true;
    if (c < 0) any_neg = true;
    g = std::gcd(g, std::abs(c));
  }
  if (g == 0) return a.target == 0;
  if (a.target % g != 0) return false;
  if (!any_neg && a.target < 0) return false;
  if (!any_pos && a.target > 0) return false;
  return true;
}

bool Mdd::contains(MddNode n) const {
  if (n.layer < -1 || n.layer > last_layer()) return false;
  return layer(n.layer).count(n.sum) != 0;
}

std::size_t Mdd::node_count() const {
  std::size_t n = 0;
  for (const auto& s : sums) n += s.size();
  return n;
}

std::vector<MddNode> Mdd::nodes() const {
  std::vector<MddNode> out;
  for (int l = -1; l <= last_layer(); ++l)
    for (std::int64_t s : layer(l)) out.push_back({l, s});
  return out;
}

Mdd build_mdd(const LinearConstraint& c, const Bounds& b,
              const std::string& order) {
  Mdd m;
  for (char var : order) {
    auto it = c.coefficients.find(var);
    if (it == c.coefficients.end()) continue;
    auto bit = b.find(var);
    if (bit == b.end())
      throw InvalidInput(std::string("no bound for variable '") + var + "'");
    m.variables.push_back(var);
    m.coefficients.push_back(it->second);
    m.bounds.push_back(bit->second);
  }
  for (const auto& [var, coeff] : c.coefficients)
    if (m.variables.find(var) == std::string::npos)
      throw InvalidInput(std::string("variable '") + var +
                         "' missing from the MDD order");

  m.sums.assign(m.variables.size() + 1, {});
  m.sums[0].insert(0);
  for (std::size_t l = 0; l < m.variables.size(); ++l)
    for (std::int64_t s : m.sums[l])
      for (std::size_t k = 0; k <= m.bounds[l]; ++k)
        m.sums[l + 1].insert(s + static_cast<std::int64_t>(k) * m.coefficients[l]);

  for (std::int64_t s : m.sums.back()) {
    bool accept = c.relation == Relation::equal ? s == c.bound : s <= c.bound;
    if (accept) m.accepting.insert(s);
  }
  return m;
}

Mdd build_mdd(const LinearAbstraction& a, const Bounds& b,
              const std::string& order) {
  return build_mdd(a.as_constraint(), b, order);
}

Mdd reduce_mdd(const Mdd& m) {
  Mdd out = m;
  for (auto& s : out.sums) s.clear();
  out.sums.back() = m.accepting;
  for (int l = m.last_layer(); l >= 0; --l) {
    const auto& next = out.sums[l + 1];
    auto& prev = out.sums[l];
    for (std::int64_t s : m.sums[l])
      for (std::size_t k = 0; k <= m.bounds[l]; ++k)
        if (next.count(s + static_cast<std::int64_t>(k) * m.coefficients[l])) {
          prev.insert(s);
          break;
        }
  }
  return out;
}

bool feasible(const LinearAbstraction& a, const Bounds& b) {
  std::string order;
  for (const auto& [var, c] : a.coefficients) order.push_back(var);
  return !build_mdd(a, b, order).empty();
}

void write_mdd_dot(const Mdd& m, std::ostream& out, const std::string& name) {
  auto id = [](const MddNode& n) {
    return "\"" + std::to_string(n.layer) + ":" + std::to_string(n.sum) + "\"";
  };
  auto label = [&](const MddNode& n) {
    std::string v = n.layer < 0 ? std::string("root")
                                : std::string(1, m.variables[n.layer]);
    return "(" + v + "," + std::to_string(n.sum) + ")";
  };
  out << "digraph " << name << " {\n";
  for (int l = -1; l <= m.last_layer(); ++l) {
    out << "  { rank=same;";
    for (std::int64_t s : m.layer(l)) out << ' ' << id({l, s});
    out << " }\n";
    for (std::int64_t s : m.layer(l)) {
      bool acc = l == m.last_layer() && m.accepting.count(s);
      out << "  " << id({l, s}) << " [label=\"" << label({l, s}) << "\""
          << (acc ? ", peripheries=2" : "") << "];\n";
    }
  }
  for (int l = 0; l <= m.last_layer(); ++l)
    for (std::int64_t s : m.layer(l - 1))
      for (std::size_t k = 0; k <= m.bounds[l]; ++k) {
        std::int64_t t = s + static_cast<std::int64_t>(k) * m.coefficients[l];
        if (m.layer(l).count(t))
          out << "  " << id({l - 1, s}) << " -> " << id({l, t})
              << " [label=\"" << k << "\"];\n";
      }
  out << "}\n";
}

}  // namespace wordsat
