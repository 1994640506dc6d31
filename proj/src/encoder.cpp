#include "wordsat/encoder.hpp"

#include <algorithm>
#include <ostream>
#include <stdexcept>

namespace wordsat {

namespace {

std::string value_name(FilledValue v) { return v ? std::string(1, *v) : "lambda"; }

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

}  // namespace

std::string describe(const VariableKey& k) {
  return std::visit(
      Overloaded{
          [](const CellKey& c) {
            return "K(" + std::string(1, c.var) + "," + std::to_string(c.index) +
                   "," + value_name(c.value) + ")";
          },
          [](const MatchKey& m) {
            return "WM(" + std::to_string(m.eq) + "," + std::to_string(m.i) +
                   "," + std::to_string(m.j) + ")";
          },
          [](const GridKey& g) {
            return "S(" + std::to_string(g.eq) + "," + std::to_string(g.i) +
                   "," + std::to_string(g.j) + ")";
          },
          [](const OneHotKey& o) {
            return "OH(" + std::string(1, o.var) + "," +
                   std::to_string(o.length) + ")";
          },
          [](const MddKey& m) {
            return "M(" + std::to_string(m.constraint) + "," +
                   std::to_string(m.layer) + "," + std::to_string(m.sum) + ")";
          },
          [](const AuxKey& a) { return "AUX(" + std::to_string(a.id) + ")"; },
      },
      k);
}

int VariableRegistry::add(const VariableKey& k) {
  auto [it, fresh] = index_.emplace(k, size() + 1);
  if (!fresh) throw std::logic_error("variable registered twice: " + describe(k));
  keys_.push_back(k);
  return it->second;
}

int VariableRegistry::find(const VariableKey& k) const {
  auto it = index_.find(k);
  return it == index_.end() ? 0 : it->second;
}

int VariableRegistry::at(const VariableKey& k) const {
  int v = find(k);
  if (v == 0) throw std::out_of_range("unregistered variable " + describe(k));
  return v;
}

void VariableRegistry::write_map(std::ostream& out) const {
  for (int v = 1; v <= size(); ++v) out << v << ' ' << describe(key(v)) << '\n';
}

//===----------------------------------------------------------------------===//
// Encoding (decoding side)
//===----------------------------------------------------------------------===//

std::vector<int> Encoding::cell_variables() const {
  std::vector<int> out;
  for (int v = 1; v <= registry.size(); ++v)
    if (std::holds_alternative<CellKey>(registry.key(v))) out.push_back(v);
  return out;
}

FilledAssignment Encoding::decode_cells(const std::vector<bool>& model) const {
  FilledAssignment out;
  for (int v : cell_variables()) {
    if (!model.at(static_cast<std::size_t>(v))) continue;
    const auto& k = std::get<CellKey>(registry.key(v));
    auto [it, fresh] = out.emplace(FilledVariable{k.var, k.index}, k.value);
    if (!fresh)
      throw SoundnessError("model assigns two symbols to one slot");
  }
  for (const auto& [var, bound] : bounds)
    for (std::uint32_t i = 0; i < bound; ++i)
      if (!out.count({var, i}))
        throw SoundnessError("model leaves a slot without a symbol");
  return out;
}

Substitution Encoding::decode(const std::vector<bool>& model) const {
  return decode_filled_assignment(decode_cells(model), bounds);
}

//===----------------------------------------------------------------------===//
// Encoder
//===----------------------------------------------------------------------===//

Encoder::Encoder(std::string letters, const std::string& variables,
                 Bounds bounds, EncodeOptions opts)
    : opts_(opts) {
  enc_.letters = std::move(letters);
  for (char v : variables)
    if (!bounds.count(v))
      throw InvalidInput(std::string("no bound for variable '") + v + "'");
  enc_.variables = variables;
  for (const auto& [v, b] : bounds)
    if (enc_.variables.find(v) == std::string::npos) enc_.variables.push_back(v);
  enc_.bounds = std::move(bounds);
}

int Encoder::fresh() {
  int v = enc_.registry.add(AuxKey{aux_count_++});
  enc_.formula.num_variables = enc_.registry.size();
  return v;
}

Term Encoder::materialize(Term t) {
  if (opts_.fold_constants || !t.is_constant()) return t;
  if (true_var_ == 0) {
    true_var_ = fresh();
    enc_.formula.clauses.push_back({true_var_});
  }
  return Term::literal(t.is_true() ? true_var_ : -true_var_);
}

void Encoder::emit(std::vector<Term> clause) {
  std::vector<int> lits;
  for (const Term& t : clause) {
    if (t.is_true()) return;
    if (!t.is_false()) lits.push_back(t.lit());
  }
  std::sort(lits.begin(), lits.end());
  lits.erase(std::unique(lits.begin(), lits.end()), lits.end());
  enc_.formula.clauses.push_back(std::move(lits));
}

Term Encoder::conjunction(const std::vector<Term>& terms) {
  std::vector<Term> open;
  for (const Term& t : terms) {
    if (t.is_false()) return t;
    if (!t.is_true()) open.push_back(t);
  }
  if (open.empty()) return Term::constant(true);
  if (open.size() == 1) return open.front();
  Term aux = Term::literal(fresh());
  std::vector<Term> back{aux};
  for (const Term& t : open) {
    emit({~aux, t});
    back.push_back(~t);
  }
  emit(std::move(back));
  return aux;
}

Term Encoder::word_literal(const Cell& c, FilledValue a) {
  if (c.is_letter()) return materialize(Term::constant(a && *a == c.letter()));
  FilledVariable v = c.variable();
  return Term::literal(enc_.registry.at(CellKey{v.base, v.index, a}));
}

void Encoder::encode_cells() {
  std::vector<FilledValue> values;
  for (char a : enc_.letters) values.emplace_back(a);
  values.push_back(kLambda);
  for (char var : enc_.variables) {
    const std::size_t b = enc_.bounds.at(var);
    for (std::uint32_t i = 0; i < b; ++i)
      for (FilledValue a : values) enc_.registry.add(CellKey{var, i, a});
  }
  enc_.formula.num_variables = enc_.registry.size();

  for (char var : enc_.variables) {
    const std::size_t b = enc_.bounds.at(var);
    for (std::uint32_t i = 0; i < b; ++i) {
      std::vector<int> k;
      for (FilledValue a : values)
        k.push_back(enc_.registry.at(CellKey{var, i, a}));
      enc_.formula.clauses.push_back(k);
      for (std::size_t x = 0; x < k.size(); ++x)
        for (std::size_t y = x + 1; y < k.size(); ++y)
          enc_.formula.clauses.push_back({-k[x], -k[y]});
    }
    for (std::uint32_t i = 0; i + 1 < b; ++i)
      enc_.formula.clauses.push_back(
          {-enc_.registry.at(CellKey{var, i, kLambda}),
           enc_.registry.at(CellKey{var, i + 1, kLambda})});
  }
}

void Encoder::encode_onehot() {
  for (char var : enc_.variables)
    for (std::size_t len = 0; len <= enc_.bounds.at(var); ++len)
      enc_.registry.add(OneHotKey{var, len});
  enc_.formula.num_variables = enc_.registry.size();

  auto& cls = enc_.formula.clauses;
  for (char var : enc_.variables) {
    const std::size_t b = enc_.bounds.at(var);
    auto oh = [&](std::size_t len) { return enc_.registry.at(OneHotKey{var, len}); };
    auto lam = [&](std::size_t i) {
      return enc_.registry.at(CellKey{var, static_cast<std::uint32_t>(i), kLambda});
    };
    if (b == 0) {
      cls.push_back({oh(0)});
      continue;
    }
    cls.push_back({-oh(0), lam(0)});
    cls.push_back({oh(0), -lam(0)});
    cls.push_back({-oh(b), -lam(b - 1)});
    cls.push_back({oh(b), lam(b - 1)});
    for (std::size_t j = 1; j < b; ++j) {
      cls.push_back({-oh(j), lam(j)});
      cls.push_back({-oh(j), -lam(j - 1)});
      cls.push_back({oh(j), -lam(j), lam(j - 1)});
    }
  }
}

std::size_t Encoder::declare_equation(const WordEquation& e) {
  enc_.equations.emplace_back(fill_pattern(e.lhs, enc_.bounds),
                              fill_pattern(e.rhs, enc_.bounds));
  matches_.emplace_back();
  return enc_.equations.size() - 1;
}

void Encoder::encode_match(std::size_t eq) {
  const auto& [u, v] = enc_.equations.at(eq);
  std::vector<FilledValue> values;
  for (char a : enc_.letters) values.emplace_back(a);
  values.push_back(kLambda);

  auto& table = matches_[eq];
  for (std::size_t i = 0; i < u.size(); ++i) {
    for (std::size_t j = 0; j < v.size(); ++j) {
      const Cell& x = u[i];
      const Cell& y = v[j];
      if (opts_.fold_constants) {
        if (x.is_letter() && y.is_letter()) {
          table.insert_or_assign({i, j}, Term::constant(x.letter() == y.letter()));
          continue;
        }
        if (x.is_letter() || y.is_letter()) {
          const Cell& slot = x.is_letter() ? y : x;
          const char c = x.is_letter() ? x.letter() : y.letter();
          table.insert_or_assign({i, j}, word_literal(slot, c));
          continue;
        }
        if (x == y) {
          table.insert_or_assign({i, j}, Term::constant(true));
          continue;
        }
      }
      Term wm = Term::literal(enc_.registry.add(MatchKey{eq, i, j}));
      enc_.formula.num_variables = enc_.registry.size();
      table.insert_or_assign({i, j}, wm);
      for (FilledValue a : values) {
        Term wx = word_literal(x, a);
        Term wy = word_literal(y, a);
        emit({~wx, ~wy, wm});
        emit({~wm, ~wx, wy});
      }
    }
  }
}

Term Encoder::match(std::size_t eq, std::size_t i, std::size_t j) const {
  const auto& table = matches_[eq];
  auto it = table.find({i, j});
  return it == table.end() ? Term::constant(false) : it->second;
}

Term Encoder::grid(std::size_t eq, std::size_t i, std::size_t j) const {
  int v = enc_.registry.find(GridKey{eq, i, j});
  return v ? Term::literal(v) : Term::constant(false);
}

Term Encoder::lambda_at(const FilledPattern& p, std::size_t i) {
  return i < p.size() ? word_literal(p[i], kLambda) : Term::constant(false);
}

void Encoder::encode_grid(std::size_t eq) {
  const auto& [u, v] = enc_.equations.at(eq);
  const std::size_t n = u.size();
  const std::size_t m = v.size();
  for (std::size_t i = 0; i <= n; ++i)
    for (std::size_t j = 0; j <= m; ++j) enc_.registry.add(GridKey{eq, i, j});
  enc_.formula.num_variables = enc_.registry.size();

  // Indices below zero wrap to huge values and so fall outside the grid.
  auto S = [&](std::size_t i, std::size_t j) { return grid(eq, i, j); };
  auto lu = [&](std::size_t i) { return lambda_at(u, i); };
  auto lv = [&](std::size_t j) { return lambda_at(v, j); };
  auto wm = [&](std::size_t i, std::size_t j) { return match(eq, i, j); };

  for (std::size_t i = 0; i <= n; ++i) {
    for (std::size_t j = 0; j <= m; ++j) {
      const Term s = S(i, j);
      const Term right = S(i + 1, j);
      const Term down = S(i, j + 1);
      const Term diag = S(i + 1, j + 1);
      if (i != n || j != m) emit({~s, right, down, diag});
      emit({~s, ~right, ~down});
      emit({~s, ~right, ~diag});
      emit({~s, ~down, ~diag});
      emit({~s, lu(i), ~right});
      emit({~s, ~lu(i), lv(j), right});
      emit({~s, lv(j), ~down});
      emit({~s, ~lv(j), lu(i), down});
      emit({~s, ~lu(i), ~lv(j), diag});
      emit({~s, ~diag, wm(i, j)});

      if (i != 0 || j != 0) {
        std::vector<std::vector<Term>> preds{
            {S(i - 1, j - 1), wm(i - 1, j - 1)},
            {S(i, j - 1), lv(j - 1), ~lu(i)},
            {S(i - 1, j), lu(i - 1), ~lv(j)},
        };
        std::vector<Term> forward{~s};
        for (const auto& p : preds) {
          forward.push_back(conjunction(p));
          std::vector<Term> back{s};
          for (const Term& t : p) back.push_back(~t);
          emit(std::move(back));
        }
        emit(std::move(forward));
      }

      emit({~diag, s, right, down});
    }
  }
  emit({S(0, 0)});
  emit({S(n, m)});
}

std::size_t Encoder::add_equation(const WordEquation& e) {
  std::size_t eq = declare_equation(e);
  encode_match(eq);
  encode_grid(eq);
  return eq;
}

void Encoder::encode_mdd(const Mdd& mdd, std::size_t constraint) {
  for (char var : mdd.variables)
    if (!enc_.registry.find(OneHotKey{var, 0}))
      throw InvalidInput(std::string("MDD variable '") + var +
                         "' has no length encoding");
  for (int l = -1; l <= mdd.last_layer(); ++l)
    for (std::int64_t s : mdd.layer(l))
      enc_.registry.add(MddKey{constraint, l, s});
  enc_.formula.num_variables = enc_.registry.size();

  auto M = [&](int l, std::int64_t s) {
    int v = enc_.registry.find(MddKey{constraint, l, s});
    return v ? Term::literal(v) : Term::constant(false);
  };
  auto OH = [&](int l, std::size_t k) {
    int v = enc_.registry.find(OneHotKey{mdd.variables[l], k});
    return v ? Term::literal(v) : Term::constant(false);
  };

  if (mdd.empty()) {
    enc_.formula.clauses.emplace_back();
    return;
  }
  emit({M(-1, 0)});
  std::vector<Term> accept;
  for (std::int64_t s : mdd.layer(mdd.last_layer())) {
    if (mdd.accepting.count(s))
      accept.push_back(M(mdd.last_layer(), s));
    else
      emit({~M(mdd.last_layer(), s)});
  }
  emit(std::move(accept));

  for (int l = 0; l <= mdd.last_layer(); ++l) {
    const std::size_t b = enc_.bounds.at(mdd.variables[l]);
    const std::int64_t c = mdd.coefficients[l];
    for (std::int64_t s : mdd.layer(l - 1)) {
      std::vector<std::size_t> live;
      for (std::size_t k = 0; k <= b; ++k) {
        std::int64_t t = s + static_cast<std::int64_t>(k) * c;
        emit({~M(l - 1, s), ~OH(l, k), M(l, t)});
        if (mdd.layer(l).count(t)) live.push_back(k);
      }
      if (live.size() == 1) emit({~M(l - 1, s), OH(l, live.front())});
    }
    for (std::int64_t t : mdd.layer(l))
      for (std::size_t k = 0; k <= b; ++k)
        emit({~M(l, t), ~OH(l, k),
              M(l - 1, t - static_cast<std::int64_t>(k) * c)});
  }
}

Encoding Encoder::finish() && {
  enc_.formula.num_variables = enc_.registry.size();
  return std::move(enc_);
}

Encoding encode_system(const EquationSystem& sys, const Bounds& b,
                       const std::vector<Mdd>& mdds, EncodeOptions opts) {
  Encoder enc(sys.letters, sys.variables, b, opts);
  enc.encode_cells();
  enc.encode_onehot();
  for (const auto& e : sys.equations) enc.add_equation(e);
  for (std::size_t c = 0; c < mdds.size(); ++c) enc.encode_mdd(mdds[c], c);
  return std::move(enc).finish();
}

}  // namespace wordsat
