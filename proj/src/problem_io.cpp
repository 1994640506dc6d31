#include "wordsat/problem_io.hpp"

#include <cctype>
#include <charconv>
#include <optional>
#include <vector>

namespace wordsat {

ParseError::ParseError(std::size_t line, std::size_t column,
                       const std::string& what)
    : InvalidInput("line " + std::to_string(line) + ", column " +
                   std::to_string(column) + ": " + what),
      line_(line),
      column_(column) {}

namespace {

struct Token {
  std::string_view text;
  std::size_t column;  // 1-based
};

std::vector<Token> tokenize(std::string_view line, std::size_t offset) {
  std::vector<Token> out;
  std::size_t i = offset;
  while (i < line.size()) {
    if (std::isspace(static_cast<unsigned char>(line[i]))) {
      ++i;
      continue;
    }
    std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    out.push_back({line.substr(start, i - start), start + 1});
  }
  return out;
}

class Parser {
 public:
  EquationSystem run(std::string_view text) {
    std::size_t pos = 0;
    while (pos <= text.size()) {
      std::size_t end = text.find('\n', pos);
      if (end == std::string_view::npos) end = text.size();
      std::string_view line = text.substr(pos, end - pos);
      ++line_no_;
      if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
      if (auto hash = line.find('#'); hash != std::string_view::npos)
        line = line.substr(0, hash);
      parse_line(line);
      pos = end + 1;
    }
    if (!have_variables_) fail(line_no_, 1, "missing 'Variables' declaration");
    if (!have_terminals_) fail(line_no_, 1, "missing 'Terminals' declaration");
    return std::move(sys_);
  }

 private:
  [[noreturn]] void fail(std::size_t line, std::size_t col,
                         const std::string& what) const {
    throw ParseError(line, col, what);
  }
  [[noreturn]] void fail(std::size_t col, const std::string& what) const {
    fail(line_no_, col, what);
  }

  void parse_line(std::string_view line) {
    std::size_t first = line.find_first_not_of(" \t");
    if (first == std::string_view::npos) return;
    std::string_view rest = line.substr(first);
    auto starts = [&](std::string_view kw) { return rest.substr(0, kw.size()) == kw; };
    if (starts("Variables")) {
      declaration(line, first + 9, true);
    } else if (starts("Terminals")) {
      declaration(line, first + 9, false);
    } else if (starts("Equation:")) {
      equation(line, first + 9);
    } else if (starts("Bound:")) {
      bound(line, first + 6);
    } else if (starts("LinConstraint:")) {
      constraint(line, first + 14);
    } else {
      fail(first + 1, "unknown directive");
    }
  }

  void declaration(std::string_view line, std::size_t at, bool variables) {
    bool& seen = variables ? have_variables_ : have_terminals_;
    if (seen) fail(1, variables ? "duplicate 'Variables' line" : "duplicate 'Terminals' line");
    seen = true;
    std::size_t open = line.find('{', at);
    std::size_t close = line.find('}', at);
    if (open == std::string_view::npos || close == std::string_view::npos || close < open)
      fail(at + 1, "expected '{...}'");
    for (std::size_t k = at; k < open; ++k)
      if (!std::isspace(static_cast<unsigned char>(line[k])))
        fail(k + 1, "unexpected text before '{'");
    for (std::size_t k = close + 1; k < line.size(); ++k)
      if (!std::isspace(static_cast<unsigned char>(line[k])))
        fail(k + 1, "unexpected text after '}'");
    std::string& target = variables ? sys_.variables : sys_.letters;
    for (std::size_t k = open + 1; k < close; ++k) {
      char c = line[k];
      if (std::isspace(static_cast<unsigned char>(c))) continue;
      const bool upper = std::isupper(static_cast<unsigned char>(c)) != 0;
      if (variables && !upper) fail(k + 1, std::string("variable '") + c + "' is not uppercase");
      if (!variables && upper)
        fail(k + 1, std::string("terminal '") + c + "' is uppercase (reserved for variables)");
      if (!std::isgraph(static_cast<unsigned char>(c)) || c == '=' || c == '#')
        fail(k + 1, std::string("invalid symbol '") + c + "'");
      if (sys_.is_letter(c) || sys_.is_variable(c))
        fail(k + 1, std::string("symbol '") + c + "' declared twice");
      target.push_back(c);
    }
  }

  void require_declarations(std::size_t col) const {
    if (!have_variables_ || !have_terminals_)
      fail(col, "'Variables' and 'Terminals' must be declared first");
  }

  Pattern side(const Token& t) const {
    Pattern p;
    for (std::size_t k = 0; k < t.text.size(); ++k) {
      char c = t.text[k];
      if (sys_.is_variable(c))
        p.push_back(Symbol::variable(c));
      else if (sys_.is_letter(c))
        p.push_back(Symbol::letter(c));
      else
        fail(t.column + k, std::string("undeclared symbol '") + c + "'");
    }
    return p;
  }

  void equation(std::string_view line, std::size_t at) {
    require_declarations(at);
    auto tokens = tokenize(line, at);
    std::size_t eq = tokens.size();
    for (std::size_t k = 0; k < tokens.size(); ++k)
      if (tokens[k].text == "=") {
        if (eq != tokens.size()) fail(tokens[k].column, "second '='");
        eq = k;
      }
    if (eq == tokens.size()) fail(at + 1, "expected ' = ' between the sides");
    if (eq > 1) fail(tokens[1].column, "a side must not contain whitespace");
    if (tokens.size() - eq > 2) fail(tokens[eq + 2].column, "a side must not contain whitespace");
    WordEquation e;
    if (eq == 1) e.lhs = side(tokens[0]);
    if (eq + 1 < tokens.size()) e.rhs = side(tokens[eq + 1]);
    sys_.equations.push_back(std::move(e));
  }

  char variable(const Token& t) const {
    if (t.text.size() != 1 || !sys_.is_variable(t.text[0])) {
      if (t.text.size() == 1 && sys_.is_letter(t.text[0]))
        fail(t.column, "terminal '" + std::string(t.text) + "' used as a variable");
      fail(t.column, "undeclared variable '" + std::string(t.text) + "'");
    }
    return t.text[0];
  }

  template <class Int>
  Int integer(const Token& t) const {
    Int v{};
    const char* b = t.text.data();
    const char* e = b + t.text.size();
    if (!t.text.empty() && *b == '+') ++b;
    auto [p, ec] = std::from_chars(b, e, v);
    if (ec != std::errc() || p != e || b == e)
      fail(t.column, "expected an integer, got '" + std::string(t.text) + "'");
    return v;
  }

  void bound(std::string_view line, std::size_t at) {
    require_declarations(at);
    auto tokens = tokenize(line, at);
    if (tokens.size() != 2) fail(at + 1, "expected 'Bound: <variable> <n>'");
    char v = variable(tokens[0]);
    auto n = integer<std::size_t>(tokens[1]);
    if (!sys_.bounds.emplace(v, n).second)
      fail(tokens[0].column, std::string("duplicate bound for '") + v + "'");
  }

  void constraint(std::string_view line, std::size_t at) {
    require_declarations(at);
    auto tokens = tokenize(line, at);
    if (tokens.size() < 2) fail(at + 1, "expected '<terms> <= <n>'");
    const Token& rel = tokens[tokens.size() - 2];
    LinearConstraint c;
    if (rel.text == "<=")
      c.relation = Relation::less_equal;
    else if (rel.text == "=")
      c.relation = Relation::equal;
    else
      fail(rel.column, "expected '<=' or '='");
    c.bound = integer<std::int64_t>(tokens.back());
    const std::size_t terms = tokens.size() - 2;
    if (terms % 2 != 0) fail(tokens[terms - 1].column, "coefficient without a variable");
    for (std::size_t k = 0; k < terms; k += 2)
      c.coefficients[variable(tokens[k + 1])] += integer<std::int64_t>(tokens[k]);
    sys_.constraints.push_back(std::move(c));
  }

  EquationSystem sys_;
  std::size_t line_no_ = 0;
  bool have_variables_ = false;
  bool have_terminals_ = false;
};

}  // namespace

EquationSystem parse_problem(std::string_view text) {
  EquationSystem sys = Parser().run(text);
  sys.validate();
  return sys;
}

std::string write_problem(const EquationSystem& sys) {
  std::string out = "Variables {" + sys.variables + "}\n";
  out += "Terminals {" + sys.letters + "}\n";
  for (const auto& e : sys.equations)
    out += "Equation: " + to_string(e.lhs) + " = " + to_string(e.rhs) + "\n";
  for (const auto& [v, n] : sys.bounds)
    out += std::string("Bound: ") + v + " " + std::to_string(n) + "\n";
  for (const auto& c : sys.constraints) {
    out += "LinConstraint:";
    for (const auto& [v, k] : c.coefficients)
      out += " " + std::to_string(k) + " " + std::string(1, v);
    out += c.relation == Relation::equal ? " = " : " <= ";
    out += std::to_string(c.bound) + "\n";
  }
  return out;
}

}  // namespace wordsat
