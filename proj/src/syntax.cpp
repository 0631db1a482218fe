#include "horn/syntax.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <istream>
#include <set>

namespace horn {

ParseError::ParseError(std::size_t item, std::size_t column, const std::string& what)
    : std::runtime_error(what), item_(item), column_(column) {}

namespace {

struct Token {
  std::string name;
  std::size_t column;
};

enum class Op { implies, equals };

struct RawItem {
  std::vector<Token> lhs;
  std::vector<Token> rhs;
  Op op;
};

bool name_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool name_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
}

// Tokens of [begin, end) of `s`; columns are 1-based in the whole item.
std::vector<Token> tokenize(const std::string& s, std::size_t begin, std::size_t end, Syntax syntax,
                            std::size_t item) {
  std::vector<Token> out;
  if (syntax == Syntax::letters) {
    for (std::size_t i = begin; i < end; ++i) {
      char c = s[i];
      if (std::isspace(static_cast<unsigned char>(c))) continue;
      if (c < 'a' || c > 'z')
        throw ParseError(item, i + 1, std::string("unexpected character '") + c + "'");
      out.push_back({std::string(1, c), i + 1});
    }
    return out;
  }
  std::size_t i = begin;
  bool expect_name = true;
  bool any = false;
  while (i < end) {
    char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (expect_name) {
      if (!name_start(c))
        throw ParseError(item, i + 1, std::string("expected a variable name at '") + c + "'");
      std::size_t j = i + 1;
      while (j < end && name_char(s[j])) ++j;
      out.push_back({s.substr(i, j - i), i + 1});
      any = true;
      expect_name = false;
      i = j;
    } else {
      if (c != ',')
        throw ParseError(item, i + 1, std::string("expected ',' at '") + c + "'");
      expect_name = true;
      ++i;
    }
  }
  if (any && expect_name) throw ParseError(item, end + 1, "dangling ','");
  return out;
}

RawItem split_item(const std::string& s, Syntax syntax, std::size_t item) {
  std::size_t arrow = s.find("->");
  std::size_t eq = s.find('=');
  RawItem raw{};
  std::size_t op_at;
  std::size_t op_len;
  if (arrow != std::string::npos && (eq == std::string::npos || arrow < eq)) {
    raw.op = Op::implies;
    op_at = arrow;
    op_len = 2;
  } else if (eq != std::string::npos) {
    raw.op = Op::equals;
    op_at = eq;
    op_len = 1;
  } else {
    throw ParseError(item, s.size() + 1, "missing '->' or '='");
  }
  std::size_t rest = op_at + op_len;
  if (s.find("->", rest) != std::string::npos || s.find('=', rest) != std::string::npos) {
    std::size_t second = std::min(s.find("->", rest), s.find('=', rest));
    throw ParseError(item, second + 1, "more than one operator");
  }
  raw.lhs = tokenize(s, 0, op_at, syntax, item);
  raw.rhs = tokenize(s, rest, s.size(), syntax, item);
  if (raw.op == Op::implies && raw.rhs.empty())
    throw ParseError(item, s.size() + 1, "empty head list");
  if (raw.op == Op::equals && raw.lhs.empty() && raw.rhs.empty())
    throw ParseError(item, op_at + 1, "both sides of '=' are empty");
  return raw;
}

VarSet to_set(const std::vector<Token>& tokens, const Symbols& symbols) {
  VarSet s;
  for (const auto& t : tokens) s.insert(*symbols.find(t.name));
  return s;
}

}  // namespace

Formula parse_formula(std::span<const std::string> items, const ParseOptions& options) {
  std::vector<RawItem> raw;
  raw.reserve(items.size());
  std::set<std::string> names(options.declared.begin(), options.declared.end());
  for (std::size_t i = 0; i < items.size(); ++i) {
    raw.push_back(split_item(items[i], options.syntax, i));
    for (const auto& t : raw.back().lhs) names.insert(t.name);
    for (const auto& t : raw.back().rhs) names.insert(t.name);
  }

  auto symbols = std::make_shared<Symbols>();
  VarSet universe;
  for (const auto& n : names) universe.insert(symbols->intern(n));

  std::vector<Clause> clauses;
  for (const auto& r : raw) {
    VarSet lhs = to_set(r.lhs, *symbols);
    VarSet rhs = to_set(r.rhs, *symbols);
    for (Var y : rhs)
      if (!lhs.contains(y)) clauses.push_back({lhs, y});
    if (r.op == Op::equals)
      for (Var x : lhs)
        if (!rhs.contains(x)) clauses.push_back({rhs, x});
  }
  return Formula(std::move(symbols), universe, std::move(clauses));
}

VarSet parse_vars(const std::string& text, const Symbols& symbols, Syntax syntax) {
  VarSet s;
  for (const auto& t : tokenize(text, 0, text.size(), syntax, 0)) {
    auto v = symbols.find(t.name);
    if (!v) throw ParseError(0, t.column, "unknown variable '" + t.name + "'");
    s.insert(*v);
  }
  return s;
}

std::string format_vars(const VarSet& vars, const Symbols& symbols, Syntax syntax) {
  std::string out;
  for (Var v : vars) {
    if (syntax == Syntax::names && !out.empty()) out += ',';
    out += symbols.name(v);
  }
  return out;
}

std::string format_clause(const Clause& c, const Symbols& symbols, Syntax syntax) {
  return format_vars(c.body, symbols, syntax) + "->" + symbols.name(c.head);
}

std::vector<std::string> format_clauses(std::span<const Clause> clauses, const Symbols& symbols,
                                        Syntax syntax) {
  std::vector<std::string> out;
  out.reserve(clauses.size());
  for (const auto& c : clauses) out.push_back(format_clause(c, symbols, syntax));
  return out;
}

Syntax preferred_syntax(const Symbols& symbols) {
  for (std::size_t i = 0; i < symbols.size(); ++i) {
    const auto& n = symbols.name(var(static_cast<std::uint32_t>(i)));
    if (n.size() != 1 || n[0] < 'a' || n[0] > 'z') return Syntax::names;
  }
  return Syntax::letters;
}

namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

}  // namespace

CorpusFile read_corpus(std::istream& in, const std::string& name) {
  CorpusFile file;
  file.name = name;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::string text = trim(line);
    if (text.empty()) continue;
    if (text[0] != '%') {
      file.items.push_back(text);
      file.lines.push_back(lineno);
      continue;
    }
    std::string directive = trim(text.substr(1));
    auto colon = directive.find(':');
    if (colon == std::string::npos) throw ParseError(lineno, 1, "malformed directive");
    std::string key = trim(directive.substr(0, colon));
    std::string value = trim(directive.substr(colon + 1));
    if (key == "expect") {
      if (value == "single-head")
        file.expect = Expectation::single_head;
      else if (value == "not-single-head")
        file.expect = Expectation::not_single_head;
      else
        throw ParseError(lineno, 1, "unknown expectation '" + value + "'");
    } else if (key == "syntax") {
      if (value == "letters")
        file.syntax = Syntax::letters;
      else if (value == "names")
        file.syntax = Syntax::names;
      else
        throw ParseError(lineno, 1, "unknown syntax '" + value + "'");
    } else {
      throw ParseError(lineno, 1, "unknown directive '" + key + "'");
    }
  }
  return file;
}

CorpusFile load_corpus(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return read_corpus(in, path);
}

Formula parse_corpus(const CorpusFile& file) {
  try {
    return parse_formula(file.items, {.syntax = file.syntax, .declared = {}});
  } catch (const ParseError& e) {
    throw ParseError(file.lines.at(e.item()), e.column(), e.what());
  }
}

}  // namespace horn
