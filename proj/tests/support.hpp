#pragma once

#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

#include "horn/chain.hpp"
#include "horn/formula.hpp"
#include "horn/syntax.hpp"

namespace horn::test {

inline Formula parse(std::initializer_list<std::string> items,
                     std::vector<std::string> declared = {}) {
  std::vector<std::string> v(items);
  ParseOptions opt;
  opt.declared = std::move(declared);
  return parse_formula(v, opt);
}

/// Letters in `names` looked up in the symbol table of `f`.
inline VarSet vs(const Formula& f, const std::string& names) {
  VarSet s;
  for (char c : names) {
    auto v = f.symbols().find(std::string(1, c));
    if (!v) throw std::invalid_argument(std::string("unknown variable ") + c);
    s.insert(*v);
  }
  return s;
}

inline Var v1(const Formula& f, char c) { return *f.symbols().find(std::string(1, c)); }

/// Clauses written as "ab->c" over the symbols of `f`, canonical.
inline std::vector<Clause> cl(const Formula& f, std::initializer_list<std::string> items) {
  std::vector<Clause> out;
  for (const auto& s : items) {
    auto arrow = s.find("->");
    out.push_back({vs(f, s.substr(0, arrow)), v1(f, s[arrow + 2])});
  }
  canonicalize(out);
  return out;
}

inline std::vector<std::string> show(const Formula& f, std::span<const Clause> cs) {
  return format_clauses(cs, f.symbols(), Syntax::letters);
}

inline std::string join_clauses(const Formula& f) {
  std::string out = "{";
  for (const auto& c : format_clauses(f.clauses(), f.symbols(), Syntax::letters))
    out += (out.size() > 1 ? ", " : "") + c;
  return out + "}";
}

/// Repeated scan until nothing changes.
inline VarSet naive_closure(std::span<const Clause> clauses, VarSet s) {
  for (bool changed = true; changed;) {
    changed = false;
    for (const auto& c : clauses)
      if (c.body.subset_of(s) && !s.contains(c.head)) {
        s.insert(c.head);
        changed = true;
      }
  }
  return s;
}

/// Every subset of `pool`.
inline std::vector<VarSet> all_subsets(const VarSet& pool) {
  auto vars = pool.to_vector();
  std::vector<VarSet> out;
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << vars.size()); ++m) {
    VarSet s;
    for (std::size_t i = 0; i < vars.size(); ++i)
      if (m >> i & 1U) s.insert(vars[i]);
    out.push_back(s);
  }
  return out;
}

}  // namespace horn::test
