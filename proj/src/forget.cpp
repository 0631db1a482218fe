#include "horn/forget.hpp"

namespace horn {

namespace {

bool mentions(const Clause& c, Var v) { return c.head == v || c.body.contains(v); }

}  // namespace

Formula forget_single_head(const Formula& input, const VarSet& keep) {
  Formula f = normalize(input);
  if (!f.single_head()) throw NotSingleHeadError("forget_single_head: formula is not single-head");
  std::vector<Clause> clauses(f.clauses().begin(), f.clauses().end());

  for (Var v : f.universe() - keep) {
    std::optional<VarSet> def;
    for (const auto& c : clauses)
      if (c.head == v) def = c.body;
    std::vector<Clause> next;
    next.reserve(clauses.size());
    for (auto c : clauses) {
      if (c.head == v) continue;
      if (c.body.contains(v)) {
        if (!def) continue;
        c.body.erase(v);
        c.body |= *def;
        if (c.tautological()) continue;
      }
      next.push_back(c);
    }
    clauses = std::move(next);
  }
  return normalize(Formula(f.symbols_ptr(), f.universe() & keep, std::move(clauses)));
}

Formula forget_by_resolution(const Formula& input, const VarSet& keep) {
  Formula f = normalize(input);
  std::vector<Clause> clauses(f.clauses().begin(), f.clauses().end());

  for (Var v : f.universe() - keep) {
    std::vector<Clause> next;
    for (const auto& side : clauses) {
      if (side.head != v) continue;
      for (const auto& target : clauses)
        if (target.body.contains(v) && !side.body.contains(target.head)) {
          Clause r{(target.body - VarSet::of(v)) | side.body, target.head};
          if (!r.tautological()) next.push_back(r);
        }
    }
    for (const auto& c : clauses)
      if (!mentions(c, v)) next.push_back(c);
    canonicalize(next);
    clauses = std::move(next);
  }
  return normalize(Formula(f.symbols_ptr(), f.universe() & keep, std::move(clauses)));
}

}  // namespace horn
