#include "horn/formula.hpp"

#include <algorithm>
#include <stdexcept>

namespace horn {

Var Symbols::intern(std::string_view name) {
  if (auto it = ids_.find(std::string(name)); it != ids_.end()) return it->second;
  if (names_.size() >= VarSet::kCapacity)
    throw std::length_error("too many variables (limit " + std::to_string(VarSet::kCapacity) + ")");
  Var v = var(static_cast<std::uint32_t>(names_.size()));
  names_.emplace_back(name);
  ids_.emplace(std::string(name), v);
  return v;
}

std::optional<Var> Symbols::find(std::string_view name) const {
  if (auto it = ids_.find(std::string(name)); it != ids_.end()) return it->second;
  return std::nullopt;
}

void canonicalize(std::vector<Clause>& clauses) {
  std::sort(clauses.begin(), clauses.end(),
            [](const Clause& a, const Clause& b) { return canonical_less(a, b); });
  clauses.erase(std::unique(clauses.begin(), clauses.end()), clauses.end());
}

std::vector<Clause> merge(std::span<const Clause> a, std::span<const Clause> b) {
  std::vector<Clause> out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out),
                 [](const Clause& x, const Clause& y) { return canonical_less(x, y); });
  return out;
}

VarSet body_vars(std::span<const Clause> clauses) {
  VarSet s;
  for (const auto& c : clauses) s |= c.body;
  return s;
}

VarSet head_vars(std::span<const Clause> clauses) {
  VarSet s;
  for (const auto& c : clauses) s.insert(c.head);
  return s;
}

std::vector<VarSet> distinct_bodies(std::span<const Clause> clauses) {
  std::vector<VarSet> bodies;
  bodies.reserve(clauses.size());
  for (const auto& c : clauses) bodies.push_back(c.body);
  std::sort(bodies.begin(), bodies.end(), CanonicalLess{});
  bodies.erase(std::unique(bodies.begin(), bodies.end()), bodies.end());
  return bodies;
}

bool single_head(std::span<const Clause> clauses) {
  VarSet seen;
  for (const auto& c : clauses) {
    if (seen.contains(c.head)) return false;
    seen.insert(c.head);
  }
  return true;
}

Formula::Formula() : symbols_(std::make_shared<Symbols>()) {}

Formula::Formula(std::shared_ptr<const Symbols> symbols, VarSet universe, std::vector<Clause> clauses)
    : symbols_(std::move(symbols)), universe_(universe), clauses_(std::move(clauses)) {
  canonicalize(clauses_);
  for (const auto& c : clauses_) {
    universe_ |= c.body;
    universe_.insert(c.head);
  }
}

Formula Formula::with_clauses(std::vector<Clause> clauses) const {
  return Formula(symbols_, universe_, std::move(clauses));
}

bool Formula::contains(const Clause& c) const {
  return std::binary_search(clauses_.begin(), clauses_.end(), c,
                            [](const Clause& x, const Clause& y) { return canonical_less(x, y); });
}

Formula normalize(const Formula& f) {
  std::vector<Clause> kept;
  kept.reserve(f.size());
  for (const auto& c : f.clauses())
    if (!c.tautological()) kept.push_back(c);
  return f.with_clauses(std::move(kept));
}

}  // namespace horn
