#pragma once

#include <compare>
#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "horn/varset.hpp"

namespace horn {

/// Bijective name <-> id interning. A table is shared (read-only) by every
/// formula built over the same universe.
class Symbols {
 public:
  Var intern(std::string_view name);
  std::optional<Var> find(std::string_view name) const;
  const std::string& name(Var v) const { return names_.at(index(v)); }
  std::size_t size() const { return names_.size(); }

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, Var> ids_;
};

/// Definite Horn clause `body -> head`.
struct Clause {
  VarSet body;
  Var head{};

  bool tautological() const { return body.contains(head); }

  friend bool operator==(const Clause&, const Clause&) = default;
};

/// Canonical clause order: head id, then body by ascending id sequence.
inline bool canonical_less(const Clause& a, const Clause& b) {
  if (a.head != b.head) return index(a.head) < index(b.head);
  return canonical_less(a.body, b.body);
}

struct ClauseHash {
  std::size_t operator()(const Clause& c) const { return c.body.hash() * 31 + index(c.head); }
};

/// Sorts into canonical order and drops duplicates.
void canonicalize(std::vector<Clause>& clauses);

/// Union of two canonical clause lists, canonical.
std::vector<Clause> merge(std::span<const Clause> a, std::span<const Clause> b);

/// Variables occurring in some body.
VarSet body_vars(std::span<const Clause> clauses);
VarSet head_vars(std::span<const Clause> clauses);

/// Distinct bodies, canonical order.
std::vector<VarSet> distinct_bodies(std::span<const Clause> clauses);

/// True when no variable heads two clauses.
bool single_head(std::span<const Clause> clauses);

/// Duplicate-free set of clauses over a declared universe. Clauses are kept
/// in canonical order; tautologies are allowed until normalize() drops them.
class Formula {
 public:
  Formula();
  Formula(std::shared_ptr<const Symbols> symbols, VarSet universe, std::vector<Clause> clauses);

  /// Same symbols and universe, different clauses.
  Formula with_clauses(std::vector<Clause> clauses) const;

  std::span<const Clause> clauses() const { return clauses_; }
  const VarSet& universe() const { return universe_; }
  const Symbols& symbols() const { return *symbols_; }
  const std::shared_ptr<const Symbols>& symbols_ptr() const { return symbols_; }

  std::size_t size() const { return clauses_.size(); }
  bool empty() const { return clauses_.empty(); }
  bool contains(const Clause& c) const;

  bool single_head() const { return horn::single_head(clauses_); }

  friend bool operator==(const Formula& a, const Formula& b) {
    return a.universe_ == b.universe_ && a.clauses_ == b.clauses_;
  }

 private:
  std::shared_ptr<const Symbols> symbols_;
  VarSet universe_;
  std::vector<Clause> clauses_;
};

/// Drops tautologies and duplicates. Idempotent.
Formula normalize(const Formula& f);

}  // namespace horn
