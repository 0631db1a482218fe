#pragma once

#include <optional>
#include <span>
#include <vector>

#include "horn/formula.hpp"

namespace horn {

/// Resolves `side` into the body of `target` on side's head:
/// (target.body \ {side.head}) | side.body -> target.head. Empty when side's
/// head is not in target's body or the resolvent is tautological.
std::optional<Clause> resolve_on_head(const Clause& side, const Clause& target);

/// Drops every clause whose body strictly contains the body of another
/// clause with the same head. Result is canonical.
std::vector<Clause> minimal_clauses(std::vector<Clause> clauses);

/// Frontier bookkeeping of one hclose run, for tests.
struct HcloseLog {
  std::vector<Clause> frontier;  // every clause that entered a frontier, in order
  std::size_t rounds = 0;
};

/// Body-minimal non-tautological clauses entailed by `clauses` whose head is
/// in `heads`. Worklist resolution bounded to the heads; the clauses must be
/// tautology-free.
std::vector<Clause> hclose(const VarSet& heads, std::span<const Clause> clauses,
                           HcloseLog* log = nullptr);
std::vector<Clause> hclose(const VarSet& heads, const Formula& f, HcloseLog* log = nullptr);

/// Subset R of `pool` such that every clause B'->x of `pool` has some
/// B''->x in R with context | B' |= B''. Clauses of one head form a graph
/// under that entailment; one representative (the canonically lowest) of
/// every sink class is kept.
std::vector<Clause> minbodies(std::span<const Clause> pool, std::span<const Clause> context);

}  // namespace horn
