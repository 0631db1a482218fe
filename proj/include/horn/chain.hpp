#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "horn/formula.hpp"

namespace horn {

/// Result of one forward-chaining pass from a seed body.
struct BodyAnalysis {
  VarSet body;
  VarSet bcn;               // everything entailed by body
  VarSet rcn;               // heads of clauses that fired
  std::vector<Clause> ucl;  // clauses whose body lies inside bcn, canonical
};

/// Occurrence index over a clause list for repeated forward chaining.
/// Each clause keeps a count of body variables not yet derived; a clause
/// fires when its count drops to zero. Runs in time linear in the total
/// size of the clauses. Tautological clauses are ignored.
class Chainer {
 public:
  explicit Chainer(std::span<const Clause> clauses);

  VarSet closure(const VarSet& seed) const;
  /// Heads of the clauses that fire from `seed`.
  VarSet real_consequences(const VarSet& seed) const;
  BodyAnalysis analyze(const VarSet& seed) const;

 private:
  template <class OnFire>
  VarSet run(const VarSet& seed, OnFire&& on_fire) const;

  std::span<const Clause> clauses_;
  std::vector<std::uint32_t> body_size_;
  std::vector<std::uint32_t> empty_bodies_;
  std::vector<std::uint32_t> offsets_;     // per variable, into occurs_
  std::vector<std::uint32_t> occurs_;      // clause indices by body variable
};

VarSet bcn(std::span<const Clause> clauses, const VarSet& seed);
VarSet bcn(const Formula& f, const VarSet& seed);

/// F |= body -> head. Tautologies are always entailed.
bool entails_clause(std::span<const Clause> clauses, const Clause& c);
bool entails_clause(const Formula& f, const Clause& c);

/// Every clause of `what` is entailed by `by`.
bool entails_all(std::span<const Clause> by, std::span<const Clause> what);

/// a <=_F b, i.e. F |= b -> a.
bool body_leq(const Formula& f, const VarSet& a, const VarSet& b);
bool body_lt(const Formula& f, const VarSet& a, const VarSet& b);
bool body_equiv(const Formula& f, const VarSet& a, const VarSet& b);

BodyAnalysis rcn_ucl(std::span<const Clause> clauses, const VarSet& body);
BodyAnalysis rcn_ucl(const Formula& f, const VarSet& body);

}  // namespace horn
