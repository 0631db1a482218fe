#pragma once

#include <stdexcept>

#include "horn/formula.hpp"

namespace horn {

class NotSingleHeadError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Forgets every variable outside `keep` from a single-head formula by
/// substituting each forgotten variable with the body of its clause.
/// Variables heading no clause take their clauses with them. Never adds
/// clauses. Throws NotSingleHeadError otherwise.
Formula forget_single_head(const Formula& f, const VarSet& keep);

/// Forgets by resolving every clause with head v against every clause with
/// v in its body, then dropping the clauses mentioning v. Exponential in
/// the worst case.
Formula forget_by_resolution(const Formula& f, const VarSet& keep);

}  // namespace horn
