#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <vector>

#include "horn/formula.hpp"
#include "horn/reconstruct.hpp"

namespace horn {

/// Mutual clause entailment.
bool formulas_equivalent(std::span<const Clause> f, std::span<const Clause> g);
bool formulas_equivalent(const Formula& f, const Formula& g);

class UniverseTooLarge : public std::length_error {
 public:
  using std::length_error::length_error;
};

struct BruteForceOptions {
  std::size_t max_vars = 5;
  /// Offer each variable only the bodies B with F |= B -> v. An equivalent
  /// formula must be entailed by F, so the first hit is unchanged.
  bool prune = true;
};

/// Tries every single-head formula over the universe of `f` (each variable
/// gets no clause or one body not containing it) in canonical order, lowest
/// variable most significant, "no clause" before any body. Returns the first
/// one equivalent to `f`.
std::optional<Formula> brute_force_single_head_equivalent(const Formula& f,
                                                          const BruteForceOptions& options = {});

/// Body-minimal non-tautological clauses over `universe` entailed by
/// `clauses` with a head in `heads`, by trying every body.
std::vector<Clause> brute_force_hclose(const VarSet& heads, std::span<const Clause> clauses,
                                       const VarSet& universe);

/// Every subset of `universe` closed under `clauses`. Guarded to 20 variables.
std::vector<VarSet> models(std::span<const Clause> clauses, const VarSet& universe);

/// Distinct restrictions of `models` to `keep`, canonical order.
std::vector<VarSet> project(std::span<const VarSet> models, const VarSet& keep);

/// Symbol table a, b, c, ... for generated formulas.
std::shared_ptr<const Symbols> letter_symbols(std::size_t n);

/// Every non-tautological clause over the first n variables with
/// min_body..max_body body variables, canonical order.
std::vector<Clause> all_clauses(std::size_t n, std::size_t max_body, std::size_t min_body = 0);

/// All normalized formulas over n letters with at most `max_clauses`
/// clauses and bodies of min_body..max_body variables: size first, then
/// lexicographic over the canonical clause list. With the default
/// min_body = 1 there are no facts, so one letter admits only the empty
/// formula.
class SmallFormulaEnumerator {
 public:
  SmallFormulaEnumerator(std::size_t n, std::size_t max_clauses, std::size_t max_body,
                         std::size_t min_body = 1);

  bool next(Formula& out);
  std::vector<Formula> all();

 private:
  std::shared_ptr<const Symbols> symbols_;
  VarSet universe_;
  std::vector<Clause> clauses_;
  std::size_t max_clauses_;
  std::vector<std::size_t> pick_;
  bool started_ = false;
  bool done_ = false;
};

/// Seeded random formulas: 1..max_clauses clauses, heads uniform, body size
/// uniform in 0..max_body. Tautologies are redrawn.
class RandomFormulaSampler {
 public:
  RandomFormulaSampler(std::size_t n, std::size_t max_clauses, std::size_t max_body,
                       std::uint64_t seed);

  Formula next();

 private:
  std::shared_ptr<const Symbols> symbols_;
  std::size_t n_;
  std::size_t max_clauses_;
  std::size_t max_body_;
  std::mt19937_64 rng_;
};

/// Every single-head formula over n letters: each variable gets no clause
/// or one body of at most `max_body` other variables.
class SingleHeadEnumerator {
 public:
  SingleHeadEnumerator(std::size_t n, std::size_t max_body);

  bool next(Formula& out);
  /// (choices per variable)^n.
  std::uint64_t count() const;

 private:
  std::shared_ptr<const Symbols> symbols_;
  std::size_t n_;
  std::vector<std::vector<std::optional<VarSet>>> choices_;
  std::vector<std::size_t> digit_;
  bool started_ = false;
  bool done_ = false;
};

/// Random single-head formula: each variable heads a clause with
/// probability 1/2, bodies of 0..max_body other variables.
Formula random_single_head(std::size_t n, std::size_t max_body, std::mt19937_64& rng);

struct SweepRecord {
  Verdict verdict = Verdict::single_head;
  bool oracle_she = false;
  /// On success: output single-head, tautology-free and equivalent to the input.
  bool output_valid = true;
  std::uint64_t candidates_tested = 0;

  bool agrees() const {
    return verdict != Verdict::inconclusive && (verdict == Verdict::single_head) == oracle_she;
  }
};

/// Runs reconstruct and the brute-force oracle on every formula. With
/// Execution::parallel the instances are spread over threads; records keep
/// input order either way.
std::vector<SweepRecord> oracle_sweep(std::span<const Formula> formulas,
                                      const ReconstructOptions& options, Execution across,
                                      const BruteForceOptions& oracle = {});

}  // namespace horn
