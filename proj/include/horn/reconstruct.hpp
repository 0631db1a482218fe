#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "horn/chain.hpp"
#include "horn/formula.hpp"

namespace horn {

/// Optimizations that can be switched off independently. None of them
/// changes a verdict; they only prune the candidate search.
struct Filters {
  bool body_coverage = true;  // body variables of the target closure must occur in G | IT
  bool maxit = true;          // optimistic bound on the consequences reachable with H
  bool rcn_equality = true;   // equivalent bodies must have the same real consequences
  bool minbodies = true;      // drop bodies entailing other bodies of the same head
  bool tautologies = true;    // skip pairings whose body contains the head

  static Filters none() { return {false, false, false, false, false}; }
};

enum class Execution { serial, parallel };

struct ReconstructOptions {
  Filters filters;
  /// Maximum number of candidates generated for one body; exceeding it makes
  /// the run inconclusive.
  std::optional<std::uint64_t> budget;
  Execution execution = Execution::serial;
  /// Candidates evaluated per parallel round; 0 picks a default.
  std::size_t batch = 0;
};

struct FilterHits {
  std::uint64_t headless_bodies = 0;  // iterations failed before the search
  std::uint64_t maxit = 0;            // iterations failed before the search
  std::uint64_t body_coverage = 0;    // candidates rejected
  std::uint64_t rcn_equality = 0;     // candidates rejected
  std::uint64_t hclose_mismatch = 0;  // candidates failing the full check

  FilterHits& operator+=(const FilterHits& o);
  friend bool operator==(const FilterHits&, const FilterHits&) = default;
};

struct SearchCounters {
  /// Positions of the full head/body product walked in enumeration order,
  /// tautological pairings included.
  std::uint64_t combinations = 0;
  /// Assignments generated (all of them when tautologies are not skipped).
  std::uint64_t candidates_generated = 0;
  /// Candidates that reached the full closure-equality check.
  std::uint64_t candidates_tested = 0;
  FilterHits hits;

  SearchCounters& operator+=(const SearchCounters& o);
  friend bool operator==(const SearchCounters&, const SearchCounters&) = default;
};

/// Everything the outer loop carries between iterations.
struct ReconstructionState {
  Formula input;                        // normalized F
  std::vector<VarSet> bodies;           // distinct bodies of F, canonical
  std::vector<BodyAnalysis> analyses;   // one per body
  std::vector<bool> pending;            // agenda P over `bodies`
  std::vector<Clause> g;                // formula under construction, canonical
  VarSet g_heads;
  std::vector<Clause> used;             // U: union of UCL(A, F) of processed bodies
};

/// One forward-chaining pass per distinct body; every body starts pending.
ReconstructionState precompute_bodies(const Formula& f);

/// Index of a pending body B such that no pending A has A <_F B; ties go to
/// the canonically first one. The agenda must not be empty.
std::size_t choose_minimal_body(const ReconstructionState& state);

/// H = RCN(B, F) minus the heads already in G.
VarSet compute_heads(const ReconstructionState& state, std::size_t body);

struct CandidateSpace {
  std::vector<Clause> pool;     // M = HCLOSE(H, UCL(B, F))
  std::vector<Clause> reduced;  // T = MINBODIES(M, UCL(B, F) & U)
};

CandidateSpace candidate_space(const ReconstructionState& state, std::size_t body,
                               const VarSet& heads, bool use_minbodies = true);

/// RCN(B, F) must fit inside H | RCN(B | H, G).
bool filter_maxit(const ReconstructionState& state, std::size_t body, const VarSet& heads);

/// One head -> one body of T.
struct CandidateAssignment {
  std::vector<Var> heads;
  std::vector<VarSet> bodies;
  /// Position in the full head/body product (tautological pairings counted).
  std::uint64_t position = 0;

  std::vector<Clause> clauses() const;
  VarSet body_vars() const;
};

/// Iteration data fixed once a body is chosen.
struct IterationPlan {
  std::size_t index = 0;
  VarSet body;
  BodyAnalysis analysis;                  // of B over F
  VarSet heads;                           // H
  CandidateSpace space;
  std::vector<VarSet> candidate_bodies;   // distinct bodies of T
  std::vector<Clause> target;             // HCLOSE(RCN(B,F), UCL(B,F))
  VarSet inbodies;                        // IB
  VarSet headless;                        // HL
  std::vector<VarSet> equivalent_bodies;  // bodies of T equivalent to B under F
  std::vector<Clause> g;                  // G when the iteration started
};

IterationPlan plan_iteration(const ReconstructionState& state, std::size_t body,
                             bool use_minbodies = true);

/// Without a candidate: HL must be empty. With one: IB | HL must lie in the
/// bodies of the candidate.
bool filter_body_coverage(const IterationPlan& plan, const CandidateAssignment* candidate);

/// RCN(B', G | IT) = RCN(B, F) for the bodies B' of T equivalent to B.
bool filter_rcn_equality(const IterationPlan& plan, std::span<const Clause> candidate_formula);

/// HCLOSE(RCN(B,F), UCL(B,F)) = HCLOSE(RCN(B, G|IT), UCL(B, G|IT)).
bool check_accept(const IterationPlan& plan, std::span<const Clause> candidate_formula);

/// G | IT as a clause list.
std::vector<Clause> candidate_formula(const IterationPlan& plan, const CandidateAssignment& c);

enum class CandidateFate { body_coverage, rcn_equality, mismatch, accepted };

/// Pure: depends only on the plan and the candidate.
CandidateFate evaluate_candidate(const IterationPlan& plan, const Filters& filters,
                                 const CandidateAssignment& candidate);

/// Lazy product of the bodies of T over the heads H, lowest head most
/// significant. Tautological pairings are skipped unless asked for.
class CandidateEnumerator {
 public:
  CandidateEnumerator(std::vector<Var> heads, std::vector<VarSet> bodies,
                      bool skip_tautological = true);

  bool next(CandidateAssignment& out);

  /// Size of the full product, saturating.
  std::uint64_t combinations_total() const { return total_; }
  std::uint64_t generated() const { return generated_; }

 private:
  std::uint64_t position() const;

  std::vector<Var> heads_;
  std::vector<VarSet> bodies_;
  std::vector<std::vector<std::uint32_t>> allowed_;
  std::vector<std::size_t> digits_;
  std::uint64_t total_ = 1;
  std::uint64_t generated_ = 0;
  bool started_ = false;
  bool done_ = false;
};

std::vector<CandidateAssignment> enumerate_candidates(const VarSet& heads,
                                                      std::span<const Clause> reduced,
                                                      bool skip_tautological = true);

enum class Verdict { single_head, not_single_head, inconclusive };

enum class FailureCause { headless_bodies, maxit, exhausted, budget };

const char* to_string(Verdict v);
const char* to_string(FailureCause c);

struct IterationRecord {
  VarSet body;
  VarSet heads;
  std::size_t pool_size = 0;     // |M|
  std::size_t reduced_size = 0;  // |T|
  SearchCounters counters;
  bool accepted = false;
  std::vector<Clause> added;   // IT on success
  std::vector<Clause> target;  // HCLOSE(RCN(B,F), UCL(B,F))
};

struct Failure {
  VarSet body;
  FailureCause cause;
  VarSet heads;
  std::vector<Clause> reduced;
};

struct ReconstructResult {
  Verdict verdict = Verdict::single_head;
  Formula output;                  // G on success
  std::optional<Failure> failure;  // set unless successful
  std::vector<IterationRecord> iterations;
  SearchCounters totals;

  bool success() const { return verdict == Verdict::single_head; }
};

/// Decides single-head equivalence and builds the single-head formula when
/// one exists. Normalizes the input first.
ReconstructResult reconstruct(const Formula& f, const ReconstructOptions& options = {});

}  // namespace horn
