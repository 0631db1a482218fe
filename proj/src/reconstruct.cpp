#include "horn/reconstruct.hpp"

#include <algorithm>
#include <iterator>
#include <limits>

#include "horn/closure.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace horn {

FilterHits& FilterHits::operator+=(const FilterHits& o) {
  headless_bodies += o.headless_bodies;
  maxit += o.maxit;
  body_coverage += o.body_coverage;
  rcn_equality += o.rcn_equality;
  hclose_mismatch += o.hclose_mismatch;
  return *this;
}

SearchCounters& SearchCounters::operator+=(const SearchCounters& o) {
  combinations += o.combinations;
  candidates_generated += o.candidates_generated;
  candidates_tested += o.candidates_tested;
  hits += o.hits;
  return *this;
}

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::single_head: return "single-head";
    case Verdict::not_single_head: return "not-single-head";
    case Verdict::inconclusive: return "inconclusive";
  }
  return "?";
}

const char* to_string(FailureCause c) {
  switch (c) {
    case FailureCause::headless_bodies: return "headless-bodies";
    case FailureCause::maxit: return "maxit";
    case FailureCause::exhausted: return "exhausted";
    case FailureCause::budget: return "budget";
  }
  return "?";
}

ReconstructionState precompute_bodies(const Formula& f) {
  ReconstructionState state;
  state.input = f;
  state.bodies = distinct_bodies(f.clauses());
  Chainer chain(state.input.clauses());
  state.analyses.reserve(state.bodies.size());
  for (const auto& b : state.bodies) state.analyses.push_back(chain.analyze(b));
  state.pending.assign(state.bodies.size(), true);
  return state;
}

std::size_t choose_minimal_body(const ReconstructionState& state) {
  const auto& bodies = state.bodies;
  const auto& an = state.analyses;
  for (std::size_t i = 0; i < bodies.size(); ++i) {
    if (!state.pending[i]) continue;
    bool minimal = true;
    for (std::size_t j = 0; j < bodies.size() && minimal; ++j) {
      if (j == i || !state.pending[j]) continue;
      // A <_F B: F |= B -> A and not F |= A -> B
      bool below = bodies[j].subset_of(an[i].bcn) && !bodies[i].subset_of(an[j].bcn);
      minimal = !below;
    }
    if (minimal) return i;
  }
  // unreachable while the agenda is non-empty: <_F is a strict order
  return bodies.size();
}

VarSet compute_heads(const ReconstructionState& state, std::size_t body) {
  return state.analyses[body].rcn - state.g_heads;
}

namespace {

std::vector<Clause> intersect(std::span<const Clause> a, std::span<const Clause> b) {
  std::vector<Clause> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out),
                        [](const Clause& x, const Clause& y) { return canonical_less(x, y); });
  return out;
}

}  // namespace

CandidateSpace candidate_space(const ReconstructionState& state, std::size_t body,
                               const VarSet& heads, bool use_minbodies) {
  const auto& ucl = state.analyses[body].ucl;
  CandidateSpace space;
  space.pool = hclose(heads, ucl);
  if (use_minbodies)
    space.reduced = minbodies(space.pool, intersect(ucl, state.used));
  else
    space.reduced = space.pool;
  return space;
}

bool filter_maxit(const ReconstructionState& state, std::size_t body, const VarSet& heads) {
  const auto& a = state.analyses[body];
  VarSet reachable = heads | Chainer(state.g).real_consequences(a.body | heads);
  return a.rcn.subset_of(reachable);
}

std::vector<Clause> CandidateAssignment::clauses() const {
  std::vector<Clause> out;
  out.reserve(heads.size());
  for (std::size_t i = 0; i < heads.size(); ++i)
    if (!bodies[i].contains(heads[i])) out.push_back({bodies[i], heads[i]});
  canonicalize(out);
  return out;
}

VarSet CandidateAssignment::body_vars() const {
  VarSet s;
  for (const auto& b : bodies) s |= b;
  return s;
}

IterationPlan plan_iteration(const ReconstructionState& state, std::size_t body,
                             bool use_minbodies) {
  IterationPlan plan;
  plan.index = body;
  plan.body = state.bodies[body];
  plan.analysis = state.analyses[body];
  plan.heads = compute_heads(state, body);
  plan.space = candidate_space(state, body, plan.heads, use_minbodies);
  plan.candidate_bodies = distinct_bodies(plan.space.reduced);
  plan.g = state.g;

  auto rest = hclose(plan.analysis.rcn - plan.heads, plan.analysis.ucl);
  plan.target = merge(plan.space.pool, rest);

  VarSet g_bodies = body_vars(state.g);
  VarSet pool_bodies = body_vars(plan.space.pool);
  plan.inbodies = pool_bodies - g_bodies;
  plan.headless = body_vars(rest) - g_bodies - pool_bodies;

  Chainer chain(state.input.clauses());
  for (const auto& b : plan.candidate_bodies)
    if (b.subset_of(plan.analysis.bcn) && plan.body.subset_of(chain.closure(b)))
      plan.equivalent_bodies.push_back(b);
  return plan;
}

bool filter_body_coverage(const IterationPlan& plan, const CandidateAssignment* candidate) {
  if (!candidate) return plan.headless.empty();
  return (plan.inbodies | plan.headless).subset_of(candidate->body_vars());
}

namespace {

bool rcn_matches(const IterationPlan& plan, const Chainer& chain) {
  for (const auto& b : plan.equivalent_bodies)
    if (chain.real_consequences(b) != plan.analysis.rcn) return false;
  return true;
}

bool closure_matches(const IterationPlan& plan, const Chainer& chain) {
  BodyAnalysis a = chain.analyze(plan.body);
  return hclose(a.rcn, a.ucl) == plan.target;
}

}  // namespace

bool filter_rcn_equality(const IterationPlan& plan, std::span<const Clause> candidate_formula) {
  return rcn_matches(plan, Chainer(candidate_formula));
}

bool check_accept(const IterationPlan& plan, std::span<const Clause> candidate_formula) {
  return closure_matches(plan, Chainer(candidate_formula));
}

std::vector<Clause> candidate_formula(const IterationPlan& plan, const CandidateAssignment& c) {
  std::vector<Clause> out = plan.g;
  for (std::size_t i = 0; i < c.heads.size(); ++i)
    if (!c.bodies[i].contains(c.heads[i])) out.push_back({c.bodies[i], c.heads[i]});
  return out;
}

CandidateFate evaluate_candidate(const IterationPlan& plan, const Filters& filters,
                                 const CandidateAssignment& candidate) {
  if (filters.body_coverage && !filter_body_coverage(plan, &candidate))
    return CandidateFate::body_coverage;
  auto clauses = candidate_formula(plan, candidate);
  Chainer chain(clauses);
  if (filters.rcn_equality && !rcn_matches(plan, chain)) return CandidateFate::rcn_equality;
  return closure_matches(plan, chain) ? CandidateFate::accepted : CandidateFate::mismatch;
}

CandidateEnumerator::CandidateEnumerator(std::vector<Var> heads, std::vector<VarSet> bodies,
                                         bool skip_tautological)
    : heads_(std::move(heads)), bodies_(std::move(bodies)) {
  allowed_.resize(heads_.size());
  for (std::size_t i = 0; i < heads_.size(); ++i)
    for (std::uint32_t j = 0; j < bodies_.size(); ++j)
      if (!skip_tautological || !bodies_[j].contains(heads_[i])) allowed_[i].push_back(j);
  unsigned __int128 total = 1;
  const unsigned __int128 cap = std::numeric_limits<std::uint64_t>::max();
  for (std::size_t i = 0; i < heads_.size(); ++i) total = std::min(total * bodies_.size(), cap);
  total_ = static_cast<std::uint64_t>(total);
}

std::uint64_t CandidateEnumerator::position() const {
  unsigned __int128 pos = 0;
  const unsigned __int128 cap = std::numeric_limits<std::uint64_t>::max();
  for (std::size_t i = 0; i < heads_.size(); ++i)
    pos = std::min(pos * bodies_.size() + allowed_[i][digits_[i]], cap);
  return static_cast<std::uint64_t>(pos);
}

bool CandidateEnumerator::next(CandidateAssignment& out) {
  if (done_) return false;
  if (!started_) {
    started_ = true;
    for (const auto& a : allowed_)
      if (a.empty()) {
        done_ = true;
        return false;
      }
    digits_.assign(heads_.size(), 0);
  } else {
    std::size_t i = heads_.size();
    for (;;) {
      if (i == 0) {
        done_ = true;
        return false;
      }
      --i;
      if (++digits_[i] < allowed_[i].size()) break;
      digits_[i] = 0;
    }
  }
  out.heads = heads_;
  out.bodies.resize(heads_.size());
  for (std::size_t i = 0; i < heads_.size(); ++i) out.bodies[i] = bodies_[allowed_[i][digits_[i]]];
  out.position = position();
  ++generated_;
  return true;
}

std::vector<CandidateAssignment> enumerate_candidates(const VarSet& heads,
                                                      std::span<const Clause> reduced,
                                                      bool skip_tautological) {
  CandidateEnumerator en(heads.to_vector(), distinct_bodies(reduced), skip_tautological);
  std::vector<CandidateAssignment> out;
  CandidateAssignment c;
  while (en.next(c)) out.push_back(c);
  return out;
}

namespace {

struct SearchResult {
  std::optional<CandidateAssignment> winner;
  bool budget_hit = false;
  SearchCounters counters;
};

void tally(SearchCounters& counters, const CandidateAssignment& c, CandidateFate fate) {
  ++counters.candidates_generated;
  counters.combinations = c.position + 1;
  switch (fate) {
    case CandidateFate::body_coverage: ++counters.hits.body_coverage; break;
    case CandidateFate::rcn_equality: ++counters.hits.rcn_equality; break;
    case CandidateFate::mismatch:
      ++counters.candidates_tested;
      ++counters.hits.hclose_mismatch;
      break;
    case CandidateFate::accepted: ++counters.candidates_tested; break;
  }
}

// Pulls the next candidate unless the budget is spent. Returns false when
// nothing more may be examined.
bool pull(CandidateEnumerator& en, const ReconstructOptions& opt, CandidateAssignment& c,
          std::uint64_t examined, bool& budget_hit) {
  if (opt.budget && examined >= *opt.budget) {
    CandidateAssignment probe;
    budget_hit = en.next(probe);
    return false;
  }
  return en.next(c);
}

SearchResult search_serial(const IterationPlan& plan, const ReconstructOptions& opt) {
  SearchResult r;
  CandidateEnumerator en(plan.heads.to_vector(), plan.candidate_bodies, opt.filters.tautologies);
  CandidateAssignment c;
  while (pull(en, opt, c, r.counters.candidates_generated, r.budget_hit)) {
    CandidateFate fate = evaluate_candidate(plan, opt.filters, c);
    tally(r.counters, c, fate);
    if (fate == CandidateFate::accepted) {
      r.winner = c;
      return r;
    }
  }
  if (!r.budget_hit) r.counters.combinations = en.combinations_total();
  return r;
}

SearchResult search_parallel(const IterationPlan& plan, const ReconstructOptions& opt) {
  SearchResult r;
  CandidateEnumerator en(plan.heads.to_vector(), plan.candidate_bodies, opt.filters.tautologies);
  std::size_t batch = opt.batch;
  if (batch == 0) {
#ifdef _OPENMP
    batch = 64 * static_cast<std::size_t>(omp_get_max_threads());
#else
    batch = 64;
#endif
  }
  std::vector<CandidateAssignment> buffer;
  std::vector<CandidateFate> fates;
  bool more = true;
  std::uint64_t pulled = 0;
  while (more) {
    buffer.clear();
    CandidateAssignment c;
    while (buffer.size() < batch && (more = pull(en, opt, c, pulled, r.budget_hit))) {
      buffer.push_back(c);
      ++pulled;
    }
    if (buffer.empty()) break;
    fates.assign(buffer.size(), CandidateFate::mismatch);
    const auto n = static_cast<std::ptrdiff_t>(buffer.size());
#pragma omp parallel for schedule(dynamic, 4)
    for (std::ptrdiff_t i = 0; i < n; ++i)
      fates[static_cast<std::size_t>(i)] =
          evaluate_candidate(plan, opt.filters, buffer[static_cast<std::size_t>(i)]);
    // the accepted candidate is the first one in enumeration order
    for (std::size_t i = 0; i < buffer.size(); ++i) {
      tally(r.counters, buffer[i], fates[i]);
      if (fates[i] == CandidateFate::accepted) {
        r.winner = buffer[i];
        r.budget_hit = false;
        return r;
      }
    }
  }
  if (!r.budget_hit) r.counters.combinations = en.combinations_total();
  return r;
}

}  // namespace

ReconstructResult reconstruct(const Formula& f, const ReconstructOptions& options) {
  ReconstructResult result;
  ReconstructionState state = precompute_bodies(normalize(f));

  auto fail = [&](IterationRecord rec, const IterationPlan& plan, FailureCause cause) {
    result.verdict = cause == FailureCause::budget ? Verdict::inconclusive : Verdict::not_single_head;
    result.failure = Failure{plan.body, cause, plan.heads, plan.space.reduced};
    result.totals += rec.counters;
    result.iterations.push_back(std::move(rec));
    result.output = state.input;
    return result;
  };

  while (std::find(state.pending.begin(), state.pending.end(), true) != state.pending.end()) {
    std::size_t idx = choose_minimal_body(state);
    IterationPlan plan = plan_iteration(state, idx, options.filters.minbodies);

    IterationRecord rec;
    rec.body = plan.body;
    rec.heads = plan.heads;
    rec.pool_size = plan.space.pool.size();
    rec.reduced_size = plan.space.reduced.size();
    rec.target = plan.target;

    if (options.filters.maxit && !filter_maxit(state, idx, plan.heads)) {
      ++rec.counters.hits.maxit;
      return fail(std::move(rec), plan, FailureCause::maxit);
    }
    if (options.filters.body_coverage && !filter_body_coverage(plan, nullptr)) {
      ++rec.counters.hits.headless_bodies;
      return fail(std::move(rec), plan, FailureCause::headless_bodies);
    }

    SearchResult search = options.execution == Execution::parallel ? search_parallel(plan, options)
                                                                    : search_serial(plan, options);
    rec.counters = search.counters;
    if (!search.winner)
      return fail(std::move(rec), plan,
                  search.budget_hit ? FailureCause::budget : FailureCause::exhausted);

    rec.accepted = true;
    rec.added = search.winner->clauses();
    state.g = merge(state.g, rec.added);
    state.g_heads |= plan.heads;
    state.used = merge(state.used, plan.analysis.ucl);
    for (std::size_t j = 0; j < state.bodies.size(); ++j)
      if (state.pending[j] && state.bodies[j].subset_of(plan.analysis.bcn) &&
          plan.body.subset_of(state.analyses[j].bcn))
        state.pending[j] = false;

    result.totals += rec.counters;
    result.iterations.push_back(std::move(rec));
  }

  result.verdict = Verdict::single_head;
  result.output = state.input.with_clauses(state.g);
  return result;
}

}  // namespace horn
