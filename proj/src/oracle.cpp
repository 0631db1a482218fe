#include "horn/oracle.hpp"

#include <algorithm>
#include <numeric>

#include "horn/chain.hpp"

namespace horn {

bool formulas_equivalent(std::span<const Clause> f, std::span<const Clause> g) {
  return entails_all(f, g) && entails_all(g, f);
}

bool formulas_equivalent(const Formula& f, const Formula& g) {
  return formulas_equivalent(f.clauses(), g.clauses());
}

namespace {

// Subsets of `pool` in canonical order.
std::vector<VarSet> subsets(const VarSet& pool) {
  auto vars = pool.to_vector();
  std::vector<VarSet> out;
  out.reserve(std::size_t{1} << vars.size());
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << vars.size()); ++mask) {
    VarSet s;
    for (std::size_t i = 0; i < vars.size(); ++i)
      if (mask >> i & 1U) s.insert(vars[i]);
    out.push_back(s);
  }
  std::sort(out.begin(), out.end(), CanonicalLess{});
  return out;
}

}  // namespace

std::optional<Formula> brute_force_single_head_equivalent(const Formula& input,
                                                          const BruteForceOptions& options) {
  if (input.universe().size() > options.max_vars)
    throw UniverseTooLarge("brute force: universe exceeds " + std::to_string(options.max_vars) +
                           " variables");
  Formula f = normalize(input);
  auto vars = f.universe().to_vector();
  Chainer chain(f.clauses());

  // options per variable; nullopt = no clause
  std::vector<std::vector<std::optional<VarSet>>> choices(vars.size());
  for (std::size_t i = 0; i < vars.size(); ++i) {
    choices[i].push_back(std::nullopt);
    for (const auto& b : subsets(f.universe() - VarSet::of(vars[i])))
      if (!options.prune || chain.closure(b).contains(vars[i])) choices[i].push_back(b);
  }

  std::vector<std::size_t> digit(vars.size(), 0);
  std::vector<Clause> g;
  for (;;) {
    g.clear();
    for (std::size_t i = 0; i < vars.size(); ++i)
      if (const auto& b = choices[i][digit[i]]) g.push_back({*b, vars[i]});
    bool entails_f = entails_all(g, f.clauses());
    if (entails_f && (options.prune || entails_all(f.clauses(), g)))
      return f.with_clauses(std::move(g));
    std::size_t i = vars.size();
    for (;;) {
      if (i == 0) return std::nullopt;
      --i;
      if (++digit[i] < choices[i].size()) break;
      digit[i] = 0;
    }
  }
}

std::vector<Clause> brute_force_hclose(const VarSet& heads, std::span<const Clause> clauses,
                                       const VarSet& universe) {
  Chainer chain(clauses);
  std::vector<Clause> out;
  for (Var h : heads) {
    std::vector<VarSet> entailed;
    for (const auto& b : subsets(universe - VarSet::of(h)))
      if (chain.closure(b).contains(h)) entailed.push_back(b);
    for (const auto& b : entailed) {
      bool minimal = std::none_of(entailed.begin(), entailed.end(),
                                  [&](const VarSet& o) { return o.strict_subset_of(b); });
      if (minimal) out.push_back({b, h});
    }
  }
  canonicalize(out);
  return out;
}

std::vector<VarSet> models(std::span<const Clause> clauses, const VarSet& universe) {
  if (universe.size() > 20) throw UniverseTooLarge("models: universe exceeds 20 variables");
  auto vars = universe.to_vector();
  std::vector<VarSet> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << vars.size()); ++mask) {
    VarSet s;
    for (std::size_t i = 0; i < vars.size(); ++i)
      if (mask >> i & 1U) s.insert(vars[i]);
    bool closed = std::all_of(clauses.begin(), clauses.end(), [&](const Clause& c) {
      return !c.body.subset_of(s) || s.contains(c.head);
    });
    if (closed) out.push_back(s);
  }
  return out;
}

std::vector<VarSet> project(std::span<const VarSet> ms, const VarSet& keep) {
  std::vector<VarSet> out;
  out.reserve(ms.size());
  for (const auto& m : ms) out.push_back(m & keep);
  std::sort(out.begin(), out.end(), CanonicalLess{});
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::shared_ptr<const Symbols> letter_symbols(std::size_t n) {
  auto symbols = std::make_shared<Symbols>();
  for (std::size_t i = 0; i < n; ++i) {
    std::string name;
    for (std::size_t k = i;; k = k / 26 - 1) {
      name.insert(name.begin(), static_cast<char>('a' + k % 26));
      if (k < 26) break;
    }
    symbols->intern(name);
  }
  return symbols;
}

std::vector<Clause> all_clauses(std::size_t n, std::size_t max_body, std::size_t min_body) {
  std::vector<Clause> out;
  VarSet universe = VarSet::first(n);
  for (Var h : universe)
    for (const auto& b : subsets(universe - VarSet::of(h)))
      if (b.size() >= min_body && b.size() <= max_body) out.push_back({b, h});
  canonicalize(out);
  return out;
}

SmallFormulaEnumerator::SmallFormulaEnumerator(std::size_t n, std::size_t max_clauses,
                                               std::size_t max_body, std::size_t min_body)
    : symbols_(letter_symbols(n)),
      universe_(VarSet::first(n)),
      clauses_(all_clauses(n, max_body, min_body)),
      max_clauses_(std::min(max_clauses, clauses_.size())) {}

bool SmallFormulaEnumerator::next(Formula& out) {
  if (done_) return false;
  if (!started_) {
    started_ = true;
  } else {
    // next combination of the same size, else the first of the next size
    std::size_t k = pick_.size();
    std::size_t m = clauses_.size();
    std::size_t i = k;
    while (i > 0 && pick_[i - 1] == m - k + i - 1) --i;
    if (i > 0) {
      ++pick_[i - 1];
      for (std::size_t j = i; j < k; ++j) pick_[j] = pick_[j - 1] + 1;
    } else if (k < max_clauses_) {
      pick_.resize(k + 1);
      std::iota(pick_.begin(), pick_.end(), std::size_t{0});
    } else {
      done_ = true;
      return false;
    }
  }
  std::vector<Clause> chosen;
  chosen.reserve(pick_.size());
  for (auto i : pick_) chosen.push_back(clauses_[i]);
  out = Formula(symbols_, universe_, std::move(chosen));
  return true;
}

std::vector<Formula> SmallFormulaEnumerator::all() {
  std::vector<Formula> out;
  Formula f;
  while (next(f)) out.push_back(f);
  return out;
}

RandomFormulaSampler::RandomFormulaSampler(std::size_t n, std::size_t max_clauses,
                                           std::size_t max_body, std::uint64_t seed)
    : symbols_(letter_symbols(n)),
      n_(n),
      max_clauses_(max_clauses),
      max_body_(std::min(max_body, n == 0 ? 0 : n - 1)),
      rng_(seed) {}

Formula RandomFormulaSampler::next() {
  std::vector<Clause> clauses;
  if (n_ >= 2 && max_clauses_ > 0) {
    std::uniform_int_distribution<std::size_t> count(1, max_clauses_);
    std::uniform_int_distribution<std::uint32_t> head(0, static_cast<std::uint32_t>(n_ - 1));
    std::uniform_int_distribution<std::size_t> size(0, max_body_);
    std::size_t k = count(rng_);
    std::vector<std::uint32_t> others;
    for (std::size_t c = 0; c < k; ++c) {
      std::uint32_t h = head(rng_);
      others.clear();
      for (std::uint32_t v = 0; v < n_; ++v)
        if (v != h) others.push_back(v);
      std::shuffle(others.begin(), others.end(), rng_);
      Clause clause{{}, var(h)};
      std::size_t s = size(rng_);
      for (std::size_t i = 0; i < s; ++i) clause.body.insert(var(others[i]));
      clauses.push_back(clause);
    }
  }
  return Formula(symbols_, VarSet::first(n_), std::move(clauses));
}

SingleHeadEnumerator::SingleHeadEnumerator(std::size_t n, std::size_t max_body)
    : symbols_(letter_symbols(n)), n_(n), choices_(n), digit_(n, 0) {
  VarSet universe = VarSet::first(n);
  for (std::size_t i = 0; i < n; ++i) {
    Var v = var(static_cast<std::uint32_t>(i));
    choices_[i].push_back(std::nullopt);
    for (const auto& b : subsets(universe - VarSet::of(v)))
      if (b.size() <= max_body) choices_[i].push_back(b);
  }
}

std::uint64_t SingleHeadEnumerator::count() const {
  std::uint64_t total = 1;
  for (const auto& c : choices_) total *= c.size();
  return total;
}

bool SingleHeadEnumerator::next(Formula& out) {
  if (done_) return false;
  if (started_) {
    std::size_t i = n_;
    for (;;) {
      if (i == 0) {
        done_ = true;
        return false;
      }
      --i;
      if (++digit_[i] < choices_[i].size()) break;
      digit_[i] = 0;
    }
  }
  started_ = true;
  std::vector<Clause> clauses;
  for (std::size_t i = 0; i < n_; ++i)
    if (const auto& b = choices_[i][digit_[i]]) clauses.push_back({*b, var(static_cast<std::uint32_t>(i))});
  out = Formula(symbols_, VarSet::first(n_), std::move(clauses));
  return true;
}

Formula random_single_head(std::size_t n, std::size_t max_body, std::mt19937_64& rng) {
  std::bernoulli_distribution heads(0.5);
  std::uniform_int_distribution<std::size_t> size(0, std::min(max_body, n == 0 ? 0 : n - 1));
  std::vector<std::uint32_t> others;
  std::vector<Clause> clauses;
  for (std::uint32_t h = 0; h < n; ++h) {
    if (!heads(rng)) continue;
    others.clear();
    for (std::uint32_t v = 0; v < n; ++v)
      if (v != h) others.push_back(v);
    std::shuffle(others.begin(), others.end(), rng);
    Clause c{{}, var(h)};
    std::size_t s = size(rng);
    for (std::size_t i = 0; i < s; ++i) c.body.insert(var(others[i]));
    clauses.push_back(c);
  }
  return Formula(letter_symbols(n), VarSet::first(n), std::move(clauses));
}

std::vector<SweepRecord> oracle_sweep(std::span<const Formula> formulas,
                                      const ReconstructOptions& options, Execution across,
                                      const BruteForceOptions& oracle) {
  std::vector<SweepRecord> records(formulas.size());
  const auto n = static_cast<std::ptrdiff_t>(formulas.size());
  const bool parallel = across == Execution::parallel;
#pragma omp parallel for schedule(dynamic, 8) if (parallel)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const Formula& f = formulas[static_cast<std::size_t>(i)];
    SweepRecord& rec = records[static_cast<std::size_t>(i)];
    ReconstructResult r = reconstruct(f, options);
    rec.verdict = r.verdict;
    rec.candidates_tested = r.totals.candidates_tested;
    rec.oracle_she = brute_force_single_head_equivalent(f, oracle).has_value();
    if (r.success()) {
      const auto out = r.output.clauses();
      rec.output_valid = r.output.single_head() &&
                         std::none_of(out.begin(), out.end(),
                                      [](const Clause& c) { return c.tautological(); }) &&
                         formulas_equivalent(normalize(f), r.output);
    }
  }
  return records;
}

}  // namespace horn
