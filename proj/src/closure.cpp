#include "horn/closure.hpp"

#include <algorithm>

#include "horn/chain.hpp"

namespace horn {

std::optional<Clause> resolve_on_head(const Clause& side, const Clause& target) {
  if (!target.body.contains(side.head)) return std::nullopt;
  VarSet body = target.body;
  body.erase(side.head);
  body |= side.body;
  if (body.contains(target.head)) return std::nullopt;
  return Clause{body, target.head};
}

std::vector<Clause> minimal_clauses(std::vector<Clause> clauses) {
  canonicalize(clauses);
  std::vector<Clause> out;
  out.reserve(clauses.size());
  // canonical order groups clauses by head
  for (std::size_t begin = 0; begin < clauses.size();) {
    std::size_t end = begin;
    while (end < clauses.size() && clauses[end].head == clauses[begin].head) ++end;
    for (std::size_t i = begin; i < end; ++i) {
      bool dominated = false;
      for (std::size_t j = begin; j < end && !dominated; ++j)
        dominated = j != i && clauses[j].body.strict_subset_of(clauses[i].body);
      if (!dominated) out.push_back(clauses[i]);
    }
    begin = end;
  }
  return out;
}

namespace {

bool contains_sorted(const std::vector<Clause>& sorted, const Clause& c) {
  return std::binary_search(sorted.begin(), sorted.end(), c,
                            [](const Clause& a, const Clause& b) { return canonical_less(a, b); });
}

}  // namespace

std::vector<Clause> hclose(const VarSet& heads, std::span<const Clause> clauses, HcloseLog* log) {
  std::vector<Clause> current;
  for (const auto& c : clauses)
    if (heads.contains(c.head) && !c.body.contains(c.head)) current.push_back(c);
  current = minimal_clauses(std::move(current));

  std::vector<Clause> processed;  // canonical
  std::vector<Clause> frontier = current;
  while (!frontier.empty()) {
    if (log) {
      log->frontier.insert(log->frontier.end(), frontier.begin(), frontier.end());
      ++log->rounds;
    }
    std::vector<Clause> next = current;
    for (const auto& target : frontier)
      for (const auto& side : clauses)
        if (auto r = resolve_on_head(side, target)) next.push_back(*r);
    current = minimal_clauses(std::move(next));
    processed = merge(processed, frontier);
    frontier.clear();
    for (const auto& c : current)
      if (!contains_sorted(processed, c)) frontier.push_back(c);
  }
  return current;
}

std::vector<Clause> hclose(const VarSet& heads, const Formula& f, HcloseLog* log) {
  return hclose(heads, f.clauses(), log);
}

std::vector<Clause> minbodies(std::span<const Clause> pool, std::span<const Clause> context) {
  std::vector<Clause> sorted(pool.begin(), pool.end());
  canonicalize(sorted);
  Chainer chain(context);

  std::vector<Clause> out;
  for (std::size_t begin = 0; begin < sorted.size();) {
    std::size_t end = begin;
    while (end < sorted.size() && sorted[end].head == sorted[begin].head) ++end;
    std::size_t n = end - begin;
    std::vector<VarSet> reach(n);
    for (std::size_t i = 0; i < n; ++i) reach[i] = chain.closure(sorted[begin + i].body);
    auto edge = [&](std::size_t i, std::size_t j) {
      return sorted[begin + j].body.subset_of(reach[i]);
    };
    // entailment among bodies is transitive, so a node lies in a sink class
    // exactly when everything it reaches reaches it back
    for (std::size_t i = 0; i < n; ++i) {
      bool sink = true;
      bool lowest = true;
      for (std::size_t j = 0; j < n && sink; ++j) {
        if (j == i || !edge(i, j)) continue;
        if (!edge(j, i))
          sink = false;
        else if (j < i)
          lowest = false;
      }
      if (sink && lowest) out.push_back(sorted[begin + i]);
    }
    begin = end;
  }
  return out;
}

}  // namespace horn
