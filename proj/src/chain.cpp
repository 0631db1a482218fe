#include "horn/chain.hpp"

#include <algorithm>

namespace horn {

Chainer::Chainer(std::span<const Clause> clauses) : clauses_(clauses) {
  std::uint32_t max_var = 0;
  for (const auto& c : clauses_)
    for (Var v : c.body) max_var = std::max(max_var, index(v) + 1);
  offsets_.assign(max_var + 1, 0);
  body_size_.resize(clauses_.size());
  for (std::uint32_t i = 0; i < clauses_.size(); ++i) {
    const auto& c = clauses_[i];
    if (c.tautological()) {
      body_size_[i] = UINT32_MAX;
      continue;
    }
    body_size_[i] = static_cast<std::uint32_t>(c.body.size());
    if (body_size_[i] == 0) empty_bodies_.push_back(i);
    for (Var v : c.body) ++offsets_[index(v) + 1];
  }
  for (std::size_t v = 1; v < offsets_.size(); ++v) offsets_[v] += offsets_[v - 1];
  occurs_.resize(offsets_.back());
  std::vector<std::uint32_t> fill(offsets_.begin(), offsets_.end() - 1);
  for (std::uint32_t i = 0; i < clauses_.size(); ++i) {
    if (body_size_[i] == UINT32_MAX) continue;
    for (Var v : clauses_[i].body) occurs_[fill[index(v)]++] = i;
  }
}

template <class OnFire>
VarSet Chainer::run(const VarSet& seed, OnFire&& on_fire) const {
  VarSet derived = seed;
  std::vector<std::uint32_t> missing = body_size_;
  std::vector<Var> queue = seed.to_vector();
  queue.reserve(queue.size() + clauses_.size());

  auto fire = [&](std::uint32_t i) {
    const Clause& c = clauses_[i];
    on_fire(i);
    if (!derived.contains(c.head)) {
      derived.insert(c.head);
      queue.push_back(c.head);
    }
  };

  for (auto i : empty_bodies_) fire(i);
  for (std::size_t q = 0; q < queue.size(); ++q) {
    std::uint32_t v = index(queue[q]);
    if (v + 1 >= offsets_.size()) continue;
    for (std::uint32_t k = offsets_[v]; k < offsets_[v + 1]; ++k) {
      std::uint32_t i = occurs_[k];
      if (--missing[i] == 0) fire(i);
    }
  }
  return derived;
}

VarSet Chainer::closure(const VarSet& seed) const {
  return run(seed, [](std::uint32_t) {});
}

VarSet Chainer::real_consequences(const VarSet& seed) const {
  VarSet fired;
  run(seed, [&](std::uint32_t i) { fired.insert(clauses_[i].head); });
  return fired;
}

BodyAnalysis Chainer::analyze(const VarSet& seed) const {
  BodyAnalysis a;
  a.body = seed;
  a.bcn = run(seed, [&](std::uint32_t i) {
    a.rcn.insert(clauses_[i].head);
    a.ucl.push_back(clauses_[i]);
  });
  canonicalize(a.ucl);
  return a;
}

VarSet bcn(std::span<const Clause> clauses, const VarSet& seed) {
  return Chainer(clauses).closure(seed);
}

VarSet bcn(const Formula& f, const VarSet& seed) { return bcn(f.clauses(), seed); }

bool entails_clause(std::span<const Clause> clauses, const Clause& c) {
  if (c.tautological()) return true;
  return bcn(clauses, c.body).contains(c.head);
}

bool entails_clause(const Formula& f, const Clause& c) { return entails_clause(f.clauses(), c); }

bool entails_all(std::span<const Clause> by, std::span<const Clause> what) {
  Chainer chain(by);
  return std::all_of(what.begin(), what.end(), [&](const Clause& c) {
    return c.tautological() || chain.closure(c.body).contains(c.head);
  });
}

bool body_leq(const Formula& f, const VarSet& a, const VarSet& b) {
  return a.subset_of(bcn(f, b));
}

bool body_lt(const Formula& f, const VarSet& a, const VarSet& b) {
  return body_leq(f, a, b) && !body_leq(f, b, a);
}

bool body_equiv(const Formula& f, const VarSet& a, const VarSet& b) {
  return body_leq(f, a, b) && body_leq(f, b, a);
}

BodyAnalysis rcn_ucl(std::span<const Clause> clauses, const VarSet& body) {
  return Chainer(clauses).analyze(body);
}

BodyAnalysis rcn_ucl(const Formula& f, const VarSet& body) { return rcn_ucl(f.clauses(), body); }

}  // namespace horn
