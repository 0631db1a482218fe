#pragma once

#include <array>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <iterator>
#include <vector>

namespace horn {

/// Dense identifier of a propositional variable. Ids are assigned by a
/// Symbols table and are only meaningful relative to it.
enum class Var : std::uint32_t {};

constexpr std::uint32_t index(Var v) noexcept { return static_cast<std::uint32_t>(v); }
constexpr Var var(std::uint32_t i) noexcept { return static_cast<Var>(i); }

/// Fixed-capacity bit set of variables. Subset, union and difference cost one
/// operation per machine word.
class VarSet {
 public:
  static constexpr std::size_t kWords = 4;
  static constexpr std::size_t kCapacity = 64 * kWords;

  class iterator {
   public:
    using iterator_category = std::forward_iterator_tag;
    using value_type = Var;
    using difference_type = std::ptrdiff_t;
    using pointer = const Var*;
    using reference = Var;

    iterator() = default;
    iterator(const VarSet* set, std::size_t pos) : set_(set), pos_(pos) { advance(); }

    Var operator*() const { return var(static_cast<std::uint32_t>(pos_)); }
    iterator& operator++() {
      ++pos_;
      advance();
      return *this;
    }
    iterator operator++(int) {
      iterator tmp = *this;
      ++*this;
      return tmp;
    }
    bool operator==(const iterator& o) const { return pos_ == o.pos_; }

   private:
    void advance() {
      while (pos_ < kCapacity) {
        std::size_t w = pos_ / 64;
        std::uint64_t bits = set_->words_[w] >> (pos_ % 64);
        if (bits != 0) {
          pos_ += static_cast<std::size_t>(std::countr_zero(bits));
          return;
        }
        pos_ = (w + 1) * 64;
      }
      pos_ = kCapacity;
    }

    const VarSet* set_ = nullptr;
    std::size_t pos_ = kCapacity;
  };

  constexpr VarSet() = default;
  VarSet(std::initializer_list<Var> vars) {
    for (Var v : vars) insert(v);
  }

  static VarSet of(Var v) {
    VarSet s;
    s.insert(v);
    return s;
  }
  /// The set {0, ..., n-1}.
  static VarSet first(std::size_t n) {
    VarSet s;
    for (std::size_t i = 0; i < n; ++i) s.insert(var(static_cast<std::uint32_t>(i)));
    return s;
  }

  bool contains(Var v) const { return (words_[index(v) / 64] >> (index(v) % 64)) & 1U; }
  void insert(Var v) { words_[index(v) / 64] |= std::uint64_t{1} << (index(v) % 64); }
  void erase(Var v) { words_[index(v) / 64] &= ~(std::uint64_t{1} << (index(v) % 64)); }

  bool empty() const {
    for (auto w : words_)
      if (w) return false;
    return true;
  }
  std::size_t size() const {
    std::size_t n = 0;
    for (auto w : words_) n += static_cast<std::size_t>(std::popcount(w));
    return n;
  }

  bool subset_of(const VarSet& o) const {
    for (std::size_t i = 0; i < kWords; ++i)
      if (words_[i] & ~o.words_[i]) return false;
    return true;
  }
  bool strict_subset_of(const VarSet& o) const { return subset_of(o) && *this != o; }
  bool intersects(const VarSet& o) const {
    for (std::size_t i = 0; i < kWords; ++i)
      if (words_[i] & o.words_[i]) return true;
    return false;
  }

  VarSet& operator|=(const VarSet& o) {
    for (std::size_t i = 0; i < kWords; ++i) words_[i] |= o.words_[i];
    return *this;
  }
  VarSet& operator&=(const VarSet& o) {
    for (std::size_t i = 0; i < kWords; ++i) words_[i] &= o.words_[i];
    return *this;
  }
  VarSet& operator-=(const VarSet& o) {
    for (std::size_t i = 0; i < kWords; ++i) words_[i] &= ~o.words_[i];
    return *this;
  }
  friend VarSet operator|(VarSet a, const VarSet& b) { return a |= b; }
  friend VarSet operator&(VarSet a, const VarSet& b) { return a &= b; }
  friend VarSet operator-(VarSet a, const VarSet& b) { return a -= b; }

  friend bool operator==(const VarSet&, const VarSet&) = default;

  /// Smallest element; the set must not be empty.
  Var front() const { return *begin(); }

  iterator begin() const { return iterator(this, 0); }
  iterator end() const { return iterator(this, kCapacity); }

  std::vector<Var> to_vector() const { return {begin(), end()}; }

  std::uint64_t word(std::size_t i) const { return words_[i]; }

  std::size_t hash() const {
    std::uint64_t h = 0x9e3779b97f4a7c15ULL;
    for (auto w : words_) h = (h ^ w) * 0x100000001b3ULL + (h >> 29);
    return static_cast<std::size_t>(h);
  }

 private:
  std::array<std::uint64_t, kWords> words_{};
};

/// Lexicographic order on the ascending id sequences of two sets; this is the
/// canonical body order used everywhere output must be deterministic.
inline bool canonical_less(const VarSet& a, const VarSet& b) {
  for (std::size_t i = 0; i < VarSet::kWords; ++i) {
    std::uint64_t diff = a.word(i) ^ b.word(i);
    if (diff == 0) continue;
    std::uint64_t low = diff & (~diff + 1);  // lowest differing bit
    std::uint64_t above = ~((low << 1) - 1);
    bool in_a = (a.word(i) & low) != 0;
    const VarSet& other = in_a ? b : a;
    bool other_continues = (other.word(i) & above) != 0;
    for (std::size_t j = i + 1; j < VarSet::kWords && !other_continues; ++j)
      other_continues = other.word(j) != 0;
    // the set holding the smaller element comes first unless the other one
    // ends right there (it is then a prefix)
    return in_a ? other_continues : !other_continues;
  }
  return false;
}

struct CanonicalLess {
  bool operator()(const VarSet& a, const VarSet& b) const { return canonical_less(a, b); }
};

struct VarSetHash {
  std::size_t operator()(const VarSet& s) const { return s.hash(); }
};

}  // namespace horn
