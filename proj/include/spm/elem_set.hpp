#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

namespace spm {

/// Dense bitset over the indices 0..universe-1 of a finite carrier set.
///
/// Used for element sets of ideals and submodules, where equality, subset
/// tests, intersection and hashing have to be cheap.
class ElemSet {
 public:
  ElemSet() = default;
  explicit ElemSet(std::size_t universe)
      : universe_(universe), words_((universe + 63) / 64, 0) {}

  static ElemSet full(std::size_t universe) {
    ElemSet s(universe);
    for (std::size_t i = 0; i < universe; ++i) s.insert(i);
    return s;
  }

  std::size_t universe() const { return universe_; }

  bool contains(std::size_t i) const {
    return (words_[i >> 6] >> (i & 63)) & 1u;
  }
  /// Returns true when `i` was not present before.
  bool insert(std::size_t i) {
    auto& w = words_[i >> 6];
    const std::uint64_t bit = std::uint64_t{1} << (i & 63);
    if (w & bit) return false;
    w |= bit;
    ++count_;
    return true;
  }

  std::size_t count() const { return count_; }
  bool empty() const { return count_ == 0; }

  bool subset_of(const ElemSet& other) const {
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i] & ~other.words_[i]) return false;
    return true;
  }

  ElemSet& operator&=(const ElemSet& other) {
    count_ = 0;
    for (std::size_t i = 0; i < words_.size(); ++i) {
      words_[i] &= other.words_[i];
      count_ += static_cast<std::size_t>(std::popcount(words_[i]));
    }
    return *this;
  }

  ElemSet& operator|=(const ElemSet& other) {
    count_ = 0;
    for (std::size_t i = 0; i < words_.size(); ++i) {
      words_[i] |= other.words_[i];
      count_ += static_cast<std::size_t>(std::popcount(words_[i]));
    }
    return *this;
  }

  template <class F>
  void for_each(F&& f) const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      std::uint64_t bits = words_[w];
      while (bits) {
        const int b = std::countr_zero(bits);
        f(static_cast<std::uint32_t>(w * 64 + static_cast<std::size_t>(b)));
        bits &= bits - 1;
      }
    }
  }

  std::vector<std::uint32_t> to_vector() const {
    std::vector<std::uint32_t> out;
    out.reserve(count_);
    for_each([&](std::uint32_t i) { out.push_back(i); });
    return out;
  }

  std::size_t hash() const {
    std::size_t h = 0xcbf29ce484222325ull;
    for (auto w : words_) h = (h ^ w) * 0x100000001b3ull;
    return h;
  }

  friend bool operator==(const ElemSet& a, const ElemSet& b) {
    return a.universe_ == b.universe_ && a.words_ == b.words_;
  }

  /// Canonical order: by cardinality, then by sorted element list.
  friend bool canonical_less(const ElemSet& a, const ElemSet& b) {
    if (a.count_ != b.count_) return a.count_ < b.count_;
    // The lowest differing bit decides: whoever owns it has the
    // lexicographically smaller sorted element list.
    for (std::size_t i = 0; i < a.words_.size(); ++i) {
      if (a.words_[i] != b.words_[i]) {
        const std::uint64_t diff = a.words_[i] ^ b.words_[i];
        return (a.words_[i] & (diff & -diff)) != 0;
      }
    }
    return false;
  }

 private:
  std::size_t universe_ = 0;
  std::size_t count_ = 0;
  std::vector<std::uint64_t> words_;
};

struct ElemSetHash {
  std::size_t operator()(const ElemSet& s) const { return s.hash(); }
};

}  // namespace spm
