#pragma once

#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

namespace entropica {

using Elem = std::uint32_t;

/// Subset of the universe {0, ..., n-1}, stored as a bit mask with a cached
/// cardinality. Ordered by cardinality, then by mask value.
class Subset {
 public:
  Subset() = default;
  explicit Subset(std::size_t universe)
      : words_((universe + 63) / 64, 0), universe_(universe) {}
  Subset(std::size_t universe, std::span<const Elem> elems);
  Subset(std::size_t universe, std::initializer_list<Elem> elems)
      : Subset(universe, std::span<const Elem>(elems.begin(), elems.size())) {}

  static Subset full(std::size_t universe);
  static Subset singleton(std::size_t universe, Elem e);

  std::size_t universe() const noexcept { return universe_; }
  std::size_t count() const noexcept { return count_; }
  bool empty() const noexcept { return count_ == 0; }

  bool contains(Elem e) const noexcept {
    return e < universe_ && (words_[e >> 6] >> (e & 63)) & 1u;
  }

  /// Returns true if `e` was not yet a member.
  bool insert(Elem e) noexcept {
    std::uint64_t& w = words_[e >> 6];
    const std::uint64_t bit = std::uint64_t{1} << (e & 63);
    if (w & bit) return false;
    w |= bit;
    ++count_;
    return true;
  }

  bool is_subset_of(const Subset& other) const noexcept;
  Subset operator|(const Subset& other) const;
  Subset operator&(const Subset& other) const;

  /// Members in increasing order.
  std::vector<Elem> elements() const;

  template <class F>
  void for_each(F&& f) const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      std::uint64_t bits = words_[w];
      while (bits) {
        const int b = std::countr_zero(bits);
        f(static_cast<Elem>(w * 64 + b));
        bits &= bits - 1;
      }
    }
  }

  std::span<const std::uint64_t> words() const noexcept { return words_; }
  std::size_t hash() const noexcept;

  friend bool operator==(const Subset& a, const Subset& b) noexcept {
    return a.universe_ == b.universe_ && a.words_ == b.words_;
  }
  friend std::strong_ordering operator<=>(const Subset& a, const Subset& b) noexcept;

 private:
  std::vector<std::uint64_t> words_;
  std::size_t universe_ = 0;
  std::size_t count_ = 0;
};

struct SubsetHash {
  std::size_t operator()(const Subset& s) const noexcept { return s.hash(); }
};

}  // namespace entropica
