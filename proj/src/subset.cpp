#include "entropica/subset.hpp"

#include "entropica/errors.hpp"

namespace entropica {

Subset::Subset(std::size_t universe, std::span<const Elem> elems) : Subset(universe) {
  for (Elem e : elems) {
    if (e >= universe) throw PreconditionError("subset element out of range");
    insert(e);
  }
}

Subset Subset::full(std::size_t universe) {
  Subset s(universe);
  for (Elem e = 0; e < universe; ++e) s.insert(e);
  return s;
}

Subset Subset::singleton(std::size_t universe, Elem e) {
  if (e >= universe) throw PreconditionError("subset element out of range");
  Subset s(universe);
  s.insert(e);
  return s;
}

bool Subset::is_subset_of(const Subset& other) const noexcept {
  if (other.universe_ != universe_) return false;
  for (std::size_t i = 0; i < words_.size(); ++i)
    if (words_[i] & ~other.words_[i]) return false;
  return true;
}

Subset Subset::operator|(const Subset& other) const {
  if (other.universe_ != universe_) throw PreconditionError("subsets of different universes");
  Subset out(universe_);
  for (std::size_t i = 0; i < words_.size(); ++i) {
    out.words_[i] = words_[i] | other.words_[i];
    out.count_ += std::popcount(out.words_[i]);
  }
  return out;
}

Subset Subset::operator&(const Subset& other) const {
  if (other.universe_ != universe_) throw PreconditionError("subsets of different universes");
  Subset out(universe_);
  for (std::size_t i = 0; i < words_.size(); ++i) {
    out.words_[i] = words_[i] & other.words_[i];
    out.count_ += std::popcount(out.words_[i]);
  }
  return out;
}

std::vector<Elem> Subset::elements() const {
  std::vector<Elem> out;
  out.reserve(count_);
  for_each([&](Elem e) { out.push_back(e); });
  return out;
}

std::size_t Subset::hash() const noexcept {
  std::uint64_t h = 0xcbf29ce484222325ull ^ universe_;
  for (auto w : words_) {
    h ^= w;
    h *= 0x100000001b3ull;
    h ^= h >> 29;
  }
  return static_cast<std::size_t>(h);
}

std::strong_ordering operator<=>(const Subset& a, const Subset& b) noexcept {
  if (auto c = a.count_ <=> b.count_; c != 0) return c;
  if (auto c = a.words_.size() <=> b.words_.size(); c != 0) return c;
  for (std::size_t i = a.words_.size(); i-- > 0;)
    if (auto c = a.words_[i] <=> b.words_[i]; c != 0) return c;
  return std::strong_ordering::equal;
}

}  // namespace entropica
