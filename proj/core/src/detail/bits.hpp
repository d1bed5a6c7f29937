#pragma once

#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

namespace nsyl::detail {

/// Fixed-width bit vector sized at construction; just enough operations for
/// the solver engines.
class Bits {
public:
  Bits() = default;
  explicit Bits(std::size_t nbits) : words_((nbits + 63) / 64, 0) {}

  void set(std::size_t i) { words_[i / 64] |= std::uint64_t{1} << (i % 64); }
  void reset(std::size_t i) {
    words_[i / 64] &= ~(std::uint64_t{1} << (i % 64));
  }
  bool test(std::size_t i) const {
    return (words_[i / 64] >> (i % 64)) & 1u;
  }

  bool any() const {
    for (auto w : words_)
      if (w) return true;
    return false;
  }

  std::size_t count() const {
    std::size_t n = 0;
    for (auto w : words_) n += std::popcount(w);
    return n;
  }

  Bits& operator|=(const Bits& o) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
    return *this;
  }

  friend bool intersects(const Bits& a, const Bits& b) {
    for (std::size_t i = 0; i < a.words_.size(); ++i)
      if (a.words_[i] & b.words_[i]) return true;
    return false;
  }

  friend bool is_subset(const Bits& a, const Bits& b) {
    for (std::size_t i = 0; i < a.words_.size(); ++i)
      if (a.words_[i] & ~b.words_[i]) return false;
    return true;
  }

  auto operator<=>(const Bits&) const = default;
  bool operator==(const Bits&) const = default;

  std::size_t hash() const {
    std::size_t h = words_.size();
    for (auto w : words_) h = h * 1099511628211ull + w;
    return h;
  }

private:
  std::vector<std::uint64_t> words_;
};

}  // namespace nsyl::detail
