#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace mereology {

/// Fixed-length bit vector. Bits past size() are kept zero so that word-wise
/// comparisons are exact.
class Bitset {
 public:
  Bitset() = default;
  explicit Bitset(std::size_t n, bool value = false) : size_(n), words_((n + 63) / 64, value ? ~std::uint64_t{0} : 0) {
    trim();
  }

  /// Low bits of `mask` become bits 0..n-1. Requires n <= 64.
  static Bitset from_mask(std::size_t n, std::uint64_t mask) {
    if (n > 64) throw std::invalid_argument("Bitset::from_mask supports at most 64 bits");
    Bitset b(n);
    if (n > 0) b.words_[0] = mask;
    b.trim();
    return b;
  }

  std::size_t size() const { return size_; }

  bool test(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1U; }
  bool operator[](std::size_t i) const { return test(i); }
  void set(std::size_t i, bool v = true) {
    const std::uint64_t bit = std::uint64_t{1} << (i & 63);
    if (v) {
      words_[i >> 6] |= bit;
    } else {
      words_[i >> 6] &= ~bit;
    }
  }

  std::size_t count() const {
    std::size_t c = 0;
    for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }
  bool none() const {
    for (auto w : words_) {
      if (w) return false;
    }
    return true;
  }
  bool all() const { return count() == size_; }
  bool any() const { return !none(); }

  /// Pointwise implication: every set bit of *this is set in other.
  bool is_subset_of(const Bitset& other) const {
    check(other);
    for (std::size_t i = 0; i < words_.size(); ++i) {
      if (words_[i] & ~other.words_[i]) return false;
    }
    return true;
  }
  bool intersects(const Bitset& other) const {
    check(other);
    for (std::size_t i = 0; i < words_.size(); ++i) {
      if (words_[i] & other.words_[i]) return true;
    }
    return false;
  }

  Bitset& operator|=(const Bitset& o) {
    check(o);
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
    return *this;
  }
  Bitset& operator&=(const Bitset& o) {
    check(o);
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
    return *this;
  }
  friend Bitset operator|(Bitset a, const Bitset& b) { return a |= b; }
  friend Bitset operator&(Bitset a, const Bitset& b) { return a &= b; }
  Bitset operator~() const {
    Bitset r = *this;
    for (auto& w : r.words_) w = ~w;
    r.trim();
    return r;
  }

  /// Index of the first set bit, or size() if none.
  std::size_t find_first() const { return find_next(0); }
  std::size_t find_next(std::size_t from) const {
    for (std::size_t i = from; i < size_; ++i) {
      if (test(i)) return i;
    }
    return size_;
  }

  /// "0110..." with bit 0 first.
  std::string to_string() const {
    std::string s(size_, '0');
    for (std::size_t i = 0; i < size_; ++i) {
      if (test(i)) s[i] = '1';
    }
    return s;
  }

  friend bool operator==(const Bitset&, const Bitset&) = default;

  /// this == a | b, without building the union.
  bool is_union_of(const Bitset& a, const Bitset& b) const {
    check(a);
    check(b);
    for (std::size_t w = 0; w < words_.size(); ++w) {
      if (words_[w] != (a.words_[w] | b.words_[w])) return false;
    }
    return true;
  }
  /// this == a & b, without building the intersection.
  bool is_intersection_of(const Bitset& a, const Bitset& b) const {
    check(a);
    check(b);
    for (std::size_t w = 0; w < words_.size(); ++w) {
      if (words_[w] != (a.words_[w] & b.words_[w])) return false;
    }
    return true;
  }

 private:
  void trim() {
    if (size_ % 64 != 0 && !words_.empty()) words_.back() &= (std::uint64_t{1} << (size_ % 64)) - 1;
  }
  void check(const Bitset& o) const {
    if (o.size_ != size_) throw std::invalid_argument("bitset length mismatch");
  }

  std::size_t size_ = 0;
  std::vector<std::uint64_t> words_;
};

}  // namespace mereology
