#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace crownkit {

/// Fixed-size dynamic bitset used for subgroup membership over a parent
/// group's element indexing. Comparison and hashing are value-based so
/// bitsets can serve as canonical subgroup keys.
class Bitset {
 public:
  Bitset() = default;
  explicit Bitset(std::size_t nbits) : nbits_(nbits), words_((nbits + 63) / 64, 0) {}

  std::size_t size() const { return nbits_; }

  bool test(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1u; }
  void set(std::size_t i) { words_[i >> 6] |= std::uint64_t(1) << (i & 63); }
  void reset(std::size_t i) { words_[i >> 6] &= ~(std::uint64_t(1) << (i & 63)); }

  std::size_t count() const {
    std::size_t c = 0;
    for (std::uint64_t w : words_) c += std::popcount(w);
    return c;
  }

  bool any() const {
    for (std::uint64_t w : words_)
      if (w) return true;
    return false;
  }
  bool none() const { return !any(); }

  Bitset& operator&=(const Bitset& o) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
    return *this;
  }
  Bitset& operator|=(const Bitset& o) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
    return *this;
  }

  bool subset_of(const Bitset& o) const {
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i] & ~o.words_[i]) return false;
    return true;
  }

  bool operator==(const Bitset& o) const { return nbits_ == o.nbits_ && words_ == o.words_; }

  // Lexicographic order on the 0/1 membership string, bit 0 first, '0' < '1'.
  bool lex_less(const Bitset& o) const {
    for (std::size_t i = 0; i < words_.size(); ++i) {
      std::uint64_t diff = words_[i] ^ o.words_[i];
      if (diff) {
        std::uint64_t low = diff & (~diff + 1);
        return (words_[i] & low) == 0;
      }
    }
    return false;
  }

  // First set bit at or after `from`, or size() if none.
  std::size_t next_set(std::size_t from) const {
    if (from >= nbits_) return nbits_;
    std::size_t wi = from >> 6;
    std::uint64_t w = words_[wi] & (~std::uint64_t(0) << (from & 63));
    while (true) {
      if (w) {
        std::size_t bit = (wi << 6) + std::countr_zero(w);
        return bit < nbits_ ? bit : nbits_;
      }
      if (++wi >= words_.size()) return nbits_;
      w = words_[wi];
    }
  }

  // First clear bit at or after `from`, or size() if none.
  std::size_t next_clear(std::size_t from) const {
    for (std::size_t i = from; i < nbits_; ++i)
      if (!test(i)) return i;
    return nbits_;
  }

  template <typename Fn>
  void for_each_set(Fn&& fn) const {
    for (std::size_t wi = 0; wi < words_.size(); ++wi) {
      std::uint64_t w = words_[wi];
      while (w) {
        std::size_t bit = (wi << 6) + std::countr_zero(w);
        if (bit >= nbits_) return;
        fn(bit);
        w &= w - 1;
      }
    }
  }

  std::size_t hash() const {
    std::uint64_t h = 1469598103934665603ull;
    for (std::uint64_t w : words_) {
      h ^= w;
      h *= 1099511628211ull;
    }
    return static_cast<std::size_t>(h ^ nbits_);
  }

 private:
  std::size_t nbits_ = 0;
  std::vector<std::uint64_t> words_;
};

struct BitsetHash {
  std::size_t operator()(const Bitset& b) const { return b.hash(); }
};

inline Bitset operator&(Bitset a, const Bitset& b) { return a &= b; }
inline Bitset operator|(Bitset a, const Bitset& b) { return a |= b; }

}  // namespace crownkit
