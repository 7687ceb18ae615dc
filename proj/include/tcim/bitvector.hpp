#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace tcim {

// Fixed-length bit sequence backed by 64-bit words. Bit t lives in word t/64
// at position t%64 (LSB first); storage bits past size() stay zero.
class BitVector {
 public:
  BitVector() = default;
  explicit BitVector(std::size_t nbits)
      : nbits_(nbits), words_((nbits + 63) / 64, 0) {}

  std::size_t size() const { return nbits_; }
  std::size_t num_words() const { return words_.size(); }

  bool test(std::size_t i) const {
    return (words_[i >> 6] >> (i & 63)) & 1u;
  }
  void set(std::size_t i) { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }
  void reset(std::size_t i) {
    words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63));
  }

  std::span<const std::uint64_t> words() const { return words_; }
  std::uint64_t word(std::size_t w) const { return words_[w]; }

  std::uint64_t popcount() const {
    std::uint64_t c = 0;
    for (auto w : words_) c += std::popcount(w);
    return c;
  }

  bool any() const {
    for (auto w : words_)
      if (w) return true;
    return false;
  }

  // Calls fn(i) for every set bit, ascending.
  template <typename Fn>
  void for_each_set_bit(Fn&& fn) const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      std::uint64_t bits = words_[w];
      while (bits) {
        const int t = std::countr_zero(bits);
        fn(w * 64 + static_cast<std::size_t>(t));
        bits &= bits - 1;
      }
    }
  }

  friend bool operator==(const BitVector&, const BitVector&) = default;

 private:
  std::size_t nbits_ = 0;
  std::vector<std::uint64_t> words_;
};

}  // namespace tcim
