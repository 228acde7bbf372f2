#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "evenloop/kernels.hpp"

namespace evenloop {

// Dense GF(2) vector. Bits past size() are kept zero so word-level
// comparisons and popcounts need no masking.
class BitVector {
 public:
  using Word = kernels::Word;
  static constexpr std::size_t kWordBits = 64;

  BitVector() = default;
  explicit BitVector(std::size_t size) : size_(size), words_(word_count_for(size), 0) {}

  static BitVector ones(std::size_t size);
  // Low `size` bits of `code`; size must be <= 64.
  static BitVector from_code(std::uint64_t code, std::size_t size);
  // '0'/'1' characters, bit 0 first.
  static BitVector from_string(std::string_view bits);

  std::size_t size() const noexcept { return size_; }
  std::size_t word_count() const noexcept { return words_.size(); }
  std::span<const Word> words() const noexcept { return words_; }
  std::span<Word> words() noexcept { return words_; }

  bool test(std::size_t i) const noexcept { return (words_[i / kWordBits] >> (i % kWordBits)) & 1U; }
  void set(std::size_t i) noexcept { words_[i / kWordBits] |= Word{1} << (i % kWordBits); }
  void set(std::size_t i, bool value) noexcept {
    if (value)
      set(i);
    else
      reset(i);
  }
  void reset(std::size_t i) noexcept { words_[i / kWordBits] &= ~(Word{1} << (i % kWordBits)); }
  void flip(std::size_t i) noexcept { words_[i / kWordBits] ^= Word{1} << (i % kWordBits); }
  void clear() noexcept;

  std::size_t count() const noexcept;
  bool any() const noexcept;
  bool none() const noexcept { return !any(); }
  // GF(2) inner product.
  bool dot(const BitVector& other) const;
  std::size_t intersection_count(const BitVector& other) const;
  bool is_subset_of(const BitVector& other) const;

  // Index of the lowest set bit, or size() when empty.
  std::size_t first_set() const noexcept;
  std::size_t next_set(std::size_t after) const noexcept;
  std::vector<std::size_t> set_bits() const;

  template <class Fn>
  void for_each_set(Fn&& fn) const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      Word bits = words_[w];
      while (bits != 0) {
        const int offset = __builtin_ctzll(bits);
        fn(w * kWordBits + static_cast<std::size_t>(offset));
        bits &= bits - 1;
      }
    }
  }

  BitVector& operator^=(const BitVector& other);
  BitVector& operator|=(const BitVector& other);
  BitVector& operator&=(const BitVector& other);
  friend BitVector operator^(BitVector a, const BitVector& b) { return a ^= b; }
  friend BitVector operator|(BitVector a, const BitVector& b) { return a |= b; }
  friend BitVector operator&(BitVector a, const BitVector& b) { return a &= b; }

  bool operator==(const BitVector& other) const noexcept = default;
  // Orders by size, then by the bit string read from the highest index down.
  std::strong_ordering operator<=>(const BitVector& other) const noexcept;

  std::uint64_t to_code() const;
  std::string to_string() const;

 private:
  static std::size_t word_count_for(std::size_t size) { return (size + kWordBits - 1) / kWordBits; }
  void check_same_size(const BitVector& other) const;

  std::size_t size_ = 0;
  std::vector<Word> words_;
};

struct BitVectorHash {
  std::size_t operator()(const BitVector& v) const noexcept;
};

}  // namespace evenloop
