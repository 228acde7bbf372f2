#include "evenloop/bitvec.hpp"

#include <algorithm>

#include "evenloop/errors.hpp"

namespace evenloop {

BitVector BitVector::ones(std::size_t size) {
  BitVector v(size);
  std::fill(v.words_.begin(), v.words_.end(), ~Word{0});
  if (const std::size_t tail = size % kWordBits; tail != 0) v.words_.back() = (Word{1} << tail) - 1;
  return v;
}

BitVector BitVector::from_code(std::uint64_t code, std::size_t size) {
  if (size > kWordBits) throw InputError("BitVector::from_code: size exceeds 64 bits");
  BitVector v(size);
  if (size == 0) return v;
  v.words_[0] = size == kWordBits ? code : code & ((Word{1} << size) - 1);
  return v;
}

BitVector BitVector::from_string(std::string_view bits) {
  BitVector v(bits.size());
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] == '1')
      v.set(i);
    else if (bits[i] != '0')
      throw InputError("BitVector::from_string: expected only '0' and '1'");
  }
  return v;
}

void BitVector::clear() noexcept { std::fill(words_.begin(), words_.end(), Word{0}); }

std::size_t BitVector::count() const noexcept { return kernels::active().popcount(words_.data(), words_.size()); }

bool BitVector::any() const noexcept { return kernels::active().any(words_.data(), words_.size()); }

bool BitVector::dot(const BitVector& other) const { return (intersection_count(other) & 1U) != 0; }

std::size_t BitVector::intersection_count(const BitVector& other) const {
  check_same_size(other);
  return kernels::active().and_popcount(words_.data(), other.words_.data(), words_.size());
}

bool BitVector::is_subset_of(const BitVector& other) const {
  check_same_size(other);
  return kernels::active().is_subset(words_.data(), other.words_.data(), words_.size());
}

std::size_t BitVector::first_set() const noexcept {
  for (std::size_t w = 0; w < words_.size(); ++w)
    if (words_[w] != 0) return w * kWordBits + static_cast<std::size_t>(__builtin_ctzll(words_[w]));
  return size_;
}

std::size_t BitVector::next_set(std::size_t after) const noexcept {
  std::size_t i = after + 1;
  if (i >= size_) return size_;
  std::size_t w = i / kWordBits;
  Word bits = words_[w] & (~Word{0} << (i % kWordBits));
  while (true) {
    if (bits != 0) return w * kWordBits + static_cast<std::size_t>(__builtin_ctzll(bits));
    if (++w == words_.size()) return size_;
    bits = words_[w];
  }
}

std::vector<std::size_t> BitVector::set_bits() const {
  std::vector<std::size_t> out;
  for_each_set([&](std::size_t i) { out.push_back(i); });
  return out;
}

BitVector& BitVector::operator^=(const BitVector& other) {
  check_same_size(other);
  kernels::active().xor_into(words_.data(), other.words_.data(), words_.size());
  return *this;
}

BitVector& BitVector::operator|=(const BitVector& other) {
  check_same_size(other);
  kernels::active().or_into(words_.data(), other.words_.data(), words_.size());
  return *this;
}

BitVector& BitVector::operator&=(const BitVector& other) {
  check_same_size(other);
  kernels::active().and_into(words_.data(), other.words_.data(), words_.size());
  return *this;
}

std::strong_ordering BitVector::operator<=>(const BitVector& other) const noexcept {
  if (auto c = size_ <=> other.size_; c != 0) return c;
  for (std::size_t w = words_.size(); w-- > 0;)
    if (auto c = words_[w] <=> other.words_[w]; c != 0) return c;
  return std::strong_ordering::equal;
}

std::uint64_t BitVector::to_code() const {
  if (size_ > kWordBits) throw InputError("BitVector::to_code: vector longer than 64 bits");
  return words_.empty() ? 0 : words_[0];
}

std::string BitVector::to_string() const {
  std::string s(size_, '0');
  for_each_set([&](std::size_t i) { s[i] = '1'; });
  return s;
}

void BitVector::check_same_size(const BitVector& other) const {
  if (size_ != other.size_) throw InputError("BitVector: host size mismatch");
}

std::size_t BitVectorHash::operator()(const BitVector& v) const noexcept {
  std::uint64_t h = 0x9e3779b97f4a7c15ULL ^ v.size();
  for (const auto w : v.words()) {
    h ^= w + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return static_cast<std::size_t>(h);
}

}  // namespace evenloop
