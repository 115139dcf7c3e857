#pragma once

#include "seedpa/errors.hpp"

#include <bit>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

namespace seedpa {

// Fixed-length vector over GF(2), packed into 64-bit words.
// Bit index i lives at word i/64, bit position i%64 (LSB first within a word).
// Byte serialization is most-significant-bit first within each byte: bit 0 of
// the vector is the top bit of byte 0.
class BitVec {
public:
  BitVec() = default;

  explicit BitVec(std::size_t nbits)
      : words_((nbits + 63) / 64, 0), size_(nbits) {}

  BitVec(std::initializer_list<int> bits) : BitVec(bits.size()) {
    std::size_t i = 0;
    for (int b : bits) set(i++, b != 0);
  }

  // bit k of the vector = bit k of value (enumeration order for seed indices)
  static BitVec from_index(std::uint64_t value, std::size_t nbits) {
    if (nbits > 64) throw validation_error("from_index: nbits > 64");
    BitVec v(nbits);
    if (nbits > 0) v.words_[0] = nbits == 64 ? value : (value & ((1ull << nbits) - 1));
    return v;
  }

  static BitVec from_bytes_msb(std::span<const std::uint8_t> bytes, std::size_t nbits) {
    if (nbits > bytes.size() * 8)
      throw validation_error("from_bytes_msb: not enough bytes for requested bit count");
    BitVec v(nbits);
    for (std::size_t i = 0; i < nbits; ++i) {
      const std::uint8_t byte = bytes[i / 8];
      if ((byte >> (7 - i % 8)) & 1) v.set(i, true);
    }
    return v;
  }

  std::vector<std::uint8_t> to_bytes_msb() const {
    std::vector<std::uint8_t> out((size_ + 7) / 8, 0);
    for (std::size_t i = 0; i < size_; ++i)
      if (get(i)) out[i / 8] |= static_cast<std::uint8_t>(1u << (7 - i % 8));
    return out;
  }

  std::uint64_t to_index() const {
    if (size_ > 64) throw validation_error("to_index: vector longer than 64 bits");
    return words_.empty() ? 0 : words_[0];
  }

  std::size_t size() const { return size_; }
  bool empty() const { return size_ == 0; }

  bool get(std::size_t i) const { return (words_[i / 64] >> (i % 64)) & 1; }

  void set(std::size_t i, bool v) {
    const std::uint64_t mask = 1ull << (i % 64);
    if (v)
      words_[i / 64] |= mask;
    else
      words_[i / 64] &= ~mask;
  }

  std::size_t popcount() const {
    std::size_t n = 0;
    for (std::uint64_t w : words_) n += static_cast<std::size_t>(std::popcount(w));
    return n;
  }

  BitVec& operator^=(const BitVec& other) {
    if (other.size_ != size_) throw validation_error("BitVec xor: length mismatch");
    for (std::size_t w = 0; w < words_.size(); ++w) words_[w] ^= other.words_[w];
    return *this;
  }

  friend BitVec operator^(BitVec a, const BitVec& b) { return a ^= b; }

  bool operator==(const BitVec& other) const {
    return size_ == other.size_ && words_ == other.words_;
  }

  // XORs bits [offset, offset+len) of *this into dst[0, len).
  // The workhorse of Toeplitz hashing: one call per set input bit.
  void xor_slice_into(BitVec& dst, std::size_t offset, std::size_t len) const {
    if (offset + len > size_) throw validation_error("xor_slice_into: slice out of range");
    if (len > dst.size_) throw validation_error("xor_slice_into: destination too short");
    const std::size_t word_off = offset / 64;
    const unsigned bit_off = static_cast<unsigned>(offset % 64);
    const std::size_t nwords = (len + 63) / 64;
    for (std::size_t w = 0; w < nwords; ++w) {
      std::uint64_t v = words_[word_off + w] >> bit_off;
      if (bit_off != 0 && word_off + w + 1 < words_.size())
        v |= words_[word_off + w + 1] << (64 - bit_off);
      if (w == nwords - 1 && (len % 64) != 0) v &= ~0ull >> (64 - len % 64);
      dst.words_[w] ^= v;
    }
  }

  // Calls fn(i) for every set bit, ascending.
  template <typename Fn>
  void for_each_set_bit(Fn&& fn) const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      std::uint64_t bits = words_[w];
      while (bits != 0) {
        const unsigned tz = static_cast<unsigned>(std::countr_zero(bits));
        fn(w * 64 + tz);
        bits &= bits - 1;
      }
    }
  }

private:
  std::vector<std::uint64_t> words_;
  std::size_t size_ = 0;
};

}  // namespace seedpa
