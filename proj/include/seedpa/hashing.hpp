#pragma once

#include "seedpa/bitvec.hpp"
#include "seedpa/errors.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <string>

namespace seedpa {

// Toeplitz hashing over GF(2): the l x n binary matrix T is constant along
// diagonals and fully determined by n+l-1 seed bits via
//
//   T[i][j] = bits[i - j + n - 1],   0 <= i < l, 0 <= j < n.
//
// Row 0 therefore reads bits[n-1], bits[n-2], ..., bits[0] left to right, and
// each following row shifts the window up by one. Seed length n+l-1 is the
// seed size alpha of the family.

inline constexpr unsigned kMaxExhaustiveInputBits = 12;

struct ToeplitzSeed {
  BitVec bits;
  std::size_t input_len = 0;   // n
  std::size_t output_len = 0;  // l

  void validate() const {
    if (output_len < 1 || output_len > input_len)
      throw validation_error("ToeplitzSeed: requires 1 <= output_len <= input_len");
    if (bits.size() != input_len + output_len - 1)
      throw validation_error("ToeplitzSeed: seed must have input_len + output_len - 1 bits");
  }

  // Seed number `index` of the enumerated family: bit k of index -> bits[k].
  static ToeplitzSeed from_index(std::uint64_t index, std::size_t input_len,
                                 std::size_t output_len) {
    ToeplitzSeed s{BitVec::from_index(index, input_len + output_len - 1), input_len, output_len};
    s.validate();
    return s;
  }
};

struct HashFamilyDescriptor {
  std::size_t input_len = 0;   // n
  std::size_t output_len = 0;  // l

  void validate() const {
    if (output_len < 1 || output_len > input_len)
      throw validation_error("HashFamilyDescriptor: requires 1 <= output_len <= input_len");
  }

  std::size_t seed_len() const { return input_len + output_len - 1; }  // alpha

  std::uint64_t family_size() const {
    if (seed_len() > 63)
      throw resource_error("HashFamilyDescriptor: family too large to enumerate");
    return std::uint64_t{1} << seed_len();
  }

  // Collision bound of the family; Toeplitz matrices achieve it exactly.
  double delta() const { return std::exp2(-static_cast<double>(output_len)); }
};

// Generic-width hash: for every set input bit j, XOR the seed slice starting
// at n-1-j (length l) into the output. Equivalent to out[i] ^= T[i][j].
inline BitVec toeplitz_hash(const ToeplitzSeed& seed, const BitVec& input) {
  seed.validate();
  if (input.size() != seed.input_len)
    throw validation_error("toeplitz_hash: input length does not match seed");
  BitVec out(seed.output_len);
  const std::size_t n = seed.input_len;
  const std::size_t l = seed.output_len;
  input.for_each_set_bit([&](std::size_t j) { seed.bits.xor_slice_into(out, n - 1 - j, l); });
  return out;
}

// Fast path for enumeration-scale instances (n, l and the seed fit in a word).
// Output bit i is the parity of the seed window starting at i against the
// bit-reversed input.
inline std::uint64_t toeplitz_hash_index(std::uint64_t seed_bits, std::uint64_t input,
                                         unsigned n, unsigned l) {
  std::uint64_t reversed = 0;
  for (unsigned j = 0; j < n; ++j)
    if ((input >> j) & 1) reversed |= std::uint64_t{1} << (n - 1 - j);
  const std::uint64_t mask = n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
  std::uint64_t out = 0;
  for (unsigned i = 0; i < l; ++i) {
    const auto window = (seed_bits >> i) & mask;
    out |= static_cast<std::uint64_t>(std::popcount(window & reversed) & 1) << i;
  }
  return out;
}

// Fraction of the full seed family mapping x and x2 to the same output,
// by direct enumeration of all 2^(n+l-1) seeds.
inline double collision_probability_exhaustive(unsigned n, unsigned l, const BitVec& x,
                                               const BitVec& x2) {
  if (l < 1 || l > n) throw validation_error("collision probability: requires 1 <= l <= n");
  if (x.size() != n || x2.size() != n)
    throw validation_error("collision probability: inputs must have n bits");
  if (x == x2) throw validation_error("collision probability: inputs must be distinct");
  if (n > kMaxExhaustiveInputBits)
    throw resource_error("collision probability: n > " +
                         std::to_string(kMaxExhaustiveInputBits) + " not enumerable");

  const unsigned alpha = n + l - 1;
  const std::uint64_t seeds = std::uint64_t{1} << alpha;
  const std::uint64_t xa = x.to_index();
  const std::uint64_t xb = x2.to_index();
  std::uint64_t collisions = 0;
  for (std::uint64_t s = 0; s < seeds; ++s)
    if (toeplitz_hash_index(s, xa, n, l) == toeplitz_hash_index(s, xb, n, l)) ++collisions;
  return static_cast<double>(collisions) / static_cast<double>(seeds);
}

// Privacy amplification is exactly one Toeplitz hash of the corrected key.
inline BitVec privacy_amplify(const BitVec& corrected_key, const ToeplitzSeed& seed) {
  if (corrected_key.size() != seed.input_len)
    throw validation_error("privacy_amplify: key length does not match seed input length");
  return toeplitz_hash(seed, corrected_key);
}

}  // namespace seedpa
