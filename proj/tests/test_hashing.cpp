#include "seedpa/hashing.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

using Catch::Approx;
using namespace seedpa;

namespace {

// Independent oracle: materialize the Toeplitz matrix T[i][j] = bits[i-j+n-1]
// as a dense array and multiply over GF(2), no sliding-window tricks.
std::vector<int> dense_toeplitz_multiply(const ToeplitzSeed& seed, const BitVec& input) {
  const std::size_t n = seed.input_len, l = seed.output_len;
  std::vector<std::vector<int>> t(l, std::vector<int>(n));
  for (std::size_t i = 0; i < l; ++i)
    for (std::size_t j = 0; j < n; ++j) t[i][j] = seed.bits.get(i - j + n - 1) ? 1 : 0;
  std::vector<int> out(l, 0);
  for (std::size_t i = 0; i < l; ++i) {
    int acc = 0;
    for (std::size_t j = 0; j < n; ++j) acc ^= t[i][j] & (input.get(j) ? 1 : 0);
    out[i] = acc;
  }
  return out;
}

BitVec random_bits(std::mt19937_64& g, std::size_t n) {
  BitVec v(n);
  for (std::size_t i = 0; i < n; ++i) v.set(i, (g() >> 13) & 1);
  return v;
}

}  // namespace

TEST_CASE("worked 3->2 example", "[hashing]") {
  // seed (1,0,1,1) gives T = [[1,0,1],[1,1,0]]; input (1,1,0) hashes to (1,0)
  ToeplitzSeed seed;
  seed.bits = BitVec{1, 0, 1, 1};
  seed.input_len = 3;
  seed.output_len = 2;
  const BitVec out = toeplitz_hash(seed, BitVec{1, 1, 0});
  REQUIRE(out.size() == 2);
  REQUIRE(out.get(0) == true);
  REQUIRE(out.get(1) == false);
}

TEST_CASE("matches a dense GF(2) matrix multiply", "[hashing]") {
  std::mt19937_64 g(2024);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + static_cast<std::size_t>(g() % 96);
    const std::size_t l = 1 + static_cast<std::size_t>(g() % n);
    ToeplitzSeed seed;
    seed.bits = random_bits(g, n + l - 1);
    seed.input_len = n;
    seed.output_len = l;
    const BitVec input = random_bits(g, n);
    const BitVec fast = toeplitz_hash(seed, input);
    const std::vector<int> slow = dense_toeplitz_multiply(seed, input);
    CAPTURE(trial, n, l);
    for (std::size_t i = 0; i < l; ++i) REQUIRE(fast.get(i) == (slow[i] == 1));
  }
}

TEST_CASE("word-sized fast path agrees with the BitVec path", "[hashing]") {
  std::mt19937_64 g(99);
  for (int trial = 0; trial < 300; ++trial) {
    const unsigned n = 1 + static_cast<unsigned>(g() % 10);
    const unsigned l = 1 + static_cast<unsigned>(g() % n);
    const std::uint64_t seed_bits = g() & ((std::uint64_t{1} << (n + l - 1)) - 1);
    const std::uint64_t x = g() & ((std::uint64_t{1} << n) - 1);
    const ToeplitzSeed seed = ToeplitzSeed::from_index(seed_bits, n, l);
    const std::uint64_t via_bitvec = toeplitz_hash(seed, BitVec::from_index(x, n)).to_index();
    REQUIRE(toeplitz_hash_index(seed_bits, x, n, l) == via_bitvec);
  }
}

TEST_CASE("hashing is linear over GF(2)", "[hashing]") {
  std::mt19937_64 g(7);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 2 + static_cast<std::size_t>(g() % 64);
    const std::size_t l = 1 + static_cast<std::size_t>(g() % n);
    ToeplitzSeed seed;
    seed.bits = random_bits(g, n + l - 1);
    seed.input_len = n;
    seed.output_len = l;
    const BitVec x = random_bits(g, n), y = random_bits(g, n);
    REQUIRE(toeplitz_hash(seed, x ^ y) == (toeplitz_hash(seed, x) ^ toeplitz_hash(seed, y)));
    REQUIRE(toeplitz_hash(seed, BitVec(n)).popcount() == 0);  // zero maps to zero
  }
}

TEST_CASE("family descriptor arithmetic", "[hashing]") {
  HashFamilyDescriptor f{6, 3};
  REQUIRE(f.seed_len() == 8);
  REQUIRE(f.family_size() == 256);
  REQUIRE(f.delta() == Approx(0.125));
  REQUIRE_THROWS_AS((HashFamilyDescriptor{3, 4}.validate()), validation_error);
  REQUIRE_THROWS_AS((HashFamilyDescriptor{3, 0}.validate()), validation_error);
  REQUIRE_THROWS_AS((HashFamilyDescriptor{64, 32}.family_size()), resource_error);
}

TEST_CASE("collision probability on known pairs", "[hashing]") {
  REQUIRE(collision_probability_exhaustive(2, 1, BitVec{0, 1}, BitVec{1, 0}) == 0.5);
  REQUIRE(collision_probability_exhaustive(2, 2, BitVec{0, 1}, BitVec{1, 0}) == 0.25);
  REQUIRE(collision_probability_exhaustive(3, 2, BitVec{1, 1, 0}, BitVec{0, 0, 1}) == 0.25);
}

TEST_CASE("family is exactly universal on an exhaustive pair sweep", "[hashing]") {
  // small-scale version of the acceptance run: every distinct pair, n <= 4
  for (unsigned n = 1; n <= 4; ++n) {
    for (unsigned l = 1; l <= std::min(3u, n); ++l) {
      const double expected = std::exp2(-static_cast<double>(l));
      for (std::uint64_t a = 0; a + 1 < (std::uint64_t{1} << n); ++a) {
        for (std::uint64_t b = a + 1; b < (std::uint64_t{1} << n); ++b) {
          const double cp = collision_probability_exhaustive(n, l, BitVec::from_index(a, n),
                                                             BitVec::from_index(b, n));
          CAPTURE(n, l, a, b);
          REQUIRE(cp == expected);
        }
      }
    }
  }
}

TEST_CASE("collision probability input checks", "[hashing]") {
  REQUIRE_THROWS_AS(collision_probability_exhaustive(2, 1, BitVec{0, 1}, BitVec{0, 1}),
                    validation_error);
  REQUIRE_THROWS_AS(collision_probability_exhaustive(2, 1, BitVec{0, 1}, BitVec{0, 1, 1}),
                    validation_error);
  REQUIRE_THROWS_AS(collision_probability_exhaustive(2, 3, BitVec{0, 1}, BitVec{1, 0}),
                    validation_error);
  REQUIRE_THROWS_AS(
      collision_probability_exhaustive(13, 2, BitVec(13), BitVec::from_index(1, 13)),
      resource_error);
}

TEST_CASE("seed validation and enumeration", "[hashing]") {
  ToeplitzSeed seed;
  seed.bits = BitVec{1, 0, 1};
  seed.input_len = 3;
  seed.output_len = 2;
  REQUIRE_THROWS_AS(seed.validate(), validation_error);  // needs 4 bits
  const ToeplitzSeed e = ToeplitzSeed::from_index(0b1101, 3, 2);
  REQUIRE(e.bits.get(0) == true);
  REQUIRE(e.bits.get(1) == false);
  REQUIRE(e.bits.get(2) == true);
  REQUIRE(e.bits.get(3) == true);
  REQUIRE_THROWS_AS(toeplitz_hash(e, BitVec{1, 0}), validation_error);  // length mismatch
}

TEST_CASE("privacy_amplify is the Toeplitz hash", "[hashing]") {
  std::mt19937_64 g(31);
  ToeplitzSeed seed;
  seed.bits = random_bits(g, 199 + 64 - 1);
  seed.input_len = 199;
  seed.output_len = 64;
  const BitVec key = random_bits(g, 199);
  REQUIRE(privacy_amplify(key, seed) == toeplitz_hash(seed, key));
}
