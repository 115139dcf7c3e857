#pragma once

// Brute-force check of the non-uniform-seed leftover-hash bound on small
// classical instances: enumerate every Toeplitz seed, push the joint input
// distribution through the hash, and compare the exact key-vs-uniform
// distance against the analytic bound. Side information is classical
// (diagonal) throughout; trace distance then reduces to total variation.

#include "seedpa/bounds.hpp"
#include "seedpa/entropy.hpp"
#include "seedpa/errors.hpp"
#include "seedpa/hashing.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <random>
#include <string>
#include <vector>

namespace seedpa {

// Enumeration limits for exact Delta evaluation: 2^(n+l-1) seeds times 2^n
// inputs per seed.
inline constexpr unsigned kMaxOracleInputBits = 8;
inline constexpr unsigned kMaxOracleOutputBits = 3;

// Classical joint distribution P(x, e) with x over n-bit strings and e over
// an arbitrary finite alphabet. Row-major: p[x * e_alphabet + e].
struct JointDistribution {
  unsigned n = 0;
  std::size_t e_alphabet = 1;
  std::vector<double> p;

  std::size_t x_alphabet() const { return std::size_t{1} << n; }

  double at(std::size_t x, std::size_t e) const { return p[x * e_alphabet + e]; }
  double& at(std::size_t x, std::size_t e) { return p[x * e_alphabet + e]; }

  void validate() const {
    if (n > 30) throw resource_error("JointDistribution: n too large");
    if (e_alphabet < 1) throw validation_error("JointDistribution: empty side alphabet");
    if (p.size() != x_alphabet() * e_alphabet)
      throw validation_error("JointDistribution: matrix size mismatch");
    double sum = 0.0;
    for (double v : p) {
      if (!(v >= 0.0)) throw validation_error("JointDistribution: negative entry");
      sum += v;
    }
    if (std::abs(sum - 1.0) > 1e-12)
      throw validation_error("JointDistribution: entries must sum to 1");
  }

  std::vector<double> e_marginal() const {
    std::vector<double> m(e_alphabet, 0.0);
    for (std::size_t x = 0; x < x_alphabet(); ++x)
      for (std::size_t e = 0; e < e_alphabet; ++e) m[e] += at(x, e);
    return m;
  }

  // X uniform on n bits, side information trivial.
  static JointDistribution uniform_x(unsigned n) {
    JointDistribution d;
    d.n = n;
    d.e_alphabet = 1;
    d.p.assign(d.x_alphabet(), 1.0 / static_cast<double>(d.x_alphabet()));
    return d;
  }
};

// Guessing-probability form of the conditional min-entropy,
// -log2 sum_e max_x P(x,e).
inline double conditional_min_entropy(const JointDistribution& d) {
  d.validate();
  double guess = 0.0;
  for (std::size_t e = 0; e < d.e_alphabet; ++e) {
    double best = 0.0;
    for (std::size_t x = 0; x < d.x_alphabet(); ++x) best = std::max(best, d.at(x, e));
    guess += best;
  }
  return -std::log2(guess);
}

// (1/2) sum_{s,e} |P(s,e) - 2^(-l) P(e)|, the distance of the hashed key
// from uniform-and-independent. The S alphabet is the 2^(d.n) outputs.
inline double uniformity_distance(const JointDistribution& d) {
  d.validate();
  const double u = 1.0 / static_cast<double>(d.x_alphabet());
  const std::vector<double> pe = d.e_marginal();
  double total = 0.0;
  for (std::size_t s = 0; s < d.x_alphabet(); ++s)
    for (std::size_t e = 0; e < d.e_alphabet; ++e)
      total += std::abs(d.at(s, e) - u * pe[e]);
  return 0.5 * total;
}

// Distribution over the enumerated seed family, with the min-entropy level
// it is claimed to satisfy.
struct SeedDistribution {
  HashFamilyDescriptor family;
  double beta = 0.0;
  std::vector<double> weights;

  double min_entropy() const {
    const double m = *std::max_element(weights.begin(), weights.end());
    return -std::log2(m);
  }

  void validate() const {
    family.validate();
    if (weights.size() != family.family_size())
      throw validation_error("SeedDistribution: need one weight per seed");
    double sum = 0.0;
    for (double w : weights) {
      if (!(w >= 0.0)) throw validation_error("SeedDistribution: negative weight");
      sum += w;
    }
    if (std::abs(sum - 1.0) > 1e-12)
      throw validation_error("SeedDistribution: weights must sum to 1");
    if (!(beta >= 0.0 && beta <= static_cast<double>(family.seed_len())))
      throw validation_error("SeedDistribution: beta out of [0, alpha]");
    if (min_entropy() < beta - 1e-9)
      throw validation_error("SeedDistribution: weights fall short of declared beta");
  }

  static SeedDistribution uniform(const HashFamilyDescriptor& family) {
    SeedDistribution d;
    d.family = family;
    d.beta = static_cast<double>(family.seed_len());
    d.weights.assign(family.family_size(), 1.0 / static_cast<double>(family.family_size()));
    return d;
  }
};

inline void check_oracle_size(const HashFamilyDescriptor& family) {
  if (family.input_len > kMaxOracleInputBits || family.output_len > kMaxOracleOutputBits)
    throw resource_error("oracle: instance exceeds enumeration bounds (n <= " +
                         std::to_string(kMaxOracleInputBits) + ", l <= " +
                         std::to_string(kMaxOracleOutputBits) + ")");
}

// Key-vs-uniform distance of the hashed output for one fixed seed.
inline double seed_distance(const JointDistribution& p_xe, const HashFamilyDescriptor& family,
                            std::uint64_t seed_index) {
  const unsigned n = static_cast<unsigned>(family.input_len);
  const unsigned l = static_cast<unsigned>(family.output_len);
  JointDistribution out;
  out.n = l;
  out.e_alphabet = p_xe.e_alphabet;
  out.p.assign(out.x_alphabet() * out.e_alphabet, 0.0);
  for (std::size_t x = 0; x < p_xe.x_alphabet(); ++x) {
    const std::uint64_t s = toeplitz_hash_index(seed_index, x, n, l);
    for (std::size_t e = 0; e < p_xe.e_alphabet; ++e) out.at(s, e) += p_xe.at(x, e);
  }
  return uniformity_distance(out);
}

// Distances for every seed in enumeration order. This is the expensive part;
// callers evaluating many seed distributions against one p_xe should compute
// it once and combine with delta_from_distances.
inline std::vector<double> per_seed_distances(const JointDistribution& p_xe,
                                              const HashFamilyDescriptor& family) {
  p_xe.validate();
  family.validate();
  check_oracle_size(family);
  if (family.input_len != p_xe.n)
    throw validation_error("per_seed_distances: family input length must match p_xe");
  const std::uint64_t count = family.family_size();
  std::vector<double> d(count);
  for (std::uint64_t f = 0; f < count; ++f) d[f] = seed_distance(p_xe, family, f);
  return d;
}

inline double delta_from_distances(const std::vector<double>& distances,
                                   const SeedDistribution& seed_dist) {
  seed_dist.validate();
  if (distances.size() != seed_dist.weights.size())
    throw validation_error("delta_from_distances: size mismatch");
  double delta = 0.0;  // fixed enumeration order keeps the sum reproducible
  for (std::size_t f = 0; f < distances.size(); ++f)
    delta += seed_dist.weights[f] * distances[f];
  return delta;
}

// Exact Delta = sum_f P(f) * D_u(S|E) under seed f. Zero-weight seeds are
// skipped; they contribute nothing.
inline double delta_exact(const JointDistribution& p_xe, const SeedDistribution& seed_dist) {
  p_xe.validate();
  seed_dist.validate();
  check_oracle_size(seed_dist.family);
  if (seed_dist.family.input_len != p_xe.n)
    throw validation_error("delta_exact: family input length must match p_xe");
  double delta = 0.0;
  for (std::uint64_t f = 0; f < seed_dist.weights.size(); ++f) {
    const double w = seed_dist.weights[f];
    if (w == 0.0) continue;
    delta += w * seed_distance(p_xe, seed_dist.family, f);
  }
  return delta;
}

struct VerifyReport {
  double hmin = 0.0;   // conditional min-entropy of the instance
  double delta = 0.0;  // exact distance
  double bound = 0.0;  // theorem bound at eps = 0
  double margin = 0.0;
  bool pass = false;
};

inline constexpr double kVerifyTolerance = 1e-10;

inline VerifyReport verify_theorem1(const JointDistribution& p_xe,
                                    const SeedDistribution& seed_dist) {
  VerifyReport r;
  r.hmin = conditional_min_entropy(p_xe);
  r.delta = delta_exact(p_xe, seed_dist);
  BoundInputs in;
  in.hmin = r.hmin;
  in.key_len = static_cast<double>(seed_dist.family.output_len);
  in.seed = SeedQuality{static_cast<double>(seed_dist.family.seed_len()), seed_dist.beta};
  in.eps_smooth = 0.0;
  r.bound = theorem1_bound(in);
  r.margin = r.bound - r.delta;
  r.pass = r.delta <= r.bound + kVerifyTolerance;
  return r;
}

inline VerifyReport verify_from_distances(const std::vector<double>& distances,
                                          const JointDistribution& p_xe,
                                          const SeedDistribution& seed_dist) {
  VerifyReport r;
  r.hmin = conditional_min_entropy(p_xe);
  r.delta = delta_from_distances(distances, seed_dist);
  BoundInputs in;
  in.hmin = r.hmin;
  in.key_len = static_cast<double>(seed_dist.family.output_len);
  in.seed = SeedQuality{static_cast<double>(seed_dist.family.seed_len()), seed_dist.beta};
  in.eps_smooth = 0.0;
  r.bound = theorem1_bound(in);
  r.margin = r.bound - r.delta;
  r.pass = r.delta <= r.bound + kVerifyTolerance;
  return r;
}

enum class SeedStrategy { Spike, Block, Uniform };

inline const char* to_string(SeedStrategy s) {
  switch (s) {
    case SeedStrategy::Spike: return "spike";
    case SeedStrategy::Block: return "block";
    case SeedStrategy::Uniform: return "uniform";
  }
  return "?";
}

inline SeedStrategy seed_strategy_from_string(const std::string& s) {
  if (s == "spike") return SeedStrategy::Spike;
  if (s == "block") return SeedStrategy::Block;
  if (s == "uniform") return SeedStrategy::Uniform;
  throw validation_error("unknown seed strategy: " + s);
}

// Seed indices ordered by decreasing per-seed distance (ties by index), i.e.
// the order in which an adversary would want to concentrate seed mass.
inline std::vector<std::uint64_t> seeds_by_distance(const std::vector<double>& distances) {
  std::vector<std::uint64_t> order(distances.size());
  std::iota(order.begin(), order.end(), std::uint64_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::uint64_t a, std::uint64_t b) {
    return distances[a] > distances[b];
  });
  return order;
}

// Stress distributions of min-entropy exactly beta (>= beta for uniform).
// "spike": one seed at 2^(-beta), rest uniform. "block": mass 2^(-beta) on
// as many seeds as fit, remainder on one more — the greedy maximizer of
// Delta over all distributions with min-entropy >= beta when seeds are
// ranked by distance. Ranking defaults to index order when no distances are
// supplied.
inline std::vector<SeedDistribution> adversarial_seed_distributions(
    const HashFamilyDescriptor& family, double beta, SeedStrategy strategy,
    const std::vector<double>* distances = nullptr) {
  family.validate();
  const double alpha = static_cast<double>(family.seed_len());
  if (!(beta >= 0.0 && beta <= alpha))
    throw validation_error("adversarial_seed_distributions: beta out of [0, alpha]");
  const std::uint64_t count = family.family_size();
  if (distances && distances->size() != count)
    throw validation_error("adversarial_seed_distributions: distance table size mismatch");

  if (strategy == SeedStrategy::Uniform || beta == alpha)
    return {SeedDistribution::uniform(family)};

  std::vector<std::uint64_t> order;
  if (distances)
    order = seeds_by_distance(*distances);
  else {
    order.resize(count);
    std::iota(order.begin(), order.end(), std::uint64_t{0});
  }

  SeedDistribution d;
  d.family = family;
  d.beta = beta;
  d.weights.assign(count, 0.0);
  const double top = std::exp2(-beta);

  if (strategy == SeedStrategy::Spike) {
    d.weights[order[0]] = top;
    const double rest = (1.0 - top) / static_cast<double>(count - 1);
    for (std::uint64_t f = 0; f < count; ++f)
      if (f != order[0]) d.weights[f] = rest;
  } else {  // Block
    double remaining = 1.0;
    for (std::uint64_t k = 0; k < count && remaining > 1e-15; ++k) {
      const double w = std::min(top, remaining);
      d.weights[order[k]] = w;
      remaining -= w;
    }
  }
  d.validate();
  return {d};
}

// --- verification sweep -----------------------------------------------

// 53-bit uniform in [0,1); avoids std::uniform_real_distribution, whose
// output is not pinned down by the standard and varies across libraries.
inline double uniform_unit(std::mt19937_64& g) {
  return static_cast<double>(g() >> 11) * 0x1.0p-53;
}

// Random p_xe for stress runs. shape % 3 selects flat Dirichlet weights,
// squared (peakier) weights, or a distribution with one dominant cell, so a
// fixed-seed sweep covers high and low conditional min-entropy alike.
inline JointDistribution random_joint_distribution(std::mt19937_64& g, unsigned n,
                                                   std::size_t e_alphabet, unsigned shape) {
  JointDistribution d;
  d.n = n;
  d.e_alphabet = e_alphabet;
  d.p.resize(d.x_alphabet() * e_alphabet);
  double sum = 0.0;
  for (double& v : d.p) {
    double w = -std::log1p(-uniform_unit(g));  // Exp(1): Dirichlet(1) once normalized
    if (shape % 3 == 1) w *= w;
    v = w;
    sum += w;
  }
  if (shape % 3 == 2 && sum > 0.0) {
    const std::size_t cell =
        std::min(d.p.size() - 1, static_cast<std::size_t>(uniform_unit(g) * d.p.size()));
    d.p[cell] += sum;  // one cell now carries at least half the mass
    sum += sum;
  }
  for (double& v : d.p) v /= sum;
  return d;
}

struct SweepSpec {
  unsigned n_min = 2, n_max = 6;
  unsigned l_min = 1, l_max = 3;
  unsigned trials = 100;
  std::size_t e_alphabet = 4;
  std::uint64_t rng_seed = 1;
  std::vector<SeedStrategy> strategies = {SeedStrategy::Spike, SeedStrategy::Block,
                                          SeedStrategy::Uniform};
  std::vector<double> betas;  // empty: use sweep_betas(alpha) per family

  void validate() const {
    if (n_min < 1 || n_min > n_max) throw validation_error("SweepSpec: bad n range");
    if (l_min < 1 || l_min > l_max) throw validation_error("SweepSpec: bad l range");
    if (trials < 1) throw validation_error("SweepSpec: trials must be >= 1");
    if (e_alphabet < 1) throw validation_error("SweepSpec: e_alphabet must be >= 1");
    if (strategies.empty()) throw validation_error("SweepSpec: no strategies");
    for (double b : betas)
      if (!(b >= 0.0)) throw validation_error("SweepSpec: beta must be >= 0");
    if (n_max > kMaxOracleInputBits || l_max > kMaxOracleOutputBits)
      throw resource_error("SweepSpec: range exceeds enumeration bounds (n <= " +
                           std::to_string(kMaxOracleInputBits) + ", l <= " +
                           std::to_string(kMaxOracleOutputBits) + ")");
  }
};

struct SweepRow {
  unsigned n = 0, l = 0;
  double alpha = 0.0, beta = 0.0;
  SeedStrategy strategy = SeedStrategy::Uniform;
  unsigned trial = 0;
  VerifyReport report;
};

// beta levels exercised per family: alpha, alpha-1, alpha-2, ceil(alpha/2),
// deduplicated, clamped at 0.
inline std::vector<double> sweep_betas(double alpha) {
  std::vector<double> out;
  for (double b : {alpha, alpha - 1.0, alpha - 2.0, std::ceil(alpha / 2.0)}) {
    b = std::max(0.0, b);
    if (std::find(out.begin(), out.end(), b) == out.end()) out.push_back(b);
  }
  return out;
}

// The full brute-force experiment: every (n, l) family in range, `trials`
// random joint distributions each, crossed with the beta levels and seed
// strategies. One p_xe (and one per-seed distance table) is shared across
// the beta/strategy grid of its trial. Fully deterministic given rng_seed.
inline std::vector<SweepRow> run_verification_sweep(const SweepSpec& spec) {
  spec.validate();
  std::vector<SweepRow> rows;
  for (unsigned n = spec.n_min; n <= spec.n_max; ++n) {
    for (unsigned l = spec.l_min; l <= std::min(spec.l_max, n); ++l) {
      HashFamilyDescriptor family{n, l};
      const double alpha = static_cast<double>(family.seed_len());
      std::vector<double> betas;
      if (spec.betas.empty()) {
        betas = sweep_betas(alpha);
      } else {
        for (double b : spec.betas)
          if (b <= alpha) betas.push_back(b);
        if (betas.empty())
          throw validation_error("run_verification_sweep: no requested beta fits alpha=" +
                                 std::to_string(alpha));
      }
      for (unsigned trial = 0; trial < spec.trials; ++trial) {
        std::seed_seq seq{static_cast<unsigned>(spec.rng_seed),
                          static_cast<unsigned>(spec.rng_seed >> 32), n, l, trial};
        std::mt19937_64 rng(seq);
        const JointDistribution p_xe =
            random_joint_distribution(rng, n, spec.e_alphabet, trial);
        const std::vector<double> distances = per_seed_distances(p_xe, family);
        for (double beta : betas) {
          for (SeedStrategy strategy : spec.strategies) {
            const SeedDistribution sd =
                adversarial_seed_distributions(family, beta, strategy, &distances)[0];
            SweepRow row;
            row.n = n;
            row.l = l;
            row.alpha = alpha;
            row.beta = beta;
            row.strategy = strategy;
            row.trial = trial;
            row.report = verify_from_distances(distances, p_xe, sd);
            rows.push_back(row);
          }
        }
      }
    }
  }
  return rows;
}

}  // namespace seedpa
