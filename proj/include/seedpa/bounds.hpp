#pragma once

#include "seedpa/entropy.hpp"
#include "seedpa/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>

namespace seedpa {

// Security failure budgets. eps_smooth is the smoothing parameter of the
// min-entropy, eps_sec the secrecy failure probability, eps_cor the
// correctness failure probability.
struct SecurityParams {
  double eps_smooth = 1e-10;
  double eps_sec = 1e-9;
  double eps_cor = 1e-15;

  void validate() const {
    if (!(eps_smooth >= 0.0 && eps_smooth < eps_sec && eps_sec <= 1.0))
      throw validation_error("SecurityParams: requires 0 <= eps_smooth < eps_sec <= 1");
    if (!(eps_cor > 0.0 && eps_cor <= 1.0))
      throw validation_error("SecurityParams: requires 0 < eps_cor <= 1");
  }
};

// Composed security level of a key that is eps_sec-secret and
// eps_cor-correct.
inline double epsilon_secure(double eps_sec, double eps_cor) { return eps_sec + eps_cor; }

// Inputs of the distance-from-uniform bounds: smooth min-entropy of the input
// state (bits), extracted key length (bits), and seed quality.
struct BoundInputs {
  double hmin = 0.0;
  double key_len = 0.0;
  SeedQuality seed;
  double eps_smooth = 0.0;

  void validate() const {
    if (!(key_len >= 0.0)) throw validation_error("BoundInputs: key_len must be >= 0");
    if (!(eps_smooth >= 0.0)) throw validation_error("BoundInputs: eps_smooth must be >= 0");
    if (!std::isfinite(hmin)) throw validation_error("BoundInputs: hmin must be finite");
    seed.validate();
  }
};

// Distance bound for hashing with a seed of min-entropy beta out of alpha
// bits: (1/2) * 2^(alpha-beta) * 2^(-(hmin-l)/2) + eps. The exponents are
// combined before exponentiation so extreme gaps do not overflow to NaN.
inline double theorem1_bound_raw(const BoundInputs& in) {
  in.validate();
  const double exponent = in.seed.gap() - 0.5 * (in.hmin - in.key_len);
  return 0.5 * std::exp2(exponent) + in.eps_smooth;
}

// Same bound clamped to 1; anything above is vacuous for a statistical
// distance.
inline double theorem1_bound(const BoundInputs& in) {
  return std::min(1.0, theorem1_bound_raw(in));
}

// Bound obtained by scaling the collision probability of the hash family
// instead: (1/2) * sqrt(2^(l-hmin) + 2^(alpha-beta) - 1) + eps. The gap term
// is expm1-based: at gap = 0 it vanishes exactly instead of leaving 1-ulp
// debris that would swamp a small 2^(l-hmin).
inline double alternative_bound_raw(const BoundInputs& in) {
  in.validate();
  const double gap_term = std::expm1(in.seed.gap() * std::numbers::ln2);
  const double inner = std::exp2(in.key_len - in.hmin) + gap_term;
  return 0.5 * std::sqrt(inner) + in.eps_smooth;
}

inline double alternative_bound(const BoundInputs& in) {
  return std::min(1.0, alternative_bound_raw(in));
}

enum class Tighter { Theorem1, Alternative, Equal };

inline const char* to_string(Tighter t) {
  switch (t) {
    case Tighter::Theorem1: return "theorem1";
    case Tighter::Alternative: return "alternative";
    case Tighter::Equal: return "equal";
  }
  return "?";
}

struct BoundComparison {
  double theorem1_raw = 0.0;
  double alternative_raw = 0.0;
  double theorem1_clamped = 0.0;     // in [0,1]
  double alternative_clamped = 0.0;  // in [0,1]
  Tighter tighter = Tighter::Equal;  // decided on the raw (pre-clamp) values
  // Analytic crossover test 2^(l-hmin) * (2^(alpha-beta) + 1) <= 1; the first
  // bound is the tighter one whenever this holds.
  bool theorem1_tighter_predicate = false;
};

inline BoundComparison compare_bounds(const BoundInputs& in) {
  BoundComparison cmp;
  cmp.theorem1_raw = theorem1_bound_raw(in);
  cmp.alternative_raw = alternative_bound_raw(in);
  cmp.theorem1_clamped = std::min(1.0, cmp.theorem1_raw);
  cmp.alternative_clamped = std::min(1.0, cmp.alternative_raw);

  const double diff = cmp.theorem1_raw - cmp.alternative_raw;
  if ((std::isinf(cmp.theorem1_raw) && std::isinf(cmp.alternative_raw)) ||
      std::abs(diff) <= 1e-12)
    cmp.tighter = Tighter::Equal;
  else
    cmp.tighter = diff < 0.0 ? Tighter::Theorem1 : Tighter::Alternative;

  // log2(2^gap + 1) evaluated stably for large gaps
  const double gap = in.seed.gap();
  const double log2_gap_term =
      gap > 52.0 ? gap : std::log2(std::exp2(gap) + 1.0);
  cmp.theorem1_tighter_predicate = (in.key_len - in.hmin) + log2_gap_term <= 0.0;
  return cmp;
}

// Secure key length: hmin - leak_ec - 2*log2(1/(2(eps_sec - eps_smooth)))
// - log2(2/eps_cor) - (alpha - beta), floored to an integer and clamped at 0.
inline long long key_length(double hmin, double leak_ec, const SecurityParams& sec,
                            const SeedQuality& seed) {
  sec.validate();
  seed.validate();
  if (!(hmin >= 0.0)) throw validation_error("key_length: hmin must be >= 0");
  if (!(leak_ec >= 0.0)) throw validation_error("key_length: leak_ec must be >= 0");

  const double secrecy_cost = 2.0 * std::log2(1.0 / (2.0 * (sec.eps_sec - sec.eps_smooth)));
  const double correctness_cost = std::log2(2.0 / sec.eps_cor);
  const double raw = hmin - leak_ec - secrecy_cost - correctness_cost - seed.gap();
  if (raw < 0.0) return 0;
  return static_cast<long long>(std::floor(raw));
}

// Itemized version of the same budget, for reporting.
struct KeyLengthBudget {
  double hmin = 0.0;
  double leak_ec = 0.0;
  SecurityParams security;
  SeedQuality seed;
  double secrecy_cost = 0.0;
  double correctness_cost = 0.0;
  double penalty = 0.0;  // alpha - beta
  long long max_key_len = 0;
};

inline KeyLengthBudget key_length_budget(double hmin, double leak_ec,
                                         const SecurityParams& sec, const SeedQuality& seed) {
  KeyLengthBudget b;
  b.hmin = hmin;
  b.leak_ec = leak_ec;
  b.security = sec;
  b.seed = seed;
  b.secrecy_cost = 2.0 * std::log2(1.0 / (2.0 * (sec.eps_sec - sec.eps_smooth)));
  b.correctness_cost = std::log2(2.0 / sec.eps_cor);
  b.penalty = seed.gap();
  b.max_key_len = key_length(hmin, leak_ec, sec, seed);
  return b;
}

}  // namespace seedpa
