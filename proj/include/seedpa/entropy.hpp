#pragma once

#include "seedpa/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace seedpa {

namespace detail {

// Inverse standard normal CDF: Acklam's rational approximation refined with
// one Halley step against std::erfc, good to ~1 ulp over (0,1).
inline double normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) throw validation_error("normal_quantile: p must be in (0,1)");

  static constexpr double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                                 -2.759285104469687e+02, 1.383577518672690e+02,
                                 -3.066479806614716e+01, 2.506628277459239e+00};
  static constexpr double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                 -1.556989798598866e+02, 6.680131188771972e+01,
                                 -1.328068155288572e+01};
  static constexpr double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                 -2.400758277161838e+00, -2.549732539343734e+00,
                                 4.374664141464968e+00,  2.938163982698783e+00};
  static constexpr double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                                 2.445134137142996e+00, 3.754408661907416e+00};

  const double plow = 0.02425;
  double x;
  if (p < plow) {
    const double q = std::sqrt(-2.0 * std::log(p));
    x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  } else if (p <= 1.0 - plow) {
    const double q = p - 0.5;
    const double r = q * q;
    x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
        (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
  } else {
    const double q = std::sqrt(-2.0 * std::log(1.0 - p));
    x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }

  static const double sqrt2pi = std::sqrt(8.0 * std::atan(1.0));
  const double e = 0.5 * std::erfc(-x / std::sqrt(2.0)) - p;
  const double u = e * sqrt2pi * std::exp(0.5 * x * x);
  return x - u / (1.0 + 0.5 * x * u);
}

}  // namespace detail

// Finite distribution over a fixed alphabet.
struct SymbolDistribution {
  std::size_t alphabet_size = 0;
  std::vector<double> probabilities;

  void validate() const {
    if (alphabet_size == 0) throw validation_error("SymbolDistribution: empty alphabet");
    if (probabilities.size() != alphabet_size)
      throw validation_error("SymbolDistribution: probability vector length != alphabet size");
    double sum = 0.0;
    for (double p : probabilities) {
      if (!(p >= 0.0)) throw validation_error("SymbolDistribution: negative probability");
      sum += p;
    }
    if (std::abs(sum - 1.0) > 1e-12)
      throw validation_error("SymbolDistribution: probabilities sum to " + std::to_string(sum));
  }
};

// H_min = -log2(max_x P(x)); equals log2(alphabet) exactly when uniform.
inline double min_entropy(const SymbolDistribution& dist) {
  dist.validate();
  const double pmax = *std::max_element(dist.probabilities.begin(), dist.probabilities.end());
  return -std::log2(pmax);
}

struct MinEntropyEstimate {
  double point_estimate = 0.0;           // bits per symbol
  double lower_confidence_bound = 0.0;   // bits per symbol
  std::uint64_t sample_count = 0;
  double confidence_level = 0.0;
};

// Total seed length alpha and seed min-entropy beta, both in bits.
struct SeedQuality {
  double alpha = 0.0;
  double beta = 0.0;

  double gap() const { return alpha - beta; }

  void validate() const {
    if (!(beta >= 0.0) || !(beta <= alpha))
      throw validation_error("SeedQuality: requires 0 <= beta <= alpha");
  }
};

// Bridges a per-bit min-entropy figure (as reported for RNG hardware) to the
// total min-entropy of an alpha-bit seed, assuming bits contribute additively.
inline SeedQuality seed_quality_from_per_bit(double alpha, double h_avg) {
  if (!(h_avg >= 0.0 && h_avg <= 1.0))
    throw validation_error("seed_quality_from_per_bit: h_avg must be in [0,1]");
  if (!(alpha >= 1.0)) throw validation_error("seed_quality_from_per_bit: alpha must be >= 1");
  return SeedQuality{alpha, h_avg * alpha};
}

inline constexpr std::uint64_t kMinMcvSamples = 1000;

// Accumulates symbol frequencies from a byte stream, most-significant-bit
// first, for the most-common-value min-entropy estimator. Counts from
// separately processed chunks are additive, so counters can be merged.
class SymbolCounter {
public:
  explicit SymbolCounter(unsigned symbol_bits = 1) : symbol_bits_(symbol_bits) {
    if (symbol_bits_ < 1 || symbol_bits_ > 8)
      throw validation_error("SymbolCounter: symbol width must be 1..8 bits");
    counts_.assign(std::size_t{1} << symbol_bits_, 0);
  }

  void add_bytes(std::span<const std::uint8_t> data) {
    if (symbol_bits_ == 8) {
      for (std::uint8_t byte : data) ++counts_[byte];
      total_ += data.size();
      return;
    }
    if (symbol_bits_ == 1) {
      for (std::uint8_t byte : data)
        for (int i = 7; i >= 0; --i) ++counts_[(byte >> i) & 1];
      total_ += data.size() * 8;
      return;
    }
    for (std::uint8_t byte : data) {
      for (int i = 7; i >= 0; --i) {
        pending_ = (pending_ << 1) | ((byte >> i) & 1u);
        if (++pending_len_ == symbol_bits_) {
          ++counts_[pending_];
          ++total_;
          pending_ = 0;
          pending_len_ = 0;
        }
      }
    }
  }

  void add_symbol(unsigned symbol) {
    if (symbol >= counts_.size()) throw validation_error("SymbolCounter: symbol out of range");
    ++counts_[symbol];
    ++total_;
  }

  void merge(const SymbolCounter& other) {
    if (other.symbol_bits_ != symbol_bits_)
      throw validation_error("SymbolCounter: cannot merge different symbol widths");
    for (std::size_t i = 0; i < counts_.size(); ++i) counts_[i] += other.counts_[i];
    total_ += other.total_;
  }

  unsigned symbol_bits() const { return symbol_bits_; }
  std::uint64_t sample_count() const { return total_; }
  std::span<const std::uint64_t> counts() const { return counts_; }

  // Most-common-value estimate: point = -log2(p_hat), lower bound from a
  // one-sided normal upper confidence bound on p_hat.
  MinEntropyEstimate estimate(double confidence_level = 0.99) const {
    if (!(confidence_level >= 0.5 && confidence_level < 1.0))
      throw validation_error("estimate: confidence level must be in [0.5, 1)");
    if (total_ == 0) throw validation_error("estimate: empty sample stream");
    if (total_ < kMinMcvSamples)
      throw estimation_error("estimate: need at least " + std::to_string(kMinMcvSamples) +
                             " samples, got " + std::to_string(total_));

    const std::uint64_t cmax = *std::max_element(counts_.begin(), counts_.end());
    const double n = static_cast<double>(total_);
    const double p_hat = static_cast<double>(cmax) / n;
    const double z = detail::normal_quantile(confidence_level);
    const double p_up = std::min(1.0, p_hat + z * std::sqrt(p_hat * (1.0 - p_hat) / n));

    MinEntropyEstimate est;
    est.point_estimate = std::max(0.0, -std::log2(p_hat));
    est.lower_confidence_bound = std::max(0.0, -std::log2(p_up));
    est.sample_count = total_;
    est.confidence_level = confidence_level;
    return est;
  }

private:
  unsigned symbol_bits_;
  std::vector<std::uint64_t> counts_;
  std::uint64_t total_ = 0;
  unsigned pending_ = 0;
  unsigned pending_len_ = 0;
};

inline MinEntropyEstimate estimate_min_entropy_mcv(std::span<const std::uint8_t> data,
                                                   unsigned symbol_bits = 1,
                                                   double confidence_level = 0.99) {
  if (data.empty()) throw validation_error("estimate_min_entropy_mcv: empty sample stream");
  SymbolCounter counter(symbol_bits);
  counter.add_bytes(data);
  return counter.estimate(confidence_level);
}

}  // namespace seedpa
