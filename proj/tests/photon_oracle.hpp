#pragma once

// Test-only reference model: a photon-number-resolved channel whose exact
// Poisson-mixture gains and error rates are produced by direct series
// summation in long double. Feeding these into the decoy estimator lets the
// tests check soundness (Y1_lower <= true Y1, e1_upper >= true e1) against
// ground truth that the library never sees.

#include <cmath>
#include <stdexcept>

namespace testutil {

struct PhotonChannel {
  long double eta = 0.1L;   // total transmittance
  long double y0 = 1e-5L;   // dark-count yield
  long double e_d = 0.01L;  // misalignment error

  // Yield of an n-photon pulse: at least one of n independent survivals or a
  // dark count fires the threshold detector.
  long double yield(int n) const {
    return 1.0L - (1.0L - y0) * std::pow(1.0L - eta, static_cast<long double>(n));
  }

  // e_n * Y_n: dark counts err half the time, real detections with prob e_d.
  long double error_yield(int n) const {
    const long double signal = (1.0L - std::pow(1.0L - eta, static_cast<long double>(n))) *
                               (1.0L - y0);
    return 0.5L * y0 + e_d * signal;
  }

  long double error_rate(int n) const {
    const long double y = yield(n);
    return y > 0.0L ? error_yield(n) / y : 0.5L;
  }
};

struct ExactGain {
  long double gain = 0.0L;
  long double qber = 0.0L;
};

// Q = sum_n pois(n;mu) Y_n and E*Q = sum_n pois(n;mu) e_n Y_n, truncated where
// the Poisson tail is negligible (mu <= ~5 keeps 200 terms far below 1e-30).
inline ExactGain exact_gain_qber(const PhotonChannel& ch, long double mu) {
  if (!(mu >= 0.0L && mu <= 5.0L)) throw std::invalid_argument("exact_gain_qber: mu out of range");
  long double pois = std::exp(-mu);
  long double q = 0.0L, eq = 0.0L;
  for (int n = 0; n <= 200; ++n) {
    q += pois * ch.yield(n);
    eq += pois * ch.error_yield(n);
    pois *= mu / static_cast<long double>(n + 1);
  }
  ExactGain g;
  g.gain = q;
  g.qber = q > 0.0L ? eq / q : 0.5L;
  return g;
}

}  // namespace testutil
