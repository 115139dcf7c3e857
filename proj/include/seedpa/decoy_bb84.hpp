#pragma once

// Two-decoy (vacuum + weak) BB84 over fiber with weak coherent pulses.
// Asymptotic yields, finite-key privacy-amplification budget, and the
// Toeplitz seed-quality penalty (1 - h_avg) * (n_sift + l - 1) folded into
// the key length by fixed-point iteration.

#include "seedpa/bounds.hpp"
#include "seedpa/entropy.hpp"
#include "seedpa/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

namespace seedpa {

inline double binary_entropy(double x) {
  if (x <= 0.0 || x >= 1.0) return 0.0;
  return -x * std::log2(x) - (1.0 - x) * std::log2(1.0 - x);
}

// Fiber + threshold-detector channel. Probabilities are per pulse.
struct ChannelModel {
  double attenuation = 0.2;           // dB/km
  double distance_km = 50.0;
  double detector_efficiency = 0.1;
  double dark_count_prob = 1e-5;      // Y0
  double misalignment = 0.033;        // e_d
  static constexpr double kE0 = 0.5;  // error rate of dark counts

  double eta() const {
    return detector_efficiency * std::pow(10.0, -attenuation * distance_km / 10.0);
  }

  void validate() const {
    if (!(attenuation >= 0.0)) throw validation_error("ChannelModel: attenuation must be >= 0");
    if (!(distance_km >= 0.0)) throw validation_error("ChannelModel: distance must be >= 0");
    const auto prob = [](double v) { return v >= 0.0 && v <= 1.0; };
    if (!prob(detector_efficiency) || !prob(dark_count_prob) || !prob(misalignment))
      throw validation_error("ChannelModel: probabilities must lie in [0,1]");
  }
};

struct ProtocolParams {
  double mu = 0.5;                         // signal intensity
  double nu = 0.1;                         // weak decoy intensity (vacuum is 0)
  std::uint64_t pulse_count = 10000000000ULL;  // N
  double p_signal = 0.8;
  double p_weak = 0.1;
  double p_vacuum = 0.1;
  double sifting_factor = 0.5;             // q
  double ec_efficiency = 1.16;             // f

  void validate() const {
    if (!(nu > 0.0 && nu < mu)) throw validation_error("ProtocolParams: requires 0 < nu < mu");
    if (pulse_count < 1) throw validation_error("ProtocolParams: pulse_count must be >= 1");
    if (!(p_signal >= 0.0 && p_weak >= 0.0 && p_vacuum >= 0.0))
      throw validation_error("ProtocolParams: intensity probabilities must be >= 0");
    if (std::abs(p_signal + p_weak + p_vacuum - 1.0) > 1e-12)
      throw validation_error("ProtocolParams: intensity probabilities must sum to 1");
    if (!(sifting_factor > 0.0 && sifting_factor <= 1.0))
      throw validation_error("ProtocolParams: sifting_factor must be in (0,1]");
    if (!(ec_efficiency >= 1.0))
      throw validation_error("ProtocolParams: ec_efficiency must be >= 1");
  }
};

struct GainQber {
  double gain = 0.0;  // Q
  double qber = 0.0;  // E
};

// Standard weak-coherent-pulse model: eta = det_eff * 10^(-att*d/10),
// Q = Y0 + 1 - e^(-eta*intensity), E = (e0*Y0 + e_d*(1 - e^(-eta*intensity))) / Q.
inline GainQber gain_qber(const ChannelModel& ch, double intensity) {
  ch.validate();
  if (!(intensity >= 0.0)) throw validation_error("gain_qber: intensity must be >= 0");
  const double signal = 1.0 - std::exp(-ch.eta() * intensity);
  GainQber g;
  g.gain = ch.dark_count_prob + signal;
  // vacuum with no dark counts: nothing clicks, errors are e0 by convention
  g.qber = g.gain > 0.0
               ? (ChannelModel::kE0 * ch.dark_count_prob + ch.misalignment * signal) / g.gain
               : ChannelModel::kE0;
  return g;
}

struct DecoyEstimates {
  double y1_lower = 0.0;
  double e1_upper = 1.0;
  double q1 = 0.0;  // single-photon gain Y1_lower * mu * e^(-mu)
};

// Vacuum + weak decoy bounds on the single-photon yield and error rate. A
// non-positive yield bound means the decoy analysis certifies no
// single-photon signal: q1 = 0 and the error bound is vacuous.
inline DecoyEstimates decoy_estimates(double q_mu, double e_mu, double q_nu, double e_nu,
                                      double q_vac, double mu, double nu) {
  if (!(nu > 0.0 && nu < mu)) throw validation_error("decoy_estimates: requires 0 < nu < mu");
  const auto gain_ok = [](double q) { return q >= 0.0 && q <= 1.0; };
  if (!gain_ok(q_mu) || !gain_ok(q_nu) || !gain_ok(q_vac))
    throw validation_error("decoy_estimates: gains must lie in [0,1]");
  (void)e_mu;

  const double y0 = q_vac;
  const double y1 = (mu / (mu * nu - nu * nu)) *
                    (q_nu * std::exp(nu) - q_mu * std::exp(mu) * (nu * nu) / (mu * mu) -
                     ((mu * mu - nu * nu) / (mu * mu)) * y0);
  DecoyEstimates d;
  d.y1_lower = std::clamp(y1, 0.0, 1.0);
  if (d.y1_lower <= 0.0) return d;  // no single-photon signal
  const double e1 =
      (e_nu * q_nu * std::exp(nu) - ChannelModel::kE0 * y0) / (d.y1_lower * nu);
  d.e1_upper = std::clamp(e1, 0.0, 1.0);
  d.q1 = d.y1_lower * mu * std::exp(-mu);
  return d;
}

// Largest integer l with l <= floor(C - gamma*(n_sift - 1 + l)), found by
// fixed-point iteration from l = 0 (contraction of slope -gamma). The floor
// can trap the iteration in a 2-cycle whose members straddle the answer; we
// then fall back on the closed form floor((C - gamma*(n_sift-1))/(1+gamma)),
// adjusted downward until secure.
inline long long solve_key_length(double budget, double gamma, double n_sift) {
  if (!(gamma >= 0.0 && gamma <= 1.0))
    throw validation_error("solve_key_length: gamma must be in [0,1]");
  const auto rhs = [&](double l) { return std::floor(budget - gamma * (n_sift - 1.0 + l)); };

  double l = 0.0, prev = -1.0;
  bool cycled = true;
  for (int it = 0; it < 1000; ++it) {
    const double next = std::max(0.0, rhs(l));
    if (next == l) { cycled = false; break; }
    if (next == prev) break;  // 2-cycle
    prev = l;
    l = next;
  }
  if (cycled) {
    l = std::max(0.0, std::floor((budget - gamma * (n_sift - 1.0)) / (1.0 + gamma)));
    while (l > 0.0 && l > rhs(l)) l -= 1.0;
  }
  return static_cast<long long>(l);
}

struct KeyRateResult {
  double distance_km = 0.0;
  double h_avg = 1.0;
  double q_mu = 0.0, e_mu = 0.0;
  double q_nu = 0.0, e_nu = 0.0;
  double q_vac = 0.0;
  double y1_lower = 0.0, e1_upper = 1.0, q1 = 0.0;
  double n_sift = 0.0;
  long long key_len = 0;
  double seed_alpha = 0.0;  // n_sift + key_len - 1 (Toeplitz)
  double seed_beta = 0.0;   // h_avg * seed_alpha
  double penalty = 0.0;     // seed_alpha - seed_beta
  double skr = 0.0;         // key_len / pulse_count
};

// Finite-key secret key length with the seed penalty. The Toeplitz seed is
// as long as input + output - 1, so the penalty itself depends on l; Eq.
// l = floor(hmin - leak - pa_terms - (1-h_avg)*(n_sift + l - 1)) is solved
// by solve_key_length.
inline KeyRateResult key_rate(const ChannelModel& ch, const ProtocolParams& proto,
                              const SecurityParams& sec, double h_avg) {
  ch.validate();
  proto.validate();
  sec.validate();
  if (!(h_avg >= 0.0 && h_avg <= 1.0))
    throw validation_error("key_rate: h_avg must be in [0,1]");

  KeyRateResult r;
  r.distance_km = ch.distance_km;
  r.h_avg = h_avg;
  const GainQber gm = gain_qber(ch, proto.mu);
  const GainQber gn = gain_qber(ch, proto.nu);
  const GainQber gv = gain_qber(ch, 0.0);
  r.q_mu = gm.gain;
  r.e_mu = gm.qber;
  r.q_nu = gn.gain;
  r.e_nu = gn.qber;
  r.q_vac = gv.gain;

  const DecoyEstimates d =
      decoy_estimates(r.q_mu, r.e_mu, r.q_nu, r.e_nu, r.q_vac, proto.mu, proto.nu);
  r.y1_lower = d.y1_lower;
  r.e1_upper = d.e1_upper;
  r.q1 = d.q1;

  const double pulses = static_cast<double>(proto.pulse_count);
  r.n_sift = pulses * proto.p_signal * r.q_mu * proto.sifting_factor;

  const auto finalize = [&](long long key_len) {
    r.key_len = key_len;
    r.seed_alpha = r.n_sift + static_cast<double>(key_len) - 1.0;
    r.seed_beta = h_avg * r.seed_alpha;
    r.penalty = r.seed_alpha - r.seed_beta;
    r.skr = static_cast<double>(key_len) / pulses;
  };

  if (r.q_mu <= 0.0 || r.n_sift < 1.0 || d.q1 <= 0.0) {
    finalize(0);
    return r;
  }

  const double n1 = r.n_sift * (d.q1 / r.q_mu);
  // single-photon min-entropy proxy; e1 at or past 1/2 certifies nothing
  const double hmin = n1 * (1.0 - binary_entropy(std::min(d.e1_upper, 0.5)));
  const double leak = proto.ec_efficiency * r.n_sift * binary_entropy(r.e_mu);
  const double budget = hmin - leak -
                        2.0 * std::log2(1.0 / (2.0 * (sec.eps_sec - sec.eps_smooth))) -
                        std::log2(2.0 / sec.eps_cor);
  finalize(solve_key_length(budget, 1.0 - h_avg, r.n_sift));
  return r;
}

// Smallest h_avg (to 1e-4) with a positive key at this distance; 1 when even
// a perfect seed yields nothing, 0 when any seed quality works.
inline double critical_h(const ChannelModel& ch, const ProtocolParams& proto,
                         const SecurityParams& sec) {
  const auto positive = [&](double h) { return key_rate(ch, proto, sec, h).key_len > 0; };
  if (!positive(1.0)) return 1.0;
  if (positive(0.0)) return 0.0;
  double lo = 0.0, hi = 1.0;
  while (hi - lo > 1e-4) {
    const double mid = 0.5 * (lo + hi);
    (positive(mid) ? hi : lo) = mid;
  }
  return hi;
}

struct CriticalPoint {
  double distance_km = 0.0;
  double h_critical = 0.0;
};

struct ScanResult {
  std::vector<KeyRateResult> rows;       // sorted by (distance, h_avg)
  std::vector<CriticalPoint> critical;   // one per distance
};

inline ScanResult scan(std::vector<double> h_grid, std::vector<double> distance_grid,
                       const ChannelModel& ch, const ProtocolParams& proto,
                       const SecurityParams& sec) {
  if (h_grid.empty() || distance_grid.empty())
    throw config_error("scan: empty grid", h_grid.empty() ? "h_grid" : "distance_grid");
  std::sort(h_grid.begin(), h_grid.end());
  std::sort(distance_grid.begin(), distance_grid.end());
  ScanResult out;
  for (double dist : distance_grid) {
    ChannelModel at = ch;
    at.distance_km = dist;
    for (double h : h_grid) out.rows.push_back(key_rate(at, proto, sec, h));
    out.critical.push_back({dist, critical_h(at, proto, sec)});
  }
  return out;
}

struct Preset {
  std::string name;
  double h_avg = 0.0;
};

// Measured average min-entropy of common generators.
inline const std::vector<Preset>& table1_presets() {
  static const std::vector<Preset> presets = {
      {"IDQ Quantis-PCIe-40M", 0.990},
      {"MATLAB unifrnd", 0.988},
      {"Random.org", 0.931},
      {"Intel DRNG", 0.930},
  };
  return presets;
}

inline double preset_h_avg(const std::string& name) {
  for (const Preset& p : table1_presets())
    if (p.name == name) return p.h_avg;
  throw validation_error("unknown preset: " + name);
}

}  // namespace seedpa
