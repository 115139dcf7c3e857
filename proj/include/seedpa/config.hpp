#pragma once

// Plain key=value configuration for the simulator. Parsing is strict:
// unknown keys are errors, because a typo in a physics parameter silently
// corrupts a whole study.

#include "seedpa/decoy_bb84.hpp"
#include "seedpa/errors.hpp"
#include "seedpa/io.hpp"

#include <cmath>
#include <cstdint>
#include <string>
#include <string_view>

namespace seedpa {

struct SimConfig {
  ChannelModel channel;
  ProtocolParams protocol;
  SecurityParams security;

  void validate() const {
    channel.validate();
    protocol.validate();
    security.validate();
  }
};

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

inline double parse_number(const std::string& key, std::string_view value) {
  const std::string v(value);
  std::size_t used = 0;
  double out = 0.0;
  try {
    out = std::stod(v, &used);
  } catch (const std::exception&) {
    throw config_error("config: bad numeric value for '" + key + "': " + v, key);
  }
  if (used != v.size() || !std::isfinite(out))
    throw config_error("config: bad numeric value for '" + key + "': " + v, key);
  return out;
}

inline std::uint64_t parse_count(const std::string& key, std::string_view value) {
  const double v = parse_number(key, value);
  if (!(v >= 1.0 && v <= 9e18 && v == std::floor(v)))
    throw config_error("config: '" + key + "' must be a positive integer", key);
  return static_cast<std::uint64_t>(v);
}

}  // namespace detail

inline void apply_config_entry(SimConfig& c, const std::string& key, std::string_view value) {
  const auto num = [&] { return detail::parse_number(key, value); };
  if (key == "attenuation") c.channel.attenuation = num();
  else if (key == "distance_km") c.channel.distance_km = num();
  else if (key == "detector_efficiency") c.channel.detector_efficiency = num();
  else if (key == "dark_count_prob") c.channel.dark_count_prob = num();
  else if (key == "misalignment") c.channel.misalignment = num();
  else if (key == "mu") c.protocol.mu = num();
  else if (key == "nu") c.protocol.nu = num();
  else if (key == "pulse_count") c.protocol.pulse_count = detail::parse_count(key, value);
  else if (key == "p_signal") c.protocol.p_signal = num();
  else if (key == "p_weak") c.protocol.p_weak = num();
  else if (key == "p_vacuum") c.protocol.p_vacuum = num();
  else if (key == "sifting_factor") c.protocol.sifting_factor = num();
  else if (key == "ec_efficiency") c.protocol.ec_efficiency = num();
  else if (key == "eps_smooth") c.security.eps_smooth = num();
  else if (key == "eps_sec") c.security.eps_sec = num();
  else if (key == "eps_cor") c.security.eps_cor = num();
  else throw config_error("config: unknown key '" + key + "'", key);
}

// "key = value" pairs, one per line; blank lines and '#' comments ignored.
inline SimConfig parse_config_text(std::string_view text) {
  SimConfig c;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t eol = std::min(text.find('\n', pos), text.size());
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    if (const std::size_t hash = line.find('#'); hash != std::string_view::npos)
      line = line.substr(0, hash);
    line = detail::trim(line);
    if (line.empty()) continue;
    const std::size_t eq = line.find('=');
    if (eq == std::string_view::npos)
      throw config_error("config: expected key=value, got '" + std::string(line) + "'");
    const std::string key(detail::trim(line.substr(0, eq)));
    const std::string_view value = detail::trim(line.substr(eq + 1));
    if (key.empty()) throw config_error("config: empty key");
    apply_config_entry(c, key, value);
  }
  c.validate();
  return c;
}

inline SimConfig load_config(const std::string& path) {
  const std::vector<std::uint8_t> bytes = read_file_bytes(path);
  return parse_config_text(
      std::string_view(reinterpret_cast<const char*>(bytes.data()), bytes.size()));
}

}  // namespace seedpa
