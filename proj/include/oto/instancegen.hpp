#pragma once

// Deterministic instance generation: canonical topologies and channel draws.
//
// Randomness comes from std::mt19937_64 (its output sequence is fixed by the
// standard) converted to uniforms by taking the top 53 bits, and to normals
// by the cosine branch of Box-Muller. The distributions of <random> are not
// used because their output is implementation-defined.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "oto/errors.hpp"
#include "oto/model.hpp"

namespace oto {

inline constexpr const char* kRngAlgorithm = "mt19937_64/top53-uniform/box-muller-cos";
inline constexpr double kSpeedOfLight = 299'792'458.0;

enum class Topology { line, diamond, full, random };
enum class ChannelModel { unit, rayleigh, los };

inline std::string to_string(Topology t) {
  switch (t) {
    case Topology::line: return "line";
    case Topology::diamond: return "diamond";
    case Topology::full: return "full";
    case Topology::random: return "random";
  }
  return "?";
}

inline std::string to_string(ChannelModel c) {
  switch (c) {
    case ChannelModel::unit: return "unit";
    case ChannelModel::rayleigh: return "rayleigh";
    case ChannelModel::los: return "los";
  }
  return "?";
}

struct GenSpec {
  Topology topology = Topology::line;
  double edge_probability = 0.5;  // random topology only
  int relays = 1;
  ChannelModel channel = ChannelModel::unit;
  double rayleigh_scale = 1.0;  // E|h|^2
  std::vector<std::vector<double>> distances;  // los only; (N+2)x(N+2) metres
  double frequency_ghz = 60.0;
  double power = 1.0;
  double alpha = 1.0;
  double beta = 0.0;
  std::uint64_t seed = 0;
};

// Nodes evenly spaced on a line: d(i, j) = |i - j| * spacing.
inline std::vector<std::vector<double>> line_distances(int relays, double spacing_m) {
  const int n = relays + 2;
  std::vector<std::vector<double>> d(n, std::vector<double>(n, 0.0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) d[i][j] = std::abs(i - j) * spacing_m;
  return d;
}

// Free-space amplitude gain c / (4 pi d f).
inline double friis_amplitude(double distance_m, double frequency_ghz) {
  return kSpeedOfLight / (4.0 * std::numbers::pi * distance_m * frequency_ghz * 1e9);
}

inline void validate_spec(const GenSpec& s) {
  if (s.relays < 0) throw InvalidInput("relays must be non-negative");
  if (s.topology == Topology::diamond && s.relays != 2) throw InvalidInput("diamond requires relays=2");
  if (s.topology == Topology::random && !(s.edge_probability >= 0.0 && s.edge_probability <= 1.0))
    throw InvalidInput("edge probability must lie in [0, 1]");
  if (s.channel == ChannelModel::rayleigh && !(s.rayleigh_scale > 0.0)) throw InvalidInput("rayleigh scale must be positive");
  if (s.channel == ChannelModel::los) {
    const auto n = static_cast<std::size_t>(s.relays + 2);
    if (s.distances.size() != n) throw InvalidInput("los channel needs an (N+2)x(N+2) distance matrix");
    for (std::size_t i = 0; i < n; ++i) {
      if (s.distances[i].size() != n) throw InvalidInput("los channel needs an (N+2)x(N+2) distance matrix");
      for (std::size_t j = 0; j < n; ++j)
        if (i != j && !(s.distances[i][j] > 0.0)) throw InvalidInput("los distances must be positive");
    }
    if (!(s.frequency_ghz > 0.0)) throw InvalidInput("frequency must be positive");
  }
  if (!(s.power > 0.0)) throw InvalidInput("power must be positive");
  if (!(s.alpha > 0.0)) throw InvalidInput("alpha must be positive");
  if (!(s.beta >= 0.0)) throw InvalidInput("beta must be non-negative");
}

class SeededSource {
 public:
  explicit SeededSource(std::uint64_t seed) : engine_(seed) {}

  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double normal() {
    const double u1 = 1.0 - uniform();  // (0, 1]
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }

 private:
  std::mt19937_64 engine_;
};

inline bool topology_has_link(Topology t, int relays, int from, int to) {
  switch (t) {
    case Topology::line: return to == from + 1;
    case Topology::diamond: return (from == 0 && (to == 1 || to == 2)) || ((from == 1 || from == 2) && to == 3);
    case Topology::full:
    case Topology::random: return from != to;
  }
  (void)relays;
  return false;
}

inline NetworkInstance generate(const GenSpec& s) {
  validate_spec(s);
  const int n = s.relays;
  NetworkInstance inst(n, s.power, s.alpha, s.beta);
  SeededSource rng(s.seed);
  for (int i = 0; i <= n; ++i)
    for (int j = 1; j <= n + 1; ++j) {
      if (!topology_has_link(s.topology, n, i, j)) continue;
      if (s.topology == Topology::random && !(rng.uniform() < s.edge_probability)) continue;
      Complex h{1.0, 0.0};
      switch (s.channel) {
        case ChannelModel::unit: break;
        case ChannelModel::rayleigh: {
          const double sd = std::sqrt(s.rayleigh_scale / 2.0);
          const double re = sd * rng.normal();
          const double im = sd * rng.normal();
          h = {re, im};
          break;
        }
        case ChannelModel::los: h = {friis_amplitude(s.distances[i][j], s.frequency_ghz), 0.0}; break;
      }
      inst.set_h(i, j, h);
    }
  return inst;
}

inline constexpr double kPlatoonFrequencyGhz = 60.0;
inline constexpr double kPlatoonNominalSpacing = 10.0;

// Transmit power for a given nominal transmit SNR. The channel is the exact
// free-space amplitude; the power reference is the amplitude gain at the
// nominal 10 m / 60 GHz hop, so that P |h|^2 = snr * |h(10 m)| at nominal
// spacing (about 4e-3 for snr = 100).
inline double platoon_power(double snr) {
  return snr / friis_amplitude(kPlatoonNominalSpacing, kPlatoonFrequencyGhz);
}

// Vehicles in a line, each hop at the given spacing, line-of-sight at 60 GHz.
inline NetworkInstance platooning_instance(int relays, double snr = 100.0, double spacing_m = kPlatoonNominalSpacing,
                                           double alpha = 1.0, double beta = 1.0) {
  if (!(spacing_m >= 1.0)) throw InvalidInput("platoon spacing must be at least 1 m");
  if (!(snr > 0.0)) throw InvalidInput("snr must be positive");
  GenSpec s;
  s.topology = Topology::line;
  s.relays = relays;
  s.channel = ChannelModel::los;
  s.distances = line_distances(relays, spacing_m);
  s.frequency_ghz = kPlatoonFrequencyGhz;
  s.power = platoon_power(snr);
  s.alpha = alpha;
  s.beta = beta;
  return generate(s);
}

}  // namespace oto
