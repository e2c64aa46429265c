#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <vector>

#include "oto/oto.hpp"

namespace oto::test {

inline NetworkInstance single_link(double power = 1.0, double alpha = 2.0, double beta = 0.0, Complex h = 1.0) {
  NetworkInstance inst(0, power, alpha, beta);
  inst.set_h(0, 1, h);
  return inst;
}

inline NetworkInstance unit_line(int relays, double power = 1.0, double alpha = 1.0, double beta = 0.0) {
  GenSpec s;
  s.topology = Topology::line;
  s.relays = relays;
  s.channel = ChannelModel::unit;
  s.power = power;
  s.alpha = alpha;
  s.beta = beta;
  return generate(s);
}

inline NetworkInstance unit_diamond(double power = 1.0, double alpha = 1.0, double beta = 0.0) {
  GenSpec s;
  s.topology = Topology::diamond;
  s.relays = 2;
  s.channel = ChannelModel::unit;
  s.power = power;
  s.alpha = alpha;
  s.beta = beta;
  return generate(s);
}

inline NetworkInstance rayleigh(Topology topo, int relays, std::uint64_t seed, double power = 1.0, double alpha = 1.0,
                                double beta = 0.0, double edge_prob = 0.5) {
  GenSpec s;
  s.topology = topo;
  s.relays = relays;
  s.channel = ChannelModel::rayleigh;
  s.power = power;
  s.alpha = alpha;
  s.beta = beta;
  s.seed = seed;
  s.edge_probability = edge_prob;
  return generate(s);
}

// Same complex gains as the "fixed2" case of tests/oracle/capacity_oracle.py.
inline NetworkInstance fixed_full_two_relays() {
  NetworkInstance inst(2, 2.0, 3.0, 0.4);
  inst.set_h(0, 1, {0.9, 0.2}).set_h(0, 2, {0.3, -0.5}).set_h(0, 3, {0.0, 0.1});
  inst.set_h(1, 2, {0.4, 0.0}).set_h(1, 3, {1.1, -0.3});
  inst.set_h(2, 1, {-0.6, 0.1}).set_h(2, 3, {0.7, 0.7});
  return inst;
}

// Same as the "fixed1" oracle case.
inline NetworkInstance fixed_full_one_relay() {
  NetworkInstance inst(1, 5.0, 2.0, 0.3);
  inst.set_h(0, 1, {1.2, -0.4}).set_h(0, 2, {0.25, 0.1}).set_h(1, 2, {0.8, 0.5});
  return inst;
}

// Relabels relays by perm (perm[r-1] is the new label of relay r).
inline NetworkInstance permute_relays(const NetworkInstance& inst, const std::vector<int>& perm) {
  const int n = inst.num_relays();
  auto map = [&](int v) { return (v >= 1 && v <= n) ? perm[v - 1] : v; };
  NetworkInstance out(n, inst.power(), inst.alpha(), inst.beta());
  for (const auto& e : inst.links()) out.set_h(map(e.from), map(e.to), inst.h(e.to, e.from));
  return out;
}

}  // namespace oto::test
