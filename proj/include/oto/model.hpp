#pragma once

// Network instance, node states, alignment patterns, cuts and the beamformed
// channel of a full-duplex Gaussian 1-2-1 network.
//
// Nodes are numbered 0 (source), 1..N (relays), N+1 (destination). The channel
// matrix has one row per receiver 1..N+1 and one column per transmitter 0..N;
// h(j, i) is the unbeamformed coefficient from node i to node j.

#include <algorithm>
#include <complex>
#include <cstdint>
#include <optional>
#include <queue>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "oto/errors.hpp"

namespace oto {

using Complex = std::complex<double>;
using ChannelMatrix = Eigen::MatrixXcd;

// Directed link from -> to.
struct Link {
  int from = 0;
  int to = 0;

  friend auto operator<=>(const Link&, const Link&) = default;
};

inline std::string to_string(const Link& l) {
  return std::to_string(l.from) + "->" + std::to_string(l.to);
}

class NetworkInstance {
 public:
  NetworkInstance() : NetworkInstance(0, 1.0, 1.0, 0.0) {}

  // All-zero channel with the given parameters.
  NetworkInstance(int num_relays, double power, double alpha, double beta)
      : num_relays_(num_relays), power_(power), alpha_(alpha), beta_(beta) {
    if (num_relays < 0) throw InvalidInput("num_relays must be non-negative");
    channel_ = ChannelMatrix::Zero(num_relays + 1, num_relays + 1);
  }

  NetworkInstance(int num_relays, ChannelMatrix channel, double power, double alpha, double beta)
      : num_relays_(num_relays), channel_(std::move(channel)), power_(power), alpha_(alpha), beta_(beta) {
    if (num_relays < 0) throw InvalidInput("num_relays must be non-negative");
    if (channel_.rows() != num_relays + 1 || channel_.cols() != num_relays + 1)
      throw InvalidInput("channel matrix must be (N+1)x(N+1)");
  }

  int num_relays() const noexcept { return num_relays_; }
  int num_nodes() const noexcept { return num_relays_ + 2; }
  int source() const noexcept { return 0; }
  int destination() const noexcept { return num_relays_ + 1; }
  double power() const noexcept { return power_; }
  double alpha() const noexcept { return alpha_; }
  double beta() const noexcept { return beta_; }
  const ChannelMatrix& channel() const noexcept { return channel_; }

  static bool is_transmitter(int node, int num_relays) { return node >= 0 && node <= num_relays; }
  static bool is_receiver(int node, int num_relays) { return node >= 1 && node <= num_relays + 1; }

  // Coefficient from node `from` to node `to`; zero for pairs outside the matrix.
  Complex h(int to, int from) const {
    if (!is_receiver(to, num_relays_) || !is_transmitter(from, num_relays_)) return {0.0, 0.0};
    return channel_(to - 1, from);
  }
  double gain(int to, int from) const { return std::abs(h(to, from)); }
  bool has_link(int from, int to) const { return from != to && h(to, from) != Complex(0.0, 0.0); }

  // Nonzero off-diagonal links in (from, to) ascending order.
  std::vector<Link> links() const {
    std::vector<Link> out;
    for (int i = 0; i <= num_relays_; ++i)
      for (int j = 1; j <= num_relays_ + 1; ++j)
        if (has_link(i, j)) out.push_back({i, j});
    return out;
  }

  NetworkInstance& set_h(int from, int to, Complex value) {
    if (!is_transmitter(from, num_relays_) || !is_receiver(to, num_relays_))
      throw InvalidInput("link " + std::to_string(from) + "->" + std::to_string(to) + " out of range");
    channel_(to - 1, from) = value;
    return *this;
  }

  NetworkInstance with_power(double p) const {
    auto c = *this;
    c.power_ = p;
    return c;
  }
  NetworkInstance with_alpha(double a) const {
    auto c = *this;
    c.alpha_ = a;
    return c;
  }
  NetworkInstance with_beta(double b) const {
    auto c = *this;
    c.beta_ = b;
    return c;
  }

 private:
  int num_relays_;
  ChannelMatrix channel_;
  double power_;
  double alpha_;
  double beta_;
};

struct Violation {
  std::string invariant;
  std::vector<int> nodes;
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> violations;
  std::vector<std::string> warnings;

  bool ok() const noexcept { return violations.empty(); }
  bool destination_unreachable() const {
    return std::find(warnings.begin(), warnings.end(), "destination unreachable") != warnings.end();
  }
};

// True when a directed path of nonzero links joins source to destination.
inline bool destination_reachable(const NetworkInstance& inst) {
  const int n = inst.num_nodes();
  std::vector<bool> seen(n, false);
  std::queue<int> q;
  q.push(0);
  seen[0] = true;
  while (!q.empty()) {
    int u = q.front();
    q.pop();
    for (int v = 1; v < n; ++v)
      if (!seen[v] && inst.has_link(u, v)) {
        seen[v] = true;
        q.push(v);
      }
  }
  return seen[inst.destination()];
}

inline ValidationReport validate_instance(const NetworkInstance& inst) {
  ValidationReport report;
  auto finite = [](Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); };
  for (int i = 1; i <= inst.num_relays(); ++i)
    if (inst.h(i, i) != Complex(0.0, 0.0))
      report.violations.push_back({"no-self-channel", {i}, "self-channel at node " + std::to_string(i)});
  for (int i = 0; i <= inst.num_relays(); ++i)
    for (int j = 1; j <= inst.destination(); ++j)
      if (!finite(inst.h(j, i)))
        report.violations.push_back({"finite-channel", {i, j}, "non-finite coefficient on link " + to_string(Link{i, j})});
  if (!(inst.power() > 0.0) || !std::isfinite(inst.power()))
    report.violations.push_back({"positive-power", {}, "power must be positive"});
  if (!(inst.alpha() > 0.0) || !std::isfinite(inst.alpha()))
    report.violations.push_back({"positive-alpha", {}, "alpha must be positive"});
  if (!(inst.beta() >= 0.0) || !std::isfinite(inst.beta()))
    report.violations.push_back({"non-negative-beta", {}, "beta must be non-negative"});
  if (!destination_reachable(inst)) report.warnings.push_back("destination unreachable");
  return report;
}

inline void require_valid(const NetworkInstance& inst) {
  auto report = validate_instance(inst);
  if (report.ok()) return;
  std::ostringstream os;
  os << "invalid instance:";
  for (const auto& v : report.violations) os << ' ' << v.message << ';';
  throw InvalidInput(os.str());
}

enum class DegreeMode { undirected, in, out };

// Maximum node degree of the topology graph. The undirected reading counts
// distinct neighbors joined by a nonzero coefficient in either direction.
inline int max_degree(const NetworkInstance& inst, DegreeMode mode = DegreeMode::undirected) {
  const int n = inst.num_nodes();
  int best = 0;
  for (int u = 0; u < n; ++u) {
    int deg = 0;
    for (int v = 0; v < n; ++v) {
      if (u == v) continue;
      bool out = inst.has_link(u, v);
      bool in = inst.has_link(v, u);
      switch (mode) {
        case DegreeMode::undirected: deg += (out || in) ? 1 : 0; break;
        case DegreeMode::in: deg += in ? 1 : 0; break;
        case DegreeMode::out: deg += out ? 1 : 0; break;
      }
    }
    best = std::max(best, deg);
  }
  return best;
}

// Per-node beam directions: tx[i] is the node i beams its transmission to,
// rx[i] the node it points its receive beam at.
struct NodeState {
  std::vector<std::optional<int>> tx;
  std::vector<std::optional<int>> rx;

  static NodeState idle(int num_relays) {
    NodeState s;
    s.tx.assign(num_relays + 2, std::nullopt);
    s.rx.assign(num_relays + 2, std::nullopt);
    return s;
  }

  // Cardinality and range constraints of a legal state.
  bool well_formed(int num_relays) const {
    const int n = num_relays + 2;
    if (static_cast<int>(tx.size()) != n || static_cast<int>(rx.size()) != n) return false;
    if (rx[0] || tx[n - 1]) return false;
    for (int i = 0; i < n; ++i) {
      if (tx[i] && (*tx[i] == i || !NetworkInstance::is_receiver(*tx[i], num_relays))) return false;
      if (rx[i] && (*rx[i] == i || !NetworkInstance::is_transmitter(*rx[i], num_relays))) return false;
    }
    return true;
  }
};

// Set of main-lobe aligned pairs; a partial matching between transmitters and receivers.
class AlignmentPattern {
 public:
  AlignmentPattern() = default;

  explicit AlignmentPattern(std::vector<Link> pairs) : pairs_(std::move(pairs)) {
    std::sort(pairs_.begin(), pairs_.end());
    std::set<int> txs, rxs;
    for (const auto& p : pairs_) {
      if (p.from == p.to) throw InvalidPattern("pattern pair " + to_string(p) + " is a self-loop");
      if (p.from < 0 || p.to < 1) throw InvalidPattern("pattern pair " + to_string(p) + " out of range");
      if (!txs.insert(p.from).second)
        throw InvalidPattern("node " + std::to_string(p.from) + " transmits twice in pattern");
      if (!rxs.insert(p.to).second)
        throw InvalidPattern("node " + std::to_string(p.to) + " receives twice in pattern");
    }
  }

  const std::vector<Link>& pairs() const noexcept { return pairs_; }
  std::size_t size() const noexcept { return pairs_.size(); }
  bool empty() const noexcept { return pairs_.empty(); }
  bool contains(const Link& l) const { return std::binary_search(pairs_.begin(), pairs_.end(), l); }

  // Receiver node i is aligned with, if any.
  std::optional<int> target_of(int from) const {
    for (const auto& p : pairs_)
      if (p.from == from) return p.to;
    return std::nullopt;
  }

  friend auto operator<=>(const AlignmentPattern&, const AlignmentPattern&) = default;

 private:
  std::vector<Link> pairs_;  // sorted by (from, to)
};

inline std::string to_string(const AlignmentPattern& p) {
  std::string s = "{";
  for (std::size_t k = 0; k < p.size(); ++k) {
    if (k) s += ",";
    s += to_string(p.pairs()[k]);
  }
  return s + "}";
}

// Throws InvalidPattern when a pair is out of range or uses a zero link.
inline void check_pattern(const NetworkInstance& inst, const AlignmentPattern& pattern) {
  for (const auto& p : pattern.pairs()) {
    if (!NetworkInstance::is_transmitter(p.from, inst.num_relays()) ||
        !NetworkInstance::is_receiver(p.to, inst.num_relays()))
      throw InvalidPattern("pattern pair " + to_string(p) + " out of range");
    if (!inst.has_link(p.from, p.to)) throw InvalidPattern("pattern pair " + to_string(p) + " uses a zero link");
  }
}

// Omega: the source plus the relays whose bit is set in relay_mask (bit r-1 for relay r).
struct Cut {
  int num_relays = 0;
  std::uint32_t relay_mask = 0;

  bool contains(int node) const {
    if (node == 0) return true;
    if (node >= 1 && node <= num_relays) return (relay_mask >> (node - 1)) & 1u;
    return false;
  }
  std::vector<int> omega() const {
    std::vector<int> out;
    for (int v = 0; v <= num_relays + 1; ++v)
      if (contains(v)) out.push_back(v);
    return out;
  }
  std::vector<int> complement() const {
    std::vector<int> out;
    for (int v = 0; v <= num_relays + 1; ++v)
      if (!contains(v)) out.push_back(v);
    return out;
  }
  bool crosses(const Link& l) const { return contains(l.from) && !contains(l.to); }

  friend auto operator<=>(const Cut&, const Cut&) = default;
};

inline std::string to_string(const Cut& c) {
  std::string s = "{";
  auto om = c.omega();
  for (std::size_t k = 0; k < om.size(); ++k) {
    if (k) s += ",";
    s += std::to_string(om[k]);
  }
  return s + "}";
}

// Beamformed channel: alpha*h on aligned pairs, beta*h everywhere else.
inline ChannelMatrix effective_channel(const NetworkInstance& inst, const AlignmentPattern& pattern) {
  check_pattern(inst, pattern);
  ChannelMatrix out = inst.beta() * inst.channel();
  for (const auto& p : pattern.pairs()) out(p.to - 1, p.from) = inst.alpha() * inst.h(p.to, p.from);
  return out;
}

// Same, evaluated directly from per-node beam directions.
inline ChannelMatrix effective_channel(const NetworkInstance& inst, const NodeState& state) {
  const int n = inst.num_relays();
  ChannelMatrix out(n + 1, n + 1);
  for (int j = 1; j <= n + 1; ++j)
    for (int i = 0; i <= n; ++i) {
      bool aligned = state.tx[i] == j && state.rx[j] == i;
      out(j - 1, i) = (aligned ? inst.alpha() : inst.beta()) * inst.h(j, i);
    }
  return out;
}

}  // namespace oto
