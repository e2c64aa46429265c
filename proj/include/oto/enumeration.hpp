#pragma once

// Cuts, alignment patterns and (for cross-checking) raw node-state assignments.

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "oto/errors.hpp"
#include "oto/model.hpp"

namespace oto {

struct EnumerationLimits {
  int max_pattern_relays = 5;
  int max_cut_relays = 8;
  std::size_t max_patterns = 2'000'000;
  int max_raw_state_relays = 2;
};

// All 2^N cuts, relay bitmask ascending.
inline std::vector<Cut> enumerate_cuts(const NetworkInstance& inst, const EnumerationLimits& limits = {}) {
  const int n = inst.num_relays();
  if (n > limits.max_cut_relays || n > 30)
    throw CapacityLimit("cut enumeration: N=" + std::to_string(n) + " exceeds max relays", limits.max_cut_relays);
  std::vector<Cut> cuts;
  cuts.reserve(std::size_t{1} << n);
  for (std::uint32_t m = 0; m < (std::uint32_t{1} << n); ++m) cuts.push_back({n, m});
  return cuts;
}

namespace detail {

inline void extend_matchings(const NetworkInstance& inst, int tx, std::vector<bool>& rx_used, std::vector<Link>& cur,
                             std::vector<AlignmentPattern>& out, std::size_t cap) {
  if (tx > inst.num_relays()) {
    if (out.size() >= cap) throw CapacityLimit("alignment pattern enumeration exceeds max patterns", static_cast<long long>(cap));
    out.emplace_back(cur);
    return;
  }
  extend_matchings(inst, tx + 1, rx_used, cur, out, cap);
  for (int rx = 1; rx <= inst.destination(); ++rx) {
    if (rx_used[rx] || !inst.has_link(tx, rx)) continue;
    rx_used[rx] = true;
    cur.push_back({tx, rx});
    extend_matchings(inst, tx + 1, rx_used, cur, out, cap);
    cur.pop_back();
    rx_used[rx] = false;
  }
}

}  // namespace detail

// Every partial matching over nonzero links, empty pattern first, lexicographic order.
inline std::vector<AlignmentPattern> enumerate_alignment_patterns(const NetworkInstance& inst,
                                                                  const EnumerationLimits& limits = {}) {
  if (inst.num_relays() > limits.max_pattern_relays)
    throw CapacityLimit("pattern enumeration: N=" + std::to_string(inst.num_relays()) + " exceeds max relays",
                        limits.max_pattern_relays);
  std::vector<AlignmentPattern> out;
  std::vector<bool> rx_used(inst.num_nodes(), false);
  std::vector<Link> cur;
  detail::extend_matchings(inst, 0, rx_used, cur, out, limits.max_patterns);
  std::sort(out.begin(), out.end());
  return out;
}

// Every assignment of beam directions permitted by the per-node cardinality
// rules, ignoring whether the pointed-at link exists. Oracle scale only.
inline std::vector<NodeState> enumerate_raw_states(const NetworkInstance& inst, const EnumerationLimits& limits = {}) {
  const int n = inst.num_relays();
  if (n > limits.max_raw_state_relays)
    throw CapacityLimit("raw state enumeration: N=" + std::to_string(n) + " exceeds oracle cap",
                        limits.max_raw_state_relays);
  const int nodes = n + 2;
  // options[k] lists the choices for slot k; slots are (tx of node 0.., rx of node 0..).
  std::vector<std::vector<std::optional<int>>> options(2 * nodes);
  for (int i = 0; i < nodes; ++i) {
    options[i].push_back(std::nullopt);
    if (i != nodes - 1)
      for (int j = 1; j < nodes; ++j)
        if (j != i) options[i].push_back(j);
    options[nodes + i].push_back(std::nullopt);
    if (i != 0)
      for (int j = 0; j < nodes - 1; ++j)
        if (j != i) options[nodes + i].push_back(j);
  }
  std::vector<NodeState> out;
  std::vector<std::size_t> idx(options.size(), 0);
  while (true) {
    NodeState s = NodeState::idle(n);
    for (int i = 0; i < nodes; ++i) {
      s.tx[i] = options[i][idx[i]];
      s.rx[i] = options[nodes + i][idx[nodes + i]];
    }
    out.push_back(std::move(s));
    std::size_t k = 0;
    while (k < idx.size() && ++idx[k] == options[k].size()) idx[k++] = 0;
    if (k == idx.size()) break;
  }
  return out;
}

inline AlignmentPattern pattern_of_state(const NodeState& state, const NetworkInstance& inst) {
  std::vector<Link> pairs;
  for (int i = 0; i <= inst.num_relays(); ++i) {
    if (!state.tx[i]) continue;
    int j = *state.tx[i];
    if (state.rx[j] == i && inst.has_link(i, j)) pairs.push_back({i, j});
  }
  return AlignmentPattern(std::move(pairs));
}

// Patterns and cuts of one instance with index lookup in both directions.
class StateSpace {
 public:
  explicit StateSpace(const NetworkInstance& inst, const EnumerationLimits& limits = {})
      : patterns_(enumerate_alignment_patterns(inst, limits)), cuts_(enumerate_cuts(inst, limits)) {
    for (std::size_t k = 0; k < patterns_.size(); ++k) pattern_index_.emplace(patterns_[k], k);
  }

  const std::vector<AlignmentPattern>& patterns() const noexcept { return patterns_; }
  const std::vector<Cut>& cuts() const noexcept { return cuts_; }
  std::size_t index_of(const AlignmentPattern& p) const {
    auto it = pattern_index_.find(p);
    if (it == pattern_index_.end()) throw InvalidPattern("pattern " + to_string(p) + " not in state space");
    return it->second;
  }
  // Cut order is relay-mask ascending, so the mask is the index.
  std::size_t index_of(const Cut& c) const { return c.relay_mask; }

 private:
  std::vector<AlignmentPattern> patterns_;
  std::vector<Cut> cuts_;
  std::map<AlignmentPattern, std::size_t> pattern_index_;
};

}  // namespace oto
