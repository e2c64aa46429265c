#pragma once

// Approximate capacities of the imperfect and ideal models and the rate of
// treating side-lobe leakage as noise, plus the per-link rates behind them.

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "oto/enumeration.hpp"
#include "oto/errors.hpp"
#include "oto/matrices.hpp"
#include "oto/model.hpp"
#include "oto/optimize.hpp"

namespace oto {

inline void require_link(const NetworkInstance& inst, int i, int j) {
  if (!inst.has_link(i, j)) throw UndefinedLink("no link " + to_string(Link{i, j}));
}

// Transmitters other than i whose side lobes reach receiver j.
inline std::vector<int> interferers(const NetworkInstance& inst, int i, int j) {
  std::vector<int> out;
  for (int m = 0; m <= inst.num_relays(); ++m)
    if (m != i && m != j && inst.has_link(m, j)) out.push_back(m);
  return out;
}

// log2(1 + P alpha^2 |h_ji|^2)
inline double link_rate_ideal(const NetworkInstance& inst, int i, int j) {
  require_link(inst, i, j);
  const double g = inst.gain(j, i);
  return std::log2(1.0 + inst.power() * inst.alpha() * inst.alpha() * g * g);
}

// Main-lobe SINR rate with every other transmitter leaking beta into j.
inline double link_rate_tsn(const NetworkInstance& inst, int i, int j) {
  require_link(inst, i, j);
  const double p = inst.power();
  const double b2 = inst.beta() * inst.beta();
  double noise = 1.0;
  for (int m : interferers(inst, i, j)) noise += b2 * p * std::norm(inst.h(j, m));
  const double g = inst.gain(j, i);
  return std::log2(1.0 + inst.alpha() * inst.alpha() * p * g * g / noise);
}

// log2(1 + max_m beta^2 P |h_jm|^2) over the same interferer set; 0 if empty.
inline double link_rate_leakage(const NetworkInstance& inst, int i, int j) {
  require_link(inst, i, j);
  double worst = 0.0;
  for (int m : interferers(inst, i, j)) worst = std::max(worst, std::norm(inst.h(j, m)));
  return std::log2(1.0 + inst.beta() * inst.beta() * inst.power() * worst);
}

struct LinkRates {
  EdgeRates ideal;
  EdgeRates tsn;
  EdgeRates leakage;
};

inline LinkRates link_rates(const NetworkInstance& inst) {
  LinkRates r;
  for (const auto& e : inst.links()) {
    r.ideal[e] = link_rate_ideal(inst, e.from, e.to);
    r.tsn[e] = link_rate_tsn(inst, e.from, e.to);
    r.leakage[e] = link_rate_leakage(inst, e.from, e.to);
  }
  return r;
}

enum class ModelTag { imperfect, ideal, tsn };

inline std::string to_string(ModelTag m) {
  switch (m) {
    case ModelTag::imperfect: return "imperfect";
    case ModelTag::ideal: return "ideal";
    case ModelTag::tsn: return "tsn";
  }
  return "?";
}

enum class LpMethod { pattern_lp, edge_lp };

struct CapacityResult {
  double value = 0.0;
  std::vector<WeightedPattern> schedule;  // positive weights only, canonical pattern order
  ModelTag model = ModelTag::imperfect;
  std::vector<double> per_cut_values;  // indexed like enumerate_cuts
  LpCertificate certificate;
};

struct CapacityOptions {
  EnumerationLimits limits;
  // Added to every imperfect cut value before solving. Only for exercising
  // the theorem-violation path in tests; leave at zero.
  double debug_value_offset = 0.0;
};

// V(cut, pattern) = log2 det(I + P H_{s,Omega} H_{s,Omega}^dagger).
inline MaxMinProblem imperfect_value_table(const NetworkInstance& inst, const StateSpace& space) {
  const auto& cuts = space.cuts();
  const auto& pats = space.patterns();
  MaxMinProblem prob;
  prob.values.resize(static_cast<Eigen::Index>(cuts.size()), static_cast<Eigen::Index>(pats.size()));
  for (std::size_t s = 0; s < pats.size(); ++s)
    for (std::size_t k = 0; k < cuts.size(); ++k)
      prob.values(k, s) = log_det_capacity(cut_state_matrix(inst, pats[s], cuts[k]), inst.power());
  return prob;
}

// V(cut, pattern) = sum of rates over aligned pairs crossing the cut.
inline MaxMinProblem link_value_table(const StateSpace& space, const EdgeRates& rates) {
  const auto& cuts = space.cuts();
  const auto& pats = space.patterns();
  MaxMinProblem prob;
  prob.values = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(cuts.size()), static_cast<Eigen::Index>(pats.size()));
  for (std::size_t s = 0; s < pats.size(); ++s)
    for (const auto& p : pats[s].pairs())
      for (std::size_t k = 0; k < cuts.size(); ++k)
        if (cuts[k].crosses(p)) prob.values(k, s) += rates.at(p);
  return prob;
}

namespace detail {

inline CapacityResult result_from_table(const MaxMinProblem& prob, const StateSpace& space, ModelTag tag) {
  const Schedule sched = solve_maxmin(prob);
  CapacityResult r;
  r.model = tag;
  r.certificate = sched.certificate;
  for (std::size_t s = 0; s < sched.weights.size(); ++s)
    if (sched.weights[s] > 0.0) r.schedule.push_back({space.patterns()[s], sched.weights[s]});
  Eigen::Map<const Eigen::VectorXd> w(sched.weights.data(), static_cast<Eigen::Index>(sched.weights.size()));
  const Eigen::VectorXd per_cut = prob.values * w;
  r.per_cut_values.assign(per_cut.data(), per_cut.data() + per_cut.size());
  r.value = per_cut.minCoeff();
  return r;
}

inline CapacityResult link_capacity(const NetworkInstance& inst, const EdgeRates& rates, LpMethod method,
                                    ModelTag tag, const EnumerationLimits& limits) {
  require_valid(inst);
  if (method == LpMethod::pattern_lp) {
    const StateSpace space(inst, limits);
    return result_from_table(link_value_table(space, rates), space, tag);
  }
  const EdgeLpResult lp = solve_edge_lp(inst, rates, limits);
  CapacityResult r;
  r.model = tag;
  r.certificate = lp.certificate;
  r.schedule = decompose_edge_fractions(lp.fractions, inst.num_relays());
  const auto cuts = enumerate_cuts(inst, limits);
  r.value = std::numeric_limits<double>::infinity();
  for (const auto& cut : cuts) {
    double acc = 0.0;
    for (const auto& wp : r.schedule)
      for (const auto& p : wp.pattern.pairs())
        if (cut.crosses(p)) acc += wp.weight * rates.at(p);
    r.per_cut_values.push_back(acc);
    r.value = std::min(r.value, acc);
  }
  return r;
}

}  // namespace detail

// Approximate capacity C_cs,iid of the imperfect model.
inline CapacityResult capacity_imperfect(const NetworkInstance& inst, const CapacityOptions& opt = {}) {
  require_valid(inst);
  const StateSpace space(inst, opt.limits);
  MaxMinProblem prob = imperfect_value_table(inst, space);
  if (opt.debug_value_offset != 0.0) prob.values.array() += opt.debug_value_offset;
  return detail::result_from_table(prob, space, ModelTag::imperfect);
}

// Approximate capacity C_ideal of the ideal model; uses alpha only.
inline CapacityResult capacity_ideal(const NetworkInstance& inst, LpMethod method = LpMethod::pattern_lp,
                                     const EnumerationLimits& limits = {}) {
  require_valid(inst);
  return detail::link_capacity(inst, link_rates(inst).ideal, method, ModelTag::ideal, limits);
}

// Rate R_TSN achieved by decoding main lobes and treating side lobes as noise.
inline CapacityResult rate_tsn(const NetworkInstance& inst, LpMethod method = LpMethod::pattern_lp,
                               const EnumerationLimits& limits = {}) {
  require_valid(inst);
  return detail::link_capacity(inst, link_rates(inst).tsn, method, ModelTag::tsn, limits);
}

inline CapacityResult capacity(const NetworkInstance& inst, ModelTag model, const CapacityOptions& opt = {},
                               LpMethod method = LpMethod::pattern_lp) {
  switch (model) {
    case ModelTag::imperfect: return capacity_imperfect(inst, opt);
    case ModelTag::ideal: return capacity_ideal(inst, method, opt.limits);
    case ModelTag::tsn: return rate_tsn(inst, method, opt.limits);
  }
  throw InvalidInput("unknown model");
}

}  // namespace oto
