#pragma once

// Max-min scheduling LPs and the decomposition of edge activation fractions
// into a schedule over alignment patterns.

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>
#include <vector>

#include <Eigen/Dense>

#include "oto/enumeration.hpp"
#include "oto/errors.hpp"
#include "oto/model.hpp"
#include "oto/simplex.hpp"

namespace oto {

inline constexpr double kWeightFloor = 1e-12;
inline constexpr double kBudgetTolerance = 1e-9;

// values(cut, pattern) = bits delivered across the cut while the pattern is active.
struct MaxMinProblem {
  Eigen::MatrixXd values;
};

struct LpCertificate {
  double dual_bound = 0.0;  // upper bound on the optimum proven by the dual solution
  double duality_gap = 0.0;
  double primal_residual = 0.0;
  int iterations = 0;
};

struct Schedule {
  std::vector<double> weights;  // one per column of the problem
  double value = 0.0;
  LpCertificate certificate;

  std::size_t support_size() const {
    return static_cast<std::size_t>(std::count_if(weights.begin(), weights.end(), [](double w) { return w > 0.0; }));
  }
};

// min over cuts of sum_s weights[s] * values(cut, s).
inline double maxmin_value(const Eigen::MatrixXd& values, const std::vector<double>& weights) {
  Eigen::Map<const Eigen::VectorXd> w(weights.data(), static_cast<Eigen::Index>(weights.size()));
  return (values * w).minCoeff();
}

// max_{lambda in simplex} min_cut sum_s lambda_s V(cut, s).
inline Schedule solve_maxmin(const MaxMinProblem& problem) {
  const auto& v = problem.values;
  if (v.rows() == 0 || v.cols() == 0) throw InvalidInput("max-min problem has an empty value table");
  if (!v.allFinite()) throw InvalidInput("max-min value table has non-finite entries");
  if ((v.array() < 0.0).any()) throw InvalidInput("max-min value table has negative entries");

  const Eigen::Index cuts = v.rows();
  const Eigen::Index patterns = v.cols();
  // Variables: t, lambda_1..lambda_S. The mass row is an inequality: values are
  // non-negative, so spare mass never lowers the objective.
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(cuts + 1, patterns + 1);
  a.col(0).head(cuts).setOnes();
  a.block(0, 1, cuts, patterns) = -v;
  a.row(cuts).tail(patterns).setOnes();
  Eigen::VectorXd b = Eigen::VectorXd::Zero(cuts + 1);
  b(cuts) = 1.0;
  Eigen::VectorXd c = Eigen::VectorXd::Zero(patterns + 1);
  c(0) = 1.0;

  const LpSolution lp = simplex_maximize(a, b, c);

  Schedule s;
  s.weights.assign(lp.x.begin() + 1, lp.x.end());
  for (auto& w : s.weights)
    if (w < kWeightFloor) w = 0.0;
  double mass = 0.0;
  for (double w : s.weights) mass += w;
  if (mass > 0.0) {
    for (auto& w : s.weights) w /= mass;
  } else {
    s.weights[0] = 1.0;
  }
  s.value = maxmin_value(v, s.weights);

  // Dual certificate: any distribution over cuts bounds the optimum by its best column.
  double ysum = 0.0;
  for (Eigen::Index k = 0; k < cuts; ++k) ysum += lp.duals[k];
  double bound = std::numeric_limits<double>::infinity();
  if (ysum > 0.0) {
    Eigen::VectorXd y(cuts);
    for (Eigen::Index k = 0; k < cuts; ++k) y(k) = lp.duals[k] / ysum;
    bound = (v.transpose() * y).maxCoeff();
  }
  double total = 0.0;
  for (double w : s.weights) total += w;
  s.certificate = {bound, bound - s.value, std::abs(total - 1.0), lp.iterations};
  if (!(s.certificate.duality_gap <= 1e-7 * std::max(1.0, s.value))) {
    std::ostringstream os;
    os << "max-min LP did not converge: value " << s.value << ", dual bound " << bound << ", iterations "
       << lp.iterations;
    throw NumericalFailure(os.str());
  }
  return s;
}

using EdgeRates = std::map<Link, double>;
using EdgeFractions = std::map<Link, double>;

struct EdgeLpResult {
  double value = 0.0;
  EdgeFractions fractions;
  LpCertificate certificate;
};

// min over cuts of the rate-weighted activation crossing the cut.
inline double edge_cut_value(const Cut& cut, const EdgeRates& rates, const EdgeFractions& x) {
  double acc = 0.0;
  for (const auto& [e, r] : rates)
    if (cut.crosses(e)) {
      auto it = x.find(e);
      if (it != x.end()) acc += it->second * r;
    }
  return acc;
}

// max t s.t. every cut carries at least t, with each node transmitting and
// receiving for at most unit time.
inline EdgeLpResult solve_edge_lp(const NetworkInstance& inst, const EdgeRates& rates,
                                  const EnumerationLimits& limits = {}) {
  for (const auto& [e, r] : rates) {
    if (!inst.has_link(e.from, e.to)) throw UndefinedLink("edge LP rate on zero link " + to_string(e));
    if (!(r >= 0.0) || !std::isfinite(r)) throw InvalidInput("edge LP rate on " + to_string(e) + " must be finite and >= 0");
  }
  const auto cuts = enumerate_cuts(inst, limits);
  std::vector<Link> edges;
  for (const auto& kv : rates) edges.push_back(kv.first);
  const Eigen::Index ne = static_cast<Eigen::Index>(edges.size());
  const Eigen::Index nc = static_cast<Eigen::Index>(cuts.size());
  const int n = inst.num_relays();
  // Rows: cuts, transmit budgets of nodes 0..N, receive budgets of nodes 1..N+1.
  const Eigen::Index rows = nc + 2 * (n + 1);
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(rows, ne + 1);
  Eigen::VectorXd b = Eigen::VectorXd::Zero(rows);
  for (Eigen::Index k = 0; k < nc; ++k) {
    a(k, 0) = 1.0;
    for (Eigen::Index e = 0; e < ne; ++e)
      if (cuts[k].crosses(edges[e])) a(k, e + 1) = -rates.at(edges[e]);
  }
  for (Eigen::Index e = 0; e < ne; ++e) {
    a(nc + edges[e].from, e + 1) = 1.0;
    a(nc + (n + 1) + (edges[e].to - 1), e + 1) = 1.0;
  }
  b.tail(2 * (n + 1)).setOnes();
  Eigen::VectorXd c = Eigen::VectorXd::Zero(ne + 1);
  c(0) = 1.0;

  const LpSolution lp = simplex_maximize(a, b, c);
  EdgeLpResult res;
  for (Eigen::Index e = 0; e < ne; ++e) {
    double x = lp.x[e + 1];
    res.fractions[edges[e]] = x < kWeightFloor ? 0.0 : x;
  }
  res.value = std::numeric_limits<double>::infinity();
  for (const auto& cut : cuts) res.value = std::min(res.value, edge_cut_value(cut, rates, res.fractions));
  const double bound = lp.dual_objective;
  res.certificate = {bound, bound - res.value, lp.dual_infeasibility, lp.iterations};
  if (!(std::abs(res.certificate.duality_gap) <= 1e-7 * std::max(1.0, res.value)) || lp.dual_infeasibility > 1e-7) {
    std::ostringstream os;
    os << "edge LP did not converge: value " << res.value << ", dual bound " << bound << ", dual infeasibility "
       << lp.dual_infeasibility;
    throw NumericalFailure(os.str());
  }
  return res;
}

struct WeightedPattern {
  AlignmentPattern pattern;
  double weight = 0.0;
};

namespace detail {

// Maximum-weight perfect assignment on a square integer weight matrix
// (Hungarian method, potentials form). Returns row -> column.
inline std::vector<int> max_weight_assignment(const std::vector<std::vector<long long>>& w) {
  const int n = static_cast<int>(w.size());
  const long long inf = std::numeric_limits<long long>::max() / 4;
  std::vector<long long> u(n + 1, 0), v(n + 1, 0);
  std::vector<int> p(n + 1, 0), way(n + 1, 0);
  for (int i = 1; i <= n; ++i) {
    p[0] = i;
    int j0 = 0;
    std::vector<long long> minv(n + 1, inf);
    std::vector<bool> used(n + 1, false);
    do {
      used[j0] = true;
      const int i0 = p[j0];
      long long delta = inf;
      int j1 = 0;
      for (int j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const long long cur = -w[i0 - 1][j - 1] - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= n; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const int j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0);
  }
  std::vector<int> row_to_col(n, -1);
  for (int j = 1; j <= n; ++j)
    if (p[j]) row_to_col[p[j] - 1] = j - 1;
  return row_to_col;
}

}  // namespace detail

// Writes substochastic edge fractions as a convex combination of partial
// matchings. Each step peels a matching that covers every vertex whose residual
// load equals the residual mass, so every step either empties an edge or makes
// a new vertex tight. Leftover mass goes to the empty pattern.
inline std::vector<WeightedPattern> decompose_edge_fractions(const EdgeFractions& x, int num_relays) {
  const int n = num_relays + 1;  // transmitters 0..N, receivers 1..N+1
  std::vector<std::vector<double>> res(n, std::vector<double>(n, 0.0));
  for (const auto& [e, f] : x) {
    if (e.from == e.to || !NetworkInstance::is_transmitter(e.from, num_relays) ||
        !NetworkInstance::is_receiver(e.to, num_relays))
      throw InvalidInput("edge fraction on invalid link " + to_string(e));
    if (!(f >= -kWeightFloor) || !std::isfinite(f)) throw InvalidInput("edge fraction on " + to_string(e) + " is negative");
    res[e.from][e.to - 1] = std::max(0.0, f);
  }
  auto row_load = [&](int r) {
    double s = 0.0;
    for (int c = 0; c < n; ++c) s += res[r][c];
    return s;
  };
  auto col_load = [&](int c) {
    double s = 0.0;
    for (int r = 0; r < n; ++r) s += res[r][c];
    return s;
  };
  double max_load = 0.0;
  for (int k = 0; k < n; ++k) max_load = std::max({max_load, row_load(k), col_load(k)});
  if (max_load > 1.0 + kBudgetTolerance) {
    std::ostringstream os;
    os << "edge fractions violate a node budget (load " << max_load << ")";
    throw InvalidInput(os.str());
  }

  std::map<AlignmentPattern, double> acc;
  double mass = std::max(1.0, max_load);
  const double tight_tol = 1e-10;
  const long long tight_weight = n + 1;
  int guard = 0;
  const int max_steps = 4 * n * n + 4 * n + 8;
  while (mass > kWeightFloor) {
    bool any = false;
    for (int r = 0; r < n && !any; ++r)
      for (int c = 0; c < n; ++c)
        if (res[r][c] > kWeightFloor) any = true;
    if (!any) break;
    if (++guard > max_steps) throw NumericalFailure("edge fraction decomposition did not terminate");

    std::vector<double> rl(n), cl(n);
    for (int k = 0; k < n; ++k) {
      rl[k] = row_load(k);
      cl[k] = col_load(k);
    }
    std::vector<std::vector<long long>> w(n, std::vector<long long>(n, 0));
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c)
        if (res[r][c] > kWeightFloor)
          w[r][c] = 1 + tight_weight * ((rl[r] >= mass - tight_tol) + (cl[c] >= mass - tight_tol));
    const auto assign = detail::max_weight_assignment(w);

    std::vector<bool> row_cov(n, false), col_cov(n, false);
    std::vector<Link> pairs;
    double step = mass;
    for (int r = 0; r < n; ++r) {
      const int c = assign[r];
      if (c < 0 || w[r][c] == 0) continue;
      row_cov[r] = col_cov[c] = true;
      pairs.push_back({r, c + 1});
      step = std::min(step, res[r][c]);
    }
    for (int k = 0; k < n; ++k) {
      if (!row_cov[k] && rl[k] > kWeightFloor) step = std::min(step, std::max(0.0, mass - rl[k]));
      if (!col_cov[k] && cl[k] > kWeightFloor) step = std::min(step, std::max(0.0, mass - cl[k]));
    }
    if (!(step > 1e-15)) throw NumericalFailure("edge fraction decomposition stalled");
    for (const auto& p : pairs) {
      double& cell = res[p.from][p.to - 1];
      cell -= step;
      if (cell < kWeightFloor) cell = 0.0;
    }
    acc[AlignmentPattern(pairs)] += step;
    mass -= step;
  }
  double used = 0.0;
  for (const auto& kv : acc) used += kv.second;
  if (1.0 - used > kWeightFloor) acc[AlignmentPattern{}] += 1.0 - used;

  std::vector<WeightedPattern> out;
  for (auto& [p, wgt] : acc)
    if (wgt > kWeightFloor) out.push_back({p, wgt});
  return out;
}

}  // namespace oto
