#pragma once

// Assumption checks, gap bounds between the three capacities, and a verifier
// that evaluates them on one instance and fails loudly if a proven inequality
// does not hold.

#include <array>
#include <cmath>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "oto/capacity.hpp"
#include "oto/enumeration.hpp"
#include "oto/errors.hpp"
#include "oto/matrices.hpp"
#include "oto/model.hpp"

namespace oto {

inline constexpr double kGapTolerance = 1e-6;

struct AssumptionReport {
  bool main_lobe_stronger = true;
  std::vector<std::array<int, 3>> violating_triples;  // (i, j, k): alpha|h_ji| < beta|h_jk|
  bool diagonally_dominant = true;
  double max_rho = 0.0;
  AlignmentPattern worst_pattern;
  Cut worst_cut;

  bool hold() const noexcept { return main_lobe_stronger && diagonally_dominant; }
};

// For every receiver j and distinct transmitters i, k into j: alpha|h_ji| >= beta|h_jk|.
inline AssumptionReport check_main_lobe(const NetworkInstance& inst) {
  AssumptionReport r;
  const int n = inst.num_relays();
  for (int j = 1; j <= n + 1; ++j)
    for (int i = 0; i <= n; ++i) {
      if (!inst.has_link(i, j)) continue;
      for (int k = 0; k <= n; ++k) {
        if (k == i || !inst.has_link(k, j)) continue;
        if (inst.alpha() * inst.gain(j, i) < inst.beta() * inst.gain(j, k)) r.violating_triples.push_back({i, j, k});
      }
    }
  r.main_lobe_stronger = r.violating_triples.empty();
  return r;
}

inline AssumptionReport check_assumptions(const NetworkInstance& inst, const EnumerationLimits& limits = {}) {
  AssumptionReport r = check_main_lobe(inst);
  const StateSpace space(inst, limits);
  r.worst_cut = {inst.num_relays(), 0};
  for (const auto& pat : space.patterns())
    for (const auto& cut : space.cuts()) {
      const double v = rho(cut_state_matrix(inst, pat, cut), inst.power());
      if (v > r.max_rho) {
        r.max_rho = v;
        r.worst_pattern = pat;
        r.worst_cut = cut;
      }
    }
  r.diagonally_dominant = r.max_rho <= 1.0;
  return r;
}

// |log2(1 - rho)| for the worst rho; needs rho < 1.
inline double f_from_max_rho(double max_rho) {
  if (!(max_rho < 1.0)) {
    std::ostringstream os;
    os << "diagonal dominance violated: max rho " << max_rho << " >= 1";
    throw DominanceViolated(os.str(), max_rho);
  }
  return std::abs(std::log2(1.0 - max_rho));
}

inline double f_value(const AssumptionReport& a) {
  if (!(a.max_rho < 1.0)) {
    std::ostringstream os;
    os << "diagonal dominance violated at pattern " << to_string(a.worst_pattern) << ", cut " << to_string(a.worst_cut)
       << ": rho " << a.max_rho;
    throw DominanceViolated(os.str(), a.max_rho);
  }
  return f_from_max_rho(a.max_rho);
}

inline double f_value(const NetworkInstance& inst, const EnumerationLimits& limits = {}) {
  return f_value(check_assumptions(inst, limits));
}

// N * max{log2 N, f}. log2 N is taken literally for N = 1; N = 0 gives 0.
inline double gap_bound_thm1(int num_relays, double f) {
  if (num_relays == 0) return 0.0;
  return num_relays * std::max(std::log2(static_cast<double>(num_relays)), f);
}

inline double gap_bound_thm1(const NetworkInstance& inst, const EnumerationLimits& limits = {}) {
  return gap_bound_thm1(inst.num_relays(), f_value(inst, limits));
}

enum class RatioMode {
  // max |h|^2 over nonzero links divided by min |h|^2 over nonzero links
  conservative,
  // max |h_mn|^2 / |h_ji|^2 over nonzero links (i->j), (n->m) with m != j
  chain,
};

inline double channel_ratio(const NetworkInstance& inst, RatioMode mode = RatioMode::conservative) {
  const auto links = inst.links();
  if (links.empty()) return 0.0;
  if (mode == RatioMode::conservative) {
    double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
    for (const auto& e : links) {
      const double g = std::norm(inst.h(e.to, e.from));
      lo = std::min(lo, g);
      hi = std::max(hi, g);
    }
    return hi / lo;
  }
  double best = 0.0;
  for (const auto& den : links)
    for (const auto& num : links)
      if (num.to != den.to)
        best = std::max(best, std::norm(inst.h(num.to, num.from)) / std::norm(inst.h(den.to, den.from)));
  return best;
}

struct Thm2Condition {
  double lhs = 0.0;  // alpha / beta, +inf when beta = 0
  double rhs = 0.0;  // Delta^2 N/(N-1) * ratio
  bool applicable = false;  // needs N >= 2
  bool satisfied = false;
};

inline Thm2Condition thm2_condition(const NetworkInstance& inst, RatioMode mode = RatioMode::conservative,
                                    DegreeMode degree = DegreeMode::undirected) {
  Thm2Condition c;
  const int n = inst.num_relays();
  c.lhs = inst.beta() == 0.0 ? std::numeric_limits<double>::infinity() : inst.alpha() / inst.beta();
  c.applicable = n >= 2;
  if (!c.applicable) {
    c.rhs = std::numeric_limits<double>::quiet_NaN();
    return c;
  }
  const double delta = max_degree(inst, degree);
  c.rhs = delta * delta * (static_cast<double>(n) / (n - 1)) * channel_ratio(inst, mode);
  c.satisfied = c.lhs >= c.rhs;
  return c;
}

// Upper bound on every rho from bounding each Gram off-diagonal by the number
// of shared neighbors: [2 alpha beta + (Delta-2) beta^2](Delta-1)/alpha^2 * ratio.
inline double analytic_rho_bound(const NetworkInstance& inst, RatioMode mode = RatioMode::conservative,
                                 DegreeMode degree = DegreeMode::undirected) {
  const double a = inst.alpha(), b = inst.beta();
  const double delta = max_degree(inst, degree);
  return (2.0 * a * b + (delta - 2.0) * b * b) * (delta - 1.0) / (a * a) * channel_ratio(inst, mode);
}

inline double max_leakage(const NetworkInstance& inst) {
  double worst = 0.0;
  for (const auto& e : inst.links()) worst = std::max(worst, link_rate_leakage(inst, e.from, e.to));
  return worst;
}

// N log2 Delta + N max leakage.
inline double tsn_gap_bound(const NetworkInstance& inst, DegreeMode degree = DegreeMode::undirected) {
  const int delta = max_degree(inst, degree);
  if (delta == 0) throw DegenerateInstance("TSN gap bound needs at least one link");
  const int n = inst.num_relays();
  return n * std::log2(static_cast<double>(delta)) + n * max_leakage(inst);
}

struct GapReport {
  int num_relays = 0;
  int delta = 0;
  double c_imperfect = 0.0;
  double c_ideal = 0.0;
  double r_tsn = 0.0;
  std::size_t support_imperfect = 0;
  std::size_t support_ideal = 0;
  std::size_t support_tsn = 0;
  double gap_thm1_lhs = 0.0;
  double gap_thm1_rhs = std::numeric_limits<double>::quiet_NaN();  // NaN when dominance fails
  double f_value = std::numeric_limits<double>::quiet_NaN();
  Thm2Condition thm2;
  double tsn_gap_lhs = 0.0;
  double tsn_gap_rhs = std::numeric_limits<double>::quiet_NaN();  // NaN for a link-free instance
  double max_leakage = 0.0;
  double analytic_rho_bound = 0.0;
  AssumptionReport assumptions;
};

struct VerifyOptions {
  CapacityOptions capacity;
  RatioMode ratio = RatioMode::conservative;
  DegreeMode degree = DegreeMode::undirected;
};

// Names of the inequalities the report violates; empty when all hold.
inline std::vector<std::string> theorem_failures(const GapReport& r) {
  std::vector<std::string> out;
  auto fail = [&](const std::string& name, double lhs, double rhs) {
    std::ostringstream os;
    os.precision(12);
    os << name << ": " << lhs << " > " << rhs;
    out.push_back(os.str());
  };
  if (r.r_tsn > r.c_ideal + kGapTolerance) fail("tsn-below-ideal", r.r_tsn, r.c_ideal);
  if (!std::isnan(r.tsn_gap_rhs) && r.tsn_gap_lhs > r.tsn_gap_rhs + kGapTolerance)
    fail("tsn-gap-bound", r.tsn_gap_lhs, r.tsn_gap_rhs);
  // N = 1 is excluded: every cut Gram is 1x1, so the literal bound is 0 while
  // side-lobe energy can still lift the imperfect value above the ideal one.
  if (r.num_relays != 1 && r.assumptions.hold() && !std::isnan(r.gap_thm1_rhs) &&
      r.gap_thm1_lhs > r.gap_thm1_rhs + kGapTolerance)
    fail("thm1-gap-bound", r.gap_thm1_lhs, r.gap_thm1_rhs);
  if (r.assumptions.hold() && r.thm2.applicable && r.thm2.satisfied) {
    const double n = r.num_relays;
    if (r.gap_thm1_lhs > n * std::log2(n) + kGapTolerance) fail("thm2-gap-bound", r.gap_thm1_lhs, n * std::log2(n));
  }
  return out;
}

// Computes every quantity and throws TheoremViolation if an inequality fails.
inline GapReport verify_instance(const NetworkInstance& inst, const VerifyOptions& opt = {}) {
  require_valid(inst);
  GapReport r;
  r.num_relays = inst.num_relays();
  r.delta = max_degree(inst, opt.degree);

  const auto imp = capacity_imperfect(inst, opt.capacity);
  const auto ide = capacity_ideal(inst, LpMethod::pattern_lp, opt.capacity.limits);
  const auto tsn = rate_tsn(inst, LpMethod::pattern_lp, opt.capacity.limits);
  r.c_imperfect = imp.value;
  r.c_ideal = ide.value;
  r.r_tsn = tsn.value;
  r.support_imperfect = imp.schedule.size();
  r.support_ideal = ide.schedule.size();
  r.support_tsn = tsn.schedule.size();

  r.assumptions = check_assumptions(inst, opt.capacity.limits);
  r.gap_thm1_lhs = std::abs(r.c_imperfect - r.c_ideal);
  if (r.assumptions.max_rho < 1.0) {
    r.f_value = f_from_max_rho(r.assumptions.max_rho);
    r.gap_thm1_rhs = gap_bound_thm1(r.num_relays, r.f_value);
  }
  r.thm2 = thm2_condition(inst, opt.ratio, opt.degree);
  r.tsn_gap_lhs = std::abs(r.c_ideal - r.r_tsn);
  r.max_leakage = max_leakage(inst);
  if (r.delta > 0) r.tsn_gap_rhs = tsn_gap_bound(inst, opt.degree);
  r.analytic_rho_bound = analytic_rho_bound(inst, opt.ratio, opt.degree);

  auto failures = theorem_failures(r);
  if (inst.beta() == 0.0 && r.gap_thm1_lhs > kGapTolerance) {
    std::ostringstream os;
    os.precision(12);
    os << "ideal-degeneration: |C_cs,iid - C_ideal| = " << r.gap_thm1_lhs << " at beta = 0";
    failures.push_back(os.str());
  }
  if (!failures.empty()) {
    std::string msg = "theorem invariant violated:";
    for (const auto& f : failures) msg += " " + f + ";";
    throw TheoremViolation(msg);
  }
  return r;
}

}  // namespace oto
