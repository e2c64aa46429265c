#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "oto/oto.hpp"

using namespace oto;
using namespace oto::test;

namespace {

struct Triple {
  double imperfect, ideal, tsn;
};

Triple all_three(const NetworkInstance& inst) {
  return {capacity_imperfect(inst).value, capacity_ideal(inst).value, rate_tsn(inst).value};
}

struct OracleCase {
  const char* name;
  NetworkInstance inst;
  Triple want;
};

// Values produced by tests/oracle/capacity_oracle.py (raw-state enumeration,
// numpy log-det, HiGHS LP), frozen here.
std::vector<OracleCase> oracle_cases() {
  return {
      {"single_link", single_link(1.0, 2.0, 0.0), {2.32192809488736, 2.32192809488736, 2.32192809488736}},
      {"line1_b0", unit_line(1, 1.0, 1.0, 0.0), {1.0, 1.0, 1.0}},
      {"line1_b05", unit_line(1, 1.0, 1.0, 0.5), {1.0, 1.0, 1.0}},
      {"diamond_b0", unit_diamond(1.0, 1.0, 0.0), {1.0, 1.0, 1.0}},
      {"diamond_b1", unit_diamond(1.0, 1.0, 1.0), {1.58496250072116, 1.0, 0.584962500721156}},
      {"diamond_a8_b1", unit_diamond(1.0, 8.0, 1.0), {6.04439411935845, 6.02236781302845, 5.04439411935845}},
      {"fixed2", fixed_full_two_relays(), {4.03667915423045, 4.02680005934372, 3.87580537002995}},
      {"fixed1", fixed_full_one_relay(), {4.23516220001942, 4.23266075679027, 4.18884576852994}},
  };
}

std::vector<NetworkInstance> small_random_instances() {
  std::vector<NetworkInstance> out;
  for (std::uint64_t seed = 1; seed <= 12; ++seed) {
    out.push_back(rayleigh(Topology::full, static_cast<int>(seed % 3), seed, 1.0 + seed % 3, 2.0, 0.1 * (seed % 5)));
    out.push_back(rayleigh(Topology::random, 2, seed + 100, 2.0, 3.0, 0.3, 0.6));
  }
  return out;
}

}  // namespace

TEST(LinkRates, HandValues) {
  auto s = single_link(1.0, 2.0, 0.0);
  EXPECT_NEAR(link_rate_ideal(s, 0, 1), std::log2(5.0), 1e-12);
  EXPECT_NEAR(link_rate_ideal(single_link(1.0, 1.0), 0, 1), 1.0, 1e-12);
  EXPECT_NEAR(link_rate_ideal(single_link(1.0, 1e-9), 0, 1), 0.0, 1e-12);

  auto d = unit_diamond(1.0, 1.0, 1.0);
  EXPECT_NEAR(link_rate_tsn(d, 1, 3), std::log2(1.5), 1e-12);
  EXPECT_NEAR(link_rate_tsn(d, 0, 1), 1.0, 1e-12);  // nothing else reaches relay 1
  EXPECT_NEAR(link_rate_tsn(d.with_beta(0.0), 1, 3), link_rate_ideal(d, 1, 3), 1e-15);

  EXPECT_EQ(link_rate_leakage(d.with_beta(0.0), 1, 3), 0.0);
  EXPECT_NEAR(link_rate_leakage(d, 1, 3), 1.0, 1e-12);
  NetworkInstance two(2, 1.0, 1.0, 1.0);
  two.set_h(0, 3, 1.0).set_h(1, 3, 1.0).set_h(2, 3, 2.0);
  EXPECT_NEAR(link_rate_leakage(two, 0, 3), std::log2(5.0), 1e-12);
}

TEST(LinkRates, ZeroLinkRejected) {
  auto line = unit_line(1);
  EXPECT_THROW(link_rate_ideal(line, 0, 2), UndefinedLink);
  EXPECT_THROW(link_rate_tsn(line, 0, 2), UndefinedLink);
  EXPECT_THROW(link_rate_leakage(line, 0, 2), UndefinedLink);
}

TEST(LinkRates, Ordering) {
  for (const auto& inst : small_random_instances()) {
    const auto r = link_rates(inst);
    for (const auto& e : inst.links()) {
      EXPECT_GE(r.tsn.at(e), 0.0);
      EXPECT_LE(r.tsn.at(e), r.ideal.at(e) + 1e-15);
      EXPECT_GE(r.leakage.at(e), 0.0);
    }
  }
}

TEST(Capacity, FrozenOracleValues) {
  for (const auto& c : oracle_cases()) {
    const auto got = all_three(c.inst);
    EXPECT_NEAR(got.imperfect, c.want.imperfect, 1e-9) << c.name;
    EXPECT_NEAR(got.ideal, c.want.ideal, 1e-9) << c.name;
    EXPECT_NEAR(got.tsn, c.want.tsn, 1e-9) << c.name;
  }
}

TEST(Capacity, HandValues) {
  EXPECT_NEAR(capacity_ideal(single_link()).value, std::log2(5.0), 1e-9);
  const auto line = capacity_imperfect(unit_line(1));
  EXPECT_NEAR(line.value, 1.0, 1e-9);
  ASSERT_EQ(line.schedule.size(), 1u);
  EXPECT_EQ(line.schedule[0].pattern, AlignmentPattern({{0, 1}, {1, 2}}));
  EXPECT_GE(capacity_imperfect(unit_line(1, 1.0, 1.0, 0.5)).value, 1.0 - 1e-9);

  const auto dia = capacity_ideal(unit_diamond());
  EXPECT_NEAR(dia.value, 1.0, 1e-9);
  ASSERT_EQ(dia.schedule.size(), 2u);
  EXPECT_EQ(dia.schedule[0].pattern, AlignmentPattern({{0, 1}, {2, 3}}));
  EXPECT_EQ(dia.schedule[1].pattern, AlignmentPattern({{0, 2}, {1, 3}}));
  EXPECT_NEAR(dia.schedule[0].weight, 0.5, 1e-9);
  EXPECT_NEAR(dia.schedule[1].weight, 0.5, 1e-9);

  EXPECT_NEAR(rate_tsn(unit_diamond(1.0, 1.0, 1.0)).value, std::log2(1.5), 1e-9);
}

TEST(Capacity, ResultSelfConsistent) {
  for (const auto& inst : small_random_instances())
    for (auto tag : {ModelTag::imperfect, ModelTag::ideal, ModelTag::tsn})
      for (auto method : {LpMethod::pattern_lp, LpMethod::edge_lp}) {
        const auto r = capacity(inst, tag, {}, method);
        EXPECT_EQ(r.model, tag);
        ASSERT_EQ(r.per_cut_values.size(), enumerate_cuts(inst).size());
        EXPECT_NEAR(r.value, *std::min_element(r.per_cut_values.begin(), r.per_cut_values.end()), 1e-12);
        double mass = 0.0;
        for (const auto& wp : r.schedule) {
          EXPECT_GT(wp.weight, 0.0);
          mass += wp.weight;
        }
        EXPECT_NEAR(mass, 1.0, 1e-9);
      }
}

TEST(Capacity, RawStateOracleEquivalence) {
  auto cases = small_random_instances();
  for (const auto& c : oracle_cases()) cases.push_back(c.inst);
  for (const auto& inst : cases) {
    if (inst.num_relays() > 2) continue;
    const auto raw = raw_state_tables(inst);
    const auto got = all_three(inst);
    EXPECT_NEAR(solve_maxmin(raw.imperfect).value, got.imperfect, 1e-9);
    EXPECT_NEAR(solve_maxmin(raw.ideal).value, got.ideal, 1e-9);
    EXPECT_NEAR(solve_maxmin(raw.tsn).value, got.tsn, 1e-9);
  }
}

TEST(Capacity, IdealDegeneration) {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    auto inst = rayleigh(seed % 2 ? Topology::full : Topology::random, static_cast<int>(seed % 4), seed,
                         0.5 + seed % 5, 1.0 + 0.2 * (seed % 7), 0.0, 0.7);
    const auto got = all_three(inst);
    EXPECT_NEAR(got.imperfect, got.ideal, 1e-6) << "seed " << seed;
    EXPECT_NEAR(got.tsn, got.ideal, 1e-12) << "seed " << seed;
  }
}

TEST(Capacity, TsnBelowIdeal) {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    auto inst = rayleigh(Topology::full, 1 + static_cast<int>(seed % 3), seed, 1.0 + seed % 4, 2.0, 0.2 * (seed % 6));
    EXPECT_LE(rate_tsn(inst).value, capacity_ideal(inst).value + 1e-9) << "seed " << seed;
  }
}

TEST(Capacity, MonotoneInPower) {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    auto base = rayleigh(Topology::full, 2, seed, 1.0, 2.0, 0.3);
    Triple prev{0.0, 0.0, 0.0};
    for (double p : {0.25, 0.5, 1.0, 2.0, 8.0, 32.0}) {
      const auto got = all_three(base.with_power(p));
      EXPECT_GE(got.imperfect, prev.imperfect - 1e-9) << "seed " << seed << " P " << p;
      EXPECT_GE(got.ideal, prev.ideal - 1e-9) << "seed " << seed << " P " << p;
      EXPECT_GE(got.tsn, prev.tsn - 1e-9) << "seed " << seed << " P " << p;
      prev = got;
    }
  }
}

TEST(Capacity, MonotoneInAlpha) {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    auto base = rayleigh(Topology::full, 2, seed, 2.0, 1.0, 0.3);
    Triple prev{0.0, 0.0, 0.0};
    for (double a : {0.5, 1.0, 1.5, 2.0, 4.0, 8.0}) {
      const auto got = all_three(base.with_alpha(a));
      EXPECT_GE(got.imperfect, prev.imperfect - 1e-9) << "seed " << seed << " alpha " << a;
      EXPECT_GE(got.ideal, prev.ideal - 1e-9) << "seed " << seed << " alpha " << a;
      EXPECT_GE(got.tsn, prev.tsn - 1e-9) << "seed " << seed << " alpha " << a;
      prev = got;
    }
  }
}

TEST(Capacity, RelabelingInvariance) {
  const std::vector<std::vector<int>> perms{{2, 1}, {2, 3, 1}, {3, 1, 2}};
  for (std::uint64_t seed = 1; seed <= 8; ++seed)
    for (const auto& perm : perms) {
      auto inst = rayleigh(Topology::full, static_cast<int>(perm.size()), seed, 1.5, 2.5, 0.35);
      const auto a = all_three(inst);
      const auto b = all_three(permute_relays(inst, perm));
      EXPECT_NEAR(a.imperfect, b.imperfect, 1e-9);
      EXPECT_NEAR(a.ideal, b.ideal, 1e-9);
      EXPECT_NEAR(a.tsn, b.tsn, 1e-9);
    }
}

TEST(Capacity, BeatsEverySinglePattern) {
  for (const auto& inst : small_random_instances()) {
    const StateSpace space(inst);
    const auto table = imperfect_value_table(inst, space);
    const double c = capacity_imperfect(inst).value;
    for (Eigen::Index s = 0; s < table.values.cols(); ++s) EXPECT_GE(c, table.values.col(s).minCoeff() - 1e-9);
  }
}

TEST(Capacity, EdgeLpMatchesPatternLp) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    auto inst = rayleigh(seed % 2 ? Topology::full : Topology::random, static_cast<int>(seed % 5), seed, 2.0, 2.0,
                         0.25, 0.6);
    EXPECT_NEAR(capacity_ideal(inst, LpMethod::edge_lp).value, capacity_ideal(inst).value, 1e-6) << seed;
    EXPECT_NEAR(rate_tsn(inst, LpMethod::edge_lp).value, rate_tsn(inst).value, 1e-6) << seed;
  }
}

TEST(Capacity, IdealIgnoresBeta) {
  auto inst = fixed_full_two_relays();
  EXPECT_EQ(capacity_ideal(inst).value, capacity_ideal(inst.with_beta(0.0)).value);
  EXPECT_EQ(capacity_ideal(inst, LpMethod::edge_lp).value, capacity_ideal(inst.with_beta(0.9), LpMethod::edge_lp).value);
}

TEST(Capacity, CapsEnforced) {
  EXPECT_THROW(capacity_imperfect(unit_line(6)), CapacityLimit);
  EXPECT_NO_THROW(capacity_ideal(unit_line(6), LpMethod::edge_lp));
  EXPECT_THROW(capacity_ideal(unit_line(9), LpMethod::edge_lp), CapacityLimit);
}

TEST(Capacity, DebugOffsetShiftsValue) {
  CapacityOptions opt;
  opt.debug_value_offset = 0.5;
  EXPECT_NEAR(capacity_imperfect(unit_line(1), opt).value, 1.5, 1e-9);
}
