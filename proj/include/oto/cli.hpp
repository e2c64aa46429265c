#pragma once

// Command-line front end: gen, capacity, verify, sweep.
//
// Exit codes: 0 success, 2 input error, 3 enumeration cap exceeded,
// 4 theorem invariant violated, 1 anything else.

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <limits>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "oto/bounds.hpp"
#include "oto/capacity.hpp"
#include "oto/errors.hpp"
#include "oto/instancegen.hpp"
#include "oto/io.hpp"

namespace oto::cli {

enum ExitCode : int { kOk = 0, kFailure = 1, kInputError = 2, kCapExceeded = 3, kTheoremViolation = 4 };

inline EnumerationLimits limits_from_env() {
  EnumerationLimits lim;
  if (const char* v = std::getenv("OTO_CAP_MAX_RELAYS")) {
    try {
      const int cap = std::stoi(v);
      if (cap < 0) throw InvalidInput("");
      lim.max_pattern_relays = cap;
      lim.max_cut_relays = cap;
    } catch (const std::exception&) {
      throw InvalidInput(std::string("OTO_CAP_MAX_RELAYS must be a non-negative integer, got '") + v + "'");
    }
  }
  return lim;
}

struct GenFlags {
  std::string topology = "line";
  int relays = 1;
  std::string channel = "unit";
  std::uint64_t seed = 0;
  double power = 1.0;
  double alpha = 1.0;
  double beta = 0.0;
  double edge_prob = 0.5;
  double scale = 1.0;
  double spacing = 10.0;
  double frequency = 60.0;

  void add_to(CLI::App& app) {
    app.add_option("--topology", topology, "line | diamond | full | random")->capture_default_str();
    app.add_option("--relays", relays, "number of relays N")->capture_default_str();
    app.add_option("--channel", channel, "unit | rayleigh | los")->capture_default_str();
    app.add_option("--seed", seed, "random seed")->capture_default_str();
    app.add_option("--power", power, "transmit SNR P")->capture_default_str();
    app.add_option("--alpha", alpha, "main-lobe gain")->capture_default_str();
    app.add_option("--beta", beta, "side-lobe factor")->capture_default_str();
    app.add_option("--edge-prob", edge_prob, "link probability for the random topology")->capture_default_str();
    app.add_option("--scale", scale, "Rayleigh mean power E|h|^2")->capture_default_str();
    app.add_option("--spacing", spacing, "node spacing in metres for los")->capture_default_str();
    app.add_option("--frequency", frequency, "carrier in GHz for los")->capture_default_str();
  }

  GenSpec spec(std::uint64_t seed_value) const {
    GenSpec s;
    if (topology == "line") s.topology = Topology::line;
    else if (topology == "diamond") s.topology = Topology::diamond;
    else if (topology == "full") s.topology = Topology::full;
    else if (topology == "random") s.topology = Topology::random;
    else throw InvalidInput("unknown topology '" + topology + "'");
    if (channel == "unit") s.channel = ChannelModel::unit;
    else if (channel == "rayleigh") s.channel = ChannelModel::rayleigh;
    else if (channel == "los") s.channel = ChannelModel::los;
    else throw InvalidInput("unknown channel model '" + channel + "'");
    s.relays = relays;
    s.edge_probability = edge_prob;
    s.rayleigh_scale = scale;
    if (s.channel == ChannelModel::los) {
      if (!(spacing > 0.0)) throw InvalidInput("spacing must be positive");
      s.distances = line_distances(relays, spacing);
    }
    s.frequency_ghz = frequency;
    s.power = power;
    s.alpha = alpha;
    s.beta = beta;
    s.seed = seed_value;
    return s;
  }

  nlohmann::json echo(std::uint64_t seed_value) const {
    nlohmann::json j{{"topology", topology}, {"relays", relays}, {"channel", channel}, {"seed", seed_value},
                     {"power", power},       {"alpha", alpha},   {"beta", beta},       {"rng", kRngAlgorithm}};
    if (topology == "random") j["edge_prob"] = edge_prob;
    if (channel == "rayleigh") j["scale"] = scale;
    if (channel == "los") {
      j["spacing_m"] = spacing;
      j["frequency_ghz"] = frequency;
      j["path_loss"] = "free-space amplitude c/(4 pi d f)";
    }
    return j;
  }
};

inline int cmd_gen(const GenFlags& flags, const std::string& out_path, std::ostream& err) {
  const auto inst = generate(flags.spec(flags.seed));
  const auto report = validate_instance(inst);
  if (!report.ok()) throw InvalidInput("generated instance failed validation: " + report.violations.front().message);
  for (const auto& w : report.warnings) err << "warning: " << w << '\n';
  save_instance({inst, {{"generator", flags.echo(flags.seed)}}}, out_path);
  return kOk;
}

inline std::vector<ModelTag> parse_models(const std::string& model) {
  if (model == "all") return {ModelTag::ideal, ModelTag::imperfect, ModelTag::tsn};
  if (model == "ideal") return {ModelTag::ideal};
  if (model == "imperfect") return {ModelTag::imperfect};
  if (model == "tsn") return {ModelTag::tsn};
  throw InvalidInput("unknown model '" + model + "'");
}

inline nlohmann::json pattern_json(const AlignmentPattern& p) {
  auto arr = nlohmann::json::array();
  for (const auto& l : p.pairs()) arr.push_back({l.from, l.to});
  return arr;
}

inline int cmd_capacity(const std::string& path, const std::string& model, const std::string& format,
                        const std::string& method, std::ostream& out) {
  const auto doc = load_instance(path);
  require_valid(doc.instance);
  const auto models = parse_models(model);
  if (format != "json" && format != "csv") throw InvalidInput("unknown format '" + format + "'");
  LpMethod lp = LpMethod::pattern_lp;
  if (method == "edge") lp = LpMethod::edge_lp;
  else if (method != "pattern") throw InvalidInput("unknown method '" + method + "'");
  CapacityOptions opt;
  opt.limits = limits_from_env();

  std::vector<CapacityResult> results;
  for (auto m : models) results.push_back(capacity(doc.instance, m, opt, lp));

  if (format == "json") {
    nlohmann::json j;
    j["num_relays"] = doc.instance.num_relays();
    j["results"] = nlohmann::json::array();
    for (const auto& r : results) {
      nlohmann::json jr{{"model", to_string(r.model)}, {"value", r.value}, {"per_cut_values", r.per_cut_values}};
      jr["schedule"] = nlohmann::json::array();
      for (const auto& wp : r.schedule) jr["schedule"].push_back({{"pattern", pattern_json(wp.pattern)}, {"weight", wp.weight}});
      j["results"].push_back(jr);
    }
    out << j.dump(2) << '\n';
  } else {
    out << "model,value,support_size,schedule\n";
    for (const auto& r : results) {
      std::string sched;
      for (const auto& wp : r.schedule) {
        if (!sched.empty()) sched += ';';
        sched += to_string(wp.pattern) + ":" + format_real(wp.weight);
      }
      out << to_string(r.model) << ',' << format_real(r.value) << ',' << r.schedule.size() << ",\"" << sched << "\"\n";
    }
  }
  return kOk;
}

struct VerifySummary {
  std::size_t rows = 0;
  std::size_t assumptions_held = 0;
  std::size_t thm2_satisfied = 0;
  double max_thm1_gap = 0.0;
  double min_thm1_slack = std::numeric_limits<double>::infinity();
  double max_tsn_gap = 0.0;
  double min_tsn_slack = std::numeric_limits<double>::infinity();

  void add(const GapReport& r) {
    ++rows;
    max_thm1_gap = std::max(max_thm1_gap, r.gap_thm1_lhs);
    max_tsn_gap = std::max(max_tsn_gap, r.tsn_gap_lhs);
    if (r.assumptions.hold()) {
      ++assumptions_held;
      if (!std::isnan(r.gap_thm1_rhs)) min_thm1_slack = std::min(min_thm1_slack, r.gap_thm1_rhs - r.gap_thm1_lhs);
    }
    if (r.thm2.applicable && r.thm2.satisfied) ++thm2_satisfied;
    if (!std::isnan(r.tsn_gap_rhs)) min_tsn_slack = std::min(min_tsn_slack, r.tsn_gap_rhs - r.tsn_gap_lhs);
  }

  std::string line() const {
    std::ostringstream os;
    os << "summary rows=" << rows << " assumptions_held=" << assumptions_held << " thm2_satisfied=" << thm2_satisfied
       << " max_thm1_gap=" << format_real(max_thm1_gap) << " min_thm1_slack=" << format_real(min_thm1_slack)
       << " max_tsn_gap=" << format_real(max_tsn_gap) << " min_tsn_slack=" << format_real(min_tsn_slack);
    return os.str();
  }
};

inline int cmd_verify(const GenFlags& flags, int trials, const std::string& out_path, double debug_offset,
                      std::ostream& out, std::ostream& err) {
  if (trials < 1) throw InvalidInput("trials must be at least 1");
  VerifyOptions opt;
  opt.capacity.limits = limits_from_env();
  opt.capacity.debug_value_offset = debug_offset;

  std::ostringstream csv;
  csv << report_header();
  VerifySummary summary;
  int code = kOk;
  for (int t = 0; t < trials; ++t) {
    const std::uint64_t seed = flags.seed + static_cast<std::uint64_t>(t);
    const auto inst = generate(flags.spec(seed));
    const auto start = std::chrono::steady_clock::now();
    try {
      const auto report = verify_instance(inst, opt);
      const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
      csv << report_row({static_cast<std::size_t>(t), seed, flags.topology, flags.channel}, inst, report, ms);
      summary.add(report);
    } catch (const TheoremViolation& e) {
      err << "trial " << t << " seed " << seed << ": " << e.what() << '\n';
      code = kTheoremViolation;
      break;
    }
  }
  if (out_path.empty()) {
    out << csv.str();
    err << summary.line() << '\n';
  } else {
    std::ofstream f(out_path, std::ios::binary);
    if (!f) throw InvalidInput("cannot write " + out_path);
    f << csv.str();
    out << summary.line() << '\n';
  }
  return code;
}

inline int cmd_sweep(const std::string& path, const std::string& param, double from, double to, int steps,
                     const std::string& out_path, std::ostream& out, std::ostream& err) {
  if (param != "beta" && param != "alpha" && param != "power") throw InvalidInput("unknown sweep parameter '" + param + "'");
  if (!(from <= to)) throw InvalidInput("sweep needs from <= to");
  if (steps < 2) throw InvalidInput("sweep needs at least 2 steps");
  const auto doc = load_instance(path);
  require_valid(doc.instance);
  VerifyOptions opt;
  opt.capacity.limits = limits_from_env();

  std::ostringstream csv;
  csv << report_header();
  for (int k = 0; k < steps; ++k) {
    const double v = from + (to - from) * static_cast<double>(k) / (steps - 1);
    NetworkInstance inst = param == "beta" ? doc.instance.with_beta(v)
                           : param == "alpha" ? doc.instance.with_alpha(v)
                                              : doc.instance.with_power(v);
    const auto start = std::chrono::steady_clock::now();
    GapReport report;
    try {
      report = verify_instance(inst, opt);
    } catch (const TheoremViolation& e) {
      err << "sweep step " << k << " (" << param << "=" << format_real(v) << "): " << e.what() << '\n';
      return kTheoremViolation;
    }
    const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    csv << report_row({static_cast<std::size_t>(k), std::nullopt, "file", "file"}, inst, report, ms);
  }
  if (out_path.empty()) {
    out << csv.str();
  } else {
    std::ofstream f(out_path, std::ios::binary);
    if (!f) throw InvalidInput("cannot write " + out_path);
    f << csv.str();
  }
  return kOk;
}

// Parses argv and dispatches; never throws.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Capacity and gap-bound calculator for Gaussian 1-2-1 networks with imperfect beamforming", "oto_cap"};
  app.require_subcommand(1);

  GenFlags gen_flags;
  std::string gen_out;
  auto* gen = app.add_subcommand("gen", "generate an instance file");
  gen_flags.add_to(*gen);
  gen->add_option("-o,--output", gen_out, "output path")->required();

  std::string cap_path, cap_model = "all", cap_format = "json", cap_method = "pattern";
  auto* cap = app.add_subcommand("capacity", "compute capacities of an instance file");
  cap->add_option("instance", cap_path, "instance JSON")->required();
  cap->add_option("--model", cap_model, "ideal | imperfect | tsn | all")->capture_default_str();
  cap->add_option("--format", cap_format, "json | csv")->capture_default_str();
  cap->add_option("--method", cap_method, "LP for ideal/tsn: pattern | edge")->capture_default_str();

  GenFlags ver_flags;
  int trials = 10;
  std::string ver_out;
  double debug_offset = 0.0;
  auto* ver = app.add_subcommand("verify", "check the gap theorems on generated instances");
  ver_flags.add_to(*ver);
  ver->add_option("--trials", trials, "number of instances")->capture_default_str();
  ver->add_option("-o,--output", ver_out, "CSV report path (standard output if omitted)");
  ver->add_option("--debug-value-offset", debug_offset)->group("");

  std::string sw_path, sw_param = "beta", sw_out;
  double sw_from = 0.0, sw_to = 1.0;
  int sw_steps = 11;
  auto* sw = app.add_subcommand("sweep", "sweep one parameter of an instance file");
  sw->add_option("instance", sw_path, "instance JSON")->required();
  sw->add_option("--param", sw_param, "beta | alpha | power")->capture_default_str();
  sw->add_option("--from", sw_from)->capture_default_str();
  sw->add_option("--to", sw_to)->capture_default_str();
  sw->add_option("--steps", sw_steps)->capture_default_str();
  sw->add_option("-o,--output", sw_out, "CSV path (standard output if omitted)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInputError;
  }

  try {
    if (*gen) return cmd_gen(gen_flags, gen_out, err);
    if (*cap) return cmd_capacity(cap_path, cap_model, cap_format, cap_method, out);
    if (*ver) return cmd_verify(ver_flags, trials, ver_out, debug_offset, out, err);
    if (*sw) return cmd_sweep(sw_path, sw_param, sw_from, sw_to, sw_steps, sw_out, out, err);
  } catch (const CapacityLimit& e) {
    err << "error: " << e.what() << '\n';
    return kCapExceeded;
  } catch (const TheoremViolation& e) {
    err << "error: " << e.what() << '\n';
    return kTheoremViolation;
  } catch (const InvalidInput& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const DegenerateInstance& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kFailure;
  }
  return kFailure;
}

}  // namespace oto::cli
