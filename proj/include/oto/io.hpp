#pragma once

// Instance files (JSON) and verification reports (CSV).

#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>

#include "json.hpp"

#include "oto/bounds.hpp"
#include "oto/errors.hpp"
#include "oto/model.hpp"

namespace oto {

struct InstanceDocument {
  NetworkInstance instance;
  nlohmann::json metadata = nlohmann::json::object();
};

inline nlohmann::json to_json(const InstanceDocument& doc) {
  const auto& inst = doc.instance;
  nlohmann::json j;
  j["num_relays"] = inst.num_relays();
  j["power"] = inst.power();
  j["alpha"] = inst.alpha();
  j["beta"] = inst.beta();
  j["links"] = nlohmann::json::array();
  for (int i = 0; i <= inst.num_relays(); ++i)
    for (int k = 1; k <= inst.destination(); ++k) {
      const Complex h = inst.h(k, i);
      if (h == Complex(0.0, 0.0)) continue;
      j["links"].push_back({{"from", i}, {"to", k}, {"re", h.real()}, {"im", h.imag()}});
    }
  j["metadata"] = doc.metadata.is_null() ? nlohmann::json::object() : doc.metadata;
  return j;
}

inline InstanceDocument instance_from_json(const nlohmann::json& j) {
  auto number = [&](const char* key) {
    if (!j.contains(key) || !j[key].is_number()) throw InvalidInput(std::string("instance file: missing number '") + key + "'");
    return j[key].get<double>();
  };
  if (!j.is_object()) throw InvalidInput("instance file: top level must be an object");
  if (!j.contains("num_relays") || !j["num_relays"].is_number_integer())
    throw InvalidInput("instance file: missing integer 'num_relays'");
  const int n = j["num_relays"].get<int>();
  if (n < 0) throw InvalidInput("instance file: num_relays must be non-negative");
  InstanceDocument doc{NetworkInstance(n, number("power"), number("alpha"), number("beta")), nlohmann::json::object()};
  if (!j.contains("links") || !j["links"].is_array()) throw InvalidInput("instance file: missing array 'links'");
  std::set<std::pair<int, int>> seen;
  for (const auto& l : j["links"]) {
    if (!l.is_object() || !l.contains("from") || !l.contains("to") || !l["from"].is_number_integer() ||
        !l["to"].is_number_integer())
      throw InvalidInput("instance file: link needs integer 'from' and 'to'");
    const int from = l["from"].get<int>();
    const int to = l["to"].get<int>();
    if (!NetworkInstance::is_transmitter(from, n) || !NetworkInstance::is_receiver(to, n) || from == to)
      throw InvalidInput("instance file: link " + std::to_string(from) + "->" + std::to_string(to) + " out of range");
    if (!seen.insert({from, to}).second)
      throw InvalidInput("instance file: duplicate link " + std::to_string(from) + "->" + std::to_string(to));
    auto part = [&](const char* key) {
      if (!l.contains(key)) return 0.0;
      if (!l[key].is_number()) throw InvalidInput(std::string("instance file: link field '") + key + "' must be a number");
      return l[key].get<double>();
    };
    doc.instance.set_h(from, to, {part("re"), part("im")});
  }
  if (j.contains("metadata")) doc.metadata = j["metadata"];
  return doc;
}

inline std::string dump_instance(const InstanceDocument& doc) { return to_json(doc).dump(2) + "\n"; }

inline InstanceDocument parse_instance(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(std::string("instance file: ") + e.what());
  }
  return instance_from_json(j);
}

inline InstanceDocument load_instance(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInput("cannot open instance file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_instance(ss.str());
}

inline void save_instance(const InstanceDocument& doc, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidInput("cannot write " + path);
  out << dump_instance(doc);
  if (!out) throw InvalidInput("failed writing " + path);
}

// ---- CSV reports ---------------------------------------------------------

inline constexpr const char* kReportColumns[] = {
    "index",        "seed",          "topology",         "channel",          "relays",
    "power",        "alpha",         "beta",             "delta",            "c_imperfect",
    "c_ideal",      "r_tsn",         "support_imperfect", "support_ideal",   "support_tsn",
    "gap_thm1_lhs", "gap_thm1_rhs",  "f_value",          "thm2_lhs",         "thm2_rhs",
    "thm2_applicable", "thm2_satisfied", "tsn_gap_lhs",   "tsn_gap_rhs",      "max_leakage",
    "analytic_rho_bound", "main_lobe_stronger", "diagonally_dominant", "max_rho", "wall_ms"};

struct ReportContext {
  std::size_t index = 0;
  std::optional<std::uint64_t> seed;
  std::string topology;
  std::string channel;
};

inline std::string format_real(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  std::ostringstream os;
  os << std::setprecision(12) << v;
  return os.str();
}

inline std::string report_header() {
  std::string s;
  for (const char* c : kReportColumns) {
    if (!s.empty()) s += ',';
    s += c;
  }
  return s + "\n";
}

inline std::string report_row(const ReportContext& ctx, const NetworkInstance& inst, const GapReport& r,
                              double wall_ms) {
  std::ostringstream os;
  auto b = [](bool v) { return v ? "1" : "0"; };
  os << ctx.index << ',' << (ctx.seed ? std::to_string(*ctx.seed) : std::string()) << ',' << ctx.topology << ','
     << ctx.channel << ',' << inst.num_relays() << ',' << format_real(inst.power()) << ',' << format_real(inst.alpha())
     << ',' << format_real(inst.beta()) << ',' << r.delta << ',' << format_real(r.c_imperfect) << ','
     << format_real(r.c_ideal) << ',' << format_real(r.r_tsn) << ',' << r.support_imperfect << ',' << r.support_ideal
     << ',' << r.support_tsn << ',' << format_real(r.gap_thm1_lhs) << ',' << format_real(r.gap_thm1_rhs) << ','
     << format_real(r.f_value) << ',' << format_real(r.thm2.lhs) << ',' << format_real(r.thm2.rhs) << ','
     << b(r.thm2.applicable) << ',' << b(r.thm2.satisfied) << ',' << format_real(r.tsn_gap_lhs) << ','
     << format_real(r.tsn_gap_rhs) << ',' << format_real(r.max_leakage) << ',' << format_real(r.analytic_rho_bound)
     << ',' << b(r.assumptions.main_lobe_stronger) << ',' << b(r.assumptions.diagonally_dominant) << ','
     << format_real(r.assumptions.max_rho) << ',' << format_real(wall_ms) << '\n';
  return os.str();
}

}  // namespace oto
