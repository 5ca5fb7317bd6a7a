#include "dtqw/io.hpp"

#include <fstream>
#include <sstream>

#include <fmt/format.h>

#include "dtqw/errors.hpp"
#include "json.hpp"

namespace dtqw {

using nlohmann::json;

std::string format_double(double x) { return fmt::format("{:.17g}", x); }

std::string circuit_to_json(const Circuit& c) {
  std::string out = "{\"dims\":[";
  const auto& dims = c.layout().dims();
  for (size_t i = 0; i < dims.size(); ++i) out += fmt::format("{}{}", i ? "," : "", dims[i]);
  out += fmt::format("],\"coin_wire\":{},\"gates\":[", c.layout().coin_wire().value_or(-1));
  for (size_t i = 0; i < c.gates().size(); ++i) {
    const GateApplication& g = c.gates()[i];
    out += fmt::format("{}{{\"kind\":\"{}\"", i ? "," : "", kind_name(g.kind));
    if (const auto* s = std::get_if<CyclicShift>(&g.kind)) out += fmt::format(",\"k\":{},\"d\":{}", s->k, s->d);
    if (const auto* p = std::get_if<GeneralCoin>(&g.kind))
      out += fmt::format(",\"params\":{{\"theta\":{},\"phi1\":{},\"phi2\":{}}}", format_double(p->theta),
                         format_double(p->phi1), format_double(p->phi2));
    out += fmt::format(",\"target\":{},\"controls\":[", g.target);
    for (size_t j = 0; j < g.controls.size(); ++j)
      out += fmt::format("{}{{\"wire\":{},\"level\":{}}}", j ? "," : "", g.controls[j].wire, g.controls[j].level);
    out += "]}";
  }
  out += "]";
  if (!c.dim_overrides().empty()) {
    out += ",\"dim_overrides\":{";
    bool first = true;
    for (auto [w, d] : c.dim_overrides()) {
      out += fmt::format("{}\"{}\":{}", first ? "" : ",", w, d);
      first = false;
    }
    out += "}";
  }
  out += "}\n";
  return out;
}

namespace {

GateKind kind_from_json(const json& g) {
  const std::string kind = g.at("kind").get<std::string>();
  if (kind == "cyclic_shift") return CyclicShift{g.at("k").get<int>(), g.at("d").get<int>()};
  if (kind == "hadamard") return Hadamard{};
  if (kind == "coin") {
    const json& p = g.at("params");
    return GeneralCoin{p.at("theta").get<double>(), p.at("phi1").get<double>(), p.at("phi2").get<double>()};
  }
  if (kind == "x") return PauliX{};
  if (kind == "t") return TGate{};
  if (kind == "tdg") return TDagger{};
  throw ValidationError(fmt::format("unknown gate kind '{}'", kind));
}

}  // namespace

Circuit circuit_from_json(const std::string& text) {
  try {
    const json doc = json::parse(text);
    const auto dims = doc.at("dims").get<std::vector<int>>();
    const int coin = doc.value("coin_wire", -1);
    Circuit c(RegisterLayout(dims, coin < 0 ? std::nullopt : std::optional<int>(coin)));
    if (doc.contains("dim_overrides"))
      for (const auto& [w, d] : doc.at("dim_overrides").items()) c.raise_dim(std::stoi(w), d.get<int>());
    for (const json& g : doc.at("gates")) {
      GateApplication app{kind_from_json(g), g.at("target").get<int>(), {}};
      for (const json& ctl : g.value("controls", json::array()))
        app.controls.push_back({ctl.at("wire").get<int>(), ctl.value("level", 1)});
      c.add(std::move(app));
    }
    return c;
  } catch (const json::exception& e) {
    throw ValidationError(fmt::format("malformed circuit JSON: {}", e.what()));
  } catch (const std::invalid_argument&) {
    throw ValidationError("malformed circuit JSON: bad dim_overrides key");
  }
}

std::string mapping_to_csv(const PositionMapping& m) {
  std::string out = "position,digits\n";
  for (const auto& e : m.entries) out += fmt::format("{},{}\n", e.position, ket_string(e.digits));
  return out;
}

std::string distribution_to_csv(const Distribution& dist, const std::optional<ShotCounts>& shots) {
  std::string out = "position,probability,counts\n";
  for (const auto& [x, p] : dist.entries) {
    out += fmt::format("{},{},", x, format_double(p));
    if (shots) out += std::to_string(shots->counts.at(x));
    out += "\n";
  }
  return out;
}

std::string distribution_to_json(const Distribution& dist, const std::optional<ShotCounts>& shots) {
  std::string out = "{\"positions\":[";
  for (size_t i = 0; i < dist.entries.size(); ++i) {
    const auto& [x, p] = dist.entries[i];
    out += fmt::format("{}{{\"position\":{},\"probability\":{}", i ? "," : "", x, format_double(p));
    if (shots) out += fmt::format(",\"counts\":{}", shots->counts.at(x));
    out += "}";
  }
  out += fmt::format("],\"residual\":{}", format_double(dist.residual));
  if (shots) out += fmt::format(",\"shots\":{},\"seed\":{},\"residual_counts\":{}", shots->shots, shots->seed, shots->residual);
  out += "}\n";
  return out;
}

std::string estimate_to_json(const ResourceEstimate& est) {
  std::string by;
  for (auto [k, n] : est.count_by_controls) by += fmt::format("{}\"{}\":{}", by.empty() ? "" : ",", k, n);
  return fmt::format(
      "{{\"count_1q\":{},\"count_2q\":{},\"count_multi\":{},\"count_by_controls\":{{{}}},\"depth\":{},"
      "\"highest_control\":{}}}",
      est.count_1q, est.count_2q, est.count_multi, by, est.depth, est.highest_control);
}

std::string report_to_json(const EquivalenceReport& r) {
  std::string failing = "null";
  if (r.failing_input) failing = "\"" + ket_string(r.failing_input->digits) + "\"";
  return fmt::format(
      "{{\"equivalent\":{},\"max_deviation\":{},\"max_leakage\":{},\"failing_input\":{},\"phase\":\"{}\","
      "\"inputs_checked\":{}}}",
      r.equivalent, format_double(r.max_deviation), format_double(r.max_leakage), failing,
      r.phase_mode == PhaseMode::Exact ? "exact" : "global", r.inputs_checked);
}

NoiseParams noise_from_json(const std::string& text) {
  try {
    const json doc = json::parse(text);
    NoiseParams p{doc.at("p_success_1q").get<double>(), doc.at("p_success_2q").get<double>(), doc.at("t1").get<double>(),
                  doc.value("source", std::string())};
    p.validate();
    return p;
  } catch (const json::exception& e) {
    throw ValidationError(fmt::format("malformed noise profile: {}", e.what()));
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError(fmt::format("cannot read '{}'", path));
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError(fmt::format("cannot write '{}'", path));
  out << contents;
}

}  // namespace dtqw
