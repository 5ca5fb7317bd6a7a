#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <fmt/format.h>
#include <fmt/ranges.h>

#include "CLI11.hpp"
#include "dtqw/decomposer.hpp"
#include "dtqw/errors.hpp"
#include "dtqw/estimator.hpp"
#include "dtqw/io.hpp"
#include "dtqw/simulator.hpp"
#include "dtqw/walk_builder.hpp"

using namespace dtqw;

namespace {

struct RunSpec {
  std::string scheme = "enhanced";
  std::string dims;
  int steps = 0;
  std::optional<double> theta, phi1, phi2;
  int coin_init = 0;
  int shots = 0;
  std::uint64_t seed = 0;
  bool exact = false;
  std::string lowering = "none";
  std::string out;
  std::string format = "csv";

  std::string noise = DTQW_DEFAULT_NOISE;
  std::optional<double> p1q, p2q, t1;

  int n_min = 3, n_max = 6;

  int mct = 0;
  std::string strategy = "intermediate";
  int base_d = 2;
  std::string input;
  std::string phase = "exact";
};

std::vector<int> parse_dims(const std::string& text) {
  std::vector<int> dims;
  std::string item;
  for (size_t i = 0; i <= text.size(); ++i) {
    if (i == text.size() || text[i] == ',') {
      try {
        size_t used = 0;
        dims.push_back(std::stoi(item, &used));
        if (used != item.size()) throw std::invalid_argument(item);
      } catch (const std::exception&) {
        throw ValidationError(fmt::format("bad --dims entry '{}'", item));
      }
      item.clear();
    } else if (text[i] != ' ') {
      item += text[i];
    }
  }
  return dims;
}

GateKind coin_of(const RunSpec& s) {
  if (!s.theta && !s.phi1 && !s.phi2) return Hadamard{};
  return GeneralCoin{s.theta.value_or(0.0), s.phi1.value_or(0.0), s.phi2.value_or(0.0)};
}

void emit(const RunSpec& s, const std::string& text) {
  if (s.out.empty() || s.out == "-")
    std::cout << text;
  else
    write_file(s.out, text);
}

Circuit walk_circuit(const RunSpec& s) {
  WalkConfig cfg{parse_scheme(s.scheme), parse_dims(s.dims), s.steps, coin_of(s)};
  Circuit c = build_walk(cfg);
  if (s.lowering != "none") c = lower_circuit(c, parse_strategy(s.lowering));
  return c;
}

NoiseParams noise_of(const RunSpec& s) {
  NoiseParams p = noise_from_json(read_file(s.noise));
  if (s.p1q) p.p_success_1q = *s.p1q;
  if (s.p2q) p.p_success_2q = *s.p2q;
  if (s.t1) p.t1 = *s.t1;
  p.validate();
  return p;
}

int cmd_build(const RunSpec& s) {
  emit(s, circuit_to_json(walk_circuit(s)));
  return 0;
}

int cmd_map(const RunSpec& s) {
  const Scheme scheme = parse_scheme(s.scheme);
  const PositionMapping m = derive_position_mapping(scheme, parse_dims(s.dims), s.steps);
  if (s.format == "json") {
    std::string out = "{\"entries\":[";
    for (size_t i = 0; i < m.entries.size(); ++i)
      out += fmt::format("{}{{\"position\":{},\"digits\":\"{}\"}}", i ? "," : "", m.entries[i].position,
                         ket_string(m.entries[i].digits));
    out += "],\"collisions\":[";
    for (size_t i = 0; i < m.collisions.size(); ++i)
      out += fmt::format("{}{{\"digits\":\"{}\",\"positions\":[{}]}}", i ? "," : "", ket_string(m.collisions[i].digits),
                         fmt::join(m.collisions[i].positions, ","));
    emit(s, out + "]}\n");
  } else {
    emit(s, mapping_to_csv(m));
  }
  if (m.collisions.empty()) return 0;
  for (const auto& c : m.collisions)
    std::cerr << fmt::format("{{\"code\":2,\"message\":\"position collision: positions {} share |{}>\"}}\n",
                             fmt::join(c.positions, ","), ket_string(c.digits));
  return 2;
}

int cmd_simulate(const RunSpec& s) {
  const Scheme scheme = parse_scheme(s.scheme);
  const std::vector<int> dims = parse_dims(s.dims);
  const Circuit c = walk_circuit(s);
  if (s.coin_init != 0 && s.coin_init != 1) throw ValidationError("--coin-init must be 0 or 1");
  std::vector<int> init(static_cast<size_t>(c.layout().num_wires()), 0);
  init[static_cast<size_t>(*c.layout().coin_wire())] = s.coin_init;
  const StateVector state = run(c, BasisState{init});
  const Distribution dist = position_distribution(state, derive_position_mapping(scheme, dims, s.steps));
  std::optional<ShotCounts> shots;
  if (s.shots > 0 && !s.exact) shots = sample(dist, s.shots, s.seed);
  emit(s, s.format == "json" ? distribution_to_json(dist, shots) : distribution_to_csv(dist, shots));
  return 0;
}

int cmd_estimate(const RunSpec& s) {
  const Scheme scheme = parse_scheme(s.scheme);
  const std::vector<int> dims = parse_dims(s.dims);
  const NoiseParams noise = noise_of(s);
  RunSpec plain = s;
  plain.lowering = "none";
  const Circuit walk = walk_circuit(plain);
  const Circuit lowered = walk_circuit(s);

  const ResourceEstimate measured = count_resources(lowered);
  const ResourceEstimate model = count_resources_lowered(walk);
  std::string out = fmt::format("{{\"scheme\":\"{}\",\"steps\":{},\"lowering\":\"{}\",\"measured\":{},\"measured_p_success\":{}",
                                scheme_name(scheme), s.steps, s.lowering, estimate_to_json(measured),
                                format_double(success_probability(measured, noise)));
  out += fmt::format(",\"cost_model\":{},\"cost_model_p_success\":{}", estimate_to_json(model),
                     format_double(success_probability(model, noise)));
  if (scheme == Scheme::Naive || scheme == Scheme::Enhanced) {
    const int n = static_cast<int>(dims.size());
    const ResourceEstimate closed = closed_form_estimate(scheme, n, s.steps);
    out += fmt::format(",\"closed_form\":{},\"closed_form_p_success\":{}", estimate_to_json(closed),
                       format_double(success_probability(closed, noise)));
    if (s.lowering == "intermediate" || s.lowering == "intermediate-qudit") {
      const IntermediateQuditCost iq = intermediate_qudit_closed_form(n);
      long long blocks = 0;
      for (const auto& g : walk.gates())
        if (g.controls.size() >= 2) blocks += 2LL * (static_cast<long long>(g.controls.size()) + 1) - 3;
      out += fmt::format(",\"intermediate_closed_form\":{{\"n\":{},\"depth\":{},\"gates\":{}}},\"mct_block_gates\":{}", n,
                         iq.depth, iq.gates, blocks);
    }
  }
  emit(s, out + "}\n");
  return 0;
}

int cmd_compare(const RunSpec& s) {
  if (s.n_min < 3 || s.n_max < s.n_min) throw ValidationError("need 3 <= --n-min <= --n-max");
  const NoiseParams noise = noise_of(s);
  std::string csv = "n,naive,enhanced\n";
  std::string json = "{\"steps\":" + std::to_string(s.steps) + ",\"rows\":[";
  for (int n = s.n_min; n <= s.n_max; ++n) {
    const std::vector<int> dims(static_cast<size_t>(n), 2);
    WalkConfig naive{Scheme::Naive, dims, s.steps, coin_of(s)};
    WalkConfig enhanced{Scheme::Enhanced, dims, s.steps, coin_of(s)};
    const ResourceEstimate a = count_resources_lowered(build_walk(naive));
    const ResourceEstimate b = count_resources_lowered(build_walk(enhanced));
    const double pa = success_probability(a, noise), pb = success_probability(b, noise);
    csv += fmt::format("{},{},{}\n", n, format_double(pa), format_double(pb));
    json += fmt::format("{}{{\"n\":{},\"naive\":{},\"naive_p_success\":{},\"enhanced\":{},\"enhanced_p_success\":{}}}",
                        n == s.n_min ? "" : ",", n, estimate_to_json(a), format_double(pa), estimate_to_json(b),
                        format_double(pb));
  }
  emit(s, s.format == "json" ? json + "]}\n" : csv);
  return 0;
}

int cmd_decompose(const RunSpec& s) {
  const LoweringStrategy strategy = parse_strategy(s.strategy);
  Circuit original;
  if (!s.input.empty()) {
    original = circuit_from_json(read_file(s.input));
  } else {
    if (s.mct < 1) throw ValidationError("give --mct <controls> or --in <circuit.json>");
    const int d = strategy == LoweringStrategy::CliffordT ? 2 : s.base_d;
    if (d < 2 || d > kMaxWireDim) throw ValidationError(fmt::format("--base-d {} outside [2, {}]", d, kMaxWireDim));
    original = Circuit(plain_layout(std::vector<int>(static_cast<size_t>(s.mct + 1), d)));
    std::vector<Control> controls;
    for (int w = 0; w < s.mct; ++w) controls.push_back({w, d - 1});
    original.add(d == 2 ? GateKind{PauliX{}} : GateKind{CyclicShift{1, d}}, s.mct, controls);
  }
  const Circuit lowered = lower_circuit(original, strategy);
  const EquivalenceReport report =
      verify_equivalence(original, lowered, s.phase == "global" ? PhaseMode::Global : PhaseMode::Exact);
  if (!s.out.empty() && s.out != "-") {
    write_file(s.out, circuit_to_json(lowered));
    std::cout << fmt::format("{{\"gates\":{},\"report\":{}}}\n", lowered.size(), report_to_json(report));
  } else {
    std::string json = circuit_to_json(lowered);
    json.pop_back();
    std::cout << fmt::format("{{\"circuit\":{},\"report\":{}}}\n", json, report_to_json(report));
  }
  return report.equivalent ? 0 : 4;
}

void walk_options(CLI::App* cmd, RunSpec& s) {
  cmd->add_option("--scheme", s.scheme, "naive | enhanced | qudit-direct | qudit-modified");
  cmd->add_option("--dims", s.dims, "position wire dimensions, q0 first (comma list)")->required();
  cmd->add_option("--steps", s.steps, "number of walk steps");
  cmd->add_option("--coin-theta", s.theta, "general coin angle theta (radians)");
  cmd->add_option("--coin-phi1", s.phi1, "general coin phase phi1 (radians)");
  cmd->add_option("--coin-phi2", s.phi2, "general coin phase phi2 (radians)");
  cmd->add_option("--out", s.out, "output file (default stdout)");
}

void lowering_option(CLI::App* cmd, RunSpec& s) {
  cmd->add_option("--lowering", s.lowering, "none | clifford-t | intermediate")
      ->check(CLI::IsMember({"none", "clifford-t", "intermediate", "intermediate-qudit"}));
}

void noise_options(CLI::App* cmd, RunSpec& s) {
  cmd->add_option("--noise", s.noise, "noise profile JSON");
  cmd->add_option("--p1q", s.p1q, "single-wire gate success probability");
  cmd->add_option("--p2q", s.p2q, "two-wire gate success probability");
  cmd->add_option("--t1", s.t1, "relaxation time in depth units");
}

void format_option(CLI::App* cmd, RunSpec& s) {
  cmd->add_option("--format", s.format, "csv | json")->check(CLI::IsMember({"csv", "json"}));
}

int fail(int code, const std::string& message) {
  std::string escaped;
  for (char ch : message) {
    if (ch == '"' || ch == '\\') escaped += '\\';
    if (ch == '\n') {
      escaped += "\\n";
      continue;
    }
    escaped += ch;
  }
  std::cerr << fmt::format("{{\"code\":{},\"message\":\"{}\"}}\n", code, escaped);
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Discrete-time quantum walk circuits on qubit and qudit registers"};
  app.require_subcommand(1);
  RunSpec s;

  auto* build = app.add_subcommand("build", "emit the walk circuit as JSON");
  walk_options(build, s);
  lowering_option(build, s);

  auto* map = app.add_subcommand("map", "emit the position-to-basis-state table");
  map->add_option("--scheme", s.scheme, "naive | enhanced | qudit-direct | qudit-modified");
  map->add_option("--dims", s.dims, "position wire dimensions, q0 first")->required();
  map->add_option("--steps", s.steps, "largest |position| to tabulate");
  map->add_option("--out", s.out, "output file (default stdout)");
  format_option(map, s);

  auto* simulate = app.add_subcommand("simulate", "position distribution after the walk");
  walk_options(simulate, s);
  lowering_option(simulate, s);
  format_option(simulate, s);
  simulate->add_option("--coin-init", s.coin_init, "initial coin level (0 or 1)");
  simulate->add_option("--shots", s.shots, "number of samples (0 for exact only)");
  simulate->add_option("--seed", s.seed, "sampling seed");
  simulate->add_flag("--exact", s.exact, "report the exact distribution without sampling");

  auto* estimate = app.add_subcommand("estimate", "resource counts and success probability");
  walk_options(estimate, s);
  lowering_option(estimate, s);
  noise_options(estimate, s);

  auto* compare = app.add_subcommand("compare", "naive vs enhanced success probability over n");
  compare->add_option("--n-min", s.n_min, "smallest number of position qubits");
  compare->add_option("--n-max", s.n_max, "largest number of position qubits");
  compare->add_option("--steps", s.steps, "walk steps")->default_val(1);
  compare->add_option("--coin-theta", s.theta, "general coin angle theta (radians)");
  compare->add_option("--coin-phi1", s.phi1, "general coin phase phi1 (radians)");
  compare->add_option("--coin-phi2", s.phi2, "general coin phase phi2 (radians)");
  compare->add_option("--out", s.out, "output file (default stdout)");
  format_option(compare, s);
  noise_options(compare, s);

  auto* decompose = app.add_subcommand("decompose", "lower multi-controlled gates and verify the result");
  decompose->add_option("--mct", s.mct, "number of controls of a single multi-controlled X");
  decompose->add_option("--in", s.input, "circuit JSON to lower instead of a single gate");
  decompose->add_option("--strategy", s.strategy, "clifford-t | intermediate")
      ->check(CLI::IsMember({"clifford-t", "intermediate", "intermediate-qudit"}));
  decompose->add_option("--base-d", s.base_d, "wire dimension for --mct");
  decompose->add_option("--phase", s.phase, "exact | global")->check(CLI::IsMember({"exact", "global"}));
  decompose->add_option("--out", s.out, "write the lowered circuit here; report goes to stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return fail(2, e.what());
  }

  try {
    if (*build) return cmd_build(s);
    if (*map) return cmd_map(s);
    if (*simulate) return cmd_simulate(s);
    if (*estimate) return cmd_estimate(s);
    if (*compare) return cmd_compare(s);
    if (*decompose) return cmd_decompose(s);
    return fail(2, "no command given");
  } catch (const ValidationError& e) {
    return fail(2, e.what());
  } catch (const UnsupportedError& e) {
    return fail(3, e.what());
  } catch (const std::exception& e) {
    return fail(4, e.what());
  }
}
