// One PASS/FAIL line per acceptance criterion. Usage: acceptance [--criterion N]

#include <sys/wait.h>
#include <unistd.h>

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

#include <fmt/format.h>

#include "dtqw/decomposer.hpp"
#include "dtqw/estimator.hpp"
#include "dtqw/simulator.hpp"
#include "dtqw/walk_builder.hpp"
#include "oracles.hpp"
#include "reference_tables.hpp"

using namespace dtqw;
namespace fs = std::filesystem;

namespace {

constexpr double kDistributionTol = 1e-10;
constexpr double kHistogramTol = 0.05;
constexpr double kLeakageTol = 1e-10;

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (ok) return;
    pass = false;
    if (!detail.empty()) detail += "; ";
    detail += what;
  }
  void note(const std::string& what) {
    if (!detail.empty()) detail += "; ";
    detail += what;
  }
};

fs::path scratch() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / ("dtqw_acceptance_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int cli(const std::string& args) {
  const std::string cmd = std::string("\"") + DTQW_CLI + "\" " + args + " 2>/dev/null";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::map<int, std::string> read_mapping_csv(const std::string& text) {
  std::map<int, std::string> out;
  std::istringstream in(text);
  std::string line;
  std::getline(in, line);
  while (std::getline(in, line)) {
    const size_t comma = line.find(',');
    out[std::stoi(line.substr(0, comma))] = line.substr(comma + 1);
  }
  return out;
}

double max_diff(const std::vector<std::pair<int, double>>& got, const std::map<int, double>& want) {
  double worst = 0.0;
  std::map<int, double> seen(want);
  for (const auto& [x, p] : got) {
    worst = std::max(worst, std::abs(p - (want.count(x) ? want.at(x) : 0.0)));
    seen.erase(x);
  }
  for (const auto& [x, p] : seen) worst = std::max(worst, p);
  return worst;
}

Distribution walk_distribution(Scheme scheme, const std::vector<int>& dims, int steps, int coin0) {
  const Circuit c = build_walk({scheme, dims, steps});
  std::vector<int> init(static_cast<size_t>(c.layout().num_wires()), 0);
  init[static_cast<size_t>(*c.layout().coin_wire())] = coin0;
  return position_distribution(run(c, BasisState{init}), derive_position_mapping(scheme, dims, steps));
}

long long controlled(const ResourceEstimate& e) {
  long long c = 0;
  for (auto [k, v] : e.count_by_controls)
    if (k > 0) c += v;
  return c;
}

Outcome mapping_tables() {
  struct Case {
    std::string name, args;
    const std::map<int, std::string>* want;
    bool collides;
    bool typo_row;
  };
  const std::vector<Case> cases{
      {"naive n=3", "--scheme naive --dims 2,2,2 --steps 3", &reference::kNaive3, false, false},
      {"enhanced n=3", "--scheme enhanced --dims 2,2,2 --steps 3", &reference::kEnhanced3, false, false},
      {"enhanced n=4", "--scheme enhanced --dims 2,2,2,2 --steps 7", &reference::kEnhanced4, false, false},
      {"direct 2,4,4", "--scheme qudit-direct --dims 2,4,4 --steps 16", &reference::kDirect244, true, true},
      {"modified 4,4,4", "--scheme qudit-modified --dims 4,4,4 --steps 32", &reference::kModified444, true, true},
      {"modified 4,3,3", "--scheme qudit-modified --dims 4,3,3 --steps 18", &reference::kModified433, true, false}};
  Outcome o;
  for (const Case& c : cases) {
    const fs::path file = scratch() / "map.csv";
    fs::remove(file);
    const auto start = std::chrono::steady_clock::now();
    const int code = cli("map " + c.args + " --out " + file.string());
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    o.require(code == (c.collides ? 2 : 0), fmt::format("{}: exit {}", c.name, code));
    o.require(secs < 1.0, fmt::format("{}: {:.2f}s", c.name, secs));
    std::map<int, std::string> got = read_mapping_csv(slurp(file));
    std::map<int, std::string> want = *c.want;
    if (c.typo_row) {
      o.note(fmt::format("{}: x=-7 emitted |{}>, table shows |{}>", c.name, got[-7], want.at(-7)));
      got.erase(-7);
      want.erase(-7);
    }
    int mismatches = 0;
    for (const auto& [x, ket] : want) mismatches += !got.count(x) || got.at(x) != ket;
    o.require(mismatches == 0 && got.size() == want.size(),
              fmt::format("{}: {} cell mismatches, {} rows vs {}", c.name, mismatches, got.size(), want.size()));
  }
  o.note("all listed tables cell-for-cell");
  return o;
}

Outcome collision_detection() {
  Outcome o;
  const PositionMapping m = derive_position_mapping(Scheme::QuditDirect, std::vector<int>{2, 4, 4}, 16);
  o.require(m.collisions.size() == 1, fmt::format("{} collisions", m.collisions.size()));
  if (m.collisions.size() == 1) {
    const Collision& c = m.collisions.front();
    o.require(c.positions == std::vector<int>{-16, 16}, "collision not at +-16");
    o.require(ket_string(c.digits) == "200", "collision ket " + ket_string(c.digits));
    o.note(fmt::format("x=+-16 share |{}>", ket_string(c.digits)));
  }
  const PositionMapping inside = derive_position_mapping(Scheme::QuditDirect, std::vector<int>{2, 4, 4}, 15);
  o.require(inside.collisions.empty(), "collision before the boundary");
  return o;
}

Outcome exact_distributions() {
  Outcome o;
  struct Case {
    int n, steps;
    const std::map<int, double>* histogram;
  };
  for (const Case& c : {Case{3, 3, &reference::kHistogram3}, Case{4, 7, &reference::kHistogram4}}) {
    const Distribution d = walk_distribution(Scheme::Enhanced, std::vector<int>(static_cast<size_t>(c.n), 2), c.steps, 1);
    const double oracle_diff = max_diff(d.entries, oracle::line_walk(c.steps, oracle::hadamard(), 1));
    o.require(oracle_diff <= kDistributionTol, fmt::format("n={} oracle diff {:.3g}", c.n, oracle_diff));
    double hist_diff = 0.0;
    for (const auto& [x, p] : *c.histogram) {
      double got = 0.0;
      for (const auto& [y, q] : d.entries)
        if (y == x) got = q;
      hist_diff = std::max(hist_diff, std::abs(got - p));
    }
    o.require(hist_diff <= kHistogramTol, fmt::format("n={} histogram diff {:.4f}", c.n, hist_diff));
    o.note(fmt::format("n={} t={}: oracle diff {:.2g}, histogram diff {:.4f}", c.n, c.steps, oracle_diff, hist_diff));
  }
  return o;
}

Outcome scheme_equivalence() {
  Outcome o;
  double worst = 0.0;
  int runs = 0;
  for (int n = 2; n <= 5; ++n) {
    const std::vector<int> dims(static_cast<size_t>(n), 2);
    for (int t = 0; t <= derive_max_steps(Scheme::Naive, dims); ++t)
      for (int coin0 : {0, 1}) {
        const Distribution a = walk_distribution(Scheme::Naive, dims, t, coin0);
        const Distribution b = walk_distribution(Scheme::Enhanced, dims, t, coin0);
        std::map<int, double> want(b.entries.begin(), b.entries.end());
        worst = std::max(worst, max_diff(a.entries, want));
        ++runs;
      }
  }
  o.require(worst <= kDistributionTol, fmt::format("max diff {:.3g}", worst));
  o.note(fmt::format("{} walks compared, max diff {:.2g}", runs, worst));
  return o;
}

Outcome decomposition_correctness() {
  Outcome o;
  Circuit ccx(plain_layout(std::vector<int>{2, 2, 2}));
  ccx.add(PauliX{}, 2, {{0, 1}, {1, 1}});
  const EquivalenceReport ct =
      verify_equivalence(ccx, lower_circuit(ccx, LoweringStrategy::CliffordT), PhaseMode::Exact, Execution::Serial);
  o.require(ct.equivalent && ct.inputs_checked == 8, fmt::format("clifford+t deviation {:.3g}", ct.max_deviation));
  int checked = 0;
  double leak = 0.0, dev = 0.0;
  for (int d : {2, 3, 4})
    for (int n = 2; n <= 7; ++n) {
      Circuit original(plain_layout(std::vector<int>(static_cast<size_t>(n + 1), d)));
      std::vector<Control> controls;
      for (int w = 0; w < n; ++w) controls.push_back({w, d - 1});
      original.add(d == 2 ? GateKind{PauliX{}} : GateKind{CyclicShift{1, d}}, n, controls);
      const EquivalenceReport r = verify_equivalence(original, decompose_mct_intermediate(n, d));
      o.require(r.equivalent, fmt::format("n={} d={} not equivalent", n, d));
      leak = std::max(leak, r.max_leakage);
      dev = std::max(dev, r.max_deviation);
      ++checked;
    }
  o.require(leak <= kLeakageTol, fmt::format("leakage {:.3g}", leak));
  o.note(fmt::format("clifford+t phase-exact over 8 inputs; {} intermediate lowerings, max deviation {:.2g}, leakage {:.2g}",
                     checked, dev, leak));
  return o;
}

Outcome resource_claims() {
  Outcome o;
  for (int n = 3; n <= 6; ++n) {
    const std::vector<int> dims(static_cast<size_t>(n), 2);
    const Circuit naive = build_walk({Scheme::Naive, dims, 1});
    const Circuit enh = build_walk({Scheme::Enhanced, dims, 1});
    const ResourceEstimate un = count_resources(naive), ue = count_resources(enh);
    o.require(ue.highest_control == n - 1 && un.highest_control == n,
              fmt::format("n={} highest control {} vs {}", n, ue.highest_control, un.highest_control));

    const long long top_e = ue.count_by_controls.at(ue.highest_control);
    const long long top_n = un.count_by_controls.at(un.highest_control);
    o.require(2 * top_e == top_n, fmt::format("n={} highest-control gates {} vs {}", n, top_e, top_n));
    o.require(controlled(ue) == n - 1 && controlled(un) == 2 * n,
              fmt::format("n={} controlled gates {} vs {}", n, controlled(ue), controlled(un)));

    for (auto [scheme, circuit] : {std::pair{Scheme::Enhanced, &enh}, std::pair{Scheme::Naive, &naive}}) {
      const ResourceEstimate m = count_resources_lowered(*circuit);
      const ResourceEstimate f = closed_form_estimate(scheme, n, 1);
      const std::string tag = fmt::format("{} n={}", scheme_name(scheme), n);
      o.require(m.count_1q == f.count_1q, fmt::format("{} 1q measured {} vs closed form {}", tag, m.count_1q, f.count_1q));
      o.require(m.count_2q == f.count_2q, fmt::format("{} 2q measured {} vs closed form {}", tag, m.count_2q, f.count_2q));
      o.require(m.depth == f.depth, fmt::format("{} depth measured {} vs closed form {}", tag, m.depth, f.depth));
      o.require(m.highest_control == f.highest_control, fmt::format("{} highest control", tag));
    }
  }
  if (o.pass) o.note("highest control n-1 vs n, half as many highest-control gates, closed forms exact");
  return o;
}

Outcome success_ordering() {
  Outcome o;
  oracle::Rng rng(2718);
  int trials = 0;
  std::vector<std::pair<ResourceEstimate, ResourceEstimate>> pairs;
  for (int n = 3; n <= 6; ++n) {
    const std::vector<int> dims(static_cast<size_t>(n), 2);
    pairs.push_back({count_resources_lowered(build_walk({Scheme::Naive, dims, 1})),
                     count_resources_lowered(build_walk({Scheme::Enhanced, dims, 1}))});
    pairs.push_back({closed_form_estimate(Scheme::Naive, n, 1), closed_form_estimate(Scheme::Enhanced, n, 1)});
  }
  for (int i = 0; i < 2000; ++i) {
    NoiseParams p{rng.real(0.9, 1.0), rng.real(0.9, 1.0), rng.real(10.0, 1e6), ""};
    if (i % 3 == 0) p.p_success_1q = 1.0;
    if (i % 3 == 1) p.p_success_2q = 1.0;
    for (const auto& [naive, enh] : pairs) {
      const double pn = success_probability(naive, p), pe = success_probability(enh, p);
      o.require(pe > pn, fmt::format("p1q={} p2q={} t1={}: {} <= {}", p.p_success_1q, p.p_success_2q, p.t1, pe, pn));
      if (!o.pass) return o;
      ++trials;
    }
  }
  o.note(fmt::format("{} comparisons, enhanced always higher", trials));
  return o;
}

Outcome intermediate_formulas() {
  Outcome o;
  const IntermediateQuditCost three = intermediate_qudit_closed_form(3);
  const IntermediateQuditCost four = intermediate_qudit_closed_form(4);
  o.require(three.depth == 16, fmt::format("N=3 depth {}", three.depth));
  o.require(four.gates == 52, fmt::format("N=4 gates {} (expected 52)", four.gates));
  for (int n = 2; n <= 7; ++n) {
    const long long x = n + 1;
    const auto got = static_cast<long long>(decompose_mct_intermediate(n, 2).size());
    o.require(got == 2 * x - 3, fmt::format("{} controls: block of {} vs {}", n, got, 2 * x - 3));
  }
  o.note(fmt::format("N=3 depth {}, N=4 gates {}, blocks 2x-3 for 2..7 controls", three.depth, four.gates));
  return o;
}

Outcome determinism() {
  Outcome o;
  for (int seed : {0, 7, 123456789}) {
    std::string first;
    for (int rep = 0; rep < 3; ++rep) {
      const fs::path file = scratch() / fmt::format("shots_{}_{}.csv", seed, rep);
      const int code = cli(fmt::format("simulate --scheme enhanced --dims 2,2,2,2 --steps 7 --coin-init 1 --shots 1024 "
                                       "--seed {} --out {}",
                                       seed, file.string()));
      o.require(code == 0, fmt::format("seed {} exit {}", seed, code));
      const std::string text = slurp(file);
      if (rep == 0)
        first = text;
      else
        o.require(text == first && !text.empty(), fmt::format("seed {} run {} differs", seed, rep));
    }
  }
  o.note("3 seeds x 3 runs byte-identical");
  return o;
}

struct Criterion {
  const char* name;
  double budget_seconds;
  std::function<Outcome()> check;
};

const std::vector<Criterion> kCriteria{
    {"mapping tables", 6.0, mapping_tables},
    {"collision detection", 1.0, collision_detection},
    {"exact distributions", 1.0, exact_distributions},
    {"scheme equivalence", 30.0, scheme_equivalence},
    {"decomposition correctness", 60.0, decomposition_correctness},
    {"resource claims", 10.0, resource_claims},
    {"success-probability ordering", 30.0, success_ordering},
    {"intermediate-qudit formulas", 10.0, intermediate_formulas},
    {"determinism", 30.0, determinism},
};

bool run_one(size_t index) {
  const Criterion& c = kCriteria[index];
  const auto start = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = c.check();
  } catch (const std::exception& e) {
    o.require(false, std::string("exception: ") + e.what());
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  o.require(secs < c.budget_seconds, fmt::format("took {:.2f}s, budget {:.0f}s", secs, c.budget_seconds));
  std::cout << fmt::format("C{} {} {} ({:.2f}s): {}\n", index + 1, o.pass ? "PASS" : "FAIL", c.name, secs, o.detail);
  return o.pass;
}

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--criterion" && i + 1 < argc) {
      only = std::atoi(argv[++i]);
    } else {
      std::cerr << "usage: acceptance [--criterion N]\n";
      return 2;
    }
  }
  if (only < 0 || only > static_cast<int>(kCriteria.size())) {
    std::cerr << "criterion must be in 1.." << kCriteria.size() << "\n";
    return 2;
  }
  bool ok = true;
  for (size_t i = 0; i < kCriteria.size(); ++i)
    if (only == 0 || static_cast<int>(i) + 1 == only) ok = run_one(i) && ok;
  fs::remove_all(scratch());
  return ok ? 0 : 1;
}
