#include "dtqw/decomposer.hpp"

#include <algorithm>
#include <cmath>
#include <ranges>

#include <fmt/format.h>

#include "dtqw/errors.hpp"

namespace dtqw {

namespace {

bool is_binary_x(const GateKind& kind) {
  if (std::holds_alternative<PauliX>(kind)) return true;
  const auto* s = std::get_if<CyclicShift>(&kind);
  return s && s->d == 2 && s->k % 2 == 1;
}

struct Join {
  int sender;
  int sender_level;
  int receiver;
  int cycle;
  int layer;
};

struct Node {
  int slot;
  int ready;
};

// Balanced join tree over the controls; each join raises the receiver one level.
class JoinTree {
 public:
  JoinTree(std::vector<int> wires, std::vector<int> top_levels) : wires_(std::move(wires)), level_(std::move(top_levels)) {}

  Node build(int lo, int hi) {
    const int n = hi - lo;
    if (n == 1) return {lo, 0};
    if (n == 2) {
      Node b{lo + 1, 0};
      join({lo, 0}, b);
      return b;
    }
    const int left = n / 2;
    const Node l = build(lo, lo + left);
    Node r = build(lo + left + 1, hi);
    join(l, r);
    Node mid{lo + left, 0};
    join(r, mid);
    return mid;
  }

  int wire(int slot) const { return wires_[static_cast<size_t>(slot)]; }
  int level(int slot) const { return level_[static_cast<size_t>(slot)]; }
  const std::vector<Join>& joins() const { return joins_; }

 private:
  void join(const Node& from, Node& to) {
    const int layer = std::max(from.ready, to.ready) + 1;
    int& rl = level_[static_cast<size_t>(to.slot)];
    joins_.push_back({wire(from.slot), level(from.slot), wire(to.slot), rl + 2, layer});
    rl += 1;
    to.ready = layer;
  }

  std::vector<int> wires_;
  std::vector<int> level_;
  std::vector<Join> joins_;
};

// Sparse column of a circuit: basis index -> amplitude, sorted by index.
using Sparse = std::vector<std::pair<Index, Complex>>;

struct SparsePlan {
  Index stride;
  int dim;
  std::vector<std::pair<Index, std::pair<Index, Index>>> controls;  // stride, (dim, level)
  bool permutation;
  SquareMatrix u;
};

std::vector<Index> strides_of(std::span<const int> dims) {
  std::vector<Index> s(dims.size(), 1);
  for (size_t w = 1; w < dims.size(); ++w) s[w] = s[w - 1] * static_cast<Index>(dims[w - 1]);
  return s;
}

std::vector<SparsePlan> sparse_plans(const Circuit& c) {
  const std::vector<int> dims = c.effective_dims();
  const std::vector<Index> strides = strides_of(dims);
  std::vector<SparsePlan> plans;
  for (const auto& g : c.gates()) {
    SparsePlan p{strides[static_cast<size_t>(g.target)], dims[static_cast<size_t>(g.target)], {}, is_permutation(g.kind),
                 gate_unitary(g.kind, dims[static_cast<size_t>(g.target)])};
    for (const Control& ctl : g.controls)
      p.controls.push_back({strides[static_cast<size_t>(ctl.wire)],
                            {static_cast<Index>(dims[static_cast<size_t>(ctl.wire)]), static_cast<Index>(ctl.level)}});
    plans.push_back(std::move(p));
  }
  return plans;
}

Sparse run_sparse(const std::vector<SparsePlan>& plans, Index input) {
  Sparse state{{input, Complex(1.0, 0.0)}};
  Sparse next;
  for (const SparsePlan& p : plans) {
    next.clear();
    for (const auto& [i, a] : state) {
      bool active = true;
      for (const auto& [stride, dl] : p.controls) active = active && (i / stride) % dl.first == dl.second;
      if (!active) {
        next.emplace_back(i, a);
        continue;
      }
      const int t = static_cast<int>((i / p.stride) % static_cast<Index>(p.dim));
      const Index zero = i - static_cast<Index>(t) * p.stride;
      for (int r = 0; r < p.dim; ++r) {
        const Complex m = p.u(r, t);
        if (m != Complex(0.0, 0.0)) next.emplace_back(zero + static_cast<Index>(r) * p.stride, m * a);
      }
    }
    std::sort(next.begin(), next.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    state.clear();
    for (const auto& [i, a] : next) {
      if (!state.empty() && state.back().first == i)
        state.back().second += a;
      else
        state.emplace_back(i, a);
    }
  }
  return state;
}

Index reindex(Index i, std::span<const int> from, std::span<const Index> to_strides) {
  Index out = 0;
  for (size_t w = 0; w < from.size(); ++w) {
    out += (i % static_cast<Index>(from[w])) * to_strides[w];
    i /= static_cast<Index>(from[w]);
  }
  return out;
}

bool elevated(Index i, std::span<const int> dims, std::span<const int> base) {
  for (size_t w = 0; w < dims.size(); ++w) {
    if (static_cast<int>(i % static_cast<Index>(dims[w])) >= base[w]) return true;
    i /= static_cast<Index>(dims[w]);
  }
  return false;
}

}  // namespace

LoweringStrategy parse_strategy(std::string_view name) {
  if (name == "clifford-t") return LoweringStrategy::CliffordT;
  if (name == "intermediate" || name == "intermediate-qudit") return LoweringStrategy::IntermediateQudit;
  throw ValidationError(fmt::format("unknown lowering strategy '{}'", name));
}

Circuit decompose_toffoli_clifford_t(const GateApplication& g, const RegisterLayout& layout) {
  if (g.controls.size() != 2)
    throw UnsupportedError(fmt::format("clifford-t lowering handles exactly two controls, got {}", g.controls.size()));
  if (!is_binary_x(g.kind)) throw UnsupportedError("clifford-t lowering handles controlled X only");
  for (const Control& c : g.controls)
    if (c.level != 1 || layout.dim(c.wire) != 2) throw UnsupportedError("clifford-t lowering needs qubit controls on |1>");
  if (layout.dim(g.target) != 2) throw UnsupportedError("clifford-t lowering needs a qubit target");

  const int a = g.controls[0].wire, b = g.controls[1].wire, t = g.target;
  Circuit c(layout);
  c.add(Hadamard{}, t);
  c.add(PauliX{}, t, {{b, 1}});
  c.add(TDagger{}, t);
  c.add(PauliX{}, t, {{a, 1}});
  c.add(TGate{}, t);
  c.add(PauliX{}, t, {{b, 1}});
  c.add(TDagger{}, t);
  c.add(PauliX{}, t, {{a, 1}});
  c.add(PauliX{}, b, {{a, 1}});
  c.add(TDagger{}, b);
  c.add(PauliX{}, b, {{a, 1}});
  c.add(TGate{}, a);
  c.add(TGate{}, b);
  c.add(TGate{}, t);
  c.add(Hadamard{}, t);
  return c;
}

MctLowering lower_mct_intermediate(const GateApplication& g, std::span<const int> dims) {
  MctLowering out;
  if (g.controls.size() < 2) {
    out.gates.push_back(g);
    return out;
  }
  std::vector<int> wires, tops;
  std::vector<GateApplication> conj;
  for (const Control& c : g.controls) {
    const int d = dims[static_cast<size_t>(c.wire)];
    if (c.level < 0 || c.level >= d) throw ValidationError("control level exceeds wire dimension");
    if (c.level != d - 1) conj.push_back({CyclicShift{d - 1 - c.level, d}, c.wire, {}});
    wires.push_back(c.wire);
    tops.push_back(d - 1);
  }

  JoinTree tree(wires, tops);
  const Node root = tree.build(0, static_cast<int>(wires.size()));
  std::vector<Join> joins = tree.joins();
  auto by_layer = [](const Join& x, const Join& y) {
    if (x.layer != y.layer) return x.layer < y.layer;
    return std::min(x.sender, x.receiver) < std::min(y.sender, y.receiver);
  };
  std::stable_sort(joins.begin(), joins.end(), by_layer);

  out.gates = conj;
  for (const Join& j : joins) {
    out.gates.push_back({CyclicShift{1, j.cycle}, j.receiver, {{j.sender, j.sender_level}}});
    int& od = out.overrides[j.receiver];
    od = std::max({od, j.cycle, dims[static_cast<size_t>(j.receiver)]});
    out.preparation_layers = std::max(out.preparation_layers, j.layer);
  }
  out.root_wire = tree.wire(root.slot);
  out.root_level = tree.level(root.slot);
  out.gates.push_back({g.kind, g.target, {{out.root_wire, out.root_level}}});

  for (const Join& j : std::views::reverse(joins)) out.gates.push_back({CyclicShift{j.cycle - 1, j.cycle}, j.receiver, {{j.sender, j.sender_level}}});
  for (const auto& c : conj) out.gates.push_back({inverse(c.kind), c.target, {}});

  for (auto it = out.overrides.begin(); it != out.overrides.end();) {
    if (it->second <= dims[static_cast<size_t>(it->first)])
      it = out.overrides.erase(it);
    else
      ++it;
  }
  return out;
}

int preparation_layers(int n_controls) {
  if (n_controls < 2) return 0;
  JoinTree tree(std::vector<int>(static_cast<size_t>(n_controls)), std::vector<int>(static_cast<size_t>(n_controls), 1));
  return tree.build(0, n_controls).ready;
}

Circuit decompose_mct_intermediate(int n_controls, int base_d) {
  if (n_controls < 1) throw ValidationError("need at least one control");
  if (base_d < 2 || base_d > kMaxWireDim) throw ValidationError(fmt::format("base dimension {} outside [2, {}]", base_d, kMaxWireDim));
  const std::vector<int> dims(static_cast<size_t>(n_controls + 1), base_d);
  GateApplication g{base_d == 2 ? GateKind{PauliX{}} : GateKind{CyclicShift{1, base_d}}, n_controls, {}};
  for (int w = 0; w < n_controls; ++w) g.controls.push_back({w, base_d - 1});
  Circuit c(plain_layout(dims));
  const MctLowering low = lower_mct_intermediate(g, dims);
  for (auto [w, d] : low.overrides) c.raise_dim(w, d);
  for (const auto& x : low.gates) c.add(x);
  return c;
}

Circuit lower_circuit(const Circuit& circuit, LoweringStrategy strategy) {
  Circuit out(circuit.layout());
  for (auto [w, d] : circuit.dim_overrides()) out.raise_dim(w, d);
  const std::vector<int> dims = circuit.effective_dims();
  for (const auto& g : circuit.gates()) {
    if (g.controls.size() < 2) {
      out.add(g);
      continue;
    }
    if (strategy == LoweringStrategy::CliffordT) {
      if (g.controls.size() > 2)
        throw UnsupportedError(fmt::format("clifford-t lowering supports at most two controls, gate has {}", g.controls.size()));
      const Circuit t = decompose_toffoli_clifford_t(g, circuit.layout());
      for (const auto& x : t.gates()) out.add(x);
      continue;
    }
    const MctLowering low = lower_mct_intermediate(g, dims);
    for (auto [w, d] : low.overrides) out.raise_dim(w, d);
    for (const auto& x : low.gates) out.add(x);
  }
  return out;
}

EquivalenceReport verify_equivalence(const Circuit& original, const Circuit& lowered, PhaseMode mode, Execution exec) {
  if (!(original.layout() == lowered.layout())) throw ValidationError("circuits are defined on different registers");
  const std::vector<int> base = original.layout().dims();
  const std::vector<int> odims = original.effective_dims();
  const std::vector<int> ldims = lowered.effective_dims();
  std::vector<int> cdims(base.size());
  for (size_t w = 0; w < base.size(); ++w) cdims[w] = std::max(odims[w], ldims[w]);
  const std::vector<Index> cstrides = strides_of(cdims);

  const Index inputs = original.layout().state_size();
  if (inputs > (Index{1} << 22)) throw UnsupportedError("too many basis inputs to verify exhaustively");
  const auto oplans = sparse_plans(original);
  const auto lplans = sparse_plans(lowered);

  auto column = [&](const std::vector<SparsePlan>& plans, std::span<const int> dims, Index input) {
    Sparse s = run_sparse(plans, reindex(input, base, strides_of(dims)));
    for (auto& [i, a] : s) i = reindex(i, dims, cstrides);
    std::sort(s.begin(), s.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    return s;
  };

  Complex phase = 1.0;
  if (mode == PhaseMode::Global) {
    const Sparse o = column(oplans, odims, 0), l = column(lplans, ldims, 0);
    auto best = std::max_element(o.begin(), o.end(), [](const auto& x, const auto& y) { return std::abs(x.second) < std::abs(y.second); });
    if (best != o.end()) {
      auto hit = std::lower_bound(l.begin(), l.end(), best->first, [](const auto& x, Index i) { return x.first < i; });
      if (hit != l.end() && hit->first == best->first && std::abs(hit->second) > 0.0) {
        const Complex r = hit->second / best->second;
        phase = r / std::abs(r);
      }
    }
  }

  std::vector<double> deviation(inputs), leakage(inputs);
  auto check = [&](Index input) {
    const Sparse o = column(oplans, odims, input), l = column(lplans, ldims, input);
    double dev = 0.0, leak = 0.0;
    size_t a = 0, b = 0;
    while (a < o.size() || b < l.size()) {
      Complex x = 0.0, y = 0.0;
      Index i;
      if (b == l.size() || (a < o.size() && o[a].first < l[b].first)) {
        i = o[a].first;
        x = o[a++].second;
      } else if (a == o.size() || l[b].first < o[a].first) {
        i = l[b].first;
        y = l[b++].second;
      } else {
        i = o[a].first;
        x = o[a++].second;
        y = l[b++].second;
      }
      dev = std::max(dev, std::abs(y - phase * x));
      if (elevated(i, cdims, base)) leak = std::max(leak, std::abs(y));
    }
    deviation[input] = dev;
    leakage[input] = leak;
  };

  if (exec == Execution::Serial) {
    for (Index i = 0; i < inputs; ++i) check(i);
  } else {
    const long long n = static_cast<long long>(inputs);
    #pragma omp parallel for schedule(dynamic, 64)
    for (long long i = 0; i < n; ++i) check(static_cast<Index>(i));
  }

  EquivalenceReport report;
  report.phase_mode = mode;
  report.inputs_checked = inputs;
  for (Index i = 0; i < inputs; ++i) {
    report.max_deviation = std::max(report.max_deviation, deviation[i]);
    report.max_leakage = std::max(report.max_leakage, leakage[i]);
    if (!report.failing_input && deviation[i] > kEquivalenceTolerance) report.failing_input = BasisState{basis_digits(base, i)};
  }
  report.equivalent = !report.failing_input;
  return report;
}

}  // namespace dtqw
