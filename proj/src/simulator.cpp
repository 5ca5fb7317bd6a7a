#include "dtqw/simulator.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "dtqw/errors.hpp"
#include "dtqw/kernels.hpp"

namespace dtqw {

StateVector::StateVector(const RegisterLayout& layout, std::map<int, int> overrides, const BasisState& initial)
    : layout_(layout), dims_(layout.dims()) {
  for (auto [w, d] : overrides) {
    if (w < 0 || w >= layout.num_wires() || d < layout.dim(w) || d > layout.dim(w) + kMaxElevation)
      throw ValidationError(fmt::format("invalid dimension override {} on wire {}", d, w));
    dims_[static_cast<size_t>(w)] = d;
  }
  Index size = 1;
  for (int d : dims_) {
    size *= static_cast<Index>(d);
    if (size > kMaxStateSize) throw ValidationError("state exceeds the 2^26 amplitude cap");
  }
  std::vector<int> digits = initial.digits;
  if (digits.empty()) digits.assign(dims_.size(), 0);
  amps_.assign(size, Complex(0.0, 0.0));
  amps_[basis_index(dims_, digits)] = 1.0;
}

void StateVector::apply(const GateApplication& gate, Execution exec) {
  const kernels::GatePlan plan = kernels::plan_gate(dims_, gate);
  if (exec == Execution::Serial)
    kernels::apply_serial(amps_, plan);
  else
    kernels::apply_parallel(amps_, plan);
}

Complex StateVector::amplitude(const BasisState& state) const { return amps_[basis_index(dims_, state.digits)]; }

double StateVector::norm() const {
  double sum = 0.0;
  for (const Complex& a : amps_) sum += std::norm(a);
  return std::sqrt(sum);
}

StateVector apply_gate(StateVector state, const GateApplication& gate, Execution exec) {
  state.apply(gate, exec);
  return state;
}

StateVector run(const Circuit& circuit, const BasisState& initial, Execution exec) {
  StateVector state(circuit.layout(), circuit.dim_overrides(), initial);
  for (const auto& g : circuit.gates()) state.apply(g, exec);
  return state;
}

Distribution position_distribution(const StateVector& state, const PositionMapping& mapping) {
  const RegisterLayout& layout = state.layout();
  const auto& pos = layout.position_wires();
  const std::vector<int> base = layout.position_dims();
  if (base != mapping.dims) throw ValidationError("position mapping does not match the register");

  Index keys = 1;
  for (int d : base) keys *= static_cast<Index>(d);
  std::vector<int> slot(keys, -1);
  Distribution dist;
  for (const auto& e : mapping.entries) {
    Index key = basis_index(base, e.digits);
    if (slot[key] < 0)
      slot[key] = static_cast<int>(dist.entries.size());
    else
      dist.ambiguous.push_back(e.position);
    dist.entries.emplace_back(e.position, 0.0);
  }

  const auto& dims = state.dims();
  const auto amps = state.amplitudes();
  const std::optional<int> coin = layout.coin_wire();
  for (Index i = 0; i < amps.size(); ++i) {
    const double p = std::norm(amps[i]);
    if (p == 0.0) continue;
    std::vector<int> digits = basis_digits(dims, i);
    bool mapped = !coin || digits[static_cast<size_t>(*coin)] < 2;
    Index key = 0;
    for (size_t j = pos.size(); mapped && j-- > 0;) {
      const int v = digits[static_cast<size_t>(pos[j])];
      if (v >= base[j]) mapped = false;
      key = key * static_cast<Index>(base[j]) + static_cast<Index>(v);
    }
    if (mapped && slot[key] >= 0)
      dist.entries[static_cast<size_t>(slot[key])].second += p;
    else
      dist.residual += p;
  }
  return dist;
}

double uniform_draw(std::uint64_t seed, std::uint64_t counter) {
  std::uint64_t z = seed + (counter + 1) * 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  z ^= z >> 31;
  return static_cast<double>(z >> 11) * 0x1.0p-53;
}

ShotCounts sample(const Distribution& dist, int shots, std::uint64_t seed) {
  if (shots < 0) throw ValidationError("shots must be non-negative");
  std::vector<double> cdf;
  double acc = 0.0;
  for (const auto& [x, p] : dist.entries) cdf.push_back(acc += p);
  cdf.push_back(acc += dist.residual);

  ShotCounts out{shots, seed, {}, 0};
  for (const auto& [x, p] : dist.entries) out.counts[x] = 0;
  if (shots == 0) return out;
  if (!(acc > 0.0)) throw ValidationError("cannot sample from an empty distribution");
  for (int s = 0; s < shots; ++s) {
    const double u = uniform_draw(seed, static_cast<std::uint64_t>(s)) * acc;
    size_t b = static_cast<size_t>(std::upper_bound(cdf.begin(), cdf.end(), u) - cdf.begin());
    b = std::min(b, cdf.size() - 1);
    if (b == dist.entries.size())
      ++out.residual;
    else
      ++out.counts[dist.entries[b].first];
  }
  return out;
}

}  // namespace dtqw
