#include <fmt/format.h>

#include "dtqw/errors.hpp"
#include "dtqw/kernels.hpp"
#include "kernel_group.hpp"

namespace dtqw::kernels {

GatePlan plan_gate(std::span<const int> dims, const GateApplication& gate) {
  const int n = static_cast<int>(dims.size());
  auto stride_of = [&](int wire) {
    Index s = 1;
    for (int w = 0; w < wire; ++w) s *= static_cast<Index>(dims[static_cast<size_t>(w)]);
    return s;
  };
  if (gate.target < 0 || gate.target >= n) throw ValidationError("target wire out of range");

  GatePlan plan;
  plan.dim = dims[static_cast<size_t>(gate.target)];
  if (plan.dim > kMaxGroup) throw ValidationError(fmt::format("wire dimension {} too large", plan.dim));
  plan.stride = stride_of(gate.target);
  for (const Control& c : gate.controls) {
    if (c.wire < 0 || c.wire >= n || c.wire == gate.target) throw ValidationError("bad control wire");
    const int d = dims[static_cast<size_t>(c.wire)];
    if (c.level < 0 || c.level >= d) throw ValidationError("control level exceeds wire dimension");
    plan.controls.push_back({stride_of(c.wire), static_cast<Index>(d), static_cast<Index>(c.level)});
  }
  const SquareMatrix u = gate_unitary(gate.kind, plan.dim);
  if (is_permutation(gate.kind)) {
    plan.permutation = true;
    for (int v = 0; v < plan.dim; ++v) plan.perm.push_back(permute_level(gate.kind, v));
  } else {
    plan.matrix = u.data;
  }
  return plan;
}

void apply_serial(std::span<Complex> amps, const GatePlan& plan) {
  const std::vector<Complex> in(amps.begin(), amps.end());
  const Index d = static_cast<Index>(plan.dim);
  std::vector<Index> source(d);
  if (plan.permutation)
    for (Index v = 0; v < d; ++v) source[static_cast<Index>(plan.perm[v])] = v;

  for (Index i = 0; i < in.size(); ++i) {
    bool active = true;
    for (const ControlMask& c : plan.controls) active = active && (i / c.stride) % c.dim == c.level;
    if (!active) continue;
    const Index t = (i / plan.stride) % d;
    const Index zero = i - t * plan.stride;
    if (plan.permutation) {
      amps[i] = in[zero + source[t] * plan.stride];
      continue;
    }
    Complex acc = 0.0;
    for (Index c = 0; c < d; ++c) acc += plan.matrix[t * d + c] * in[zero + c * plan.stride];
    amps[i] = acc;
  }
}

}  // namespace dtqw::kernels
