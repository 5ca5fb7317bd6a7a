#pragma once

#include <array>

#include "dtqw/kernels.hpp"

namespace dtqw::kernels {

inline constexpr int kMaxGroup = kMaxWireDim + kMaxElevation;

// Applies the plan to the g-th group of amplitudes that differ only on the target digit.
inline void apply_group(Complex* amps, const GatePlan& plan, Index g) {
  const Index d = static_cast<Index>(plan.dim);
  const Index base = (g / plan.stride) * plan.stride * d + g % plan.stride;
  for (const ControlMask& c : plan.controls)
    if ((base / c.stride) % c.dim != c.level) return;

  std::array<Complex, kMaxGroup> in;
  for (Index v = 0; v < d; ++v) in[v] = amps[base + v * plan.stride];
  if (plan.permutation) {
    for (Index v = 0; v < d; ++v) amps[base + static_cast<Index>(plan.perm[v]) * plan.stride] = in[v];
    return;
  }
  for (Index r = 0; r < d; ++r) {
    Complex acc = 0.0;
    const Complex* row = plan.matrix.data() + r * d;
    for (Index c = 0; c < d; ++c) acc += row[c] * in[c];
    amps[base + r * plan.stride] = acc;
  }
}

}  // namespace dtqw::kernels
