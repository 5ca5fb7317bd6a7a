#pragma once

#include <span>
#include <vector>

#include "dtqw/core.hpp"

namespace dtqw::kernels {

struct ControlMask {
  Index stride = 1;
  Index dim = 2;
  Index level = 1;
};

// A gate resolved against concrete wire dimensions.
struct GatePlan {
  Index stride = 1;
  int dim = 2;
  std::vector<ControlMask> controls;
  bool permutation = false;
  std::vector<int> perm;  // level v moves to perm[v]
  std::vector<Complex> matrix;  // dim x dim, row-major
};

GatePlan plan_gate(std::span<const int> dims, const GateApplication& gate);

// Reference implementation: gathers every output amplitude from a copy of the input.
void apply_serial(std::span<Complex> amps, const GatePlan& plan);
// In-place, one group of `dim` amplitudes per iteration, split across OpenMP threads.
// Each output is summed in the same order as apply_serial, so results match bitwise.
void apply_parallel(std::span<Complex> amps, const GatePlan& plan);

}  // namespace dtqw::kernels
