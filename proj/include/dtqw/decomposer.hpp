#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "dtqw/core.hpp"
#include "dtqw/simulator.hpp"

namespace dtqw {

enum class LoweringStrategy { CliffordT, IntermediateQudit };
enum class PhaseMode { Exact, Global };

LoweringStrategy parse_strategy(std::string_view name);

// Ancilla-free Clifford+T network for a doubly controlled X on binary wires.
Circuit decompose_toffoli_clifford_t(const GateApplication& toffoli, const RegisterLayout& layout);

struct MctLowering {
  std::vector<GateApplication> gates;
  std::map<int, int> overrides;  // wire -> elevated dimension
  int preparation_layers = 0;
  int root_wire = -1;
  int root_level = -1;
};

// Rewrites a multi-controlled gate into one- and two-wire gates by pushing the control
// condition into temporarily elevated levels of the control wires, joined pairwise along
// a balanced tree, then uncomputing. `dims` are the wire dimensions before elevation.
MctLowering lower_mct_intermediate(const GateApplication& gate, std::span<const int> dims);
// Lowered network for C^n X_d^{+1} with controls q0..q_{n-1} at level d-1 and target q_n.
Circuit decompose_mct_intermediate(int n_controls, int base_d);
int preparation_layers(int n_controls);

Circuit lower_circuit(const Circuit& circuit, LoweringStrategy strategy);

struct EquivalenceReport {
  bool equivalent = false;
  double max_deviation = 0.0;
  double max_leakage = 0.0;  // amplitude left on elevated levels
  std::optional<BasisState> failing_input;
  PhaseMode phase_mode = PhaseMode::Exact;
  std::uint64_t inputs_checked = 0;
};

inline constexpr double kEquivalenceTolerance = 1e-9;

// Compares the two circuits column by column over every basis input on the base levels.
EquivalenceReport verify_equivalence(const Circuit& original, const Circuit& lowered,
                                     PhaseMode mode = PhaseMode::Exact, Execution exec = Execution::Parallel);

}  // namespace dtqw
