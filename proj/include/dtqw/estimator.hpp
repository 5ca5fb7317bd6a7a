#pragma once

#include <map>
#include <string>

#include "dtqw/core.hpp"
#include "dtqw/walk_builder.hpp"

namespace dtqw {

struct ResourceEstimate {
  long long count_1q = 0;
  long long count_2q = 0;
  long long count_multi = 0;  // gates on three or more wires
  std::map<int, long long> count_by_controls;
  long long depth = 0;
  int highest_control = 0;

  long long total_gates() const { return count_1q + count_2q + count_multi; }
  bool operator==(const ResourceEstimate&) const = default;
};

struct NoiseParams {
  double p_success_1q = 1.0;
  double p_success_2q = 1.0;
  double t1 = 1.0;  // in the same time units as circuit depth
  std::string source;

  void validate() const;
};

// Unit-duration gates, as-soon-as-possible layering over wire occupancy.
ResourceEstimate count_resources(const Circuit& circuit);

// Cost of a multi-controlled X of width x >= 3 (controls plus target) after the
// standard ancilla-free lowering to one- and two-qubit gates.
long long mct_two_qubit_cost(int width);
long long mct_duration(int width);

// Every gate with two or more controls is charged as its lowered block: the block
// counts mct_two_qubit_cost(width) two-qubit gates and takes mct_duration(width)
// time steps on all of its wires. Remaining gates take one step each.
ResourceEstimate count_resources_lowered(const Circuit& circuit);

// Totals for t steps of the binary walks on n position qubits under the lowering above.
ResourceEstimate closed_form_estimate(Scheme scheme, int n, int t);

struct IntermediateQuditCost {
  long long depth = 0;
  long long gates = 0;
};

// Depth and gate totals for one full cycle of the binary walk on N qubits when
// every multi-controlled gate is lowered through intermediate qudit levels.
IntermediateQuditCost intermediate_qudit_closed_form(int n);

// p1^(1q gates) * p2^(gates on two or more wires) * exp(-depth / t1).
double success_probability(const ResourceEstimate& estimate, const NoiseParams& noise);

}  // namespace dtqw
