#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "dtqw/core.hpp"
#include "dtqw/walk_builder.hpp"

namespace dtqw {

enum class Execution { Serial, Parallel };

class StateVector {
 public:
  // Basis state |digits> over the circuit's effective dimensions.
  StateVector(const RegisterLayout& layout, std::map<int, int> overrides, const BasisState& initial);

  void apply(const GateApplication& gate, Execution exec = Execution::Parallel);

  const RegisterLayout& layout() const { return layout_; }
  const std::vector<int>& dims() const { return dims_; }
  std::span<const Complex> amplitudes() const { return amps_; }
  Complex amplitude(const BasisState& state) const;
  double norm() const;

 private:
  RegisterLayout layout_;
  std::vector<int> dims_;
  std::vector<Complex> amps_;
};

StateVector apply_gate(StateVector state, const GateApplication& gate, Execution exec = Execution::Parallel);
// `initial` empty means the all-zero basis state.
StateVector run(const Circuit& circuit, const BasisState& initial = {}, Execution exec = Execution::Parallel);

struct Distribution {
  std::vector<std::pair<int, double>> entries;  // ascending position
  double residual = 0.0;
  // Positions that share digits with another position; their mass is reported on the lowest of them.
  std::vector<int> ambiguous;
};

Distribution position_distribution(const StateVector& state, const PositionMapping& mapping);

struct ShotCounts {
  int shots = 0;
  std::uint64_t seed = 0;
  std::map<int, int> counts;
  int residual = 0;
};

// Inverse-CDF sampling over positions in ascending order, residual last;
// draw i uses splitmix64(seed, i) so the outcome does not depend on threading.
ShotCounts sample(const Distribution& dist, int shots, std::uint64_t seed);
double uniform_draw(std::uint64_t seed, std::uint64_t counter);

}  // namespace dtqw
